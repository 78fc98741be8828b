"""Проективности PG(2,q) и порождающие множества подгрупп PGL(3,q).

Матрица A действует на форму подстановкой: строка i — образ i-й
переменной, f∘A(X, Y, Z) = f(a11·X + a12·Y + a13·Z, ...). Проективное
равенство — через нормализацию: первый ненулевой элемент (по строкам) равен 1.

Группы: PGL3, PSL3, AGL2 (стабилизатор прямой Z=0), DualAGL2 (стабилизатор
точки (1:0:0)), PGU3 (стабилизатор эрмитовой кривой), Triangle, Singer,
SingerNormalizer, PGL2Conic (стабилизатор коники Y² − 2XZ), HemisystemLinear.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exceptions import FieldTooSmall, InvalidParameters
from .gf import FieldCtx, FieldElement, field_for, hermitian_trace_solutions, prime_power

logger = logging.getLogger(__name__)

Matrix = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

GROUP_TAGS = (
    "PGL3", "PSL3", "AGL2", "DualAGL2", "PGU3", "Triangle",
    "SingerNormalizer", "Singer", "PGL2Conic", "HemisystemLinear",
)
ODD_ONLY = {"PGL2Conic", "HemisystemLinear"}


# ── матрицы 3×3 на целочисленных представлениях ──

def mat_mul(ctx: FieldCtx, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    add, mul = ctx.add, ctx.mul
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            s = 0
            for t in range(3):
                s = add(s, mul(A[i][t], B[t][j]))
            row.append(s)
        rows.append(tuple(row))
    return tuple(rows)


def mat_det(ctx: FieldCtx, A: Sequence[Sequence[int]]) -> int:
    add, sub, mul = ctx.add, ctx.sub, ctx.mul

    def minor(r1, r2, c1, c2):
        return sub(mul(A[r1][c1], A[r2][c2]), mul(A[r1][c2], A[r2][c1]))

    d = mul(A[0][0], minor(1, 2, 1, 2))
    d = sub(d, mul(A[0][1], minor(1, 2, 0, 2)))
    return add(d, mul(A[0][2], minor(1, 2, 0, 1)))


def mat_inverse(ctx: FieldCtx, A: Sequence[Sequence[int]]) -> Matrix:
    det = mat_det(ctx, A)
    if not det:
        raise InvalidParameters("вырожденная матрица")
    inv_det = ctx.inv(det)
    sub, mul = ctx.sub, ctx.mul
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != i]
            c = [x for x in range(3) if x != j]
            m = sub(mul(A[r[0]][c[0]], A[r[1]][c[1]]), mul(A[r[0]][c[1]], A[r[1]][c[0]]))
            cof[i][j] = m if (i + j) % 2 == 0 else ctx.neg(m)
    # обратная = транспонированная матрица алгебраических дополнений / det
    return tuple(tuple(mul(cof[j][i], inv_det) for j in range(3)) for i in range(3))


def mat_transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def normalize_matrix(ctx: FieldCtx, A: Sequence[Sequence[int]]) -> Matrix:
    for row in A:
        for v in row:
            if v:
                inv = ctx.inv(v)
                return tuple(tuple(ctx.mul(x, inv) for x in r) for r in A)
    raise InvalidParameters("нулевая матрица")


IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class Projectivity:
    """Невырожденная матрица 3×3 в нормализованном виде."""

    ctx: FieldCtx
    entries: Matrix
    label: str = field(default="", compare=False)

    @classmethod
    def from_values(cls, ctx: FieldCtx, rows: Iterable[Iterable[int]], label: str = "") -> "Projectivity":
        raw = tuple(tuple(int(v) for v in row) for row in rows)
        if len(raw) != 3 or any(len(r) != 3 for r in raw):
            raise InvalidParameters("ожидается матрица 3×3")
        if not mat_det(ctx, raw):
            raise InvalidParameters(f"вырожденная матрица {label or raw}")
        return cls(ctx, normalize_matrix(ctx, raw), label)

    @classmethod
    def diag(cls, ctx: FieldCtx, a: int, b: int, c: int, label: str = "") -> "Projectivity":
        return cls.from_values(ctx, ((a, 0, 0), (0, b, 0), (0, 0, c)), label)

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "Projectivity":
        return cls(ctx, IDENTITY, "id")

    def __matmul__(self, other: "Projectivity") -> "Projectivity":
        label = f"{self.label}·{other.label}" if self.label and other.label else ""
        return Projectivity(self.ctx, normalize_matrix(self.ctx, mat_mul(self.ctx, self.entries, other.entries)), label)

    def inverse(self) -> "Projectivity":
        inv = mat_inverse(self.ctx, self.entries)
        return Projectivity(self.ctx, normalize_matrix(self.ctx, inv), f"{self.label}^-1" if self.label else "")

    def transpose_inverse(self) -> "Projectivity":
        inv = mat_inverse(self.ctx, self.entries)
        return Projectivity(self.ctx, normalize_matrix(self.ctx, mat_transpose(inv)), self.label)

    def determinant(self) -> FieldElement:
        return FieldElement(self.ctx, mat_det(self.ctx, self.entries))

    def apply(self, coords: Sequence[int]) -> tuple[int, int, int]:
        """A·v для вектора-столбца v (целочисленные представления)."""
        add, mul = self.ctx.add, self.ctx.mul
        return tuple(
            add(add(mul(row[0], coords[0]), mul(row[1], coords[1])), mul(row[2], coords[2]))
            for row in self.entries
        )

    def order(self, cap: int = 10**6) -> int:
        """Порядок в PGL(3) (через нормализованное умножение)."""
        current, k = self, 1
        while current.entries != IDENTITY:
            current = current @ self
            k += 1
            if k > cap:
                raise InvalidParameters(f"порядок {self.label} больше {cap}")
        return k

    def as_indices(self) -> list[list[int | None]]:
        """Элементы как показатели образующей поля (None для нуля)."""
        return [[self.ctx.log(v) if v else None for v in row] for row in self.entries]


@dataclass(frozen=True)
class GroupId:
    tag: str
    q: int
    n: int | None = None

    def __post_init__(self):
        if self.tag not in GROUP_TAGS:
            raise InvalidParameters(f"неизвестная группа {self.tag!r}")
        p, _ = prime_power(self.q)
        if self.tag in ODD_ONLY and p == 2:
            raise InvalidParameters(f"{self.tag} определена только для нечётного q")
        if self.tag == "PGU3":
            if self.n is None or self.n * self.n != self.q:
                raise InvalidParameters("PGU3 требует q = n²")
            prime_power(self.n)

    @classmethod
    def pgu(cls, n: int) -> "GroupId":
        return cls("PGU3", n * n, n)

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def e(self) -> int:
        return prime_power(self.q)[1]

    def required_degree(self) -> int:
        """Степень над GF(p) поля, где живут коэффициенты образующих."""
        if self.tag in ("Singer", "SingerNormalizer"):
            return 3 * self.e
        return self.e

    def label(self) -> str:
        return f"{self.tag}(q={self.q}" + (f", n={self.n})" if self.n else ")")


def default_context(gid: GroupId) -> FieldCtx:
    return field_for(gid.p, gid.required_degree())


def _gf_basis(ctx: FieldCtx, q: int) -> list[int]:
    """GF(p)-базис GF(q): 1, h, ..., h^{e−1} для примитивного h."""
    e = ctx.subfield_degree(q)
    h = ctx.subfield_generator(e)
    return [ctx.power(h, i) for i in range(e)]


def _transvection(ctx: FieldCtx, i: int, j: int, t: int, label: str) -> Projectivity:
    rows = [list(r) for r in IDENTITY]
    rows[i][j] = t
    return Projectivity.from_values(ctx, rows, label)


_AXES = "XYZ"


def _pgl_core(ctx: FieldCtx, gid: GroupId, params: Iterable[int]) -> list[Projectivity]:
    gens = []
    for t in params:
        tag = f"({ctx.log(t)})" if t != 1 else ""
        for i in range(3):
            for j in range(3):
                if i != j:
                    gens.append(_transvection(ctx, i, j, t, f"E{_AXES[i]}{_AXES[j]}{tag}"))
    return gens


def _agl_generators(ctx: FieldCtx, gid: GroupId) -> list[Projectivity]:
    g = ctx.subfield_generator(gid.e)
    gens = []
    for beta in _gf_basis(ctx, gid.q):
        tag = f"({ctx.log(beta)})"
        gens.append(Projectivity.from_values(ctx, ((1, 0, beta), (0, 1, 0), (0, 0, 1)), f"tX{tag}"))
        gens.append(Projectivity.from_values(ctx, ((1, 0, 0), (0, 1, beta), (0, 0, 1)), f"tY{tag}"))
    gens.append(_transvection(ctx, 0, 1, 1, "EXY"))
    gens.append(_transvection(ctx, 1, 0, 1, "EYX"))
    gens.append(Projectivity.diag(ctx, g, 1, 1, "diag(g,1,1)"))
    return gens


_SWAP_XZ = ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def _dual_agl_generators(ctx: FieldCtx, gid: GroupId) -> list[Projectivity]:
    swap = Projectivity(ctx, _SWAP_XZ, "sXZ")
    out = []
    for A in _agl_generators(ctx, gid):
        B = swap @ A.transpose_inverse() @ swap
        out.append(Projectivity(ctx, B.entries, f"{A.label}*"))
    return out


def _pgu_generators(ctx: FieldCtx, gid: GroupId) -> list[Projectivity]:
    n, q = gid.n, gid.q
    gens = [Projectivity.from_values(ctx, ((1, 0, 0), (0, 0, 1), (0, 1, 0)), "α1")]
    e2 = ctx.subfield_degree(q)
    for u in sorted(ctx.subfield_elements(e2)):
        un = ctx.power(u, n)
        for e in hermitian_trace_solutions(FieldElement(ctx, u), n):
            gens.append(Projectivity.from_values(
                ctx, ((1, 0, u), (un, 1, e.value), (0, 0, 1)), f"α2({u},{e.value})"
            ))
    for c in ctx.subfield_elements(e2)[1:]:
        gens.append(Projectivity.diag(ctx, c, ctx.power(c, n + 1), 1, f"α3({c})"))
    return gens


def _triangle_generators(ctx: FieldCtx, gid: GroupId) -> list[Projectivity]:
    g = ctx.subfield_generator(gid.e)
    return [
        Projectivity.diag(ctx, g, 1, 1, "diag(g,1,1)"),
        Projectivity.diag(ctx, 1, g, 1, "diag(1,g,1)"),
        Projectivity.from_values(ctx, ((0, 1, 0), (0, 0, 1), (1, 0, 0)), "ρ"),
        Projectivity.from_values(ctx, ((0, 1, 0), (1, 0, 0), (0, 0, 1)), "sXY"),
    ]


def singer_element(ctx: FieldCtx, q: int) -> int:
    """b = G^{q−1}, G — примитивный элемент GF(q³); порядок b равен q² + q + 1."""
    _, e = prime_power(q)
    if ctx.k % (3 * e):
        raise FieldTooSmall(f"{ctx} не содержит GF({q}³)")
    return ctx.power(ctx.subfield_generator(3 * e), q - 1)


def singer_cycle(ctx: FieldCtx, q: int) -> Projectivity:
    b = singer_element(ctx, q)
    return Projectivity.diag(ctx, b, ctx.power(b, q * q + 1), 1, "σ")


def rotation(ctx: FieldCtx) -> Projectivity:
    return Projectivity.from_values(ctx, ((0, 1, 0), (0, 0, 1), (1, 0, 0)), "ρ")


def _pgl2_conic_generators(ctx: FieldCtx, gid: GroupId) -> list[Projectivity]:
    half = ctx.inv(2 % ctx.p)
    gens = [Projectivity.from_values(ctx, ((0, 0, 1), (0, 1, 0), (1, 0, 0)), "τ")]
    for a in _gf_basis(ctx, gid.q):
        a2 = ctx.mul(ctx.mul(a, a), half)
        gens.append(Projectivity.from_values(ctx, ((1, a, a2), (0, 1, a), (0, 0, 1)), f"σa({ctx.log(a)})"))
    b = ctx.subfield_generator(gid.e)
    gens.append(Projectivity.diag(ctx, ctx.mul(b, b), b, 1, "δb"))
    return gens


def _hemisystem_generators(ctx: FieldCtx, gid: GroupId) -> list[Projectivity]:
    gens = []
    for alpha in _gf_basis(ctx, gid.q):
        gens.append(Projectivity.from_values(
            ctx, ((1, 0, alpha), (0, 1, alpha), (0, 0, 1)), f"β1({ctx.log(alpha)})"
        ))
    g = ctx.subfield_generator(gid.e)
    gens.append(Projectivity.diag(ctx, g, g, 1, "β2"))
    gens.append(Projectivity.from_values(ctx, ((0, 1, 0), (1, 0, 0), (0, 0, 1)), "β4"))
    return gens


def generators_for(gid: GroupId, ctx: FieldCtx | None = None) -> list[Projectivity]:
    """Порождающие группы gid над ctx (по умолчанию — минимальное нужное поле)."""
    ctx = ctx or default_context(gid)
    if ctx.p != gid.p or ctx.k % gid.required_degree():
        raise FieldTooSmall(f"{ctx} не подходит для {gid.label()}")
    tag = gid.tag
    if tag == "PGL3":
        g = ctx.subfield_generator(gid.e)
        return _pgl_core(ctx, gid, [1]) + [Projectivity.diag(ctx, g, 1, 1, "diag(g,1,1)")]
    if tag == "PSL3":
        return _pgl_core(ctx, gid, _gf_basis(ctx, gid.q))
    if tag == "AGL2":
        return _agl_generators(ctx, gid)
    if tag == "DualAGL2":
        return _dual_agl_generators(ctx, gid)
    if tag == "PGU3":
        return _pgu_generators(ctx, gid)
    if tag == "Triangle":
        return _triangle_generators(ctx, gid)
    if tag == "Singer":
        return [singer_cycle(ctx, gid.q)]
    if tag == "SingerNormalizer":
        return [singer_cycle(ctx, gid.q), rotation(ctx)]
    if tag == "PGL2Conic":
        return _pgl2_conic_generators(ctx, gid)
    return _hemisystem_generators(ctx, gid)


def closure(gens: Sequence[Projectivity], cap: int) -> set[Matrix] | None:
    """Все элементы порождённой подгруппы (BFS) или None при превышении cap."""
    if not gens:
        return {IDENTITY}
    ctx = gens[0].ctx
    seen: set[Matrix] = {IDENTITY}
    queue: deque[Matrix] = deque([IDENTITY])
    mats = [g.entries for g in gens]
    while queue:
        current = queue.popleft()
        for m in mats:
            nxt = normalize_matrix(ctx, mat_mul(ctx, current, m))
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    logger.info("Замыкание превысило потолок %d", cap)
                    return None
                queue.append(nxt)
    return seen


def closure_order(gens: Sequence[Projectivity], cap: int) -> int | None:
    elements = closure(gens, cap)
    return None if elements is None else len(elements)


def order_formula(gid: GroupId) -> int:
    q = gid.q
    tag = gid.tag
    if tag == "PGL3":
        return (q**3 - 1) * q**3 * (q**2 - 1)
    if tag == "PSL3":
        return (q**3 - 1) * q**3 * (q**2 - 1) // math.gcd(3, q - 1)
    if tag in ("AGL2", "DualAGL2"):
        return q**3 * (q + 1) * (q - 1) ** 2
    if tag == "PGU3":
        n = gid.n
        return n**3 * (n**3 + 1) * (n**2 - 1)
    if tag == "Triangle":
        return 6 * (q - 1) ** 2
    if tag == "SingerNormalizer":
        return 3 * (q * q + q + 1)
    if tag == "Singer":
        return q * q + q + 1
    if tag == "PGL2Conic":
        return q * (q + 1) * (q - 1)
    return 2 * q * (q - 1)


def printed_order_formula(gid: GroupId) -> int:
    """Порядок в том виде, как его часто печатают для стабилизатора эрмитовой кривой."""
    if gid.tag == "PGU3":
        n = gid.n
        return n**3 * (n**3 + 1) * (n - 1) ** 2
    return order_formula(gid)


def export_generators(gid: GroupId, gens: Sequence[Projectivity]) -> dict:
    """JSON-представление: {group, q, n, field, labels, matrices}."""
    ctx = gens[0].ctx if gens else default_context(gid)
    return {
        "group": gid.tag,
        "q": gid.q,
        "n": gid.n,
        "field": ctx.describe(),
        "labels": [g.label for g in gens],
        "matrices": [g.as_indices() for g in gens],
    }
