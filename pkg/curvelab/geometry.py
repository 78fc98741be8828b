"""Точки, особенности, кратности и пересечения с прямыми.

Все перечисления идут внутри объемлющего поля формы: PG(2, q^m) — это
точки с координатами из подполя GF(q^m). Перебор по нормализованным
представителям: аффинная карта z=1 (векторно, блоками строк y), затем
прямая (x:1:0), затем точка (1:0:0).
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import (
    DegreeMismatch,
    InvalidParameters,
    LineIsComponent,
    MissingParameter,
    PointNotOnBoth,
    PointNotOnCurve,
)
from .gf import FieldCtx, FieldElement, prime_power
from .groups import mat_det, mat_inverse
from .mpoly import MultiPoly, evaluate, linear_substitute, partial_derivative, proportional

logger = logging.getLogger(__name__)

# Ячеек сетки на один блок перебора
CHUNK_CELLS = 2**18

Line = tuple[int, int, int]


def _normalized(ctx: FieldCtx, coords: Sequence[int]) -> tuple[int, int, int]:
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise InvalidParameters("все координаты нулевые")
    inv = ctx.inv(lead)
    return tuple(ctx.mul(c, inv) for c in coords)


@dataclass(frozen=True)
class PointPG2:
    """Точка (a:b:c); первая ненулевая координата (по X, Y, Z) равна 1."""

    ctx: FieldCtx
    coords: tuple[int, int, int]

    @classmethod
    def of(cls, ctx: FieldCtx, coords: Sequence) -> "PointPG2":
        values = []
        for c in coords:
            if isinstance(c, FieldElement):
                c = c.value
            values.append(int(c))
        if len(values) != 3:
            raise InvalidParameters("точка задаётся тремя координатами")
        return cls(ctx, _normalized(ctx, values))

    def degree(self) -> int:
        """Наименьшая степень подполя над GF(p), содержащего все координаты."""
        d = 1
        for c in self.coords:
            k = self.ctx.element_degree(c)
            d = math.lcm(d, k)
        return d

    def to_json(self) -> list[str]:
        return [repr(FieldElement(self.ctx, c)) for c in self.coords]

    def __repr__(self) -> str:
        return "({})".format(":".join(repr(FieldElement(self.ctx, c)) for c in self.coords))


def normalize_line(ctx: FieldCtx, line) -> Line:
    """Прямая как тройка (a, b, c) формы aX + bY + cZ, нормализованная."""
    if isinstance(line, MultiPoly):
        if line.uses_lambda or line.degree() != 1 or not line.is_homogeneous():
            raise InvalidParameters(f"{line!r} не линейная форма")
        coeffs = [line.terms.get(e, 0) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))]
        return _normalized(ctx, coeffs)
    return _normalized(ctx, [c.value if isinstance(c, FieldElement) else int(c) for c in line])


def line_form(ctx: FieldCtx, line) -> MultiPoly:
    a, b, c = normalize_line(ctx, line)
    return MultiPoly(ctx, {(1, 0, 0, 0): a, (0, 1, 0, 0): b, (0, 0, 1, 0): c})


def _on_line(ctx: FieldCtx, line: Line, coords: Sequence[int]) -> bool:
    add, mul = ctx.add, ctx.mul
    return not add(add(mul(line[0], coords[0]), mul(line[1], coords[1])), mul(line[2], coords[2]))


@dataclass
class SingularityReport:
    point: PointPG2
    multiplicity: int
    tangent_lines: list[tuple[Line, int]] = field(default_factory=list)
    # Степень части касательного конуса, не разложившейся над полем
    unsplit_degree: int = 0

    @property
    def is_singular(self) -> bool:
        return self.multiplicity > 1

    @property
    def is_ordinary(self) -> bool:
        return not self.unsplit_degree and all(mult == 1 for _, mult in self.tangent_lines)

    def to_json(self) -> dict:
        ctx = self.point.ctx
        return {
            "point": self.point.to_json(),
            "multiplicity": self.multiplicity,
            "tangents": [
                {"line": line_form(ctx, line).to_text(), "multiplicity": mult}
                for line, mult in self.tangent_lines
            ],
            "unsplit_degree": self.unsplit_degree,
        }


# ── перебор точек ──

def resolve_form(f: MultiPoly, lam=None) -> MultiPoly:
    """Форма без Λ; MissingParameter, если Λ есть, а λ не задано."""
    if f.uses_lambda:
        if lam is None:
            raise MissingParameter("форма содержит Λ, значение λ не задано")
        f = f.specialize(lam)
    if not f.is_homogeneous():
        raise InvalidParameters("ожидается однородная форма")
    return f


def extension_subfield(ctx: FieldCtx, m: int, q: int | None) -> np.ndarray:
    """Элементы GF(q^m) внутри ctx как массив; FieldTooSmall, если подполя нет."""
    e = prime_power(q)[1] if q else 1
    if q and prime_power(q)[0] != ctx.p:
        raise InvalidParameters(f"q={q} не степень характеристики {ctx.p}")
    ctx.subfield_degree(ctx.p ** (m * e))
    return np.array(ctx.subfield_elements(m * e), dtype=np.int64)


def _grid_values(ctx: FieldCtx, items, coords: Sequence[np.ndarray], nvars: int) -> np.ndarray:
    acc = np.zeros(coords[0].shape, dtype=np.int64)
    for e, c in items:
        acc = ctx.vadd(acc, ctx.vmonomial(c, e[:nvars], coords))
    return acc


def _scan_rows(ctx: FieldCtx, polys: list, S: np.ndarray, start: int, stop: int, collect: bool):
    """Нули всех polys в блоке аффинной карты z=1 со строками y = S[start:stop]."""
    X = np.broadcast_to(S[None, :], (stop - start, len(S)))
    Y = np.broadcast_to(S[start:stop, None], (stop - start, len(S)))
    mask = np.ones(X.shape, dtype=bool)
    for items in polys:
        mask &= _grid_values(ctx, items, (X, Y), 2) == 0
        if not mask.any():
            break
    if not collect:
        return int(mask.sum())
    rows, cols = np.nonzero(mask)
    return [(int(X[r, c]), int(Y[r, c]), 1) for r, c in zip(rows, cols)]


def _scan(polys: list[MultiPoly], m: int, q: int | None, *, jobs: int = 1, collect: bool = False):
    ctx = polys[0].ctx
    S = extension_subfield(ctx, m, q)
    items = [list(f.terms.items()) for f in polys]
    step = max(1, CHUNK_CELLS // len(S))
    bounds = [(i, min(i + step, len(S))) for i in range(0, len(S), step)]
    if jobs > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_scan_rows, ctx, items, S, a, b, collect) for a, b in bounds]
            parts = [fut.result() for fut in futures]
    else:
        parts = [_scan_rows(ctx, items, S, a, b, collect) for a, b in bounds]

    line_items = [[(e, c) for e, c in it if not e[2]] for it in items]
    ones = np.ones(len(S), dtype=np.int64)
    line_mask = np.ones(len(S), dtype=bool)
    for it in line_items:
        line_mask &= _grid_values(ctx, it, (S, ones), 2) == 0
    corner = all(not f.terms.get((f.degree(), 0, 0, 0)) for f in polys if f)

    if not collect:
        return sum(parts) + int(line_mask.sum()) + int(corner)
    found = [pt for part in parts for pt in part]
    found += [(int(x), 1, 0) for x in S[line_mask]]
    if corner:
        found.append((1, 0, 0))
    return found


def count_points(f: MultiPoly, m: int, lam=None, *, q: int | None = None, jobs: int = 1) -> int:
    """Число точек PG(2, q^m) на кривой f = 0 (q по умолчанию — p)."""
    f = resolve_form(f, lam)
    started = time.perf_counter()
    if not f:
        Q = f.ctx.p ** (m * (prime_power(q)[1] if q else 1))
        return Q * Q + Q + 1
    count = _scan([f], m, q, jobs=jobs)
    logger.debug(
        "count_points: степень %d, m=%d, q=%s → %d за %.2f с",
        f.degree(), m, q, count, time.perf_counter() - started,
    )
    return count


def rational_points(f: MultiPoly, m: int, lam=None, *, q: int | None = None, jobs: int = 1) -> list[PointPG2]:
    f = resolve_form(f, lam)
    return [PointPG2.of(f.ctx, c) for c in _scan([f], m, q, jobs=jobs, collect=True)]


def singular_points(
    f: MultiPoly, m: int, lam=None, *, q: int | None = None, jobs: int = 1
) -> list[SingularityReport]:
    """Особые точки над GF(q^m) (только над этим расширением) с кратностями и касательными."""
    f = resolve_form(f, lam)
    polys = [f] + [partial_derivative(f, v) for v in "XYZ"]
    polys = [g for g in polys if g]
    found = _scan(polys, m, q, jobs=jobs, collect=True)
    reports = [multiplicity_at(f, PointPG2.of(f.ctx, c)) for c in found]
    logger.debug("singular_points: m=%d → %d точек", m, len(reports))
    return reports


# ── локальная структура ──

def _completing_columns(ctx: FieldCtx, P: Sequence[int]) -> list[list[int]]:
    """Матрица со столбцами (e_i, e_j, P), невырожденная."""
    for i, j in ((0, 1), (0, 2), (1, 2)):
        cols = [[1 if r == i else 0 for r in range(3)], [1 if r == j else 0 for r in range(3)], list(P)]
        A = [[cols[c][r] for c in range(3)] for r in range(3)]
        if mat_det(ctx, A):
            return A
    raise InvalidParameters(f"не удалось дополнить {P} до базиса")


def _univariate_roots(ctx: FieldCtx, coeffs: list[int]) -> list[tuple[int, int]]:
    """Корни Σ coeffs[i]·t^i в поле с кратностями (перебор всех элементов)."""
    elements = np.arange(ctx.order, dtype=np.int64)
    acc = np.zeros(ctx.order, dtype=np.int64)
    for i, c in enumerate(coeffs):
        if c:
            acc = ctx.vadd(acc, ctx.vmonomial(c, (i,), (elements,)))
    roots = [int(t) for t in np.nonzero(acc == 0)[0]]
    out = []
    for t in roots:
        poly, mult = list(coeffs), 0
        while len(poly) > 1:
            # деление на (x − t) по схеме Горнера
            quotient = [0] * (len(poly) - 1)
            carry = 0
            for i in range(len(poly) - 1, 0, -1):
                carry = ctx.add(poly[i], ctx.mul(carry, t))
                quotient[i - 1] = carry
            remainder = ctx.add(poly[0], ctx.mul(carry, t))
            if remainder:
                break
            poly, mult = quotient, mult + 1
        out.append((t, mult))
    return out


def multiplicity_at(f: MultiPoly, P: PointPG2) -> SingularityReport:
    """Кратность r в P и касательные прямые (множители начальной формы степени r)."""
    ctx = f.ctx
    f = resolve_form(f)
    if evaluate(f, P.coords):
        raise PointNotOnCurve(f"{P!r} не лежит на кривой")
    A = _completing_columns(ctx, P.coords)
    local = linear_substitute(f, A).dehomogenize("Z")
    r = min(e[0] + e[1] for e in local.terms)
    initial = {e[0]: c for e, c in local.terms.items() if e[0] + e[1] == r}
    top = max(initial)
    coeffs = [initial.get(i, 0) for i in range(top + 1)]
    new_lines: list[tuple[Line, int]] = []
    covered = 0
    for t, mult in _univariate_roots(ctx, coeffs) if top else []:
        new_lines.append(((1, ctx.neg(t), 0), mult))
        covered += mult
    if r - top:
        new_lines.append(((0, 1, 0), r - top))
        covered += r - top
    A_inv = mat_inverse(ctx, A)
    lines = []
    add, mul = ctx.add, ctx.mul
    for ell, mult in new_lines:
        orig = [add(add(mul(ell[0], A_inv[0][j]), mul(ell[1], A_inv[1][j])), mul(ell[2], A_inv[2][j])) for j in range(3)]
        lines.append((_normalized(ctx, orig), mult))
    return SingularityReport(P, r, lines, unsplit_degree=r - covered)


def tangent_line(f: MultiPoly, P: PointPG2) -> Line | None:
    """Касательная в простой точке (градиент) или None в особой."""
    f = resolve_form(f)
    grad = [evaluate(partial_derivative(f, v), P.coords).value for v in "XYZ"]
    if not any(grad):
        return None
    return _normalized(f.ctx, grad)


def _point_on_line(ctx: FieldCtx, line: Line, P: Sequence[int]) -> tuple[int, int, int]:
    """Точка прямой, отличная от P."""
    a, b, c = line
    candidates = [(ctx.neg(b), a, 0), (ctx.neg(c), 0, a), (0, ctx.neg(c), b)]
    for Q in candidates:
        if any(Q) and _normalized(ctx, Q) != _normalized(ctx, P):
            return Q
    raise InvalidParameters(f"на прямой {line} нет второй точки")


def line_restriction(f: MultiPoly, line, P: PointPG2) -> MultiPoly:
    """f(X·P + Y·Q) для второй точки Q прямой; Z не участвует."""
    ctx = f.ctx
    ell = normalize_line(ctx, line)
    if not _on_line(ctx, ell, P.coords):
        raise PointNotOnBoth(f"{P!r} не лежит на прямой")
    Q = _point_on_line(ctx, ell, P.coords)
    A = [[P.coords[i], Q[i], 0] for i in range(3)]
    return linear_substitute(f, A)


def line_intersection_multiplicity(f: MultiPoly, line, P: PointPG2) -> int:
    """I(P, ℓ ∩ f): кратность корня ограничения f на ℓ в параметре точки P.

    Символьный Λ допускается: ответ тогда относится к общему члену пучка.
    """
    restricted = line_restriction(f, line, P)
    if not restricted:
        raise LineIsComponent("прямая является компонентой кривой")
    mult = min(e[1] for e in restricted.terms)
    if not mult:
        raise PointNotOnBoth(f"{P!r} не лежит на кривой")
    return mult


def points_on_line(ctx: FieldCtx, line, kp: int) -> list[PointPG2]:
    """Точки прямой над GF(p^kp)."""
    ell = normalize_line(ctx, line)
    S = ctx.subfield_elements(kp)
    found = {PointPG2.of(ctx, (x, y, 1)) for x in S for y in S if _on_line(ctx, ell, (x, y, 1))}
    found |= {PointPG2.of(ctx, (x, 1, 0)) for x in S if _on_line(ctx, ell, (x, 1, 0))}
    if _on_line(ctx, ell, (1, 0, 0)):
        found.add(PointPG2.of(ctx, (1, 0, 0)))
    return sorted(found, key=lambda pt: pt.coords)


def bezout_total(f: MultiPoly, line, kp: int) -> int:
    """Σ I(P, ℓ ∩ f) по точкам прямой над GF(p^kp)."""
    total = 0
    f = resolve_form(f)
    for P in points_on_line(f.ctx, line, kp):
        if not evaluate(f, P.coords):
            total += line_intersection_multiplicity(f, line, P)
    return total


def verify_line_splitting(f: MultiPoly, lines: Sequence[tuple]) -> bool:
    """f пропорциональна Π ℓ_i^{m_i}?"""
    f = resolve_form(f)
    total = sum(mult for _, mult in lines)
    if total != f.degree():
        raise DegreeMismatch(f"сумма кратностей {total} ≠ степени {f.degree()}")
    product = MultiPoly.constant(f.ctx, 1)
    for line, mult in lines:
        product = product * line_form(f.ctx, line) ** mult
    return proportional(f, product) is not None


# ── коника ──

def classify_wrt_conic(conic: MultiPoly, P: PointPG2, conic_points: Sequence[PointPG2]) -> str:
    """«on», «external» (две касательные через P) или «internal» (ни одной)."""
    if not evaluate(conic, P.coords):
        return "on"
    through = sum(
        1 for R in conic_points
        if (ell := tangent_line(conic, R)) is not None and _on_line(conic.ctx, ell, P.coords)
    )
    if through == 2:
        return "external"
    if through == 0:
        return "internal"
    raise InvalidParameters(f"через {P!r} проходит {through} касательных к конике")


def conic_tangent_lines(conic: MultiPoly, q: int) -> list[tuple[Line, int]]:
    """Касательные к конике в её точках над GF(q), каждая кратности 1."""
    return [(tangent_line(conic, R), 1) for R in rational_points(conic, 1, q=q)]
