"""Каталог кривых: именованные формы, члены пучков и сетей.

build(id, ...) возвращает CurveSpec с многочленом и проверенной степенью.
Параметр пучка по умолчанию символьный (переменная Λ), поэтому одно
вычисление покрывает сразу весь пучок. Аффинные уравнения гомогенизируются
по Z до указанной степени.

Идентификаторы: dgz, dual-dgz, fnm, hermitian, pellikaan, fermat,
agl-pencil, dual-agl-pencil, pgl3-pencil, pgu-pencil, singer-net,
singer-big, triangle-pencil, pgl2-pencil, hemisystem.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

from .exceptions import (
    DegreeMismatch,
    InexactDivision,
    InvalidParameters,
    NonDividingDegree,
    SearchSpaceExceeded,
)
from .gf import FieldCtx, FieldElement, field_for, prime_power
from .groups import Projectivity
from .mpoly import MultiPoly, divide_exact, gens, moore_determinant, proportional

logger = logging.getLogger(__name__)

CATALOG_IDS = (
    "dgz", "dual-dgz", "fnm", "hermitian", "pellikaan", "fermat",
    "agl-pencil", "dual-agl-pencil", "pgl3-pencil", "pgu-pencil",
    "singer-net", "singer-big", "triangle-pencil", "pgl2-pencil", "hemisystem",
)
PENCIL_IDS = {
    "agl-pencil", "dual-agl-pencil", "pgl3-pencil", "pgu-pencil",
    "triangle-pencil", "pgl2-pencil", "hemisystem",
}
ODD_ONLY = {"pgl2-pencil", "hemisystem"}
# Кривые, у которых параметр — n (q = n²)
N_BASED = {"hermitian", "pgu-pencil"}

DESCRIPTIONS = {
    "dgz": "F_{3,1}: двойственно-фробениусова кривая степени q³−q²",
    "dual-dgz": "F_{3,2}: двойственная к DGZ, степень q³−q",
    "fnm": "F_{n,m} = D_{n,m}/D_{2,1}, степень q^n+q^m−q²−q",
    "hermitian": "Y^nZ + YZ^n − X^{n+1}",
    "pellikaan": "X^{q+1}Y + Y^{q+1}Z + Z^{q+1}X",
    "fermat": "X^{q−1} + Y^{q−1} + Z^{q−1}",
    "agl-pencil": "F_{3,1} − Λ·Z^{q³−q²}",
    "dual-agl-pencil": "F_{3,1} − Λ·(D_{2,1}/(Y^qZ−YZ^q))^{q−1}",
    "pgl3-pencil": "G − Λ·H^{q(q−1)}, H = D_{2,1}, G = D_{4,2}/H",
    "pgu-pencil": "Y^{n³}Z + YZ^{n³} − X^{n³+1} − Λ·(Y^nZ + YZ^n − X^{n+1})^{n²−n+1}",
    "singer-net": "λX^{q+1}Y + μY^{q+1}Z + τZ^{q+1}X",
    "singer-big": "X^{q+1}Y^q + Y^{q+1}Z^q + Z^{q+1}X^q",
    "triangle-pencil": "Λ(X^{q−1}+Y^{q−1}+Z^{q−1})² + (XY)^{q−1} + (YZ)^{q−1} + (ZX)^{q−1}",
    "pgl2-pencil": "Y^{q+1} − (X^qZ + XZ^q) − Λ(Y² − 2XZ)^{(q+1)/2}",
    "hemisystem": "(X+Y)^{q+1}Z^{q−1} − 2((XY)^q + XYZ^{2q−2}) − Λ(X−Y)^{q+1}Z^{q−1}",
}

LAMBDA = "Λ"


@dataclass
class CurveSpec:
    id: str
    params: dict[str, Any]
    poly: MultiPoly
    expected_degree: int
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ctx(self) -> FieldCtx:
        return self.poly.ctx

    @property
    def symbolic(self) -> bool:
        return self.poly.uses_lambda

    def label(self) -> str:
        shown = ", ".join(f"{k}={v}" for k, v in self.params.items() if v is not None)
        return f"{self.id}({shown})"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": {k: v for k, v in self.params.items() if v is not None},
            "degree": self.expected_degree,
            "field": self.ctx.describe(),
            "notes": self.notes,
        }


# ── строительные блоки ──

def moore_h(ctx: FieldCtx, q: int) -> MultiPoly:
    """H = D_{2,1}: произведение всех F_q-прямых с точностью до скаляра."""
    return moore_determinant(ctx, q, 2, 1)


def fnm_form(ctx: FieldCtx, q: int, n: int, m: int) -> MultiPoly:
    num = moore_determinant(ctx, q, n, m)
    quo = divide_exact(num, moore_h(ctx, q))
    if quo is None:
        raise InexactDivision(f"D_{{{n},{m}}} не делится на D_{{2,1}} при q={q}")
    return quo


def pgl3_pencil_generators(ctx: FieldCtx, q: int) -> tuple[MultiPoly, MultiPoly]:
    """(G, H^{q(q−1)}), G = D_{4,2}/H."""
    H = moore_h(ctx, q)
    G = divide_exact(moore_determinant(ctx, q, 4, 2), H)
    if G is None:
        raise InexactDivision(f"D_{{4,2}} не делится на D_{{2,1}} при q={q}")
    return G, H ** (q * (q - 1))


def agl_pencil_generators(ctx: FieldCtx, q: int) -> tuple[MultiPoly, MultiPoly]:
    X, Y, Z, _ = gens(ctx)
    return fnm_form(ctx, q, 3, 1), Z ** (q**3 - q**2)


def agl_line_product(ctx: FieldCtx, q: int) -> MultiPoly:
    """(D_{2,1}/Z)^{q−1}: F_q-прямые вне Z=0, каждая q−1 раз."""
    _, _, Z, _ = gens(ctx)
    quo = divide_exact(moore_h(ctx, q), Z)
    if quo is None:
        raise InexactDivision("D_{2,1} не делится на Z")
    return quo ** (q - 1)


def dual_agl_second_generator(ctx: FieldCtx, q: int) -> MultiPoly:
    """(D_{2,1}/(Y^qZ − YZ^q))^{q−1}: F_q-прямые не через (1:0:0), каждая q−1 раз."""
    _, Y, Z, _ = gens(ctx)
    pencil_through_p0 = Y**q * Z - Y * Z**q
    quo = divide_exact(moore_h(ctx, q), pencil_through_p0)
    if quo is None:
        raise InexactDivision("D_{2,1} не делится на Y^qZ − YZ^q")
    return quo ** (q - 1)


def hermitian_form(ctx: FieldCtx, n: int) -> MultiPoly:
    X, Y, Z, _ = gens(ctx)
    return Y**n * Z + Y * Z**n - X ** (n + 1)


def pgu_pencil_generators(ctx: FieldCtx, n: int) -> tuple[MultiPoly, MultiPoly]:
    """(G, F^{n²−n+1}) с F = H_n и G = H_{n³}."""
    return hermitian_form(ctx, n**3), hermitian_form(ctx, n) ** (n * n - n + 1)


def fermat_form(ctx: FieldCtx, q: int) -> MultiPoly:
    X, Y, Z, _ = gens(ctx)
    return X ** (q - 1) + Y ** (q - 1) + Z ** (q - 1)


def conic_form(ctx: FieldCtx) -> MultiPoly:
    """Коника Y² − 2XZ, сохраняемая τ, σ_a и δ_b."""
    X, Y, Z, _ = gens(ctx)
    return Y * Y - X * Z * 2


def singer_net_form(ctx: FieldCtx, q: int, net) -> MultiPoly:
    X, Y, Z, _ = gens(ctx)
    lam, mu, tau = net
    return X ** (q + 1) * Y * lam + Y ** (q + 1) * Z * mu + Z ** (q + 1) * X * tau


def primitive_cube_root(ctx: FieldCtx, q: int) -> tuple[FieldElement, int]:
    """ω порядка 3: в GF(q) при 3 | q−1, иначе в GF(q²). Возвращает (ω, порядок поля ω)."""
    p, e = prime_power(q)
    if p == 3:
        raise InvalidParameters("в характеристике 3 нет примитивного кубического корня из 1")
    degree, order = (e, q) if (q - 1) % 3 == 0 else (2 * e, q * q)
    if ctx.k % degree:
        raise NonDividingDegree(f"{ctx} не содержит GF({order})")
    h = ctx.subfield_generator(degree)
    return FieldElement(ctx, ctx.power(h, (order - 1) // 3)), order


# ── build ──

def required_degree(curve_id: str, q: int, n: int | None) -> int:
    if curve_id in N_BASED:
        return 2 * prime_power(n)[1]
    return prime_power(q)[1]


def _lam_value(ctx: FieldCtx, lam):
    if lam is None or lam == LAMBDA:
        return None
    if isinstance(lam, FieldElement):
        if lam.ctx != ctx:
            raise InvalidParameters(f"λ из {lam.ctx}, а кривая строится над {ctx}")
        return lam.value
    if isinstance(lam, int):
        return ctx.from_int(lam)
    raise InvalidParameters(f"неподдерживаемое λ={lam!r}")


def _with_lambda(ctx: FieldCtx, poly: MultiPoly, lam_v: int | None) -> MultiPoly:
    if lam_v is None:
        return poly * MultiPoly.var(ctx, "L")
    return poly.scale(lam_v)


def _pick_context(curve_id, q, n, lam, net) -> FieldCtx:
    for candidate in [lam] + list(net or ()):
        if isinstance(candidate, FieldElement):
            return candidate.ctx
    p = prime_power(n if curve_id in N_BASED else q)[0]
    return field_for(p, required_degree(curve_id, q, n))


def build(
    curve_id: str,
    ctx: FieldCtx | None = None,
    *,
    q: int | None = None,
    n: int | None = None,
    m: int | None = None,
    lam=LAMBDA,
    net=None,
) -> CurveSpec:
    """Форма кривой curve_id с проверкой однородности и степени."""
    if curve_id not in CATALOG_IDS:
        raise InvalidParameters(f"неизвестная кривая {curve_id!r}")
    if curve_id in N_BASED:
        if n is None:
            raise InvalidParameters(f"{curve_id} требует параметр n")
        q = n * n if q is None else q
        if q != n * n:
            raise InvalidParameters(f"{curve_id}: q должно равняться n² = {n * n}")
    elif q is None:
        raise InvalidParameters(f"{curve_id} требует параметр q")
    p, _ = prime_power(q)
    if curve_id in ODD_ONLY and p == 2:
        raise InvalidParameters(f"{curve_id} определена только для нечётного q")
    ctx = ctx or _pick_context(curve_id, q, n, lam, net)
    if ctx.p != p or ctx.k % required_degree(curve_id, q, n):
        raise InvalidParameters(f"поле {ctx} не подходит для {curve_id} при q={q}")
    lam_v = _lam_value(ctx, lam) if curve_id in PENCIL_IDS else None
    params: dict[str, Any] = {"q": q, "n": n, "m": m}
    if curve_id in PENCIL_IDS:
        params["lam"] = LAMBDA if lam_v is None else FieldElement(ctx, lam_v).__repr__()
    notes: dict[str, Any] = {}
    X, Y, Z, _ = gens(ctx)

    if curve_id in ("dgz", "dual-dgz", "fnm"):
        a, b = {"dgz": (3, 1), "dual-dgz": (3, 2)}.get(curve_id, (n, m))
        if a is None or b is None:
            raise InvalidParameters("fnm требует n и m")
        if not (a > b >= 1 and a >= 3 and math.gcd(a, b) == 1):
            raise InvalidParameters(f"F_{{n,m}} требует n > m ≥ 1, n ≥ 3, gcd(n,m)=1; получено ({a},{b})")
        params.update(n=a, m=b)
        poly = fnm_form(ctx, q, a, b)
        degree = q**a + q**b - q * q - q
    elif curve_id == "hermitian":
        poly, degree = hermitian_form(ctx, n), n + 1
    elif curve_id == "pellikaan":
        poly, degree = singer_net_form(ctx, q, (1, 1, 1)), q + 2
    elif curve_id == "fermat":
        poly, degree = fermat_form(ctx, q), q - 1
    elif curve_id == "agl-pencil":
        A, B = agl_pencil_generators(ctx, q)
        poly, degree = A - _with_lambda(ctx, B, lam_v), q**3 - q**2
    elif curve_id == "dual-agl-pencil":
        A = fnm_form(ctx, q, 3, 1)
        B = dual_agl_second_generator(ctx, q)
        poly, degree = A - _with_lambda(ctx, B, lam_v), q**3 - q**2
    elif curve_id == "pgl3-pencil":
        A, B = pgl3_pencil_generators(ctx, q)
        poly, degree = A - _with_lambda(ctx, B, lam_v), q**4 - q
    elif curve_id == "pgu-pencil":
        A, B = pgu_pencil_generators(ctx, n)
        poly, degree = A - _with_lambda(ctx, B, lam_v), n**3 + 1
    elif curve_id == "singer-net":
        triple = tuple(net) if net is not None else (1, 1, 1)
        if len(triple) != 3:
            raise InvalidParameters("singer-net требует тройку (λ:μ:τ)")
        values = [_lam_value(ctx, v) if not isinstance(v, int) else ctx.from_int(v) for v in triple]
        if not any(values):
            raise InvalidParameters("тройка (λ:μ:τ) не может быть нулевой")
        params["net"] = [repr(FieldElement(ctx, v)) for v in values]
        poly = singer_net_form(ctx, q, [FieldElement(ctx, v) for v in values])
        degree = q + 2
    elif curve_id == "singer-big":
        poly = X ** (q + 1) * Y**q + Y ** (q + 1) * Z**q + Z ** (q + 1) * X**q
        degree = 2 * q + 1
    elif curve_id == "triangle-pencil":
        rest = (X * Y) ** (q - 1) + (Y * Z) ** (q - 1) + (Z * X) ** (q - 1)
        poly = _with_lambda(ctx, fermat_form(ctx, q) ** 2, lam_v) + rest
        degree = 2 * (q - 1)
    elif curve_id == "pgl2-pencil":
        base = Y ** (q + 1) - (X**q * Z + X * Z**q)
        poly = base - _with_lambda(ctx, conic_form(ctx) ** ((q + 1) // 2), lam_v)
        degree = q + 1
    else:
        zq = Z ** (q - 1)
        base = (X + Y) ** (q + 1) * zq - ((X * Y) ** q + X * Y * Z ** (2 * q - 2)) * 2
        poly = base - _with_lambda(ctx, (X - Y) ** (q + 1) * zq, lam_v)
        degree = 2 * q

    if not poly.is_homogeneous() or poly.degree() != degree:
        raise DegreeMismatch(f"{curve_id}: ожидалась однородная форма степени {degree}, получено {poly.degree()}")
    spec = CurveSpec(curve_id, params, poly, degree, notes)
    logger.debug("Кривая %s над %r: %d членов", spec.label(), ctx, len(poly))
    return spec


def singer_net_omega(ctx: FieldCtx, q: int) -> CurveSpec:
    """Член сети (ω:ω²:1); в notes записано, в каком поле взят ω."""
    omega, order = primitive_cube_root(ctx, q)
    spec = build("singer-net", ctx, q=q, net=(omega, omega * omega, 1))
    spec.notes["omega_field"] = f"GF({order})"
    return spec


# ── пучки и эквивалентность ──

def pencil_coordinates(f: MultiPoly, g1: MultiPoly, g2: MultiPoly) -> tuple[FieldElement, FieldElement] | None:
    """(a, b) с f = a·g1 + b·g2 или None."""
    if g1.degree() != g2.degree() or (f and f.degree() != g1.degree()):
        raise DegreeMismatch(f"степени {f.degree()}, {g1.degree()}, {g2.degree()} не совпадают")
    if proportional(g1, g2) is not None or not g1 or not g2:
        raise InvalidParameters("образующие пучка пропорциональны")
    ctx = f.ctx
    add, sub, mul, div = ctx.add, ctx.sub, ctx.mul, ctx.div
    support = sorted(set(g1.terms) | set(g2.terms))
    if any(e not in g1.terms and e not in g2.terms for e in f.terms):
        return None
    pivot = None
    for i, e1 in enumerate(support):
        u1, v1 = g1.terms.get(e1, 0), g2.terms.get(e1, 0)
        for e2 in support[i + 1:]:
            u2, v2 = g1.terms.get(e2, 0), g2.terms.get(e2, 0)
            det = sub(mul(u1, v2), mul(v1, u2))
            if det:
                pivot = (e1, e2, u1, v1, u2, v2, det)
                break
        if pivot:
            break
    e1, e2, u1, v1, u2, v2, det = pivot
    w1, w2 = f.terms.get(e1, 0), f.terms.get(e2, 0)
    a = div(sub(mul(w1, v2), mul(v1, w2)), det)
    b = div(sub(mul(u1, w2), mul(w1, u2)), det)
    for e in support:
        if add(mul(a, g1.terms.get(e, 0)), mul(b, g2.terms.get(e, 0))) != f.terms.get(e, 0):
            return None
    return FieldElement(ctx, a), FieldElement(ctx, b)


def projective_equivalence_witness(
    f: MultiPoly,
    g: MultiPoly,
    shape: str = "diagonal",
    *,
    degree: int | None = None,
    cap: int = 10**6,
) -> Projectivity | None:
    """Диагональная проективность A = diag(c, d, 1) над GF(p^degree) с f∘A ∝ g."""
    if f.degree() != g.degree():
        raise DegreeMismatch(f"степени {f.degree()} и {g.degree()} не совпадают")
    if shape != "diagonal":
        raise InvalidParameters(f"поддерживается только shape='diagonal', получено {shape!r}")
    ctx = f.ctx
    degree = degree or ctx.k
    candidates = ctx.subfield_elements(degree)[1:]
    if len(candidates) ** 2 > cap:
        raise SearchSpaceExceeded(f"{len(candidates) ** 2} кандидатов больше потолка {cap}")
    if set(f.terms) != set(g.terms):
        return None
    mul, power = ctx.mul, ctx.power
    items = list(f.terms.items())
    ratios = [(e, c, g.terms[e]) for e, c in items]
    for c in sorted(candidates):
        c_pows = [mul(fc, power(c, e[0])) for e, fc, _ in ratios]
        for d in sorted(candidates):
            scalar = None
            for (e, _, gc), cp in zip(ratios, c_pows):
                value = ctx.div(mul(cp, power(d, e[1])), gc)
                if scalar is None:
                    scalar = value
                elif value != scalar:
                    break
            else:
                label = f"diag({c},{d},1)"
                logger.debug("Найдена диагональная проективность %s", label)
                return Projectivity.diag(ctx, c, d, 1, label)
    return None
