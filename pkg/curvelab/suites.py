"""Наборы проверок: утверждения о кривых → именованные воспроизводимые проверки.

run_suite(suite_id, params, jobs) собирает список проверок набора и
выполняет их (параллельно при jobs > 1). Каждая проверка — функция модуля
с явными параметрами, поэтому её можно передать в рабочий процесс без
настроенного Django. Ошибка CurvelabError внутри проверки записывается как
проваленная проверка; любое другое исключение логируется с трассировкой и
тоже записывается как провал.

Параметр λ (--lambda):
  sym      — символьный Λ (весь пучок сразу)
  5        — элемент простого поля
  g4^3     — g^3, где g — примитивный элемент подполя GF(p^4)
"""

from __future__ import annotations

import logging
import math
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, NamedTuple

from .catalog import (
    LAMBDA,
    N_BASED,
    agl_pencil_generators,
    agl_line_product,
    build,
    conic_form,
    dual_agl_second_generator,
    fermat_form,
    hermitian_form,
    moore_h,
    pencil_coordinates,
    pgl3_pencil_generators,
    primitive_cube_root,
    projective_equivalence_witness,
    required_degree,
    singer_net_omega,
)
from .exceptions import CurvelabError, InvalidParameters, SearchSpaceExceeded, UnknownSuite
from .geometry import (
    PointPG2,
    classify_wrt_conic,
    conic_tangent_lines,
    count_points,
    line_intersection_multiplicity,
    multiplicity_at,
    rational_points,
    singular_points,
    tangent_line,
    verify_line_splitting,
)
from .gf import FieldCtx, FieldElement, configure, field_for, prime_power
from .groups import (
    GroupId,
    Projectivity,
    closure_order,
    export_generators,
    generators_for,
    order_formula,
    printed_order_formula,
    singer_cycle,
)
from .invariance import (
    check_group_invariance,
    check_invariance,
    cocycle_spot_check,
    invariant_form_space,
)
from .mpoly import (
    MultiPoly,
    gens,
    linear_substitute,
    moore_determinant,
    partial_derivative,
    proportional,
    substitute,
)
from .stohr import (
    extract_witness,
    find_witness,
    frobenius_check,
    frobenius_tangent_quotient,
    hefez_voloch_count,
)

logger = logging.getLogger(__name__)

SUITE_IDS = (
    "dgz-points", "pgl3-invariance", "agl-pencil", "dual-agl-pencil", "pgu-pencil",
    "singer-net", "triangle", "pgl2-pencil", "hemisystem", "frobenius-nc",
    "group-orders", "quotient-identities", "invariant-spaces",
)
ODD_SUITES = {"pgl2-pencil", "hemisystem", "quotient-identities"}

_LAMBDA_RE = re.compile(r"^g(\d+)\^(-?\d+)$")


# ── параметр λ ──

def lambda_degree(spec: str | None, p: int) -> int:
    """Степень над GF(p) подполя, в котором живёт λ."""
    if spec is None or spec == "sym":
        return 1
    match = _LAMBDA_RE.match(spec)
    if match:
        return int(match.group(1))
    try:
        int(spec)
    except ValueError:
        raise InvalidParameters(f"не удаётся разобрать λ={spec!r}: ожидается sym, целое или g<k>^<i>")
    return 1


def parse_lambda(spec: str | None, ctx: FieldCtx):
    """λ внутри ctx: LAMBDA для символьного параметра, иначе FieldElement."""
    if spec is None or spec == "sym":
        return LAMBDA
    match = _LAMBDA_RE.match(spec)
    if match:
        k, i = int(match.group(1)), int(match.group(2))
        ctx.check_subfield(k)
        return FieldElement(ctx, ctx.power(ctx.subfield_generator(k), i % (ctx.p**k - 1)))
    lambda_degree(spec, ctx.p)
    return FieldElement(ctx, ctx.from_int(int(spec)))


def _ambient(p: int, *degrees: int) -> FieldCtx:
    return field_for(p, math.lcm(*degrees))


def _fields(*ctxs: FieldCtx) -> list[dict]:
    return [ctx.describe() for ctx in ctxs]


def _logs(ctx: FieldCtx, values) -> list:
    return [None if not v else ctx.log(v) for v in values]


# ── параметры и результаты ──

@dataclass
class SuiteParams:
    q: int | None = None
    n: int | None = None
    lam: str | None = None
    ext: int | None = None
    closure_cap: int = 1_000_000
    form_space_cap: int = 120
    witness_cap: int = 1_000_000
    singular_ext: int = 4
    dgz_ext: int = 6
    words: int = 100
    seed: int = 0
    max_order: int = 2**20
    modulus_table: str | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class CheckResult:
    name: str
    passed: bool
    data: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0
    error: str = ""

    def summary(self) -> str:
        if self.error:
            return self.error
        return str(self.data.get("summary", ""))

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "elapsed_ms": self.elapsed_ms, "data": self.data}
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class VerificationSuite:
    suite: str
    params: dict[str, Any]
    checks: list[CheckResult] = field(default_factory=list)
    fields: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def point_counts(self) -> list[dict]:
        return [c.data for c in self.checks if c.data.get("point_count")]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "suite": self.suite,
            "params": self.params,
            "fields": self.fields,
            "checks": [c.to_json() for c in self.checks],
        }


class Check(NamedTuple):
    name: str
    func: Callable[..., tuple[bool, dict]]
    kwargs: dict


# ── проверки: инвариантность ──

def _swap_xy(ctx: FieldCtx) -> Projectivity:
    return Projectivity.from_values(ctx, ((0, 1, 0), (1, 0, 0), (0, 0, 1)), "sXY")


def _group(tag: str, q: int | None, n: int | None) -> GroupId:
    return GroupId.pgu(n) if tag == "PGU3" else GroupId(tag, q)


def check_certificate(
    curve_id: str,
    tag: str,
    q: int | None = None,
    n: int | None = None,
    lam: str | None = None,
    expect: bool = True,
    words: int = 0,
    seed: int = 0,
    transport: bool = False,
):
    """Сертификат инвариантности кривой относительно группы (+ проверка коцикла)."""
    gid = _group(tag, q, n)
    p = gid.p
    curve_q = None if curve_id in N_BASED else q
    ctx = _ambient(p, gid.required_degree(), required_degree(curve_id, curve_q or gid.q, n), lambda_degree(lam, p))
    spec = build(curve_id, ctx, q=curve_q, n=n, lam=parse_lambda(lam, ctx))
    T = _swap_xy(ctx) if transport else None
    cert = check_group_invariance(spec, gid, transport=T)
    data = {"certificate": cert.to_json(), "expected": expect, "fields": _fields(ctx)}
    passed = cert.verdict == expect
    if cert.twist is not None:
        passed = passed and cert.twist["holds"]
    if words and cert.verdict:
        f = linear_substitute(spec.poly, T) if T is not None else spec.poly
        gens_ = generators_for(gid, ctx)
        cocycle = cocycle_spot_check(f, gens_, [c for _, c in cert.per_generator], words=words, seed=seed)
        data["cocycle"] = cocycle
        passed = passed and cocycle["holds"]
    if transport:
        direct = check_invariance(spec.poly, singer_cycle(ctx, gid.q))
        data["direct_singer_scalar"] = None if direct is None else repr(direct)
    failing = cert.failing
    data["summary"] = f"{spec.label()} / {gid.label()}: {cert.verdict}" + (f", ломают {failing[:3]}" if failing else "")
    return passed, data


def check_moore_identity(q: int, seed: int = 0, samples: int = 5):
    """H∘A = det(A)·H для случайных A ∈ GL(3, q)."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    H = moore_h(ctx, q)
    rng = random.Random(seed)
    elements = ctx.subfield_elements(e)
    results = []
    while len(results) < samples:
        rows = [[rng.choice(elements) for _ in range(3)] for _ in range(3)]
        try:
            A = Projectivity.from_values(ctx, rows)
        except InvalidParameters:
            continue
        det = A.determinant().value
        results.append(linear_substitute(H, A) == H.scale(det))
    return all(results), {"samples": samples, "holds": results, "fields": _fields(ctx)}


def check_pgl3_member_split(q: int):
    """DGZ^q · F_{3,2} лежит в пучке (G, H^{q(q−1)})."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    G, Hpow = pgl3_pencil_generators(ctx, q)
    member = build("dgz", ctx, q=q).poly ** q * build("dual-dgz", ctx, q=q).poly
    coords = pencil_coordinates(member, G, Hpow)
    data = {"coordinates": None if coords is None else [repr(c) for c in coords], "fields": _fields(ctx)}
    data["summary"] = f"координаты в пучке: {data['coordinates']}"
    return coords is not None, data


def check_pgl3_line_multiplicity(q: int):
    """I(P, ℓ ∩ C_Λ) на F_q-прямой Z=0: q²−q в F_q-точке, q² в точке из GF(q²)∖GF(q)."""
    p, e = prime_power(q)
    ctx = field_for(p, 2 * e)
    f = build("pgl3-pencil", ctx, q=q).poly
    line = (0, 0, 1)
    rational = line_intersection_multiplicity(f, line, PointPG2.of(ctx, (1, 0, 0)))
    w = ctx.subfield_generator(2 * e)
    quadratic = line_intersection_multiplicity(f, line, PointPG2.of(ctx, (w, 1, 0)))
    data = {"rational": rational, "quadratic": quadratic, "expected": [q * q - q, q * q], "fields": _fields(ctx)}
    return (rational, quadratic) == (q * q - q, q * q), data


def check_pgl3_ordinary_points(q: int):
    """Точки PG(2,q): обыкновенные особенности кратности q²−q, касательные над GF(q²), но не над GF(q)."""
    p, e = prime_power(q)
    ctx = field_for(p, 2 * e)
    f = build("pgl3-pencil", ctx, q=q, lam=1).poly
    points = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    outcome = {}
    for coords in points:
        r = multiplicity_at(f, PointPG2.of(ctx, coords))
        over_fq = [line for line, _ in r.tangent_lines if all(e % ctx.element_degree(c) == 0 for c in line)]
        outcome[str(coords)] = {
            "multiplicity": r.multiplicity,
            "ordinary": r.is_ordinary,
            "tangents": len(r.tangent_lines),
            "over_fq": len(over_fq),
        }
    ok = all(
        v["multiplicity"] == q * q - q and v["ordinary"] and v["tangents"] == q * q - q and not v["over_fq"]
        for v in outcome.values()
    )
    return ok, {"points": outcome, "fields": _fields(ctx)}


def check_fermat_under_diagonal(q: int):
    """Fermat под diag(g,1,1), g ∈ F_q^*: скаляр 1."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    f = fermat_form(ctx, q)
    scalars = [check_invariance(f, Projectivity.diag(ctx, g, 1, 1)) for g in ctx.subfield_elements(e)[1:]]
    ok = all(c is not None and c.value == 1 for c in scalars)
    return ok, {"scalars": [None if c is None else repr(c) for c in scalars], "fields": _fields(ctx)}


# ── проверки: AGL и двойственный AGL ──

def check_agl_line_product(q: int):
    """(D_{2,1}/Z)^{q−1}: AGL-инвариантность и аффинная форма M^{q−1}."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    G = agl_line_product(ctx, q)
    scalars = [check_invariance(G, A) for A in generators_for(GroupId("AGL2", q), ctx)]
    affine = moore_determinant(ctx, q, 2, 1, affine=True) ** (q - 1)
    matches = proportional(G.dehomogenize("Z"), affine) is not None
    data = {"invariant": all(c is not None for c in scalars), "affine_form": matches, "fields": _fields(ctx)}
    return data["invariant"] and matches, data


def check_moore_product(q: int):
    """∏_{κ ∈ F_q^*} (M − κ) = M^{q−1} − 1 для аффинного определителя Мура M."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    M = moore_determinant(ctx, q, 2, 1, affine=True)
    product = MultiPoly.constant(ctx, 1)
    for kappa in ctx.subfield_elements(e)[1:]:
        product = product * (M - FieldElement(ctx, kappa))
    ok = product == M ** (q - 1) - 1
    return ok, {"degree": product.degree(), "fields": _fields(ctx)}


def check_agl_dgz_member(q: int):
    """DGZ — член λ=0 пучка AGL."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    dgz = build("dgz", ctx, q=q).poly
    coords = pencil_coordinates(dgz, *agl_pencil_generators(ctx, q))
    ok = coords is not None and coords[0].value == 1 and not coords[1]
    return ok, {"coordinates": None if coords is None else [repr(c) for c in coords], "fields": _fields(ctx)}


def check_dual_agl_generator(q: int):
    """𝓕·(Y^qZ − YZ^q)^{q−1} = D_{2,1}^{q−1}; порождающие DualAGL2 фиксируют (1:0:0)."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    _, Y, Z, _ = gens(ctx)
    F = dual_agl_second_generator(ctx, q)
    identity = F * (Y**q * Z - Y * Z**q) ** (q - 1) == moore_h(ctx, q) ** (q - 1)
    p0 = PointPG2.of(ctx, (1, 0, 0))
    fixed = all(
        PointPG2.of(ctx, A.apply(p0.coords)) == p0
        for A in generators_for(GroupId("DualAGL2", q), ctx)
    )
    return identity and fixed, {"identity": identity, "fixes_p0": fixed, "fields": _fields(ctx)}


# ── проверки: пучок PGU ──

def check_pgu_alpha3_scalars(n: int):
    """diag(c, c^{n+1}, 1) без нормализации умножает форму пучка на c^{n³+1} независимо от Λ."""
    p, h = prime_power(n)
    ctx = field_for(p, 2 * h)
    f = build("pgu-pencil", ctx, n=n).poly
    results = {}
    for c in ctx.subfield_elements(2 * h)[1:]:
        rows = ((c, 0, 0), (0, ctx.power(c, n + 1), 0), (0, 0, 1))
        scalar = proportional(linear_substitute(f, rows), f)
        results[ctx.log(c)] = scalar is not None and scalar.value == ctx.power(c, n**3 + 1)
    return all(results.values()), {"scalars_match": results, "fields": _fields(ctx)}


def check_pgu_partial(n: int):
    """∂V/∂Y = Z^{n³} − Λ·F^{n²−n}·Z^n."""
    p, h = prime_power(n)
    ctx = field_for(p, 2 * h)
    _, _, Z, L = gens(ctx)
    f = build("pgu-pencil", ctx, n=n).poly
    F = hermitian_form(ctx, n)
    expected = Z ** (n**3) - L * F ** (n * n - n) * Z**n
    return partial_derivative(f, "Y") == expected, {"fields": _fields(ctx)}


def _pgu_lambda_samples(n: int, lam: str | None, limit: int = 10) -> list[str]:
    if lam not in (None, "sym"):
        return [lam]
    h = prime_power(n)[1]
    order = n**4 - 1
    return [f"g{4 * h}^{i}" for i in range(1, order) if i % order][:limit]


def check_pgu_nonsingular(n: int, m: int, lam: str | None = None):
    """Члены пучка с λ ≠ 1 не имеют особых точек над GF(n^m)."""
    p, h = prime_power(n)
    found = {}
    fields = []
    for spec in _pgu_lambda_samples(n, lam):
        ctx = _ambient(p, m * h, 2 * h, lambda_degree(spec, p))
        value = parse_lambda(spec, ctx)
        if value.value == 1:
            continue
        f = build("pgu-pencil", ctx, n=n, lam=value).poly
        points = singular_points(f, m, q=n)
        if points:
            found[spec] = [r.to_json() for r in points]
        fields.append(ctx)
    data = {
        "m": m,
        "singular": found,
        "fields": _fields(*set(fields)),
        "summary": f"нет особых точек над GF({n}^{m})" if not found else f"особые точки при {list(found)}",
    }
    return not found, data


def check_pgu_splitting(n: int):
    """Член λ=1 — произведение касательных к H_n в её n³+1 точках."""
    p, h = prime_power(n)
    ctx = field_for(p, 2 * h)
    f = build("pgu-pencil", ctx, n=n, lam=1).poly
    H = hermitian_form(ctx, n)
    lines = [(tangent_line(H, P), 1) for P in rational_points(H, 2, q=n)]
    ok = len(lines) == n**3 + 1 and verify_line_splitting(f, lines)
    return ok, {"lines": len(lines), "fields": _fields(ctx)}


def check_pgu_frobenius_scan(n: int):
    """Фробениусова неклассичность над GF(n⁴) ровно при λ^{n+1} = 1."""
    p, h = prime_power(n)
    ctx = field_for(p, 4 * h)
    qprime = n**4
    holds, expected = [], []
    for lam in ctx.subfield_elements(4 * h)[1:]:
        f = build("pgu-pencil", ctx, n=n, lam=FieldElement(ctx, lam)).poly
        w = extract_witness(f, n)
        if w is not None and frobenius_check(w, qprime).verdict:
            holds.append(lam)
        if ctx.power(lam, n + 1) == 1:
            expected.append(lam)
    data = {
        "qprime": qprime,
        "frobenius_nonclassical": _logs(ctx, holds),
        "expected": _logs(ctx, expected),
        "fields": _fields(ctx),
    }
    return sorted(holds) == sorted(expected), data


def check_pgu_hefez_voloch(n: int):
    """Для λ^{n+1} = 1, λ ≠ 1: число точек над GF(n⁴) равно d(q'−d+2)."""
    p, h = prime_power(n)
    ctx = field_for(p, 4 * h)
    d, qprime = n**3 + 1, n**4
    target = hefez_voloch_count(d, qprime)
    counts = {}
    for lam in ctx.subfield_elements(2 * h)[1:]:
        if lam == 1 or ctx.power(lam, n + 1) != 1:
            continue
        f = build("pgu-pencil", ctx, n=n, lam=FieldElement(ctx, lam)).poly
        counts[ctx.log(lam)] = count_points(f, 4, q=n)
    ok = bool(counts) and all(c == target for c in counts.values())
    return ok, {"counts": counts, "expected": target, "fields": _fields(ctx)}


# ── проверки: Зингер ──

def check_singer_net_fixed(q: int):
    """Три монома сети получают от σ один и тот же скаляр: вся сеть σ-инвариантна."""
    p, e = prime_power(q)
    ctx = field_for(p, 3 * e)
    X, Y, Z, _ = gens(ctx)
    sigma = singer_cycle(ctx, q)
    monomials = [X ** (q + 1) * Y, Y ** (q + 1) * Z, Z ** (q + 1) * X]
    scalars = [check_invariance(m, sigma) for m in monomials]
    ok = all(c is not None for c in scalars) and len({c.value for c in scalars}) == 1
    return ok, {"scalars": [None if c is None else repr(c) for c in scalars], "fields": _fields(ctx)}


def check_singer_pellikaan_witness(q: int, cap: int = 1_000_000):
    """Диагональная проективность, переводящая C_{(ω:ω²:1)} в кривую Пелликаана."""
    p, e = prime_power(q)
    if p == 3:
        return True, {"skipped": True, "summary": "в характеристике 3 нет ω"}
    ctx = field_for(p, 6 * e)
    f = singer_net_omega(ctx, q)
    omega, _ = primitive_cube_root(ctx, q)
    g = build("pellikaan", ctx, q=q).poly
    witness, searched = None, []
    for degree in sorted(d for d in range(1, ctx.k + 1) if ctx.k % d == 0):
        if (ctx.p**degree - 1) ** 2 > cap:
            break
        searched.append(degree)
        witness = projective_equivalence_witness(f.poly, g, degree=degree, cap=cap)
        if witness is not None:
            break
    if witness is None:
        if len(searched) < len([d for d in range(1, ctx.k + 1) if ctx.k % d == 0]):
            raise SearchSpaceExceeded(f"свидетель не найден в подполях степеней {searched} при потолке {cap}")
        return False, {"searched": searched, "fields": _fields(ctx)}
    c, d = witness.entries[0][0], witness.entries[1][1]
    printed = {
        "d^(q+1)=ω": ctx.power(d, q + 1) == omega.value,
        "c^q·d^(q+2)=1": ctx.mul(ctx.power(c, q), ctx.power(d, q + 2)) == 1,
    }
    data = {
        "witness": witness.as_indices(),
        "search_degree": searched[-1],
        "omega_field": f.notes["omega_field"],
        "printed_conditions": printed,
        "fields": _fields(ctx),
    }
    if not all(printed.values()):
        logger.warning("Свидетель %s не удовлетворяет напечатанным условиям: %s", witness.label, printed)
    return True, data


# ── проверки: коника PGL(2, q) ──

def check_pgl2_splitting(q: int):
    """Член λ=1 распадается на q+1 касательных к конике Y² − 2XZ."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    f = build("pgl2-pencil", ctx, q=q, lam=1).poly
    lines = conic_tangent_lines(conic_form(ctx), q)
    ok = len(lines) == q + 1 and verify_line_splitting(f, lines)
    return ok, {"lines": len(lines), "fields": _fields(ctx)}


def check_pgl2_internal_points(q: int):
    """При λ=−1 особые точки — ровно q(q−1)/2 двойных внутренних точек коники."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    f = build("pgl2-pencil", ctx, q=q, lam=FieldElement(ctx, ctx.neg(1))).poly
    conic = conic_form(ctx)
    conic_points = rational_points(conic, 1, q=q)
    reports = singular_points(f, 1, q=q)
    kinds = [classify_wrt_conic(conic, r.point, conic_points) for r in reports]
    ok = (
        len(reports) == q * (q - 1) // 2
        and all(r.multiplicity == 2 for r in reports)
        and all(k == "internal" for k in kinds)
    )
    data = {
        "singular": [r.to_json() for r in reports],
        "classes": kinds,
        "external": kinds.count("external"),
        "fields": _fields(ctx),
    }
    return ok, data


def _pgl2_lambda_samples(q: int, lam: str | None, limit: int = 4) -> list[str]:
    if lam not in (None, "sym"):
        return [lam]
    e = prime_power(q)[1]
    order = q * q - 1
    # исключаем ±1: показатели, кратные (q²−1)/2
    return [f"g{2 * e}^{i}" for i in range(1, order) if i % (order // 2)][:limit]


def check_pgl2_nonsingular(q: int, m: int, lam: str | None = None):
    """При λ ∉ {0, ±1} особых точек над GF(q^m) нет."""
    p, e = prime_power(q)
    found, fields = {}, []
    for spec in _pgl2_lambda_samples(q, lam):
        ctx = _ambient(p, m * e, 2 * e, lambda_degree(spec, p))
        value = parse_lambda(spec, ctx)
        if value.value in (0, 1, ctx.neg(1)):
            continue
        points = singular_points(build("pgl2-pencil", ctx, q=q, lam=value).poly, m, q=q)
        if points:
            found[spec] = [r.to_json() for r in points]
        fields.append(ctx)
    return not found, {"m": m, "singular": found, "fields": _fields(*set(fields))}


# ── проверки: гемисистемы ──

def check_hemisystem_factorizations(q: int):
    """V_1 = −2(X^q − XZ^{q−1})(Y^q − YZ^{q−1}), V_{−1} = −2(YZ^{q−1} − X^q)(XZ^{q−1} − Y^q)."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    X, Y, Z, _ = gens(ctx)
    zq = Z ** (q - 1)
    plus = build("hemisystem", ctx, q=q, lam=1).poly
    minus = build("hemisystem", ctx, q=q, lam=FieldElement(ctx, ctx.neg(1))).poly
    split_plus = plus == (X**q - X * zq) * (Y**q - Y * zq) * -2
    split_minus = minus == (Y * zq - X**q) * (X * zq - Y**q) * -2
    data = {"lambda=1": split_plus, "lambda=-1": split_minus, "constant": -2, "fields": _fields(ctx)}
    return split_plus and split_minus, data


def check_birational_identity(q: int):
    """V(YZ, XZ, XY) = (XY)^{q−1}·Z²·V(X, Y, Z) для всего пучка."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    X, Y, Z, _ = gens(ctx)
    V = build("hemisystem", ctx, q=q).poly
    ok = substitute(V, X=Y * Z, Y=X * Z, Z=X * Y) == (X * Y) ** (q - 1) * Z * Z * V
    return ok, {"fields": _fields(ctx)}


def _hemisystem_lambdas(q: int, lam: str | None) -> list[str]:
    if lam not in (None, "sym"):
        return [lam]
    return [str(v) for v in range(q) if v not in (1, q - 1)]


def check_hemisystem_singularities(q: int, lam: str | None = None):
    """λ ∉ {±1}: q узлов (ξ:ξ:1) и две (q−1)-кратные точки с касательной Z=0."""
    p, e = prime_power(q)
    ctx = _ambient(p, e, lambda_degree(lam, p))
    outcome = {}
    ok = True
    for spec in _hemisystem_lambdas(q, lam):
        value = parse_lambda(spec, ctx)
        f = build("hemisystem", ctx, q=q, lam=value).poly
        reports = {r.point: r for r in singular_points(f, 1, q=q)}
        corners = [PointPG2.of(ctx, (1, 0, 0)), PointPG2.of(ctx, (0, 1, 0))]
        good = len(reports) == q + 2
        for xi in ctx.subfield_elements(e):
            r = reports.get(PointPG2.of(ctx, (xi, xi, 1)))
            want = {((1, 0, ctx.neg(xi)), 1), ((0, 1, ctx.neg(xi)), 1)}
            good = good and r is not None and r.multiplicity == 2 and set(r.tangent_lines) == want
        for P in corners:
            r = reports.get(P)
            good = good and r is not None and r.multiplicity == q - 1 and r.tangent_lines == [((0, 0, 1), q - 1)]
        outcome[spec] = {"count": len(reports), "ok": good, "points": [r.to_json() for r in reports.values()]}
        ok = ok and good
    return ok, {"lambdas": outcome, "fields": _fields(ctx)}


def check_hemisystem_line_multiplicity(q: int):
    """I((1:0:0), {Z=0} ∩ C_Λ) = q."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    f = build("hemisystem", ctx, q=q).poly
    mult = line_intersection_multiplicity(f, (0, 0, 1), PointPG2.of(ctx, (1, 0, 0)))
    return mult == q, {"multiplicity": mult, "expected": q, "fields": _fields(ctx)}


# ── проверки: частные ──

def check_quotient_substitution(q: int):
    """D_Λ(vXY, (X+Y)Z, Z²) = Z²·V_Λ: верно при v = 2, неверно при v = −2."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    X, Y, Z, _ = gens(ctx)
    D = build("pgl2-pencil", ctx, q=q).poly
    V = build("hemisystem", ctx, q=q).poly
    target = Z * Z * V
    plus = substitute(D, X=X * Y * 2, Y=(X + Y) * Z, Z=Z * Z) == target
    minus = substitute(D, X=X * Y * -2, Y=(X + Y) * Z, Z=Z * Z) == target
    if minus:
        logger.warning("Подстановка v=−2xy неожиданно даёт тождество")
    return plus, {"v=2xy": plus, "v=-2xy": minus, "fields": _fields(ctx)}


def check_hyperelliptic_identity(q: int):
    """−2·V_Λ(x, x−v) = (2u − (v^q − v))² − v^{2q} − v² + 2Λv^{q+1}, u = x^q − x."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    X, Y, Z, L = gens(ctx)
    V = build("hemisystem", ctx, q=q).poly.dehomogenize("Z")
    lhs = substitute(V, Y=X - Y) * -2
    u = X**q - X
    rhs = (u * 2 - (Y**q - Y)) ** 2 - Y ** (2 * q) - Y * Y + L * Y ** (q + 1) * 2
    ok = lhs == rhs
    return ok, {
        "constant": -2,
        "model": "W² = V^{2q−2} − 2λV^{q−1} + 1",
        "summary": "модель W² = V^{2q−2} − 2λV^{q−1} + 1 (константа −2)",
        "fields": _fields(ctx),
    }


def check_hyperelliptic_twist(q: int):
    """V ↦ ζV с ζ^{q−1} = −1 переводит V^{2q−2} − 2ΛV^{q−1} + 1 в V^{2q−2} + 2ΛV^{q−1} + 1."""
    p, e = prime_power(q)
    ctx = field_for(p, 2 * e)
    X, _, _, L = gens(ctx)
    minus_one = ctx.neg(1)
    zeta = next(z for z in ctx.subfield_elements(2 * e)[1:] if ctx.power(z, q - 1) == minus_one)
    found = X ** (2 * q - 2) - L * X ** (q - 1) * 2 + 1
    printed = X ** (2 * q - 2) + L * X ** (q - 1) * 2 + 1
    ok = substitute(found, X=X * FieldElement(ctx, zeta)) == printed
    return ok, {"zeta": ctx.log(zeta), "fields": _fields(ctx)}


# ── проверки: неклассичность ──

def check_hermitian_frobenius(n: int):
    """H_n фробениусово неклассична над GF(n²) и имеет d(q'−d+2) = n³+1 точек."""
    p, h = prime_power(n)
    ctx = field_for(p, 2 * h)
    f = hermitian_form(ctx, n)
    w = extract_witness(f, n, curve=f"hermitian(n={n})")
    if w is None:
        return False, {"witness": None, "fields": _fields(ctx)}
    cert = frobenius_check(w, n * n)
    count = count_points(f, 2, q=n)
    expected = hefez_voloch_count(n + 1, n * n)
    return cert.verdict and count == expected, {
        "certificate": cert.to_json(), "count": count, "expected": expected, "fields": _fields(ctx),
    }


def check_fermat_no_witness(q: int = 3):
    """У X^{q−1} + Y^{q−1} + Z^{q−1} нет свидетеля при s = p."""
    p, e = prime_power(q)
    ctx = field_for(p, e)
    w = extract_witness(fermat_form(ctx, q), p)
    return w is None, {"witness": None if w is None else w.to_json(), "fields": _fields(ctx)}


def check_pgu_zero_member(n: int):
    """Член λ=0 (H_{n³}) фробениусово неклассичен над GF(n⁶); число точек = d(q'−d+2)."""
    p, h = prime_power(n)
    ctx = field_for(p, 6 * h)
    f = build("pgu-pencil", ctx, n=n, lam=0).poly
    w = find_witness(f, curve=f"pgu-pencil(n={n}, λ=0)")
    qprime = n**6
    if w is None:
        return False, {"witness": None, "fields": _fields(ctx)}
    cert = frobenius_check(w, qprime)
    count = count_points(f, 6, q=n)
    expected = hefez_voloch_count(n**3 + 1, qprime)
    return cert.verdict and count == expected, {
        "s": w.s, "verdict": cert.verdict, "count": count, "expected": expected, "fields": _fields(ctx),
    }


def check_dgz_double_frobenius(q: int):
    """F_{3,1}: касательная в общей точке проходит через образы при x ↦ x^q и x ↦ x^{q³}.

    q' = q² записывается как данные: там образ лежит на касательной
    только в точках множителя Мура, который отделён от F_{3,1}.
    """
    p, e = prime_power(q)
    ctx = field_for(p, e)
    f = build("dgz", ctx, q=q).poly
    required = (q, q**3)
    verdicts = {str(qp): frobenius_tangent_quotient(f, qp) is not None for qp in (q, q * q, q**3)}
    data = {"frobenius": verdicts, "required": [str(qp) for qp in required], "fields": _fields(ctx)}
    # путь через свидетель U_i^q = ∂f невозможен: deg ∂f = q³ − q² − 1 не делится на q
    data["euler_witness"] = extract_witness(f, q) is not None
    passed = all(verdicts[str(qp)] for qp in required)
    data["summary"] = f"F_{{3,1}}(q={q}): " + ", ".join(f"q'={k}: {v}" for k, v in verdicts.items())
    return passed, data


# ── проверки: порядки групп ──

def check_closure_order(tag: str, q: int | None = None, n: int | None = None, cap: int = 1_000_000):
    gid = _group(tag, q, n)
    gens_ = generators_for(gid)
    order = closure_order(gens_, cap)
    expected = order_formula(gid)
    printed = printed_order_formula(gid)
    data = {
        "group": gid.label(),
        "closure": order,
        "formula": expected,
        "generators": export_generators(gid, gens_),
        "fields": _fields(gens_[0].ctx),
    }
    if printed != expected:
        data["printed_formula"] = printed
        data["discrepancy"] = printed != order
        if printed != order:
            logger.warning("%s: напечатанный порядок %d расходится с замыканием %s", gid.label(), printed, order)
    data["summary"] = f"{gid.label()}: замыкание {order}, формула {expected}"
    if order is None:
        raise SearchSpaceExceeded(f"замыкание {gid.label()} больше {cap}")
    return order == expected, data


def check_singer_order(q: int):
    """σ имеет порядок q² + q + 1."""
    p, e = prime_power(q)
    ctx = field_for(p, 3 * e)
    order = singer_cycle(ctx, q).order()
    return order == q * q + q + 1, {"order": order, "fields": _fields(ctx)}


# ── проверки: пространства инвариантных форм ──

def check_triangle_forms(q: int, cap: int = 120):
    """Треугольная группа, степень q−1: единственное пространство — линия Ферма."""
    gid = GroupId("Triangle", q)
    spaces = invariant_form_space(gid, q - 1, gid.e, cap=cap)
    fermat = fermat_form(spaces[0].basis[0].ctx, q) if spaces and spaces[0].basis else None
    ok = len(spaces) == 1 and spaces[0].dimension == 1 and spaces[0].contains(fermat)
    return ok, {"spaces": [s.to_json() for s in spaces]}


def check_conic_forms(q: int, cap: int = 120):
    """PGL(2, q) на формах степени 2: одно из пространств содержит Y² − 2XZ."""
    gid = GroupId("PGL2Conic", q)
    spaces = invariant_form_space(gid, 2, gid.e, cap=cap)
    ok = any(s.contains(conic_form(s.basis[0].ctx)) for s in spaces if s.basis)
    return ok, {"spaces": [s.to_json() for s in spaces]}


def check_singer_forms(q: int, cap: int = 120):
    """Зингер на формах степени q+2: пространство, натянутое на мономы сети."""
    gid = GroupId("Singer", q)
    spaces = invariant_form_space(gid, q + 2, 3 * gid.e, cap=cap)
    found = False
    for s in spaces:
        if not s.basis:
            continue
        X, Y, Z, _ = gens(s.basis[0].ctx)
        net = [X ** (q + 1) * Y, Y ** (q + 1) * Z, Z ** (q + 1) * X]
        if s.dimension == 3 and all(s.contains(m) for m in net):
            found = True
    return found, {"dimensions": [s.dimension for s in spaces]}


# ── проверки: число точек ──

def count_curve(
    curve_id: str,
    m: int,
    *,
    q: int | None = None,
    n: int | None = None,
    lam: str | None = None,
    jobs: int = 1,
) -> dict:
    """Число точек кривой каталога над GF(base^m); base = n для кривых от n, иначе q.

    Символьный λ у пучка даёт MissingParameter.
    """
    base = n if curve_id in N_BASED else q
    if base is None:
        raise InvalidParameters(f"{curve_id} требует {'n' if curve_id in N_BASED else 'q'}")
    p, e = prime_power(base)
    degree = required_degree(curve_id, q, n) if curve_id in N_BASED else e
    ctx = _ambient(p, m * e, degree, lambda_degree(lam, p))
    spec = build(curve_id, ctx, q=None if curve_id in N_BASED else q, n=n, lam=parse_lambda(lam, ctx))
    started = time.perf_counter()
    count = count_points(spec.poly, m, q=base, jobs=jobs)
    elapsed = int((time.perf_counter() - started) * 1000)
    logger.info("%s над GF(%d^%d): %d точек за %d мс", spec.label(), base, m, count, elapsed)
    return {
        "point_count": True,
        "curve_id": curve_id,
        "q": base,
        "m": m,
        "count": count,
        "elapsed_ms": elapsed,
        "fields": _fields(ctx),
    }


def dgz_expected_count(q: int, m: int) -> int | None:
    return {
        1: 0,
        2: q**4 - q,
        3: q**6 - q**5 - q**4 + q**3,
        4: q**4 - q,
        5: 0,
        6: q**6 - q**5 + q**3 - q,
    }.get(m)


def check_dgz_count(q: int, m: int):
    """N_m кривой DGZ против формул (N₁..N₆)."""
    data = count_curve("dgz", m, q=q)
    expected = dgz_expected_count(q, m)
    data["expected"] = expected
    data["summary"] = f"N_{m} = {data['count']}" + ("" if expected is None else f" (ожидалось {expected})")
    return expected is None or data["count"] == expected, data


# ── реестр ──

def _cert(name: str, curve_id: str, tag: str, p: SuiteParams, *, q=None, n=None, expect=True,
          words=True, transport=False, symbolic=True) -> Check:
    return Check(name, check_certificate, {
        "curve_id": curve_id, "tag": tag, "q": q, "n": n,
        "lam": p.lam if symbolic else None, "expect": expect,
        "words": p.words if words else 0, "seed": p.seed, "transport": transport,
    })


def _suite_dgz_points(p: SuiteParams) -> list[Check]:
    top = p.ext or p.dgz_ext
    return [Check(f"dgz-count-m{m}", check_dgz_count, {"q": p.q, "m": m}) for m in range(1, top + 1)]


def _suite_pgl3(p: SuiteParams) -> list[Check]:
    q = p.q
    return [
        _cert("dgz-pgl3", "dgz", "PGL3", p, q=q),
        _cert("dgz-psl3", "dgz", "PSL3", p, q=q, words=False),
        _cert("dual-dgz-pgl3", "dual-dgz", "PGL3", p, q=q, words=False),
        _cert("pgl3-pencil-pgl3", "pgl3-pencil", "PGL3", p, q=q, words=False),
        _cert("fermat-not-pgl3", "fermat", "PGL3", p, q=q, expect=False, words=False),
        Check("moore-determinant-scalar", check_moore_identity, {"q": q, "seed": p.seed}),
        Check("pgl3-member-split", check_pgl3_member_split, {"q": q}),
        Check("pgl3-line-multiplicity", check_pgl3_line_multiplicity, {"q": q}),
        Check("pgl3-ordinary-points", check_pgl3_ordinary_points, {"q": q}),
    ]


def _suite_agl(p: SuiteParams) -> list[Check]:
    q = p.q
    return [
        _cert("agl-pencil-agl2", "agl-pencil", "AGL2", p, q=q),
        Check("agl-line-product", check_agl_line_product, {"q": q}),
        Check("moore-product", check_moore_product, {"q": q}),
        Check("dgz-member", check_agl_dgz_member, {"q": q}),
    ]


def _suite_dual_agl(p: SuiteParams) -> list[Check]:
    q = p.q
    return [
        _cert("dual-agl-pencil-dualagl2", "dual-agl-pencil", "DualAGL2", p, q=q),
        Check("dual-agl-generator", check_dual_agl_generator, {"q": q}),
    ]


def _suite_pgu(p: SuiteParams) -> list[Check]:
    n = p.n
    top = p.ext or p.singular_ext
    checks = [
        _cert("pgu-pencil-pgu3", "pgu-pencil", "PGU3", p, n=n),
        _cert("hermitian-pgu3", "hermitian", "PGU3", p, n=n, words=False),
        Check("alpha3-scalars", check_pgu_alpha3_scalars, {"n": n}),
        Check("partial-y", check_pgu_partial, {"n": n}),
        Check("lambda-1-splitting", check_pgu_splitting, {"n": n}),
        Check("frobenius-scan", check_pgu_frobenius_scan, {"n": n}),
        Check("hefez-voloch", check_pgu_hefez_voloch, {"n": n}),
    ]
    checks += [
        Check(f"nonsingular-m{m}", check_pgu_nonsingular, {"n": n, "m": m, "lam": p.lam})
        for m in range(1, top + 1)
    ]
    return checks


def _suite_singer(p: SuiteParams) -> list[Check]:
    q = p.q
    return [
        Check("net-fixed", check_singer_net_fixed, {"q": q}),
        _cert("pellikaan-normalizer", "pellikaan", "SingerNormalizer", p, q=q),
        _cert("singer-big-normalizer", "singer-big", "SingerNormalizer", p, q=q, transport=True),
        Check("omega-witness", check_singer_pellikaan_witness, {"q": q, "cap": p.witness_cap}),
    ]


def _suite_triangle(p: SuiteParams) -> list[Check]:
    q = p.q
    return [
        _cert("triangle-pencil-triangle", "triangle-pencil", "Triangle", p, q=q),
        _cert("fermat-triangle", "fermat", "Triangle", p, q=q, words=False),
        Check("fermat-diagonal-scalar", check_fermat_under_diagonal, {"q": q}),
    ]


def _suite_pgl2(p: SuiteParams) -> list[Check]:
    q = p.q
    top = p.ext or p.singular_ext
    checks = [
        _cert("pgl2-pencil-conic", "pgl2-pencil", "PGL2Conic", p, q=q),
        Check("lambda-1-splitting", check_pgl2_splitting, {"q": q}),
        Check("lambda-minus-1-internal", check_pgl2_internal_points, {"q": q}),
    ]
    checks += [
        Check(f"nonsingular-m{m}", check_pgl2_nonsingular, {"q": q, "m": m, "lam": p.lam})
        for m in range(1, top + 1)
    ]
    return checks


def _suite_hemisystem(p: SuiteParams) -> list[Check]:
    q = p.q
    return [
        _cert("hemisystem-linear", "hemisystem", "HemisystemLinear", p, q=q),
        Check("factorizations", check_hemisystem_factorizations, {"q": q}),
        Check("birational-identity", check_birational_identity, {"q": q}),
        Check("singularities", check_hemisystem_singularities, {"q": q, "lam": p.lam}),
        Check("line-multiplicity", check_hemisystem_line_multiplicity, {"q": q}),
    ]


def _suite_frobenius(p: SuiteParams) -> list[Check]:
    return [
        Check("hermitian", check_hermitian_frobenius, {"n": p.n}),
        Check("fermat-no-witness", check_fermat_no_witness, {"q": 3}),
        Check("pgu-zero-member", check_pgu_zero_member, {"n": p.n}),
        Check("dgz-double-frobenius", check_dgz_double_frobenius, {"q": p.q}),
    ]


def _suite_group_orders(p: SuiteParams) -> list[Check]:
    q = p.q
    tags = ["PGL3", "PSL3", "AGL2", "DualAGL2", "Triangle", "Singer", "SingerNormalizer"]
    if q % 2:
        tags += ["PGL2Conic", "HemisystemLinear"]
    checks = [Check(f"order-{t}", check_closure_order, {"tag": t, "q": q, "cap": p.closure_cap}) for t in tags]
    checks.append(Check("order-PGU3", check_closure_order, {"tag": "PGU3", "n": p.n, "cap": p.closure_cap}))
    checks.append(Check("singer-cycle-order", check_singer_order, {"q": q}))
    return checks


def _suite_quotients(p: SuiteParams) -> list[Check]:
    q = p.q
    return [
        Check("pgl2-to-hemisystem", check_quotient_substitution, {"q": q}),
        Check("hyperelliptic-model", check_hyperelliptic_identity, {"q": q}),
        Check("hyperelliptic-twist", check_hyperelliptic_twist, {"q": q}),
        Check("birational-identity", check_birational_identity, {"q": q}),
    ]


def _suite_spaces(p: SuiteParams) -> list[Check]:
    q = p.q
    checks = [Check("triangle-degree-q-1", check_triangle_forms, {"q": 3 if q == 2 else q, "cap": p.form_space_cap})]
    checks.append(Check("conic-degree-2", check_conic_forms, {"q": q if q % 2 else 3, "cap": p.form_space_cap}))
    checks.append(Check("singer-degree-q+2", check_singer_forms, {"q": q, "cap": p.form_space_cap}))
    return checks


SUITES: dict[str, Callable[[SuiteParams], list[Check]]] = {
    "dgz-points": _suite_dgz_points,
    "pgl3-invariance": _suite_pgl3,
    "agl-pencil": _suite_agl,
    "dual-agl-pencil": _suite_dual_agl,
    "pgu-pencil": _suite_pgu,
    "singer-net": _suite_singer,
    "triangle": _suite_triangle,
    "pgl2-pencil": _suite_pgl2,
    "hemisystem": _suite_hemisystem,
    "frobenius-nc": _suite_frobenius,
    "group-orders": _suite_group_orders,
    "quotient-identities": _suite_quotients,
    "invariant-spaces": _suite_spaces,
}


def resolve_params(suite_id: str, params: SuiteParams | None) -> SuiteParams:
    """Подставляет значения по умолчанию и проверяет совместимость с набором."""
    if suite_id not in SUITES:
        raise UnknownSuite(f"неизвестный набор {suite_id!r}; доступны: {', '.join(SUITE_IDS)}")
    p = SuiteParams(**asdict(params)) if params is not None else SuiteParams()
    if p.q is None:
        p.q = 3 if suite_id in ODD_SUITES else 2
    p.n = p.n or 2
    prime_power(p.q)
    prime_power(p.n)
    if suite_id in ODD_SUITES and p.q % 2 == 0:
        raise InvalidParameters(f"набор {suite_id} требует нечётное q")
    if p.ext is not None and p.ext < 1:
        raise InvalidParameters("--ext должно быть ≥ 1")
    if p.lam is not None:
        lambda_degree(p.lam, prime_power(p.q)[0])
    return p


def _execute(check: Check, env: dict) -> CheckResult:
    configure(max_order=env["max_order"], modulus_table=env["modulus_table"])
    started = time.perf_counter()
    error = ""
    try:
        passed, data = check.func(**check.kwargs)
    except CurvelabError as exc:
        passed, data = False, {}
        error = f"{type(exc).__name__}: {exc}"
        logger.warning("Проверка %s: %s", check.name, error)
    except Exception as exc:
        logger.exception("Проверка %s упала с необработанной ошибкой", check.name)
        passed, data = False, {}
        error = f"{type(exc).__name__}: {exc}"
    elapsed = int((time.perf_counter() - started) * 1000)
    return CheckResult(check.name, bool(passed), data, elapsed, error)


def run_suite(suite_id: str, params: SuiteParams | None = None, jobs: int = 1) -> VerificationSuite:
    params = resolve_params(suite_id, params)
    checks = SUITES[suite_id](params)
    env = {"max_order": params.max_order, "modulus_table": params.modulus_table}
    logger.info("Набор %s: %d проверок, jobs=%d", suite_id, len(checks), jobs)
    if jobs > 1 and len(checks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_execute, checks, [env] * len(checks)))
    else:
        results = [_execute(check, env) for check in checks]

    fields: list[dict] = []
    for result in results:
        for info in result.data.pop("fields", []):
            if info not in fields:
                fields.append(info)
        level = logging.INFO if result.passed else logging.WARNING
        logger.log(level, "  %s: %s (%d мс)", result.name, "OK" if result.passed else "FAIL", result.elapsed_ms)

    suite = VerificationSuite(suite_id, params.to_json(), results, fields)
    logger.info("Набор %s завершён: %d/%d", suite_id, len(results) - len(suite.failed), len(results))
    return suite
