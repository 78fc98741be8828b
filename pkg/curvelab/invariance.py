"""Инвариантность форм относительно проективностей и групп.

Форма f инвариантна относительно A, если f∘A = c·f для некоторого c ≠ 0.
Символьный Λ при подстановке не трогается, поэтому одна проверка
покрывает весь пучок, если c не зависит от Λ.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .catalog import CurveSpec
from .exceptions import CapExceeded, InvalidParameters
from .gf import FieldCtx, FieldElement, field_for, galois_field
from .groups import GroupId, Projectivity, generators_for, mat_mul, rotation
from .mpoly import MultiPoly, evaluate, linear_substitute, proportional

logger = logging.getLogger(__name__)


def check_invariance(f: MultiPoly, A: Projectivity) -> FieldElement | None:
    """c с f∘A = c·f или None."""
    return proportional(linear_substitute(f, A), f)


@dataclass
class InvarianceCertificate:
    curve: CurveSpec
    group: GroupId
    per_generator: list[tuple[str, FieldElement | None]]
    verdict: bool
    transport: str = ""
    twist: dict | None = None

    @property
    def failing(self) -> list[str]:
        return [label for label, c in self.per_generator if c is None]

    def to_json(self) -> dict:
        data = {
            "curve": self.curve.label(),
            "group": self.group.label(),
            "generators": [
                {"label": label, "scalar": None if c is None else repr(c)}
                for label, c in self.per_generator
            ],
            "verdict": self.verdict,
        }
        if self.transport:
            data["transport"] = self.transport
        if self.twist is not None:
            data["frobenius_twist"] = self.twist
        return data


def frobenius_twist_scalar(f: MultiPoly, q: int) -> FieldElement | None:
    """Полулинейная проверка: f∘ρ, затем коэффициенты x ↦ x^q; результат ∝ f?"""
    h = round(math.log(q, f.ctx.p))
    twisted = linear_substitute(f, rotation(f.ctx)).frobenius_coefficients(h)
    return proportional(twisted, f)


def check_group_invariance(
    spec: CurveSpec,
    gid: GroupId,
    *,
    transport: Projectivity | None = None,
) -> InvarianceCertificate:
    """Проверка по всем порождающим generators_for(gid) над полем кривой.

    transport (если задан) сначала применяется к форме: так кривая,
    инвариантная относительно сопряжённой группы, проверяется против gid.
    """
    f = spec.poly
    if transport is not None:
        f = linear_substitute(f, transport)
    gens = generators_for(gid, f.ctx)
    per_generator = []
    for A in gens:
        c = check_invariance(f, A)
        per_generator.append((A.label, c))
        if c is None:
            logger.debug("%s: порождающая %s не сохраняет кривую", spec.label(), A.label)
    verdict = all(c is not None for _, c in per_generator)
    twist = None
    if gid.tag == "SingerNormalizer":
        c = frobenius_twist_scalar(f, gid.q)
        twist = {"holds": c is not None, "scalar": None if c is None else repr(c)}
    cert = InvarianceCertificate(
        spec, gid, per_generator, verdict,
        transport=transport.label if transport is not None else "",
        twist=twist,
    )
    logger.info("Инвариантность %s относительно %s: %s", spec.label(), gid.label(), verdict)
    return cert


def _point_off_curve(f: MultiPoly) -> tuple[int, int, int]:
    ctx = f.ctx
    for x, y in product(range(ctx.order), repeat=2):
        if evaluate(f, (x, y, 1)):
            return (x, y, 1)
    for x in range(ctx.order):
        if evaluate(f, (x, 1, 0)):
            return (x, 1, 0)
    if evaluate(f, (1, 0, 0)):
        return (1, 0, 0)
    raise InvalidParameters("форма обращается в ноль во всех точках PG(2) над полем контекста")


def cocycle_spot_check(
    f: MultiPoly,
    gens: Sequence[Projectivity],
    scalars: Sequence[FieldElement],
    *,
    words: int = 100,
    max_length: int = 8,
    seed: int = 0,
) -> dict:
    """Случайные слова A в порождающих: f(A·v)/f(v) равно произведению записанных c.

    Слово перемножается без нормализации, поэтому записанные скаляры
    (относительно хранимых матриц) перемножаются точно.
    """
    ctx = f.ctx
    if f.uses_lambda:
        f = f.specialize(ctx.generator)
    v = _point_off_curve(f)
    base = evaluate(f, v).value
    rng = random.Random(seed)
    failures = []
    for index in range(words):
        length = rng.randint(1, max_length)
        picks = [rng.randrange(len(gens)) for _ in range(length)]
        M = gens[picks[0]].entries
        expected = scalars[picks[0]].value
        for i in picks[1:]:
            M = mat_mul(ctx, M, gens[i].entries)
            expected = ctx.mul(expected, scalars[i].value)
        image = Projectivity(ctx, M).apply(v)
        actual = ctx.div(evaluate(f, image).value, base)
        if actual != expected:
            failures.append({"word": [gens[i].label for i in picks], "expected": expected, "actual": actual})
    if failures:
        logger.warning("Проверка коцикла: %d из %d слов не сошлись", len(failures), words)
    return {"words": words, "point": list(v), "failures": failures, "holds": not failures}


# ── пространства инвариантных форм ──

def degree_monomials(d: int) -> list[tuple[int, int, int, int]]:
    """Мономы степени d в порядке убывания показателя X, затем Y."""
    return [(a, b, d - a - b, 0) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def action_matrix(A: Projectivity, monomials: Sequence[tuple[int, int, int, int]]) -> np.ndarray:
    """Столбец j — вектор коэффициентов m_j∘A в базисе monomials."""
    ctx = A.ctx
    index = {m: i for i, m in enumerate(monomials)}
    M = np.zeros((len(monomials), len(monomials)), dtype=np.int64)
    for j, m in enumerate(monomials):
        image = linear_substitute(MultiPoly(ctx, {m: 1}), A)
        for e, c in image.terms.items():
            M[index[e], j] = c
    return M


@dataclass
class InvariantSpace:
    scalars: list[tuple[str, FieldElement]]
    basis: list[MultiPoly] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, f: MultiPoly) -> bool:
        """f лежит в линейной оболочке базиса."""
        if not f:
            return True
        if not self.basis:
            return False
        monomials = sorted({e for g in self.basis for e in g.terms} | set(f.terms))
        GF = galois_field(f.ctx)
        rows = [[g.terms.get(e, 0) for e in monomials] for g in self.basis]
        target = [f.terms.get(e, 0) for e in monomials]
        rank = np.linalg.matrix_rank(GF(rows))
        return np.linalg.matrix_rank(GF(rows + [target])) == rank

    def to_json(self) -> dict:
        return {
            "scalars": [{"label": label, "scalar": repr(c)} for label, c in self.scalars],
            "dimension": self.dimension,
            "basis": [g.to_text() for g in self.basis],
        }


def invariant_form_space(
    gid: GroupId,
    d: int,
    E: int = 1,
    *,
    cap: int = 120,
    ctx: FieldCtx | None = None,
) -> list[InvariantSpace]:
    """Все совместные собственные подпространства действия группы на формах степени d.

    Собственные значения ищутся перебором GF(p^E)^*. Пересечение идёт
    по порождающим с ранним выходом на нулевом пространстве.
    """
    if d < 1:
        raise InvalidParameters("степень d должна быть ≥ 1")
    monomials = degree_monomials(d)
    if len(monomials) > cap:
        raise CapExceeded(f"размерность {len(monomials)} больше потолка {cap}")
    if ctx is None:
        ctx = field_for(gid.p, math.lcm(gid.required_degree(), E))
    ctx.check_subfield(E)
    GF = galois_field(ctx)
    gens = generators_for(gid, ctx)
    candidates = ctx.subfield_elements(E)[1:]
    n = len(monomials)
    spaces: list[tuple[list[tuple[str, FieldElement]], object]] = [([], GF(np.eye(n, dtype=np.int64)))]
    for A in gens:
        M = GF(action_matrix(A, monomials))
        refined = []
        for scalars, B in spaces:
            Bt = B.T
            image = M @ Bt
            for c in candidates:
                W = (image - GF(c) * Bt).null_space()
                if W.shape[0]:
                    refined.append((scalars + [(A.label, FieldElement(ctx, c))], W @ B))
        spaces = refined
        if not spaces:
            break
    result = []
    for scalars, B in spaces:
        rows = B.view(np.ndarray)
        basis = [
            MultiPoly(ctx, {m: int(v) for m, v in zip(monomials, row) if v})
            for row in rows
        ]
        result.append(InvariantSpace(scalars, basis))
    logger.info(
        "Инвариантные формы %s степени %d (E=%d): %s",
        gid.label(), d, E, [s.dimension for s in result],
    )
    return result
