"""Неклассичность и фробениусова неклассичность плоских кривых.

Свидетель неклассичности: формы U_1, U_2, U_3 и H с
U_1^s·X + U_2^s·Y + U_3^s·Z = H·F, s = p^h. Здесь используется только путь
через тождество Эйлера: U_i — корни степени s из частных производных,
H = deg F (константа; ноль при p | deg F).

Фробениусова неклассичность над GF(q'): U_1·X^{q'/s} + U_2·Y^{q'/s} +
U_3·Z^{q'/s} делится на F.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .exceptions import InvalidParameters
from .mpoly import MultiPoly, divide_exact, gens, partial_derivative, qth_root

logger = logging.getLogger(__name__)


@dataclass
class NonclassicalityWitness:
    form: MultiPoly
    s: int
    U1: MultiPoly
    U2: MultiPoly
    U3: MultiPoly
    H: MultiPoly
    curve: str = ""

    def identity_holds(self) -> bool:
        X, Y, Z, _ = gens(self.form.ctx)
        s = self.s
        lhs = self.U1**s * X + self.U2**s * Y + self.U3**s * Z
        return lhs == self.H * self.form

    def to_json(self) -> dict:
        return {
            "curve": self.curve,
            "s": self.s,
            "U1": self.U1.to_text(),
            "U2": self.U2.to_text(),
            "U3": self.U3.to_text(),
            "H": self.H.to_text(),
            "degrees": {
                "U": max(u.degree() for u in (self.U1, self.U2, self.U3)),
                "H": self.H.degree() if self.H else None,
            },
        }


@dataclass
class FrobeniusCertificate:
    witness: NonclassicalityWitness
    qprime: int
    L: MultiPoly | None
    verdict: bool

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json(),
            "qprime": self.qprime,
            "L": None if self.L is None else self.L.to_text(),
            "verdict": self.verdict,
        }


def extract_witness(f: MultiPoly, s: int, *, curve: str = "") -> NonclassicalityWitness | None:
    """U_i = s-й корень из ∂f/∂x_i; None, если хотя бы одна производная не s-я степень."""
    if f.uses_lambda:
        raise InvalidParameters("свидетель строится для конкретного члена пучка, а не для Λ")
    if not f.is_homogeneous():
        raise InvalidParameters("свидетель через тождество Эйлера строится только для однородной формы")
    roots = []
    for var in "XYZ":
        root = qth_root(partial_derivative(f, var), s)
        if root is None:
            logger.debug("∂f/∂%s не является степенью %d", var, s)
            return None
        roots.append(root)
    H = MultiPoly.constant(f.ctx, f.degree() % f.ctx.p)
    witness = NonclassicalityWitness(f, s, *roots, H, curve=curve)
    if not witness.identity_holds():
        # тождество Эйлера для однородной формы
        raise InvalidParameters("тождество U_1^s X + U_2^s Y + U_3^s Z = H·F не выполнено")
    return witness


def find_witness(f: MultiPoly, *, curve: str = "") -> NonclassicalityWitness | None:
    """Первый s ∈ {p, p², …} с s ≤ deg f, для которого свидетель существует."""
    p = f.ctx.p
    s = p
    while s <= f.degree():
        witness = extract_witness(f, s, curve=curve)
        if witness is not None:
            return witness
        s *= p
    return None


def frobenius_check(w: NonclassicalityWitness, qprime: int) -> FrobeniusCertificate:
    if qprime % w.s:
        raise InvalidParameters(f"s={w.s} не делит q'={qprime}")
    t = qprime // w.s
    X, Y, Z, _ = gens(w.form.ctx)
    combo = w.U1 * X**t + w.U2 * Y**t + w.U3 * Z**t
    L = divide_exact(combo, w.form)
    verdict = L is not None
    logger.debug("Фробениус над GF(%d) для %s: %s", qprime, w.curve or "формы", verdict)
    return FrobeniusCertificate(w, qprime, L, verdict)


def frobenius_tangent_quotient(f: MultiPoly, qprime: int) -> MultiPoly | None:
    """L с X^{q'}·∂f/∂X + Y^{q'}·∂f/∂Y + Z^{q'}·∂f/∂Z = L·f или None.

    Касательная в общей точке проходит через её образ при x ↦ x^{q'}.
    Свидетель U_i здесь не нужен, поэтому проверка годится и тогда,
    когда ∂f не являются s-ми степенями.
    """
    if f.uses_lambda:
        raise InvalidParameters("проверка строится для конкретного члена пучка, а не для Λ")
    if qprime < 2:
        raise InvalidParameters(f"q'={qprime} должно быть ≥ 2")
    X, Y, Z, _ = gens(f.ctx)
    combo = X**qprime * partial_derivative(f, "X") + Y**qprime * partial_derivative(f, "Y") + Z**qprime * partial_derivative(f, "Z")
    return divide_exact(combo, f)


def hefez_voloch_count(d: int, qprime: int) -> int:
    """d·(q' − d + 2): число точек неособой фробениусово неклассической кривой."""
    return d * (qprime - d + 2)
