"""Точная арифметика в конечных полях GF(p^k).

Элемент поля хранится как целое число: коэффициенты c_0..c_{k-1} в
полиномиальном базисе, упакованные в Σ c_i·p^i (то же целочисленное
представление, что у galois). Умножение идёт через таблицы логарифмов по
примитивному элементу g, сложение — XOR при p=2, по модулю p в простом
поле и через логарифмы Зеха в остальных случаях.

Одно объемлющее поле на вычисление: подполя GF(p^k') не заводятся отдельно,
а распознаются тестом неподвижной точки Фробениуса a^{p^k'} = a.

  field_create(p, k, modulus)  — FieldCtx с проверкой простоты и неприводимости
  field_for(p, k)              — то же с модулем из таблицы (если настроена)
  arith / frobenius / is_in_subfield / primitive_element
  hermitian_trace_solutions(u, n) — все e с e^n + e = u^{n+1}
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import galois
import numpy as np

from .exceptions import (
    ContextMismatch,
    DivisionByZero,
    FieldTooSmall,
    InvalidParameters,
    NonDividingDegree,
    NonPrimeP,
    ReducibleModulus,
)

logger = logging.getLogger(__name__)


# Порядок поля, выше которого таблицы не строим (меняется через configure)
HARD_MAX_ORDER = 2**26
_settings = {"max_order": 2**20}
# (p, k) -> модуль по возрастанию степеней, из таблицы модулей
_modulus_table: dict[tuple[int, int], tuple[int, ...]] = {}
_contexts: dict[tuple[int, int, tuple[int, ...]], "FieldCtx"] = {}


def configure(*, max_order: int | None = None, modulus_table: str | Path | None = None) -> None:
    """Настройка модуля из settings (вызывает management-команда)."""
    if max_order is not None:
        _settings["max_order"] = min(int(max_order), HARD_MAX_ORDER)
    if modulus_table:
        load_modulus_table(modulus_table)


def load_modulus_table(path: str | Path) -> dict[tuple[int, int], tuple[int, ...]]:
    """Читает файл модулей: строки "p k c_0 c_1 ... c_k", # — комментарий."""
    loaded: dict[tuple[int, int], tuple[int, ...]] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        numbers = [int(tok) for tok in line.split()]
        if len(numbers) < 3:
            raise InvalidParameters(f"{path}:{lineno}: ожидается 'p k c_0 ... c_k'")
        p, k, coeffs = numbers[0], numbers[1], tuple(numbers[2:])
        if len(coeffs) != k + 1:
            raise InvalidParameters(f"{path}:{lineno}: для k={k} нужно {k + 1} коэффициентов")
        loaded[(p, k)] = coeffs
    _modulus_table.update(loaded)
    logger.debug("Таблица модулей %s: %d записей", path, len(loaded))
    return loaded


def prime_power(q: int) -> tuple[int, int]:
    """q = p^e → (p, e); InvalidParameters, если q не степень простого."""
    if q < 2:
        raise InvalidParameters(f"q={q} не является степенью простого")
    if galois.is_prime(q):
        return q, 1
    p = int(galois.factors(q)[0][0])
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise InvalidParameters(f"q={q} не является степенью простого")
    return p, e


class FieldCtx:
    """Поле GF(p^k) с модулем modulus (коэффициенты по возрастанию, старший = 1).

    Неизменяемо после построения; безопасно передаётся между процессами.
    """

    __slots__ = (
        "p", "k", "modulus", "order", "generator", "source",
        "_m", "_half", "_exp", "_log", "_zech", "exp_np", "log_np", "zech_np", "_subfields",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...], *, source: str = "min"):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self.source = source
        self._m = self.order - 1
        self._half = self._m // 2
        self._subfields: dict[int, tuple[int, ...]] = {}
        self._build_tables()

    def _build_tables(self) -> None:
        GF = galois_field(self)
        alpha = GF.primitive_element
        self.generator = int(alpha)
        m = self._m
        exp = (alpha ** np.arange(m)).view(np.ndarray).astype(np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(m, dtype=np.int64)
        if int((log[1:] < 0).sum()):
            raise ReducibleModulus(f"{self}: примитивный элемент не порождает мультипликативную группу")
        self.exp_np = exp
        self.log_np = log
        # 1 + g^d меняет только младшую цифру
        one_plus = exp - exp % self.p + (exp % self.p + 1) % self.p
        self.zech_np = log[one_plus]
        self._exp = exp.tolist() * 2
        self._log = log.tolist()
        self._zech = self.zech_np.tolist()

    # ── равенство и печать ──

    @property
    def key(self) -> tuple[int, int, tuple[int, ...]]:
        return self.p, self.k, self.modulus

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, FieldCtx) and self.key == other.key)

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus), "generator": self.generator}

    # ── скалярная арифметика на целочисленном представлении ──

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._m]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self.k == 1:
            return self.p - a
        return self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.k == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero(f"{self}: обращение нуля")
        return self._exp[(self._m - self._log[a]) % self._m]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        """a^e; показатель любой длины сводится по модулю p^k − 1."""
        if e < 0:
            return self.power(self.inv(a), -e)
        if e == 0:
            return 1
        if not a:
            return 0
        return self._exp[(self._log[a] * e) % self._m]

    def frob(self, a: int, e: int = 1) -> int:
        """a^{p^e}."""
        return self.power(a, self.p ** (e % self.k))

    def log(self, a: int) -> int:
        if not a:
            raise DivisionByZero(f"{self}: логарифм нуля")
        return self._log[a]

    def gen_power(self, i: int) -> int:
        return self._exp[i % self._m]

    def from_int(self, n: int) -> int:
        """Целое как элемент простого подполя."""
        return n % self.p

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def elements(self) -> range:
        return range(self.order)

    # ── подполя ──

    def check_subfield(self, kp: int) -> None:
        if kp < 1 or self.k % kp:
            raise NonDividingDegree(f"{self}: степень {kp} не делит {self.k}")

    def subfield_degree(self, q: int) -> int:
        """Степень над GF(p) подполя порядка q; FieldTooSmall, если его нет."""
        p, e = prime_power(q)
        if p != self.p:
            raise InvalidParameters(f"q={q} не степень характеристики {self.p}")
        if self.k % e:
            raise FieldTooSmall(f"{self} не содержит GF({q})")
        return e

    def subfield_elements(self, kp: int) -> tuple[int, ...]:
        """Все элементы GF(p^kp) внутри поля: 0 и степени g^{(p^k−1)/(p^kp−1)}."""
        cached = self._subfields.get(kp)
        if cached is None:
            self.check_subfield(kp)
            step = self._m // (self.p**kp - 1)
            cached = (0,) + tuple(self._exp[j * step] for j in range(self.p**kp - 1))
            self._subfields[kp] = cached
        return cached

    def subfield_generator(self, kp: int) -> int:
        self.check_subfield(kp)
        return self._exp[self._m // (self.p**kp - 1)]

    def in_subfield(self, a: int, kp: int) -> bool:
        self.check_subfield(kp)
        return self.frob(a, kp) == a

    def element_degree(self, a: int) -> int:
        """Наименьшее d | k, при котором a ∈ GF(p^d)."""
        for d in range(1, self.k + 1):
            if self.k % d == 0 and self.frob(a, d) == a:
                return d
        return self.k

    # ── векторные операции над numpy-массивами представлений ──

    def vadd(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(A, B)
        if self.k == 1:
            return (A + B) % self.p
        la = self.log_np[A]
        z = self.zech_np[(self.log_np[B] - la) % self._m]
        out = np.where(z < 0, 0, self.exp_np[(la + z) % self._m])
        out = np.where(A == 0, B, out)
        return np.where(B == 0, A, out)

    def vmonomial(self, coeff: int, exps: Sequence[int], coords: Sequence[np.ndarray]) -> np.ndarray:
        """Значения c·x^a·y^b·z^c на массивах координат."""
        logc = self._log[coeff]
        total = np.full(coords[0].shape, logc, dtype=np.int64)
        zero = np.zeros(coords[0].shape, dtype=bool)
        for e, arr in zip(exps, coords):
            if not e:
                continue
            la = self.log_np[arr]
            total += (e % self._m) * la
            zero |= arr == 0
        out = self.exp_np[total % self._m]
        return np.where(zero, 0, out)


@functools.lru_cache(maxsize=None)
def _galois_field(p: int, k: int, modulus: tuple[int, ...]):
    if k == 1:
        return galois.GF(p)
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
    return galois.GF(p**k, irreducible_poly=poly)


def galois_field(ctx: FieldCtx):
    """Класс FieldArray библиотеки galois для того же поля и того же модуля."""
    return _galois_field(ctx.p, ctx.k, ctx.modulus)


def field_create(p: int, k: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Поле GF(p^k). Без modulus берётся лексикографически минимальный неприводимый."""
    if not galois.is_prime(p):
        raise NonPrimeP(f"p={p} не простое")
    if k < 1:
        raise InvalidParameters(f"степень расширения k={k} < 1")
    if p**k > _settings["max_order"]:
        raise FieldTooSmall(f"GF({p}^{k}) больше допустимого порядка {_settings['max_order']}")
    source = "given"
    if modulus is None:
        poly = galois.irreducible_poly(p, k, method="min")
        coeffs = tuple(int(c) for c in reversed(poly.coeffs.view(np.ndarray)))
        source = "min"
    else:
        coeffs = tuple(int(c) % p for c in modulus)
        if len(coeffs) != k + 1 or coeffs[-1] != 1:
            raise ReducibleModulus(f"модуль {list(modulus)} не унитарный степени {k}")
        if k > 1 and not galois.Poly(list(reversed(coeffs)), field=galois.GF(p)).is_irreducible():
            raise ReducibleModulus(f"модуль {list(modulus)} приводим над GF({p})")
    key = (p, k, coeffs)
    ctx = _contexts.get(key)
    if ctx is None:
        ctx = FieldCtx(p, k, coeffs, source=source)
        _contexts[key] = ctx
        logger.debug("Поле %r: модуль %s (%s), g=%d", ctx, list(coeffs), source, ctx.generator)
    return ctx


def field_for(p: int, k: int) -> FieldCtx:
    """Поле GF(p^k) с модулем из таблицы, если она настроена."""
    return field_create(p, k, _modulus_table.get((p, k)))


def field_of_order(q: int) -> FieldCtx:
    p, e = prime_power(q)
    return field_for(p, e)


@dataclass(frozen=True)
class FieldElement:
    """Элемент поля с контекстом; value — целочисленное представление."""

    ctx: FieldCtx
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} и {other.ctx}")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.power(self.value, e))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __bool__(self) -> bool:
        return bool(self.value)

    def __int__(self) -> int:
        return self.value

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    @property
    def coeffs(self) -> list[int]:
        """Коэффициенты в полиномиальном базисе, от младшего."""
        digits, v = [], self.value
        for _ in range(self.ctx.k):
            v, c = divmod(v, self.ctx.p)
            digits.append(c)
        return digits

    def __repr__(self) -> str:
        if not self.value:
            return "0"
        return f"g^{self.ctx.log(self.value)}"


def arith(a: FieldElement, b, op: str) -> FieldElement:
    """Операция op ∈ {add, sub, mul, div, pow}; для pow b — целый показатель ≥ 0."""
    if op == "pow":
        if not isinstance(b, int) or b < 0:
            raise InvalidParameters("показатель степени должен быть целым ≥ 0")
        return a**b
    if not isinstance(b, FieldElement) or b.ctx != a.ctx:
        raise ContextMismatch(f"{a.ctx} и {getattr(b, 'ctx', type(b).__name__)}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InvalidParameters(f"неизвестная операция {op!r}")


def frobenius(a: FieldElement, e: int) -> FieldElement:
    """a^{p^e}."""
    if e < 0:
        raise InvalidParameters("e должно быть ≥ 0")
    return FieldElement(a.ctx, a.ctx.frob(a.value, e))


def is_in_subfield(a: FieldElement, kp: int) -> bool:
    return a.ctx.in_subfield(a.value, kp)


def primitive_element(ctx: FieldCtx) -> FieldElement:
    return FieldElement(ctx, ctx.generator)


def hermitian_trace_solutions(u: FieldElement, n: int) -> list[FieldElement]:
    """Все e ∈ GF(n²) с e^n + e = u^{n+1}; их ровно n."""
    ctx = u.ctx
    _, h = prime_power(n)
    if ctx.k % (2 * h):
        raise FieldTooSmall(f"{ctx} не содержит GF({n}²)")
    if not ctx.in_subfield(u.value, 2 * h):
        raise InvalidParameters(f"u={u!r} не лежит в GF({n}²)")
    target = ctx.power(u.value, n + 1)
    return [
        FieldElement(ctx, e)
        for e in sorted(ctx.subfield_elements(2 * h))
        if ctx.add(ctx.power(e, n), e) == target
    ]


def subfield_members(ctx: FieldCtx, q: int) -> list[FieldElement]:
    """Элементы GF(q) внутри ctx."""
    return [FieldElement(ctx, v) for v in ctx.subfield_elements(ctx.subfield_degree(q))]


def as_elements(ctx: FieldCtx, values: Iterable[int]) -> list[FieldElement]:
    return [FieldElement(ctx, v) for v in values]
