"""Разреженные многочлены над FieldCtx от X, Y, Z и параметра пучка Λ.

Многочлен — словарь {(e_X, e_Y, e_Z, e_Λ): коэффициент}, где коэффициент —
целочисленное представление элемента поля (см. gf). Нулевые коэффициенты не
хранятся. Канонический порядок мономов — градуированный лексикографический по
(X, Y, Z), затем степень по Λ; Λ имеет вес 0, поэтому «форма» однородна по
(X, Y, Z) при любой степени Λ.

Текстовый формат: "i X^a Y^b Z^c L^d" через " + ", где i — показатель
образующей поля (коэффициент g^i); нулевой многочлен печатается как "0".
"""

from __future__ import annotations

import heapq
import logging
from typing import Iterable, Mapping

from .exceptions import ContextMismatch, InvalidParameters, MissingParameter, ZeroDivisor
from .gf import FieldCtx, FieldElement

logger = logging.getLogger(__name__)

Exp = tuple[int, int, int, int]
VARS = ("X", "Y", "Z", "L")
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}
_VAR_INDEX["Λ"] = 3


def order_key(e: Exp) -> tuple[int, int, int, int, int]:
    return (e[0] + e[1] + e[2], e[0], e[1], e[2], e[3])


def _clean(terms: Mapping[Exp, int]) -> dict[Exp, int]:
    return {e: c for e, c in terms.items() if c}


class MultiPoly:
    """Неизменяемый разреженный многочлен."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: FieldCtx, terms: Mapping[Exp, int] | None = None, *, clean: bool = True):
        self.ctx = ctx
        self.terms: dict[Exp, int] = _clean(terms or {}) if clean else dict(terms or {})
        self._hash = None

    # ── конструкторы ──

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "MultiPoly":
        return cls(ctx, clean=False)

    @classmethod
    def constant(cls, ctx: FieldCtx, c) -> "MultiPoly":
        return cls(ctx, {(0, 0, 0, 0): _scalar(ctx, c)})

    @classmethod
    def monomial(cls, ctx: FieldCtx, exps: Iterable[int], c=1) -> "MultiPoly":
        e = tuple(exps)
        e = e + (0,) * (4 - len(e))
        return cls(ctx, {e: _scalar(ctx, c)})

    @classmethod
    def var(cls, ctx: FieldCtx, name: str) -> "MultiPoly":
        e = [0, 0, 0, 0]
        e[_VAR_INDEX[name]] = 1
        return cls(ctx, {tuple(e): 1}, clean=False)

    # ── основные свойства ──

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.key, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self.ctx!r}, {self.to_text()!r})"

    def degree(self) -> int:
        """Полная степень по (X, Y, Z); −1 у нуля."""
        return max((e[0] + e[1] + e[2] for e in self.terms), default=-1)

    def lam_degree(self) -> int:
        return max((e[3] for e in self.terms), default=-1)

    @property
    def uses_lambda(self) -> bool:
        return any(e[3] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({e[0] + e[1] + e[2] for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        return sorted(self.terms.items(), key=lambda item: order_key(item[0]), reverse=True)

    def leading(self) -> tuple[Exp, int]:
        if not self.terms:
            raise ZeroDivisor("у нулевого многочлена нет старшего члена")
        e = max(self.terms, key=order_key)
        return e, self.terms[e]

    def coefficient(self, exps: Iterable[int]) -> FieldElement:
        e = tuple(exps)
        e = e + (0,) * (4 - len(e))
        return FieldElement(self.ctx, self.terms.get(e, 0))

    # ── арифметика ──

    def _check(self, other: "MultiPoly") -> None:
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} и {other.ctx}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return MultiPoly.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        add = self.ctx.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            out[e] = c if prev is None else add(prev, c)
        return MultiPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return MultiPoly(self.ctx, {e: neg(c) for e, c in self.terms.items()}, clean=False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(_scalar(self.ctx, other))
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        return MultiPoly(self.ctx, _mul_terms(self.ctx, self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return _power(self, e)

    def scale(self, c: int) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.ctx)
        mul = self.ctx.mul
        return MultiPoly(self.ctx, {e: mul(v, c) for e, v in self.terms.items()}, clean=False)

    def normalize(self) -> "MultiPoly":
        """Масштаб, при котором старший коэффициент равен 1."""
        if not self.terms:
            return self
        return self.scale(self.ctx.inv(self.leading()[1]))

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.ctx, {e: fn(c) for e, c in self.terms.items()})

    def frobenius_power(self, h: int = 1) -> "MultiPoly":
        """f^{p^h}: показатели умножаются на p^h, коэффициенты проходят Фробениус."""
        s = self.ctx.p**h
        frob = self.ctx.frob
        return MultiPoly(
            self.ctx,
            {(e[0] * s, e[1] * s, e[2] * s, e[3] * s): frob(c, h) for e, c in self.terms.items()},
            clean=False,
        )

    def frobenius_coefficients(self, h: int = 1) -> "MultiPoly":
        """Только коэффициенты x ↦ x^{p^h}, показатели без изменений."""
        frob = self.ctx.frob
        return MultiPoly(self.ctx, {e: frob(c, h) for e, c in self.terms.items()}, clean=False)

    def specialize(self, lam) -> "MultiPoly":
        """Подстановка Λ = lam."""
        if not self.uses_lambda:
            return self
        lam_v = _scalar(self.ctx, lam)
        add, mul, power = self.ctx.add, self.ctx.mul, self.ctx.power
        out: dict[Exp, int] = {}
        for (a, b, c, d), v in self.terms.items():
            key = (a, b, c, 0)
            val = mul(v, power(lam_v, d))
            prev = out.get(key)
            out[key] = val if prev is None else add(prev, val)
        return MultiPoly(self.ctx, out)

    def dehomogenize(self, var: str = "Z") -> "MultiPoly":
        """Подстановка var = 1."""
        i = _VAR_INDEX[var]
        add = self.ctx.add
        out: dict[Exp, int] = {}
        for e, v in self.terms.items():
            key = tuple(0 if j == i else x for j, x in enumerate(e))
            prev = out.get(key)
            out[key] = v if prev is None else add(prev, v)
        return MultiPoly(self.ctx, out)

    def drop_var(self, var: str) -> "MultiPoly":
        """Подстановка var = 0 (оставляет члены без var)."""
        i = _VAR_INDEX[var]
        return MultiPoly(self.ctx, {e: v for e, v in self.terms.items() if not e[i]}, clean=False)

    # ── текст ──

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        log = self.ctx.log
        return " + ".join(
            f"{log(c)} X^{e[0]} Y^{e[1]} Z^{e[2]} L^{e[3]}" for e, c in self.sorted_terms()
        )

    @classmethod
    def from_text(cls, ctx: FieldCtx, text: str) -> "MultiPoly":
        text = text.strip()
        if text == "0":
            return cls.zero(ctx)
        add = ctx.add
        out: dict[Exp, int] = {}
        for chunk in text.split("+"):
            tokens = chunk.split()
            if not tokens:
                raise InvalidParameters(f"пустой член в {text!r}")
            c = ctx.gen_power(int(tokens[0]))
            e = [0, 0, 0, 0]
            for tok in tokens[1:]:
                name, _, power = tok.partition("^")
                if name not in _VAR_INDEX:
                    raise InvalidParameters(f"неизвестная переменная {name!r}")
                e[_VAR_INDEX[name]] += int(power or 1)
            key = tuple(e)
            prev = out.get(key)
            out[key] = c if prev is None else add(prev, c)
        return cls(ctx, out)


def _scalar(ctx: FieldCtx, c) -> int:
    if isinstance(c, FieldElement):
        if c.ctx != ctx:
            raise ContextMismatch(f"{ctx} и {c.ctx}")
        return c.value
    if isinstance(c, int):
        return ctx.from_int(c)
    raise InvalidParameters(f"скаляр {c!r} не из поля {ctx}")


def _entry(ctx: FieldCtx, v) -> int:
    """Координата точки или элемент матрицы: целое здесь уже представление в поле."""
    if isinstance(v, int) and 0 <= v < ctx.order:
        return v
    return _scalar(ctx, v)


def _mul_terms(ctx: FieldCtx, A: Mapping[Exp, int], B: Mapping[Exp, int]) -> dict[Exp, int]:
    if len(A) > len(B):
        A, B = B, A
    add, mul = ctx.add, ctx.mul
    out: dict[Exp, int] = {}
    items_b = list(B.items())
    for (a0, a1, a2, a3), ca in A.items():
        for (b0, b1, b2, b3), cb in items_b:
            key = (a0 + b0, a1 + b1, a2 + b2, a3 + b3)
            c = mul(ca, cb)
            prev = out.get(key)
            out[key] = c if prev is None else add(prev, c)
    return out


def _power(f: MultiPoly, e: int) -> MultiPoly:
    """f^e по p-ичным цифрам e: f^{Σ d_i p^i} = Π (f^{p^i})^{d_i}."""
    if e < 0:
        raise InvalidParameters("отрицательная степень многочлена")
    ctx = f.ctx
    if e == 0:
        return MultiPoly.constant(ctx, 1)
    if not f.terms:
        return f
    if len(f.terms) == 1:
        (x, c), = f.terms.items()
        return MultiPoly(ctx, {tuple(v * e for v in x): ctx.power(c, e)}, clean=False)
    result: MultiPoly | None = None
    base = f
    while e:
        e, d = divmod(e, ctx.p)
        if d:
            chunk = base
            for _ in range(d - 1):
                chunk = chunk * base
            result = chunk if result is None else result * chunk
        if e:
            base = base.frobenius_power(1)
    return result


# ── операции модуля ──

def gens(ctx: FieldCtx) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    """(X, Y, Z, Λ) над ctx."""
    return tuple(MultiPoly.var(ctx, name) for name in VARS)


def ring_ops(f: MultiPoly, g, op: str) -> MultiPoly:
    """op ∈ {add, sub, mul, pow}; для pow g — целый показатель."""
    if op == "pow":
        return f**g
    if not isinstance(g, MultiPoly):
        raise InvalidParameters("второй операнд должен быть MultiPoly")
    f._check(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise InvalidParameters(f"неизвестная операция {op!r}")


def _coords(f: MultiPoly, P) -> tuple[int, int, int]:
    ctx = getattr(P, "ctx", None)
    if ctx is not None and ctx != f.ctx:
        raise ContextMismatch(f"{f.ctx} и {ctx}")
    coords = getattr(P, "coords", P)
    return tuple(_entry(f.ctx, c) for c in coords)


def evaluate(f: MultiPoly, P, lam=None) -> FieldElement:
    """f(P); λ обязателен, если f содержит Λ."""
    ctx = f.ctx
    if f.uses_lambda and lam is None:
        raise MissingParameter("многочлен содержит Λ, значение λ не задано")
    x, y, z = _coords(f, P)
    lv = _scalar(ctx, lam) if lam is not None else 0
    add, mul, power = ctx.add, ctx.mul, ctx.power
    total = 0
    for (a, b, c, d), v in f.terms.items():
        t = mul(v, power(x, a))
        if t:
            t = mul(t, power(y, b))
        if t:
            t = mul(t, power(z, c))
        if t and d:
            t = mul(t, power(lv, d))
        if t:
            total = add(total, t)
    return FieldElement(ctx, total)


def partial_derivative(f: MultiPoly, var: str) -> MultiPoly:
    i = _VAR_INDEX[var]
    mul, p = f.ctx.mul, f.ctx.p
    out: dict[Exp, int] = {}
    for e, c in f.terms.items():
        k = e[i] % p
        if not k:
            continue
        lowered = list(e)
        lowered[i] -= 1
        out[tuple(lowered)] = mul(c, k)
    return MultiPoly(f.ctx, out)


def _matrix(f: MultiPoly, A) -> list[list[int]]:
    ctx = getattr(A, "ctx", None)
    if ctx is not None and ctx != f.ctx:
        raise ContextMismatch(f"{f.ctx} и {ctx}")
    rows = getattr(A, "entries", A)
    return [[_entry(f.ctx, v) for v in row] for row in rows]


def linear_substitute(f: MultiPoly, A) -> MultiPoly:
    """f∘A: X ↦ a11·X + a12·Y + a13·Z и т.д. (строка i — образ i-й переменной).

    Композиция: linear_substitute(linear_substitute(f, A), B) = linear_substitute(f, A·B).
    """
    ctx = f.ctx
    M = _matrix(f, A)
    if all(sum(1 for v in row if v) == 1 for row in M):
        return _monomial_substitute(f, M)
    forms = [
        MultiPoly(ctx, {tuple(1 if j == col else 0 for j in range(3)) + (0,): v for col, v in enumerate(row)})
        for row in M
    ]
    return _substitute_forms(f, forms + [MultiPoly.var(ctx, "L")])


def _monomial_substitute(f: MultiPoly, M: list[list[int]]) -> MultiPoly:
    ctx = f.ctx
    images = []
    for row in M:
        col = next(j for j, v in enumerate(row) if v)
        images.append((col, row[col]))
    mul, power = ctx.mul, ctx.power
    out: dict[Exp, int] = {}
    for e, c in f.terms.items():
        new = [0, 0, 0, e[3]]
        coeff = c
        for i in range(3):
            if e[i]:
                col, s = images[i]
                new[col] += e[i]
                coeff = mul(coeff, power(s, e[i]))
        out[tuple(new)] = coeff
    return MultiPoly(ctx, out)


def _substitute_forms(f: MultiPoly, images: list[MultiPoly]) -> MultiPoly:
    ctx = f.ctx
    caches: list[dict[int, MultiPoly]] = [{} for _ in images]

    def pw(i: int, e: int) -> MultiPoly:
        cached = caches[i].get(e)
        if cached is None:
            cached = images[i] ** e
            caches[i][e] = cached
        return cached

    add = ctx.add
    out: dict[Exp, int] = {}
    for e, c in f.terms.items():
        part: dict[Exp, int] = {(0, 0, 0, 0): c}
        for i in range(4):
            if e[i]:
                part = _mul_terms(ctx, part, pw(i, e[i]).terms)
        for key, v in part.items():
            prev = out.get(key)
            out[key] = v if prev is None else add(prev, v)
    return MultiPoly(ctx, out)


def substitute(f: MultiPoly, **images: MultiPoly) -> MultiPoly:
    """Общая подстановка многочленов вместо X, Y, Z, L (не заданные остаются собой)."""
    ctx = f.ctx
    forms = []
    for name in VARS:
        g = images.get(name)
        if g is None:
            g = MultiPoly.var(ctx, name)
        elif g.ctx != ctx:
            raise ContextMismatch(f"{ctx} и {g.ctx}")
        forms.append(g)
    return _substitute_forms(f, forms)


def divide_exact(num: MultiPoly, den: MultiPoly) -> MultiPoly | None:
    """Частное num/den при делимости нацело, иначе None.

    Деление столбиком на один делитель в градуированном лексикографическом
    порядке: остаток нулевой тогда и только тогда, когда den | num.
    """
    if not den.terms:
        raise ZeroDivisor("деление на нулевой многочлен")
    num._check(den)
    ctx = num.ctx
    add, sub, mul = ctx.add, ctx.sub, ctx.mul
    lead_e, lead_c = den.leading()
    lead_inv = ctx.inv(lead_c)
    den_items = list(den.terms.items())
    rem = dict(num.terms)
    heap = [(tuple(-x for x in order_key(e)), e) for e in rem]
    heapq.heapify(heap)
    quotient: dict[Exp, int] = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = rem.get(e)
        if not c:
            continue
        qe = tuple(a - b for a, b in zip(e, lead_e))
        if min(qe) < 0:
            return None
        qc = mul(c, lead_inv)
        prev_q = quotient.get(qe)
        quotient[qe] = qc if prev_q is None else add(prev_q, qc)
        for de, dc in den_items:
            t = (qe[0] + de[0], qe[1] + de[1], qe[2] + de[2], qe[3] + de[3])
            old = rem.get(t)
            new = sub(old or 0, mul(qc, dc))
            if new:
                if old is None:
                    heapq.heappush(heap, (tuple(-x for x in order_key(t)), t))
                rem[t] = new
            elif old is not None:
                del rem[t]
    return MultiPoly(ctx, quotient)


def qth_root(f: MultiPoly, s: int) -> MultiPoly | None:
    """g с g^s = f, если s = p^h (h ≥ 1) делит все показатели; иначе None."""
    ctx = f.ctx
    h, rest = 0, s
    while rest > 1 and rest % ctx.p == 0:
        rest //= ctx.p
        h += 1
    if rest != 1 or h < 1:
        raise InvalidParameters(f"s={s} не является степенью p={ctx.p} с h ≥ 1")
    back = (-h) % ctx.k
    frob = ctx.frob
    out: dict[Exp, int] = {}
    for e, c in f.terms.items():
        if any(x % s for x in e):
            return None
        out[tuple(x // s for x in e)] = frob(c, back)
    return MultiPoly(ctx, out, clean=False)


def proportional(f: MultiPoly, g: MultiPoly) -> FieldElement | None:
    """c ≠ 0 с f = c·g или None."""
    f._check(g)
    ctx = f.ctx
    if not g.terms:
        return FieldElement(ctx, 1) if not f.terms else None
    if len(f.terms) != len(g.terms):
        return None
    e0, g0 = g.leading()
    f0 = f.terms.get(e0)
    if not f0:
        return None
    c = ctx.div(f0, g0)
    mul = ctx.mul
    for e, v in g.terms.items():
        if f.terms.get(e) != mul(c, v):
            return None
    return FieldElement(ctx, c)


def moore_determinant(ctx: FieldCtx, q: int, a: int, b: int, affine: bool = False) -> MultiPoly:
    """Определитель с строками (T, T^{q^a}, T^{q^b}) для T = X, Y, Z.

    В аффинном варианте третья строка (1, 1, 1), что даёт
    (X^{q^a} − X)(Y^{q^b} − Y) − (Y^{q^a} − Y)(X^{q^b} − X).
    """
    if not a > b >= 1:
        raise InvalidParameters(f"нужно a > b ≥ 1, получено a={a}, b={b}")
    cols = (1, q**a, q**b)
    one, minus = 1, ctx.neg(1)
    # (перестановка столбцов для строк X, Y, Z, знак)
    perms = (
        ((0, 1, 2), one), ((1, 2, 0), one), ((2, 0, 1), one),
        ((0, 2, 1), minus), ((2, 1, 0), minus), ((1, 0, 2), minus),
    )
    add = ctx.add
    out: dict[Exp, int] = {}
    for perm, sign in perms:
        z = 0 if affine else cols[perm[2]]
        key = (cols[perm[0]], cols[perm[1]], z, 0)
        prev = out.get(key)
        out[key] = sign if prev is None else add(prev, sign)
    return MultiPoly(ctx, out)
