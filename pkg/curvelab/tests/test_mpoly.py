import random

from django.test import SimpleTestCase

from curvelab import gf
from curvelab.catalog import fermat_form, hermitian_form, singer_net_form
from curvelab.exceptions import ContextMismatch, MissingParameter, ZeroDivisor
from curvelab.gf import FieldElement
from curvelab.groups import Projectivity, mat_det, mat_mul
from curvelab.mpoly import (
    MultiPoly,
    divide_exact,
    evaluate,
    gens,
    linear_substitute,
    moore_determinant,
    partial_derivative,
    proportional,
    qth_root,
    substitute,
)


def _random_poly(rng, ctx, degree=None, terms=4):
    """Случайный ненулевой многочлен; при degree — форма этой степени."""
    while True:
        f = MultiPoly.zero(ctx)
        for _ in range(terms):
            if degree is None:
                exps = [rng.randrange(3) for _ in range(3)]
            else:
                a = rng.randrange(degree + 1)
                b = rng.randrange(degree - a + 1)
                exps = [a, b, degree - a - b]
            f = f + MultiPoly.monomial(ctx, exps, FieldElement(ctx, rng.randrange(1, ctx.order)))
        if f:
            return f


def _random_matrix(rng, ctx):
    while True:
        rows = tuple(tuple(rng.randrange(ctx.order) for _ in range(3)) for _ in range(3))
        if mat_det(ctx, rows):
            return rows


class RingTests(SimpleTestCase):
    def test_freshman_dream(self):
        ctx = gf.field_create(3, 1)
        X, Y, _, _ = gens(ctx)
        self.assertEqual((X + Y) ** 3, X**3 + Y**3)

    def test_difference_of_squares(self):
        ctx = gf.field_create(5, 1)
        X, Y, _, _ = gens(ctx)
        self.assertEqual((X - Y) * (X + Y), X * X - Y * Y)

    def test_power_q_plus_one(self):
        ctx = gf.field_create(3, 1)
        X, Y, _, _ = gens(ctx)
        self.assertEqual((X + Y) ** 4, X**4 + X**3 * Y + X * Y**3 + Y**4)

    def test_no_zero_coefficients(self):
        ctx = gf.field_create(2, 1)
        X, _, _, _ = gens(ctx)
        self.assertFalse(X + X)
        self.assertEqual((X + X).degree(), -1)

    def test_mixed_contexts(self):
        X2 = gens(gf.field_create(2, 1))[0]
        X3 = gens(gf.field_create(3, 1))[0]
        with self.assertRaises(ContextMismatch):
            X2 + X3

    def test_text_format(self):
        ctx = gf.field_create(2, 2)
        X, Y, Z, L = gens(ctx)
        f = X**3 * gf.primitive_element(ctx) + Y * Z * L
        self.assertEqual(MultiPoly.from_text(ctx, f.to_text()), f)
        self.assertEqual(MultiPoly.zero(ctx).to_text(), "0")


class EvaluateTests(SimpleTestCase):
    def test_fermat_at_all_ones(self):
        ctx = gf.field_create(3, 1)
        self.assertEqual(evaluate(fermat_form(ctx, 3), (1, 1, 1)).value, 0)

    def test_hermitian_origin(self):
        ctx = gf.field_create(2, 2)
        self.assertEqual(evaluate(hermitian_form(ctx, 2), (0, 0, 1)).value, 0)

    def test_pellikaan_at_x_axis(self):
        ctx = gf.field_create(2, 1)
        self.assertEqual(evaluate(singer_net_form(ctx, 2, (1, 1, 1)), (1, 0, 0)).value, 0)

    def test_extension_coordinates(self):
        ctx = gf.field_create(2, 2)
        X, Y, _, _ = gens(ctx)
        g = gf.primitive_element(ctx)
        self.assertEqual(evaluate(X * Y, (g.value, g.value, 1)).value, (g * g).value)

    def test_lambda_required(self):
        ctx = gf.field_create(3, 1)
        X, _, _, L = gens(ctx)
        with self.assertRaises(MissingParameter):
            evaluate(X * L, (1, 0, 0))
        self.assertEqual(evaluate(X * L, (1, 0, 0), lam=2).value, 2)


class DerivativeTests(SimpleTestCase):
    def test_x_to_q_plus_one(self):
        ctx = gf.field_create(2, 2)
        X, _, _, _ = gens(ctx)
        self.assertEqual(partial_derivative(X**5, "X"), X**4)

    def test_x_to_q_vanishes(self):
        ctx = gf.field_create(3, 1)
        X, _, _, _ = gens(ctx)
        self.assertFalse(partial_derivative(X**3, "X"))


class SubstitutionTests(SimpleTestCase):
    def test_identity(self):
        ctx = gf.field_create(2, 2)
        f = hermitian_form(ctx, 2)
        self.assertEqual(linear_substitute(f, Projectivity.identity(ctx)), f)

    def test_swap_yz_fixes_hermitian(self):
        ctx = gf.field_create(2, 2)
        f = hermitian_form(ctx, 2)
        swap = Projectivity.from_values(ctx, ((1, 0, 0), (0, 0, 1), (0, 1, 0)))
        self.assertEqual(linear_substitute(f, swap), f)

    def test_diagonal_scales_hermitian(self):
        ctx = gf.field_create(2, 2)
        n = 2
        f = hermitian_form(ctx, n)
        c = ctx.generator
        A = Projectivity.diag(ctx, c, ctx.power(c, n + 1), 1)
        scalar = proportional(linear_substitute(f, A), f)
        self.assertEqual(scalar.value, ctx.power(c, n + 1))

    def test_composition(self):
        ctx = gf.field_create(3, 1)
        X, Y, Z, _ = gens(ctx)
        f = X**2 * Y + Z**3
        A = Projectivity.from_values(ctx, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))
        B = Projectivity.from_values(ctx, ((1, 0, 0), (0, 1, 2), (0, 0, 1)))
        AB = mat_mul(ctx, A.entries, B.entries)
        self.assertEqual(linear_substitute(linear_substitute(f, A), B), linear_substitute(f, AB))

    def test_general_substitute(self):
        ctx = gf.field_create(3, 1)
        X, Y, Z, _ = gens(ctx)
        self.assertEqual(substitute(X * Y, X=Y * Z), Y * Y * Z)


class DivisionTests(SimpleTestCase):
    def test_exact(self):
        ctx = gf.field_create(5, 1)
        X, Y, _, _ = gens(ctx)
        self.assertEqual(divide_exact(X * X - Y * Y, X - Y), X + Y)

    def test_dgz_quotient_degree(self):
        ctx = gf.field_create(2, 1)
        quo = divide_exact(moore_determinant(ctx, 2, 3, 1), moore_determinant(ctx, 2, 2, 1))
        self.assertIsNotNone(quo)
        self.assertEqual(quo.degree(), 4)

    def test_not_divisible(self):
        ctx = gf.field_create(3, 1)
        X, Y, Z, _ = gens(ctx)
        self.assertIsNone(divide_exact(X * X + Y * Y, X + Z))

    def test_zero_divisor(self):
        ctx = gf.field_create(3, 1)
        X, _, _, _ = gens(ctx)
        with self.assertRaises(ZeroDivisor):
            divide_exact(X, MultiPoly.zero(ctx))


class RootTests(SimpleTestCase):
    def test_square_root_gf2(self):
        ctx = gf.field_create(2, 1)
        X, Y, _, _ = gens(ctx)
        self.assertEqual(qth_root(X * X + Y * Y, 2), X + Y)

    def test_q_th_root(self):
        ctx = gf.field_create(3, 1)
        X, Y, _, _ = gens(ctx)
        self.assertEqual(qth_root((X + Y) ** 6, 3), (X + Y) ** 2)

    def test_not_a_power(self):
        ctx = gf.field_create(3, 1)
        X, _, Z, _ = gens(ctx)
        self.assertIsNone(qth_root(X**3 + X * Z**2, 3))

    def test_frobenius_on_coefficients(self):
        ctx = gf.field_create(2, 2)
        X, _, _, _ = gens(ctx)
        g = gf.primitive_element(ctx)
        root = qth_root(X * X * g, 2)
        self.assertEqual(root**2, X * X * g)


class ProportionalTests(SimpleTestCase):
    def test_scalar_two(self):
        ctx = gf.field_create(3, 1)
        X, Y, _, _ = gens(ctx)
        self.assertEqual(proportional(X * 2 + Y * 2, X + Y).value, 2)

    def test_self(self):
        ctx = gf.field_create(3, 1)
        f = fermat_form(ctx, 3)
        self.assertEqual(proportional(f, f).value, 1)

    def test_not_proportional(self):
        ctx = gf.field_create(3, 1)
        X, Y, Z, _ = gens(ctx)
        self.assertIsNone(proportional(X + Y, X + Z))


class MooreTests(SimpleTestCase):
    def test_projective_vanishes_on_pg22(self):
        ctx = gf.field_create(2, 1)
        H = moore_determinant(ctx, 2, 2, 1)
        self.assertEqual(H.degree(), 7)
        points = [(x, y, 1) for x in (0, 1) for y in (0, 1)] + [(x, 1, 0) for x in (0, 1)] + [(1, 0, 0)]
        for P in points:
            self.assertEqual(evaluate(H, P).value, 0)

    def test_affine_form(self):
        ctx = gf.field_create(2, 1)
        X, Y, _, _ = gens(ctx)
        expected = (X**4 - X) * (Y**2 - Y) - (Y**4 - Y) * (X**2 - X)
        self.assertEqual(moore_determinant(ctx, 2, 2, 1, affine=True), expected)

    def test_swap_negates(self):
        ctx = gf.field_create(3, 1)
        H = moore_determinant(ctx, 3, 2, 1)
        swap = Projectivity.from_values(ctx, ((0, 1, 0), (1, 0, 0), (0, 0, 1)))
        self.assertEqual(linear_substitute(H, swap), -H)


class RandomIdentityTests(SimpleTestCase):
    """Тождества на случайных входах (seed фиксирован)."""

    def test_euler_identity(self):
        rng = random.Random(5)
        for p, k in ((5, 1), (2, 2), (3, 2)):
            ctx = gf.field_create(p, k)
            X, Y, Z, _ = gens(ctx)
            for _ in range(10):
                d = rng.randrange(1, 7)
                f = _random_poly(rng, ctx, degree=d)
                lhs = X * partial_derivative(f, "X") + Y * partial_derivative(f, "Y") + Z * partial_derivative(f, "Z")
                self.assertEqual(lhs, f * d, f.to_text())

    def test_divide_exact_recovers_factor(self):
        rng = random.Random(9)
        for p, k in ((7, 1), (3, 2)):
            ctx = gf.field_create(p, k)
            for _ in range(15):
                f = _random_poly(rng, ctx)
                g = _random_poly(rng, ctx, terms=3)
                self.assertEqual(divide_exact(f * g, g), f, (f.to_text(), g.to_text()))

    def test_composition_on_random_matrices(self):
        rng = random.Random(3)
        for p, k in ((3, 2), (2, 3), (5, 1)):
            ctx = gf.field_create(p, k)
            for _ in range(8):
                f = _random_poly(rng, ctx, degree=rng.randrange(1, 5))
                A, B = _random_matrix(rng, ctx), _random_matrix(rng, ctx)
                self.assertEqual(
                    linear_substitute(linear_substitute(f, A), B),
                    linear_substitute(f, mat_mul(ctx, A, B)),
                    (f.to_text(), A, B),
                )
