from django.test import SimpleTestCase

from curvelab import gf
from curvelab.catalog import build, fermat_form, hermitian_form
from curvelab.exceptions import InvalidParameters
from curvelab.geometry import count_points
from curvelab.mpoly import gens
from curvelab.stohr import (
    extract_witness,
    find_witness,
    frobenius_check,
    frobenius_tangent_quotient,
    hefez_voloch_count,
)


class WitnessTests(SimpleTestCase):
    def test_hermitian_witness(self):
        ctx = gf.field_create(2, 2)
        w = extract_witness(hermitian_form(ctx, 2), 2, curve="hermitian")
        self.assertIsNotNone(w)
        self.assertTrue(w.identity_holds())
        # deg = 3, p = 2: H — ненулевая константа
        self.assertEqual(w.H.degree(), 0)
        self.assertEqual(w.to_json()["curve"], "hermitian")

    def test_fermat_q3_has_none(self):
        ctx = gf.field_create(3, 1)
        self.assertIsNone(extract_witness(fermat_form(ctx, 3), 3))

    def test_find_witness_zero_member(self):
        ctx = gf.field_for(2, 2)
        f = build("pgu-pencil", ctx, n=2, lam=0).poly
        w = find_witness(f)
        self.assertIsNotNone(w)
        self.assertTrue(w.identity_holds())

    def test_symbolic_rejected(self):
        with self.assertRaises(InvalidParameters):
            extract_witness(build("pgu-pencil", n=2).poly, 2)

    def test_non_form_rejected(self):
        ctx = gf.field_create(2, 2)
        X, Y, Z, _ = gens(ctx)
        with self.assertRaisesMessage(InvalidParameters, "однородной"):
            extract_witness(X**3 + Y * Z, 2)


class FrobeniusTests(SimpleTestCase):
    def test_hermitian_over_gf4(self):
        ctx = gf.field_create(2, 2)
        w = extract_witness(hermitian_form(ctx, 2), 2)
        cert = frobenius_check(w, 4)
        self.assertTrue(cert.verdict)
        self.assertIsNotNone(cert.L)
        self.assertTrue(cert.to_json()["verdict"])

    def test_hermitian_not_over_gf8(self):
        ctx = gf.field_create(2, 2)
        w = extract_witness(hermitian_form(ctx, 2), 2)
        self.assertFalse(frobenius_check(w, 8).verdict)

    def test_s_must_divide(self):
        ctx = gf.field_create(3, 2)
        w = extract_witness(hermitian_form(ctx, 3), 3)
        with self.assertRaises(InvalidParameters):
            frobenius_check(w, 10)


class TangentFrobeniusTests(SimpleTestCase):
    def test_hermitian_over_gf4(self):
        ctx = gf.field_create(2, 2)
        self.assertIsNotNone(frobenius_tangent_quotient(hermitian_form(ctx, 2), 4))

    def test_dgz_double(self):
        f = build("dgz", q=2).poly
        verdicts = {qp: frobenius_tangent_quotient(f, qp) is not None for qp in (2, 4, 8)}
        self.assertEqual(verdicts, {2: True, 4: False, 8: True})

    def test_dgz_has_no_euler_witness(self):
        self.assertIsNone(extract_witness(build("dgz", q=2).poly, 2))


class HefezVolochTests(SimpleTestCase):
    def test_formula(self):
        self.assertEqual(hefez_voloch_count(9, 16), 81)
        self.assertEqual(hefez_voloch_count(9, 64), 513)

    def test_degree_one_is_a_line(self):
        for qprime in (2, 4, 9):
            self.assertEqual(hefez_voloch_count(1, qprime), qprime + 1)

    def test_hermitian_count_matches(self):
        ctx = gf.field_create(3, 2)
        self.assertEqual(count_points(hermitian_form(ctx, 3), 2, q=3), hefez_voloch_count(4, 9))

    def test_pgu_member_count(self):
        ctx = gf.field_for(2, 4)
        lam = next(
            v for v in ctx.subfield_elements(2)[1:]
            if v != 1 and ctx.power(v, 3) == 1
        )
        f = build("pgu-pencil", ctx, n=2, lam=gf.FieldElement(ctx, lam)).poly
        self.assertEqual(count_points(f, 4, q=2), 81)
