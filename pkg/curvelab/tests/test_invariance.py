from django.test import SimpleTestCase

from curvelab import gf
from curvelab.catalog import build, conic_form, fermat_form, singer_net_form
from curvelab.exceptions import CapExceeded, InvalidParameters
from curvelab.groups import GroupId, Projectivity, generators_for
from curvelab.invariance import (
    check_group_invariance,
    check_invariance,
    cocycle_spot_check,
    degree_monomials,
    frobenius_twist_scalar,
    invariant_form_space,
)
from curvelab.mpoly import gens


class GroupInvarianceTests(SimpleTestCase):
    invariant = [
        ("dgz", {"q": 2}, GroupId("PGL3", 2)),
        ("dgz", {"q": 2}, GroupId("PSL3", 2)),
        ("agl-pencil", {"q": 2}, GroupId("AGL2", 2)),
        ("hermitian", {"n": 2}, GroupId.pgu(2)),
        ("triangle-pencil", {"q": 3}, GroupId("Triangle", 3)),
        ("pgl2-pencil", {"q": 3}, GroupId("PGL2Conic", 3)),
        ("pellikaan", {"q": 2}, GroupId("SingerNormalizer", 2)),
        ("dual-dgz", {"q": 2}, GroupId("PGL3", 2)),
        ("dual-agl-pencil", {"q": 2}, GroupId("DualAGL2", 2)),
        ("pgl3-pencil", {"q": 2}, GroupId("PGL3", 2)),
        ("pgu-pencil", {"n": 2}, GroupId.pgu(2)),
        ("hemisystem", {"q": 3}, GroupId("HemisystemLinear", 3)),
    ]

    def test_invariant_curves(self):
        for curve_id, kwargs, gid in self.invariant:
            with self.subTest(curve=curve_id, group=gid.label()):
                ctx = gf.field_for(gid.p, gid.required_degree())
                cert = check_group_invariance(build(curve_id, ctx, **kwargs), gid)
                self.assertTrue(cert.verdict)
                self.assertEqual(cert.failing, [])

    def test_fermat_not_pgl3(self):
        cert = check_group_invariance(build("fermat", q=3), GroupId("PGL3", 3))
        self.assertFalse(cert.verdict)
        self.assertTrue(cert.failing)

    def test_singer_twist_recorded(self):
        gid = GroupId("SingerNormalizer", 2)
        ctx = gf.field_for(2, 3)
        cert = check_group_invariance(build("pellikaan", ctx, q=2), gid)
        self.assertTrue(cert.twist["holds"])
        self.assertIn("frobenius_twist", cert.to_json())

    def test_pgu_pencil_alpha2_family(self):
        gid = GroupId.pgu(2)
        cert = check_group_invariance(build("pgu-pencil", gf.field_for(2, 2), n=2), gid)
        alpha2 = [(label, c) for label, c in cert.per_generator if label.startswith("α2")]
        # u пробегает GF(4), на каждое u два решения e
        self.assertEqual(len(alpha2), 8)
        self.assertTrue(all(c is not None for _, c in alpha2))
        self.assertTrue(cert.verdict)

    def test_singer_net_member(self):
        ctx = gf.field_for(2, 3)
        g = gf.primitive_element(ctx)
        spec = build("singer-net", ctx, q=2, net=(g, g * g, 1))
        cert = check_group_invariance(spec, GroupId("Singer", 2))
        self.assertTrue(cert.verdict)
        self.assertIsNone(cert.twist)

    def test_singer_big_after_swap(self):
        ctx = gf.field_for(2, 3)
        swap = Projectivity.from_values(ctx, ((0, 1, 0), (1, 0, 0), (0, 0, 1)), "sXY")
        cert = check_group_invariance(build("singer-big", ctx, q=2), GroupId("SingerNormalizer", 2), transport=swap)
        self.assertTrue(cert.verdict)
        self.assertTrue(cert.twist["holds"])
        self.assertEqual(cert.to_json()["transport"], "sXY")

    def test_twist_scalar_on_pellikaan(self):
        ctx = gf.field_for(2, 3)
        self.assertIsNotNone(frobenius_twist_scalar(build("pellikaan", ctx, q=2).poly, 2))

    def test_single_projectivity(self):
        ctx = gf.field_create(3, 1)
        f = fermat_form(ctx, 3)
        swap = Projectivity.from_values(ctx, ((0, 1, 0), (1, 0, 0), (0, 0, 1)))
        self.assertEqual(check_invariance(f, swap).value, 1)
        shear = Projectivity.from_values(ctx, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))
        self.assertIsNone(check_invariance(f, shear))


class CocycleTests(SimpleTestCase):
    def test_dgz_words(self):
        gid = GroupId("PGL3", 2)
        spec = build("dgz", q=2)
        cert = check_group_invariance(spec, gid)
        scalars = [c for _, c in cert.per_generator]
        result = cocycle_spot_check(spec.poly, generators_for(gid, spec.ctx), scalars, words=30, seed=7)
        self.assertTrue(result["holds"])
        self.assertEqual(result["words"], 30)

    def test_wrong_scalar_detected(self):
        ctx = gf.field_create(5, 1)
        X, Y, Z, _ = gens(ctx)
        f = X**2 + Y**2 + Z**2
        A = Projectivity.diag(ctx, 1, 1, 2)
        B = Projectivity.diag(ctx, 1, 1, 1)
        one = gf.FieldElement(ctx, 1)
        result = cocycle_spot_check(f, [A, B], [one, one], words=20, seed=1)
        self.assertFalse(result["holds"])


class InvariantSpaceTests(SimpleTestCase):
    def test_triangle_degree_two_is_fermat(self):
        gid = GroupId("Triangle", 3)
        spaces = invariant_form_space(gid, 2)
        self.assertEqual(len(spaces), 1)
        self.assertEqual(spaces[0].dimension, 1)
        self.assertTrue(spaces[0].contains(fermat_form(spaces[0].basis[0].ctx, 3)))

    def test_conic_is_invariant_form(self):
        gid = GroupId("PGL2Conic", 3)
        spaces = invariant_form_space(gid, 2)
        ctx = gf.field_for(3, 1)
        self.assertTrue(any(s.contains(conic_form(ctx)) for s in spaces))

    def test_singer_net_space(self):
        gid = GroupId("Singer", 2)
        spaces = invariant_form_space(gid, 4, 3 * gid.e)
        net = [s for s in spaces if s.basis and s.contains(singer_net_form(s.basis[0].ctx, 2, (1, 1, 1)))]
        self.assertEqual(len(net), 1)
        space = net[0]
        ctx = space.basis[0].ctx
        X, Y, Z, _ = gens(ctx)
        self.assertEqual(space.dimension, 3)
        for m in (X**3 * Y, Y**3 * Z, Z**3 * X):
            self.assertTrue(space.contains(m))
        g = gf.primitive_element(ctx)
        self.assertTrue(space.contains(singer_net_form(ctx, 2, (g, 1, g * g))))

    def test_normalizer_keeps_only_pellikaan(self):
        gid = GroupId("SingerNormalizer", 2)
        spaces = invariant_form_space(gid, 4, 3 * gid.e)
        found = [s for s in spaces if s.basis and s.contains(singer_net_form(s.basis[0].ctx, 2, (1, 1, 1)))]
        self.assertEqual([s.dimension for s in found], [1])

    def test_monomial_count(self):
        self.assertEqual(len(degree_monomials(4)), 15)

    def test_cap(self):
        with self.assertRaises(CapExceeded):
            invariant_form_space(GroupId("Triangle", 3), 20, cap=50)

    def test_degree_zero_rejected(self):
        with self.assertRaises(InvalidParameters):
            invariant_form_space(GroupId("Triangle", 3), 0)
