from django.test import SimpleTestCase

from curvelab import gf
from curvelab.catalog import build, conic_form, hermitian_form
from curvelab.exceptions import (
    DegreeMismatch,
    LineIsComponent,
    MissingParameter,
    PointNotOnCurve,
)
from curvelab.geometry import (
    PointPG2,
    bezout_total,
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
from curvelab.mpoly import gens


class CountPointsTests(SimpleTestCase):
    def test_dgz_q2(self):
        for m, expected in [(1, 0), (2, 14), (3, 24), (4, 14)]:
            with self.subTest(m=m):
                ctx = gf.field_for(2, m)
                f = build("dgz", ctx, q=2).poly
                self.assertEqual(count_points(f, m, q=2), expected)

    def test_hermitian(self):
        f = hermitian_form(gf.field_create(2, 2), 2)
        self.assertEqual(count_points(f, 1, q=4), 9)
        self.assertEqual(len(rational_points(f, 1, q=4)), 9)

    def test_symbolic_needs_lambda(self):
        f = build("agl-pencil", q=2).poly
        with self.assertRaises(MissingParameter):
            count_points(f, 1)

    def test_specialized_lambda(self):
        f = build("pgl2-pencil", q=3).poly
        self.assertEqual(count_points(f, 1, 1, q=3), count_points(build("pgl2-pencil", q=3, lam=1).poly, 1, q=3))

    def test_jobs_agree(self):
        ctx = gf.field_for(2, 4)
        f = build("dgz", ctx, q=2).poly
        self.assertEqual(count_points(f, 4, q=2, jobs=2), count_points(f, 4, q=2))


class ConicTests(SimpleTestCase):
    def setUp(self):
        self.ctx = gf.field_create(3, 1)
        self.conic = conic_form(self.ctx)
        self.points = rational_points(self.conic, 1, q=3)

    def test_point_count(self):
        self.assertEqual(len(self.points), 4)

    def test_classification(self):
        self.assertEqual(classify_wrt_conic(self.conic, PointPG2.of(self.ctx, (1, 0, 0)), self.points), "on")
        self.assertEqual(classify_wrt_conic(self.conic, PointPG2.of(self.ctx, (0, 1, 0)), self.points), "external")

    def test_tangent_lines(self):
        lines = conic_tangent_lines(self.conic, 3)
        self.assertEqual(len(lines), 4)
        self.assertIn(((0, 0, 1), 1), lines)

    def test_pgl2_minus_one_internal_points(self):
        f = build("pgl2-pencil", self.ctx, q=3, lam=gf.FieldElement(self.ctx, 2)).poly
        reports = singular_points(f, 1, q=3)
        self.assertEqual(len(reports), 3)
        for r in reports:
            self.assertEqual(r.multiplicity, 2)
            self.assertEqual(classify_wrt_conic(self.conic, r.point, self.points), "internal")

    def test_pgl2_one_splits(self):
        f = build("pgl2-pencil", self.ctx, q=3, lam=1).poly
        self.assertTrue(verify_line_splitting(f, conic_tangent_lines(self.conic, 3)))

    def test_splitting_degree_mismatch(self):
        with self.assertRaises(DegreeMismatch):
            verify_line_splitting(self.conic, [((1, 0, 0), 1)])


class SingularityTests(SimpleTestCase):
    def test_ordinary_node(self):
        ctx = gf.field_create(5, 1)
        X, Y, Z, _ = gens(ctx)
        f = Y * Y * Z - X * X * (X + Z)
        r = multiplicity_at(f, PointPG2.of(ctx, (0, 0, 1)))
        self.assertEqual(r.multiplicity, 2)
        self.assertTrue(r.is_ordinary)
        self.assertEqual({line for line, _ in r.tangent_lines}, {(1, 1, 0), (1, 4, 0)})

    def test_cusp_has_no_tangent_gradient(self):
        ctx = gf.field_create(5, 1)
        X, Y, Z, _ = gens(ctx)
        f = Y * Y * Z - X**3
        P = PointPG2.of(ctx, (0, 0, 1))
        self.assertIsNone(tangent_line(f, P))
        self.assertFalse(multiplicity_at(f, P).is_ordinary)

    def test_point_not_on_curve(self):
        ctx = gf.field_create(3, 1)
        with self.assertRaises(PointNotOnCurve):
            multiplicity_at(conic_form(ctx), PointPG2.of(ctx, (0, 1, 0)))

    def test_hemisystem_generic_member(self):
        ctx = gf.field_create(3, 1)
        f = build("hemisystem", ctx, q=3, lam=0).poly
        reports = {r.point: r for r in singular_points(f, 1, q=3)}
        self.assertEqual(len(reports), 5)
        corner = reports[PointPG2.of(ctx, (1, 0, 0))]
        self.assertEqual(corner.multiplicity, 2)
        self.assertEqual(corner.tangent_lines, [((0, 0, 1), 2)])
        node = reports[PointPG2.of(ctx, (1, 1, 1))]
        self.assertEqual(node.multiplicity, 2)
        self.assertTrue(node.is_ordinary)


class LineIntersectionTests(SimpleTestCase):
    def test_hemisystem_at_infinity(self):
        ctx = gf.field_create(3, 1)
        f = build("hemisystem", ctx, q=3).poly
        self.assertEqual(line_intersection_multiplicity(f, (0, 0, 1), PointPG2.of(ctx, (1, 0, 0))), 3)

    def test_pgl3_pencil_on_z_axis(self):
        ctx = gf.field_create(2, 2)
        f = build("pgl3-pencil", ctx, q=2).poly
        line = (0, 0, 1)
        self.assertEqual(line_intersection_multiplicity(f, line, PointPG2.of(ctx, (1, 0, 0))), 2)
        w = ctx.subfield_generator(2)
        self.assertEqual(line_intersection_multiplicity(f, line, PointPG2.of(ctx, (w, 1, 0))), 4)

    def test_line_is_component(self):
        ctx = gf.field_create(3, 1)
        X, Y, _, _ = gens(ctx)
        with self.assertRaises(LineIsComponent):
            line_intersection_multiplicity(X * Y, (1, 0, 0), PointPG2.of(ctx, (0, 1, 0)))

    def test_bezout_on_tangent(self):
        ctx = gf.field_create(3, 1)
        self.assertEqual(bezout_total(conic_form(ctx), (0, 0, 1), 1), 2)
