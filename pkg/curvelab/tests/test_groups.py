from django.test import SimpleTestCase

from curvelab import gf
from curvelab.catalog import hermitian_form
from curvelab.exceptions import FieldTooSmall, InvalidParameters
from curvelab.groups import (
    GroupId,
    Projectivity,
    closure_order,
    export_generators,
    generators_for,
    order_formula,
    printed_order_formula,
    rotation,
    singer_cycle,
)
from curvelab.invariance import check_invariance


class GroupIdTests(SimpleTestCase):
    def test_pgu_requires_square(self):
        with self.assertRaises(InvalidParameters):
            GroupId("PGU3", 5, 2)
        self.assertEqual(GroupId.pgu(3).q, 9)

    def test_odd_only(self):
        with self.assertRaises(InvalidParameters):
            GroupId("PGL2Conic", 4)
        with self.assertRaises(InvalidParameters):
            GroupId("HemisystemLinear", 2)

    def test_unknown_tag(self):
        with self.assertRaises(InvalidParameters):
            GroupId("PGL4", 2)

    def test_singer_needs_cubic_extension(self):
        gid = GroupId("Singer", 2)
        self.assertEqual(gid.required_degree(), 3)
        with self.assertRaises(FieldTooSmall):
            generators_for(gid, gf.field_create(2, 2))


class ClosureOrderTests(SimpleTestCase):
    cases = [
        (GroupId("PGL3", 2), 168),
        (GroupId("PSL3", 2), 168),
        (GroupId("PSL3", 4), 20160),
        (GroupId("AGL2", 2), 24),
        (GroupId("DualAGL2", 2), 24),
        (GroupId("Triangle", 3), 24),
        (GroupId("Singer", 2), 7),
        (GroupId("SingerNormalizer", 2), 21),
        (GroupId("PGL2Conic", 3), 24),
        (GroupId("HemisystemLinear", 3), 12),
        (GroupId.pgu(2), 216),
    ]

    def test_orders(self):
        for gid, expected in self.cases:
            with self.subTest(group=gid.label()):
                self.assertEqual(closure_order(generators_for(gid), cap=10**6), expected)
                self.assertEqual(order_formula(gid), expected)

    def test_printed_pgu_order_differs(self):
        gid = GroupId.pgu(2)
        self.assertEqual(printed_order_formula(gid), 72)
        self.assertNotEqual(printed_order_formula(gid), closure_order(generators_for(gid), cap=10**6))

    def test_cap(self):
        self.assertIsNone(closure_order(generators_for(GroupId("PGL3", 2)), cap=50))


class ProjectivityTests(SimpleTestCase):
    def test_singer_cycle_order(self):
        ctx = gf.field_create(2, 3)
        self.assertEqual(singer_cycle(ctx, 2).order(), 7)

    def test_rotation_order(self):
        self.assertEqual(rotation(gf.field_create(3, 1)).order(), 3)

    def test_inverse(self):
        ctx = gf.field_create(3, 1)
        A = Projectivity.from_values(ctx, ((1, 2, 0), (0, 1, 1), (1, 0, 1)))
        self.assertEqual(A @ A.inverse(), Projectivity.identity(ctx))

    def test_singular_matrix_rejected(self):
        ctx = gf.field_create(3, 1)
        with self.assertRaises(InvalidParameters):
            Projectivity.from_values(ctx, ((1, 1, 0), (2, 2, 0), (0, 0, 1)))

    def test_normalized(self):
        ctx = gf.field_create(5, 1)
        A = Projectivity.diag(ctx, 2, 4, 1)
        self.assertEqual(A.entries[0][0], 1)

    def test_swap_fixes_hermitian(self):
        gid = GroupId.pgu(2)
        f = hermitian_form(gf.field_create(2, 2), 2)
        alpha1 = next(A for A in generators_for(gid, f.ctx) if A.label == "α1")
        self.assertEqual(check_invariance(f, alpha1).value, 1)


class ExportTests(SimpleTestCase):
    def test_json_shape(self):
        gid = GroupId("Triangle", 3)
        data = export_generators(gid, generators_for(gid))
        self.assertEqual(data["group"], "Triangle")
        self.assertEqual(data["q"], 3)
        self.assertEqual(len(data["labels"]), len(data["matrices"]))
        self.assertEqual(data["field"]["p"], 3)
        self.assertEqual(data["matrices"][3], [[None, 0, None], [0, None, None], [None, None, 0]])
