import csv
import json
import tempfile
from pathlib import Path
from unittest import mock

from django.test import SimpleTestCase
from openpyxl import load_workbook

from curvelab import gf
from curvelab.catalog import LAMBDA
from curvelab.exceptions import DegreeMismatch, InvalidParameters, UnknownSuite
from curvelab.reports import write_reports
from curvelab.suites import (
    SUITE_IDS,
    SUITES,
    Check,
    SuiteParams,
    _execute,
    check_dgz_double_frobenius,
    check_pgl3_ordinary_points,
    check_pgu_alpha3_scalars,
    count_curve,
    dgz_expected_count,
    lambda_degree,
    parse_lambda,
    resolve_params,
    run_suite,
)

ENV = {"max_order": 2**20, "modulus_table": None}


def _raises_domain_error():
    raise DegreeMismatch("степени не совпадают")


def _raises_bug():
    raise KeyError("x")


class LambdaParamTests(SimpleTestCase):
    def test_symbolic(self):
        ctx = gf.field_create(2, 2)
        self.assertEqual(parse_lambda(None, ctx), LAMBDA)
        self.assertEqual(parse_lambda("sym", ctx), LAMBDA)

    def test_subfield_power(self):
        ctx = gf.field_for(2, 4)
        self.assertEqual(lambda_degree("g4^3", 2), 4)
        value = parse_lambda("g4^3", ctx)
        self.assertEqual(value.value, ctx.power(ctx.subfield_generator(4), 3))

    def test_integer(self):
        ctx = gf.field_create(3, 1)
        self.assertEqual(parse_lambda("5", ctx).value, 2)

    def test_garbage(self):
        with self.assertRaises(InvalidParameters):
            lambda_degree("half", 3)


class ResolveParamsTests(SimpleTestCase):
    def test_registry_complete(self):
        self.assertEqual(set(SUITES), set(SUITE_IDS))

    def test_defaults(self):
        self.assertEqual(resolve_params("hemisystem", None).q, 3)
        self.assertEqual(resolve_params("dgz-points", None).q, 2)
        self.assertEqual(resolve_params("pgu-pencil", None).n, 2)

    def test_unknown_suite(self):
        with self.assertRaises(UnknownSuite):
            run_suite("klein-quartic")

    def test_even_q_in_odd_suite(self):
        with self.assertRaises(InvalidParameters):
            resolve_params("pgl2-pencil", SuiteParams(q=4))

    def test_bad_ext(self):
        with self.assertRaises(InvalidParameters):
            resolve_params("dgz-points", SuiteParams(ext=0))


class ExecuteTests(SimpleTestCase):
    def test_domain_error_is_failed_check(self):
        with self.assertLogs("curvelab.suites", "WARNING"):
            result = _execute(Check("broken", _raises_domain_error, {}), ENV)
        self.assertFalse(result.passed)
        self.assertTrue(result.error.startswith("DegreeMismatch"))

    def test_unexpected_error_logged_with_traceback(self):
        with self.assertLogs("curvelab.suites", "ERROR") as logs:
            result = _execute(Check("bug", _raises_bug, {}), ENV)
        self.assertFalse(result.passed)
        self.assertIn("KeyError", result.summary())
        self.assertIn("Traceback", "\n".join(logs.output))


class PointCountTests(SimpleTestCase):
    def test_expected_formula(self):
        self.assertEqual([dgz_expected_count(2, m) for m in range(1, 7)], [0, 14, 24, 14, 0, 38])
        self.assertEqual([dgz_expected_count(3, m) for m in range(1, 7)], [0, 78, 432, 78, 0, 510])

    def test_count_curve_row(self):
        row = count_curve("hermitian", 2, n=2)
        self.assertEqual(row["count"], 9)
        self.assertEqual(row["q"], 2)
        self.assertTrue(row["point_count"])

    def test_dgz_suite(self):
        suite = run_suite("dgz-points", SuiteParams(ext=4))
        self.assertTrue(suite.passed, [c.to_json() for c in suite.failed])
        self.assertEqual([row["count"] for row in suite.point_counts()], [0, 14, 24, 14])
        self.assertTrue(suite.fields)


class SuiteRunTests(SimpleTestCase):
    def test_group_orders(self):
        suite = run_suite("group-orders")
        self.assertTrue(suite.passed, [c.to_json() for c in suite.failed])
        pgu = next(c for c in suite.checks if c.name == "order-PGU3")
        self.assertEqual(pgu.data["closure"], 216)
        self.assertEqual(pgu.data["printed_formula"], 72)
        self.assertTrue(pgu.data["discrepancy"])

    def test_quotient_identities(self):
        suite = run_suite("quotient-identities", SuiteParams(q=3))
        self.assertTrue(suite.passed, [c.to_json() for c in suite.failed])
        substitution = next(c for c in suite.checks if c.name == "pgl2-to-hemisystem")
        self.assertFalse(substitution.data["v=-2xy"])

    def test_alpha3_scalars(self):
        passed, data = check_pgu_alpha3_scalars(2)
        self.assertTrue(passed)
        self.assertEqual(len(data["scalars_match"]), 3)

    def test_pgl3_points_are_ordinary(self):
        passed, data = check_pgl3_ordinary_points(2)
        self.assertTrue(passed, data)
        self.assertEqual({v["multiplicity"] for v in data["points"].values()}, {2})

    def test_dgz_double_frobenius(self):
        passed, data = check_dgz_double_frobenius(2)
        self.assertTrue(passed, data)
        self.assertEqual(data["frobenius"], {"2": True, "4": False, "8": True})
        self.assertFalse(data["euler_witness"])

    def test_dgz_double_frobenius_can_fail(self):
        with mock.patch("curvelab.suites.frobenius_tangent_quotient", return_value=None):
            passed, data = check_dgz_double_frobenius(2)
        self.assertFalse(passed)
        self.assertEqual(data["required"], ["2", "8"])

    def test_json_schema(self):
        suite = run_suite("triangle", SuiteParams(q=3))
        data = suite.to_json()
        self.assertEqual(data["schema"], 1)
        self.assertEqual(data["params"]["q"], 3)
        self.assertEqual(len(data["checks"]), len(suite.checks))


class ReportTests(SimpleTestCase):
    def test_files(self):
        suite = run_suite("dgz-points", SuiteParams(ext=2))
        with tempfile.TemporaryDirectory() as tmp:
            written = write_reports(suite, tmp)
            self.assertEqual(set(written), {"json", "csv", "xlsx", "counts"})
            data = json.loads(Path(written["json"]).read_text(encoding="utf-8"))
            self.assertEqual(data["suite"], "dgz-points")
            with Path(written["counts"]).open(encoding="utf-8") as fh:
                rows = list(csv.DictReader(fh))
            self.assertEqual([r["count"] for r in rows], ["0", "14"])
            wb = load_workbook(written["xlsx"])
            self.assertEqual(wb.sheetnames, ["checks", "params"])
            self.assertEqual(wb["checks"].max_row, 3)
