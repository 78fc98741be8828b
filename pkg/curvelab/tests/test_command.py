import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase, override_settings

from curvelab.models import CheckRecord, VerificationRun
from curvelab.suites import CheckResult, VerificationSuite


@override_settings(CURVELAB_PERSIST_RUNS=True, CURVELAB_JOBS=1)
class CurvelabCommandTests(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.out = Path(self.tmp.name)

    def _call(self, *args):
        stdout = StringIO()
        with override_settings(CURVELAB_REPORT_DIR=str(self.out)):
            call_command("curvelab", *args, stdout=stdout)
        return stdout.getvalue()

    def test_catalog_list(self):
        output = self._call("catalog", "list")
        self.assertIn("dgz", output)
        self.assertIn("hemisystem", output)
        self.assertIn("нечётное q", output)

    def test_run_writes_reports_and_persists(self):
        output = self._call("run", "group-orders")
        self.assertIn("все", output)
        suite_dir = self.out / "group-orders"
        for name in ("group-orders.json", "group-orders.csv", "group-orders.xlsx"):
            self.assertTrue((suite_dir / name).exists(), name)
        run = VerificationRun.objects.get()
        self.assertEqual(run.status, VerificationRun.Status.PASSED)
        self.assertEqual(run.checks_failed, 0)
        self.assertEqual(run.checks.count(), run.checks_total)
        self.assertTrue(run.fields)

    def test_run_with_out(self):
        target = self.out / "custom"
        self._call("run", "dgz-points", "--ext", "2", "--out", str(target))
        self.assertTrue((target / "dgz-points-counts.csv").exists())

    @override_settings(CURVELAB_PERSIST_RUNS=False)
    def test_run_without_persist(self):
        self._call("run", "dgz-points", "--ext", "1")
        self.assertFalse(VerificationRun.objects.exists())

    def test_unknown_suite(self):
        with self.assertRaises(CommandError):
            self._call("run", "klein-quartic")

    def test_even_q_rejected(self):
        with self.assertRaises(CommandError):
            self._call("run", "hemisystem", "--q", "4")

    def test_failed_check_exit(self):
        suite = VerificationSuite(
            "triangle", {"q": 3},
            [CheckResult("ok", True), CheckResult("broken", False, error="DegreeMismatch: x")],
        )
        with mock.patch("curvelab.management.commands.curvelab.run_suite", return_value=suite):
            with self.assertRaisesMessage(CommandError, "не прошли 1 из 2"):
                self._call("run", "triangle")
        run = VerificationRun.objects.get()
        self.assertEqual(run.status, VerificationRun.Status.FAILED)
        self.assertEqual(CheckRecord.objects.filter(run=run, passed=False).count(), 1)

    def test_count(self):
        output = self._call("count", "--curve", "hermitian", "--n", "2", "--ext", "2", "--out", str(self.out))
        self.assertIn("m=2: 9", output)
        self.assertTrue((self.out / "hermitian-counts.csv").exists())

    def test_count_symbolic_pencil(self):
        with self.assertRaisesMessage(CommandError, "MissingParameter"):
            self._call("count", "--curve", "agl-pencil", "--q", "2")

    def test_generators(self):
        data = json.loads(self._call("generators", "--group", "Triangle", "--q", "3"))
        self.assertEqual(data["group"], "Triangle")
        self.assertEqual(len(data["matrices"]), 4)

    def test_generators_need_n(self):
        with self.assertRaises(CommandError):
            self._call("generators", "--group", "PGU3")
