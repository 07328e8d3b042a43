from unittest.mock import patch

from django.test import TestCase

from curveframes.exceptions import IrregularCurve
from curveframes.models import Discrepancy, VerificationRun
from curveframes.smarandache import DiscrepancyRecord, DiscrepancyReport, SmarandacheKind
from curveframes.tasks import record_report, run_verification
from curveframes.verification import SuiteReport


def suite_report(check_ok=True, discrepancy_ok=True):
    report = SuiteReport()
    report.at_most("circle.tn1.kappa_closed", 1e-9, 1e-6)
    report.at_most("helix.frames.curvature_identity", 1e-9 if check_ok else 1.0, 1e-6)
    report.discrepancies["helix.tn1"] = DiscrepancyReport(
        kind=SmarandacheKind.TN1,
        records=(
            DiscrepancyRecord("speed", 0.0, 0.0, 0.0, True),
            DiscrepancyRecord("kappa_beta", 0.1, 0.2 if not discrepancy_ok else 1e-5, 0.5, discrepancy_ok),
            DiscrepancyRecord("tau_beta", float("nan"), 0.0, 0.0, True),
        ),
        rtol=1e-3,
        atol=1e-6,
    )
    return report


class VerificationRunTests(TestCase):
    def test_lifecycle(self):
        run = VerificationRun.objects.create()
        self.assertEqual(run.status, VerificationRun.Status.PENDING)
        run.mark_running()
        self.assertEqual(run.status, VerificationRun.Status.RUNNING)
        self.assertIsNotNone(run.started_at)
        run.mark_finished()
        self.assertEqual(run.status, VerificationRun.Status.PASSED)
        self.assertIsNotNone(run.finished_at)

    def test_counters_decide_status(self):
        run = VerificationRun.objects.create()
        run.increment_counters(total=3, discrepancies=1)
        run.increment_counters(total=2)
        self.assertEqual(run.checks_total, 5)
        run.mark_finished()
        self.assertEqual(run.status, VerificationRun.Status.DISCREPANT)
        self.assertEqual(run.get_status_display(), "Passed with discrepancies")

        crashed = VerificationRun.objects.create()
        crashed.mark_finished(success=False)
        self.assertEqual(crashed.status, VerificationRun.Status.FAILED)


class RecordReportTests(TestCase):
    def setUp(self):
        self.run = VerificationRun.objects.create(initiator="cli")
        self.run.mark_running()

    def test_passing_suite(self):
        record_report(self.run, suite_report())
        self.run.refresh_from_db()
        self.assertEqual(self.run.status, VerificationRun.Status.PASSED)
        self.assertEqual(self.run.checks_total, 2)
        self.assertEqual(Discrepancy.objects.count(), 0)
        self.assertIsNone(self.run.report["discrepancies"]["helix.tn1"][2]["max_abs"])

    def test_discrepancies_are_stored(self):
        record_report(self.run, suite_report(discrepancy_ok=False))
        self.run.refresh_from_db()
        self.assertEqual(self.run.status, VerificationRun.Status.DISCREPANT)
        (row,) = Discrepancy.objects.all()
        self.assertEqual((row.curve, row.kind, row.quantity), ("helix", "tn1", "kappa_beta"))
        self.assertEqual(row.max_rel, 0.2)
        self.assertEqual(self.run.discrepancies_count, 1)

    def test_failed_check(self):
        record_report(self.run, suite_report(check_ok=False))
        self.run.refresh_from_db()
        self.assertEqual(self.run.status, VerificationRun.Status.FAILED)
        self.assertEqual(self.run.checks_failed, 1)

    def test_label_with_starting_angle(self):
        report = suite_report(discrepancy_ok=False)
        report.discrepancies["helix@theta0=0.3.tn1"] = report.discrepancies.pop("helix.tn1")
        record_report(self.run, report)
        (row,) = Discrepancy.objects.all()
        self.assertEqual((row.curve, row.kind), ("helix@theta0=0.3", "tn1"))


class RunVerificationTaskTests(TestCase):
    @patch("curveframes.tasks.run_suite")
    def test_task_records_suite(self, run_suite):
        run_suite.return_value = suite_report()
        run = VerificationRun.objects.create(samples=512, rtol=1e-2)
        result = run_verification(str(run.id))
        self.assertEqual(result, {"run_id": str(run.id), "status": VerificationRun.Status.PASSED})
        config = run_suite.call_args.args[0]
        self.assertEqual((config.n, config.rtol), (512, 1e-2))

    @patch("curveframes.tasks.run_suite", side_effect=IrregularCurve("stationary"))
    def test_task_failure_is_recorded(self, run_suite):
        run = VerificationRun.objects.create()
        with self.assertRaises(IrregularCurve):
            run_verification(str(run.id))
        run.refresh_from_db()
        self.assertEqual(run.status, VerificationRun.Status.FAILED)
        self.assertEqual(run.report["error"]["type"], "IrregularCurve")
