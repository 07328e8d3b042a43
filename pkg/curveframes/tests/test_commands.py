import json
import math
import os
import tempfile
from io import StringIO

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from curveframes.exports import FRAMES_HEADER
from curveframes.models import VerificationRun


class CommandTestMixin:
    def setUp(self):
        super().setUp()
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, *parts):
        return os.path.join(self.tmp.name, *parts)

    def call(self, *args):
        out, err = StringIO(), StringIO()
        call_command(*args, stdout=out, stderr=err)
        return out.getvalue(), err.getvalue()

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            self.call(*args)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception

    def load_csv(self, path):
        return np.loadtxt(path, delimiter=",", skiprows=1)


class FramesCommandTests(CommandTestMixin, SimpleTestCase):
    def test_circle(self):
        out = self.path("frames.csv")
        self.call("frames", "--curve", "circle", "--R", "1", "--n", "2048", "--out", out, "--strict")
        with open(out) as fh:
            self.assertEqual(fh.readline().strip(), ",".join(FRAMES_HEADER))
        table = self.load_csv(out)
        kappa = table[:, FRAMES_HEADER.index("kappa")]
        np.testing.assert_allclose(kappa, 1.0, atol=1e-8)

    def test_stdout_when_no_out(self):
        stdout, _ = self.call("frames", "--curve", "circle", "--n", "256")
        self.assertTrue(stdout.startswith("s,x,y,z,"))

    def test_helix_expression_has_constant_torsion(self):
        out = self.path("helix.csv")
        self.call("frames", "--expr", "cos(t); sin(t); 0.5*t", "--t-range", "0:12.56", "--n", "4096", "--out", out)
        tau = self.load_csv(out)[:, FRAMES_HEADER.index("tau")]
        self.assertLess(np.ptp(tau), 1e-5)
        self.assertAlmostEqual(float(np.mean(tau)), 0.4, delta=1e-5)

    def test_degenerate_salkowski(self):
        self.assertExitCode(3, "frames", "--m", "0.57735")

    def test_input_errors(self):
        self.assertExitCode(2, "frames", "--expr", "cos(t; sin(t); 0")
        self.assertExitCode(2, "frames", "--curve", "circle", "--n", "32")
        self.assertExitCode(2, "frames", "--curve", "circle", "--expr", "t; t; t")
        self.assertExitCode(2, "frames", "--curve", "circle", "--R", "-1")

    def test_message_names_error_type(self):
        error = self.assertExitCode(2, "frames", "--expr", "foo(t); 0; 0")
        self.assertTrue(str(error).startswith("UnknownIdentifier:"))


class SmarandacheCommandTests(CommandTestMixin, SimpleTestCase):
    def test_n1n2_on_circle(self):
        self.call("smarandache", "--curve", "circle", "--kind", "n1n2", "--out", self.tmp.name)
        self.assertEqual(sorted(os.listdir(self.tmp.name)), ["n1n2_curve.csv", "n1n2_invariants.csv"])
        table = self.load_csv(self.path("n1n2_invariants.csv"))
        np.testing.assert_allclose(table[:, 3], math.sqrt(2.0), atol=1e-6)
        curve = self.load_csv(self.path("n1n2_curve.csv"))
        self.assertEqual(curve.shape[1], 4)

    def test_degenerate_speed(self):
        self.assertExitCode(
            3, "smarandache", "--curve", "circle", "--kind", "n1n2", "--theta0", str(math.pi), "--out", self.tmp.name,
        )

    def test_unknown_kind(self):
        self.assertExitCode(2, "smarandache", "--kind", "tb", "--out", self.tmp.name)

    def test_salkowski_verification(self):
        stdout, _ = self.call("smarandache", "--m", "1.7320508", "--n", "4096", "--verify", "--out", self.tmp.name)
        for kind in ("tn1", "tn2", "n1n2", "tn1n2"):
            with self.subTest(kind=kind):
                with open(self.path(f"{kind}_discrepancies.json")) as fh:
                    records = {record["quantity"]: record for record in json.load(fh)}
                self.assertEqual(set(records), {"speed", "kappa_beta", "tau_beta", "T_beta", "N_beta", "B_beta"})
                self.assertLess(records["kappa_beta"]["max_rel"], 1e-3)
        self.assertIn("TN1N2: kappa_beta max_rel=", stdout)


class SpheresCommandTests(CommandTestMixin, SimpleTestCase):
    args = (
        "spheres", "--curve", "helix", "--a", "1", "--b", "1", "--t-range", "0:4*pi",
        "--n", "4096", "--theta0", "0.7854", "--kind", "base",
    )

    def test_osculating_radius(self):
        out = self.path("spheres.json")
        self.call(*self.args, "--out", out)
        with open(out) as fh:
            entries = json.load(fh)
        (osculating,) = [entry for entry in entries if entry["source"] == "osculating"]
        self.assertAlmostEqual(osculating["radius"], 2.0, delta=1e-5)
        self.assertEqual(len([entry for entry in entries if entry["source"] == "derived-quadratic"]), 2)

    def test_radius_too_small(self):
        out = self.path("small.json")
        self.assertExitCode(3, *self.args, "--r", "0.1", "--out", out)
        with open(out) as fh:
            entries = json.load(fh)
        (derived,) = [entry for entry in entries if entry["source"] == "derived-quadratic"]
        self.assertEqual(derived["error"]["type"], "SphereTooSmall")

    def test_index_out_of_range(self):
        self.assertExitCode(2, *self.args, "--index", "100000")

    def test_strict_contact_checks_pass(self):
        stdout, _ = self.call(*self.args, "--strict")
        self.assertIn("osculating", stdout)

    @override_settings(CURVEFRAMES={"OSCULATING_W_FLOOR": 1e6})
    def test_osculating_floor_setting(self):
        stdout, _ = self.call(*self.args)
        (osculating,) = [entry for entry in json.loads(stdout) if entry["source"] == "osculating"]
        self.assertEqual(osculating["error"]["type"], "OsculatingUndefined")


class PlotCommandTests(CommandTestMixin, SimpleTestCase):
    def test_all_kinds(self):
        first, second = self.path("a.svg"), self.path("b.svg")
        self.call("plot", "--n", "512", "--out", first)
        self.call("plot", "--n", "512", "--out", second)
        with open(first, "rb") as fa, open(second, "rb") as fb:
            content = fa.read()
            self.assertEqual(content, fb.read())
        self.assertEqual(content.count(b'class="curve"'), 4)

    def test_with_base(self):
        stdout, _ = self.call("plot", "--curve", "helix", "--n", "256", "--kind", "tn1", "--with-base")
        self.assertEqual(stdout.count('class="curve"'), 2)
        self.assertIn(">alpha</text>", stdout)

    def test_malformed_csv(self):
        bad = self.path("bad.csv")
        with open(bad, "w") as fh:
            fh.write("t,x,y\n0,0,0\n")
        self.assertExitCode(2, "plot", "--kind", "base", "--csv", bad)

    def test_bad_view(self):
        self.assertExitCode(2, "plot", "--curve", "circle", "--n", "128", "--view", "30,95")


class VerifyCommandTests(CommandTestMixin, TestCase):
    def test_report_and_record(self):
        out = self.path("report.json")
        _, stderr = self.call("verify", "--n", "1024", "--out", out, "--record")
        with open(out) as fh:
            report = json.load(fh)
        self.assertEqual(set(report), {"passed", "discrepant", "checks", "discrepancies"})
        names = {check["name"] for check in report["checks"]}
        self.assertIn("parser.values", names)
        self.assertIn("theorem.linear_constraint", names)
        self.assertIn("checks", stderr)

        run = VerificationRun.objects.get()
        self.assertEqual(run.initiator, "cli")
        self.assertEqual(run.samples, 1024)
        self.assertEqual(run.checks_total, len(report["checks"]))
        self.assertIn(run.status, {VerificationRun.Status.PASSED, VerificationRun.Status.DISCREPANT, VerificationRun.Status.FAILED})
        self.assertEqual(run.discrepancies.count(), run.discrepancies_count)
