# curveframes/management/commands/verify.py
from ...exports import render_json
from ...models import VerificationRun
from ...smarandache import THETA_WRT
from ...tasks import record_report
from ...verification import SuiteConfig, run_suite
from ..base import CurveCommand


class Command(CurveCommand):
    help = "Run the closed-form vs oracle acceptance suite and write a JSON report."
    default_n = 4096

    def add_command_arguments(self, parser):
        parser.add_argument("--record", action="store_true", help="Store the run in the verification ledger")
        parser.add_argument("--theta-beta-wrt", dest="theta_beta_wrt", choices=THETA_WRT, default="s_star")

    def run(self, options):
        n = options.get("n") or self.default_n
        config = SuiteConfig(
            n=n, rtol=options.get("tol"), stride=options.get("stride"), theta_beta_wrt=options["theta_beta_wrt"],
        )
        report = run_suite(config)
        self.emit(render_json(report.as_dict()), options.get("out"))

        if options["record"]:
            run = VerificationRun.objects.create(initiator="cli", samples=n, rtol=options.get("tol"))
            run.mark_running()
            record_report(run, report)
            self.stderr.write(f"recorded run {run.pk} ({run.status})")

        failures = report.failures()
        self.stderr.write(
            f"{len(report.checks)} checks, {len(failures)} failed, "
            f"{'discrepancies reported' if report.discrepant else 'no discrepancies'}"
        )
        if options["strict"] and (failures or report.discrepant):
            names = [check.name for check in failures] + [
                name for name, discrepancy in report.discrepancies.items() if not discrepancy.passed
            ]
            self.fail_verification("verification failed: " + ", ".join(names[:10]))
