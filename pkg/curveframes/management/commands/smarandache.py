# curveframes/management/commands/smarandache.py
from ...exports import curve_table, invariants_table, render_json
from ...pipeline import bishop_frames, smarandache_stage
from ...serializers import DiscrepancyRecordSerializer
from ...smarandache import THETA_WRT, SmarandacheKind
from ..base import CurveCommand


class Command(CurveCommand):
    help = (
        "Construct Smarandache curves of the Bishop frame and write, per kind, "
        "<kind>_curve.csv, <kind>_invariants.csv and with --verify <kind>_discrepancies.json "
        "into the --out directory."
    )

    def add_command_arguments(self, parser):
        parser.add_argument("--kind", default="all", help="tn1, tn2, n1n2, tn1n2 or all")
        parser.add_argument("--verify", action="store_true", help="Compare the closed forms with the numeric oracle")
        parser.add_argument(
            "--theta-beta-wrt", dest="theta_beta_wrt", choices=THETA_WRT, default="s_star",
            help="Integrate the Bishop angle of the Smarandache curve over its own arc length or over s",
        )

    def run(self, options):
        kinds = SmarandacheKind.parse(options["kind"])
        config = self.run_config(options, theta_beta_wrt=options["theta_beta_wrt"])
        verify = options["verify"] or options["strict"]
        out_dir = self.output_dir(options)
        bishop = bishop_frames(config).bishop

        failed = []
        for kind in kinds:
            result = smarandache_stage(bishop, kind, config, verify=verify)
            self.emit(curve_table(result.beta), str(out_dir / f"{kind.value}_curve.csv"))
            self.emit(invariants_table(result.closed), str(out_dir / f"{kind.value}_invariants.csv"))
            if result.report is None:
                continue
            records = DiscrepancyRecordSerializer(result.report.records, many=True).data
            self.emit(render_json(records), str(out_dir / f"{kind.value}_discrepancies.json"))
            failed += [f"{kind.value}.{record.quantity}" for record in result.report.failures()]
            self.stdout.write(
                f"{kind.label}: kappa_beta max_rel={result.report.get('kappa_beta').max_rel:.3e} "
                f"tau_beta max_rel={result.report.get('tau_beta').max_rel:.3e}"
            )

        if failed and options["strict"]:
            self.fail_verification("closed forms disagree with the oracle: " + ", ".join(failed))
