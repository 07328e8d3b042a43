# curveframes/management/commands/spheres.py
from django.core.management.base import CommandError

from ...exceptions import NumericError
from ...exports import render_json
from ...pipeline import sphere_frames, sphere_indices
from ...serializers import SphereEntrySerializer
from ...smarandache import THETA_WRT
from ...spheres import DERIVED_QUADRATIC, contact_failures, sphere_report
from ..base import CurveCommand


class Command(CurveCommand):
    help = (
        "Curvature spheres (reference closed form and direct solve) and the osculating sphere "
        "of a Smarandache curve, with contact residuals, as JSON."
    )

    def add_command_arguments(self, parser):
        parser.add_argument("--kind", default="tn1", help="tn1, tn2, n1n2, tn1n2, or base for the input curve itself")
        parser.add_argument("--index", type=int, help="Sample index (default: middle of the retained range)")
        parser.add_argument("--s-star", dest="s_star", type=float, help="Arc length of the sample instead of --index")
        parser.add_argument("--r", type=float, help="Curvature-sphere radius (default twice the minimum)")
        parser.add_argument("--every", type=int, help="Report every k-th retained sample")
        parser.add_argument("--invariants", choices=["oracle", "closed"], default="oracle")
        parser.add_argument("--theta-beta-wrt", dest="theta_beta_wrt", choices=THETA_WRT, default="s_star")

    def run(self, options):
        config = self.run_config(options, theta_beta_wrt=options["theta_beta_wrt"])
        stride = config.derivative_stride
        frames = sphere_frames(config, options["kind"].lower(), options["invariants"])
        indices = sphere_indices(frames, stride, options.get("index"), options.get("s_star"), options.get("every"))

        entries = []
        for index in indices:
            entries += sphere_report(frames, index, options.get("r"), stride, config.osculating_w_floor)
        self.emit(render_json(SphereEntrySerializer(entries, many=True).data), options.get("out"))

        # The direct solve is the reference family; its failure fails the command.
        failures = [entry["error"] for entry in entries if entry["source"] == DERIVED_QUADRATIC and "error" in entry]
        if failures:
            first = failures[0]
            raise CommandError(f"{first['type']}: {first['message']}", returncode=NumericError.exit_code)

        if options["strict"]:
            failures = contact_failures(entries)
            if failures:
                self.fail_verification(f"{len(failures)} sphere contact check(s) out of tolerance; first: {failures[0]}")
