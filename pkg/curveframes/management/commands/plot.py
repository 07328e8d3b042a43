# curveframes/management/commands/plot.py
from ...curve_core import read_csv_curve
from ...pipeline import bishop_frames
from ...plotting import render_svg
from ...smarandache import SmarandacheKind, construct
from ..base import CurveCommand


class Command(CurveCommand):
    help = "Orthographic SVG of Smarandache curves (or of the input curve with --kind base)."

    def add_command_arguments(self, parser):
        parser.add_argument("--kind", default="all", help="tn1, tn2, n1n2, tn1n2, all or base")
        parser.add_argument("--with-base", dest="with_base", action="store_true", help="Also draw the input curve")

    def run(self, options):
        config = self.run_config(options)
        kind = options["kind"].lower()

        if kind == "base" and options.get("csv"):
            # plot the file as given, no reparametrization
            curve = read_csv_curve(options["csv"])
            curves = [(curve.label, curve.points)]
        else:
            frames = bishop_frames(config)
            curves = []
            if kind == "base" or options["with_base"]:
                curves.append(("alpha", frames.bishop.points))
            if kind != "base":
                curves += [(k.label, construct(k, frames.bishop).points) for k in SmarandacheKind.parse(kind)]

        self.emit(render_svg(curves, config.view), options.get("out"))
