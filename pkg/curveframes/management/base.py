# curveframes/management/base.py
"""
Shared option parsing for the curve commands. Library errors become
CommandError with the exit code the error family carries.
"""
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from django.core.management.base import BaseCommand, CommandError

from ..exceptions import ConfigError, CurveFramesError
from ..exports import atomic_write
from ..pipeline import CurveSource, RunConfig, parse_t_range
from ..plotting import View

logger = logging.getLogger(__name__)

VERIFICATION_FAILED = 4


class CurveCommand(BaseCommand):
    default_n = 2048

    def add_arguments(self, parser):
        source = parser.add_argument_group("curve source (one of)")
        source.add_argument("--curve", choices=["salkowski", "circle", "helix"], help="Built-in curve (default salkowski)")
        source.add_argument("--expr", help='Coordinate expressions "x(t); y(t); z(t)"')
        source.add_argument("--csv", help="t,x,y,z file with uniform t")

        params = parser.add_argument_group("curve parameters")
        params.add_argument("--m", type=float, help="Salkowski parameter m (default sqrt(3))")
        params.add_argument("--R", type=float, help="Circle radius")
        params.add_argument("--a", type=float, help="Helix radius")
        params.add_argument("--b", type=float, help="Helix pitch parameter")

        parser.add_argument("--n", type=int, help=f"Sample count (default {self.default_n})")
        parser.add_argument("--theta0", type=float, default=0.0, help="Initial Bishop angle")
        parser.add_argument("--t-range", dest="t_range", help="Parameter interval a:b (default 0:2*pi)")
        parser.add_argument("--out", help="Output path (default stdout)")
        parser.add_argument("--strict", action="store_true", help=f"Exit {VERIFICATION_FAILED} when a check is out of tolerance")
        parser.add_argument("--view", default="30,20", help="Azimuth,elevation in degrees")
        parser.add_argument("--stride", type=int, help="Finite-difference stencil stride (default max(1, n // 512))")
        parser.add_argument("--tol", type=float, help="Relative comparison tolerance (default SMARANDACHE_TOL or 1e-3)")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            self.run(options)
        except CurveFramesError as exc:
            logger.debug("%s failed", self.__module__, exc_info=True)
            raise CommandError(f"{exc.error_type}: {exc.message}", returncode=exc.exit_code)

    def run(self, options: Dict[str, Any]) -> None:
        raise NotImplementedError

    # --- helpers ----------------------------------------------------------

    def curve_source(self, options: Dict[str, Any]) -> CurveSource:
        chosen = [key for key in ("curve", "expr", "csv") if options.get(key)]
        if len(chosen) > 1:
            raise ConfigError(f"choose one curve source, got --{' and --'.join(chosen)}")
        if options.get("expr"):
            return CurveSource("expr", expr=options["expr"])
        if options.get("csv"):
            return CurveSource("csv", path=options["csv"])
        name = options.get("curve") or "salkowski"
        params = {key: options.get(key) for key in ("m", "R", "a", "b") if options.get(key) is not None}
        return CurveSource("builtin", name=name, params=params)

    def run_config(self, options: Dict[str, Any], **extra) -> RunConfig:
        return RunConfig(
            source=self.curve_source(options),
            n=options.get("n") or self.default_n,
            theta0=options.get("theta0") or 0.0,
            t_range=parse_t_range(options["t_range"]) if options.get("t_range") else None,
            view=View.parse(options.get("view") or "30,20"),
            stride=options.get("stride"),
            rtol=options.get("tol"),
            **extra,
        )

    def emit(self, payload, out: Optional[str]) -> None:
        """Write text or bytes to --out atomically, or to stdout."""
        if out:
            atomic_write(out, payload)
            return
        text = payload.decode("utf-8") if isinstance(payload, bytes) else payload
        self.stdout.write(text, ending="")

    def output_dir(self, options: Dict[str, Any]) -> Path:
        path = Path(options.get("out") or ".")
        path.mkdir(parents=True, exist_ok=True)
        return path

    def fail_verification(self, message: str) -> None:
        raise CommandError(message, returncode=VERIFICATION_FAILED)
