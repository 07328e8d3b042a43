# curveframes/management/commands/frames.py
from ...exports import frames_table
from ...frames import frame_integrity
from ...pipeline import bishop_frames
from ..base import CurveCommand

INTEGRITY_LIMIT = 1e-6


class Command(CurveCommand):
    help = "Write the Bishop apparatus (T, N1, N2, k1, k2, kappa, tau, theta) of a curve as CSV."

    def run(self, options):
        config = self.run_config(options)
        result = bishop_frames(config)
        self.emit(frames_table(result.bishop), options.get("out"))

        if options.get("strict"):
            integrity = frame_integrity(result.frenet, result.bishop, config.derivative_stride)
            # normal_parallelism differentiates N1 once more and is reported by verify only
            failing = {
                key: value for key, value in integrity.items()
                if key != "normal_parallelism" and value > INTEGRITY_LIMIT
            }
            if failing:
                self.fail_verification(
                    "frame integrity out of tolerance: "
                    + ", ".join(f"{key}={value:.3e}" for key, value in sorted(failing.items()))
                )
