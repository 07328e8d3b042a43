# curveframes/exports.py
"""
CSV and JSON writers. Output is a deterministic function of the data: CSV
numbers use 17 significant digits, JSON uses the shortest round-trip float
repr, and every file is written to a temporary sibling and renamed.
"""
import io
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Sequence, Union

import numpy as np
from rest_framework.renderers import JSONRenderer

from .curve_core import CSV_HEADER, SampledCurve
from .frames import BishopData

logger = logging.getLogger(__name__)

FRAMES_HEADER = (
    "s", "x", "y", "z", "Tx", "Ty", "Tz", "N1x", "N1y", "N1z", "N2x", "N2y", "N2z",
    "k1", "k2", "kappa", "tau", "theta",
)
INVARIANTS_HEADER = (
    "s", "s_star", "speed", "kappa_beta", "tau_beta", "theta_beta", "k1_beta", "k2_beta",
    "Tbx", "Tby", "Tbz", "Nbx", "Nby", "Nbz", "Bbx", "Bby", "Bbz",
)
NUMBER_FORMAT = "%.17g"


def atomic_write(path: Union[str, Path], payload: Union[str, bytes]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = payload.encode("utf-8") if isinstance(payload, str) else payload
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug("wrote %s (%d bytes)", path, len(data))
    return path


def format_table(header: Sequence[str], columns: Iterable[np.ndarray]) -> str:
    table = np.column_stack([np.asarray(column, dtype=float) for column in columns])
    buffer = io.StringIO()
    np.savetxt(buffer, table, fmt=NUMBER_FORMAT, delimiter=",", header=",".join(header), comments="")
    return buffer.getvalue()


def curve_table(curve: SampledCurve) -> str:
    """The t,x,y,z format read_csv_curve accepts."""
    return format_table(CSV_HEADER, [curve.grid, *curve.points.T])


def frames_table(bishop: BishopData) -> str:
    return format_table(FRAMES_HEADER, [
        bishop.s, *bishop.points.T, *bishop.T.T, *bishop.N1.T, *bishop.N2.T,
        bishop.k1, bishop.k2, bishop.kappa, bishop.tau, bishop.theta,
    ])


def invariants_table(inv) -> str:
    return format_table(INVARIANTS_HEADER, [
        inv.s, inv.s_star, inv.speed, inv.kappa, inv.tau, inv.theta, inv.k1, inv.k2,
        *inv.T.T, *inv.N.T, *inv.B.T,
    ])


def json_safe(value: Any) -> Any:
    """Recursively convert numpy scalars/arrays to Python values; NaN and inf become None."""
    if isinstance(value, dict):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    if isinstance(value, np.ndarray):
        return json_safe(value.tolist())
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def render_json(data: Any) -> bytes:
    return JSONRenderer().render(json_safe(data), renderer_context={"indent": 2}) + b"\n"
