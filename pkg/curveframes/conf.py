# curveframes/conf.py
from typing import Any

from django.conf import settings

from .exceptions import ConfigError

DEFAULTS = {
    "COMPARE_RTOL": 1e-3,
    "COMPARE_ATOL": 1e-6,
    "DERIVATIVE_STRIDE": None,      # None -> max(1, n // 512)
    "KAPPA_FLOOR": 1e-7,
    "SPEED_FLOOR": 1e-9,
    "UNIT_SPEED_TOL": 1e-6,
    "OSCULATING_W_FLOOR": 1e-9,
    "SALKOWSKI_DOMAIN_FRACTION": 0.9,
    "STRIDE_SAMPLES": 512,
}


def get_setting(name: str) -> Any:
    """Read a key of settings.CURVEFRAMES, falling back to the built-in default."""
    if name not in DEFAULTS:
        raise ConfigError(f"unknown setting CURVEFRAMES[{name!r}]")
    configured = getattr(settings, "CURVEFRAMES", {}) or {}
    value = configured.get(name, DEFAULTS[name])
    return DEFAULTS[name] if value is None and DEFAULTS[name] is not None else value


def derivative_stride(n: int, override: int | None = None) -> int:
    if override is not None:
        if override < 1:
            raise ConfigError("derivative stride must be >= 1")
        return int(override)
    configured = get_setting("DERIVATIVE_STRIDE")
    if configured is not None:
        return max(1, int(configured))
    return max(1, n // int(get_setting("STRIDE_SAMPLES")))
