# curveframes/curves_builtin.py
"""Ready-made curves: the Salkowski family, circles and circular helices."""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Tuple

import numpy as np

from .exceptions import InputError, NonpositiveRadius, OutOfDomain, ParamDegenerate

DEFAULT_M = math.sqrt(3.0)
# |1 - 2n| below this makes the printed coefficients blow up; wide enough that
# m = 1/sqrt(3) rounded to five digits is rejected too.
DEGENERATE_TOL = 1e-6

PositionFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SalkowskiParams:
    m: float = DEFAULT_M

    def __post_init__(self):
        if not self.m > 0:
            raise InputError(f"Salkowski parameter m must be positive, got {self.m!r}")

    @cached_property
    def n(self) -> float:
        return self.m / math.sqrt(1.0 + self.m ** 2)

    @cached_property
    def root(self) -> float:
        """sqrt(1 + m^2)"""
        return math.sqrt(1.0 + self.m ** 2)

    @property
    def s_limit(self) -> float:
        """Half-width of the arc-length domain, 1 / (n sqrt(1 + m^2))."""
        return 1.0 / (self.n * self.root)


def salkowski_point(params: SalkowskiParams, t, degenerate_tol: float = DEGENERATE_TOL) -> np.ndarray:
    n, root = params.n, params.root
    if abs(1.0 - 2.0 * n) < degenerate_tol:
        raise ParamDegenerate(
            f"Salkowski curve degenerates for n = {n!r} (m = {params.m!r})", m=params.m, n=n,
        )
    t = np.asarray(t, dtype=float)
    c_plus = (1.0 - n) / (4.0 * (1.0 + 2.0 * n))
    c_minus = (1.0 + n) / (4.0 * (1.0 - 2.0 * n))
    x = (-c_plus * np.sin((1 + 2 * n) * t) - c_minus * np.sin((1 - 2 * n) * t) - 0.5 * np.sin(t)) / root
    y = (c_plus * np.cos((1 + 2 * n) * t) + c_minus * np.cos((1 - 2 * n) * t) + 0.5 * np.cos(t)) / root
    z = np.cos(2 * n * t) / (4.0 * params.m * root)
    return np.stack([x, y, z], axis=-1)


def salkowski_t_of_s(params: SalkowskiParams, s):
    """t = (1/n) arcsin(n sqrt(1 + m^2) s), defined for |s| <= s_limit."""
    scale = params.n * params.root
    s_arr = np.asarray(s, dtype=float)
    outside = np.abs(scale * s_arr) > 1.0
    if np.any(outside):
        value = float(np.broadcast_to(s_arr, outside.shape)[outside].ravel()[0])
        raise OutOfDomain(value, -params.s_limit, params.s_limit)
    t = np.arcsin(scale * s_arr) / params.n
    return float(t) if t.ndim == 0 else t


def salkowski_s_domain(params: SalkowskiParams, fraction: float = 0.9) -> Tuple[float, float]:
    return -fraction * params.s_limit, fraction * params.s_limit


def salkowski(params: SalkowskiParams) -> PositionFn:
    def position(t):
        return salkowski_point(params, t)
    return position


def salkowski_unit_speed(params: SalkowskiParams) -> PositionFn:
    """alpha(t(s)): the Salkowski curve on its arc-length parameter."""
    def position(s):
        return salkowski_point(params, salkowski_t_of_s(params, s))
    return position


def circle(R: float = 1.0) -> PositionFn:
    if not R > 0:
        raise NonpositiveRadius(f"circle radius must be positive, got {R!r}")

    def position(t):
        t = np.asarray(t, dtype=float)
        return np.stack([R * np.cos(t), R * np.sin(t), np.zeros_like(t)], axis=-1)
    return position


def helix(a: float = 1.0, b: float = 1.0) -> PositionFn:
    if not a > 0:
        raise NonpositiveRadius(f"helix radius must be positive, got {a!r}")

    def position(t):
        t = np.asarray(t, dtype=float)
        return np.stack([a * np.cos(t), a * np.sin(t), b * t], axis=-1)
    return position


BUILTIN_CURVES: Dict[str, Callable[..., PositionFn]] = {
    "salkowski": lambda m=DEFAULT_M, **_: salkowski(SalkowskiParams(m)),
    "circle": lambda R=1.0, **_: circle(R),
    "helix": lambda a=1.0, b=1.0, **_: helix(a, b),
}


def builtin_curve(name: str, **params) -> PositionFn:
    try:
        factory = BUILTIN_CURVES[name]
    except KeyError:
        raise InputError(f"unknown curve '{name}', expected one of {', '.join(sorted(BUILTIN_CURVES))}")
    return factory(**{key: value for key, value in params.items() if value is not None})
