# curveframes/curve_core.py
"""
Sampled parametric curves, finite-difference derivatives and arc-length
reparametrization.

Everything in here is plain numpy/scipy so the numeric core can be imported
without configuring Django.
"""
import csv
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import PchipInterpolator, make_interp_spline

from .exceptions import (
    ConfigError,
    CsvFormatError,
    DegenerateInterval,
    InputError,
    IrregularCurve,
    NotUnitSpeed,
    SampleCountTooSmall,
)

logger = logging.getLogger(__name__)

MIN_SAMPLES = 9
GUARD_BAND = 4
SPEED_FLOOR = 1e-9
UNIT_SPEED_TOL = 1e-6
CSV_HEADER = ("t", "x", "y", "z")
CSV_UNIFORMITY_TOL = 1e-9

PositionFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """
    Uniformly sampled space curve. points has shape (n, 3) and is read-only.
    position_fn, when present, evaluates the exact curve on the same parameter.
    """
    param_start: float
    param_step: float
    points: np.ndarray
    unit_speed: bool = False
    position_fn: Optional[PositionFn] = None
    label: str = ""

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise InputError(f"points must have shape (n, 3), got {pts.shape}")
        if pts.shape[0] < MIN_SAMPLES:
            raise SampleCountTooSmall(f"need at least {MIN_SAMPLES} samples, got {pts.shape[0]}")
        if not self.param_step > 0:
            raise DegenerateInterval(f"param_step must be positive, got {self.param_step!r}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "param_start", float(self.param_start))
        object.__setattr__(self, "param_step", float(self.param_step))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def grid(self) -> np.ndarray:
        return self.param_start + self.param_step * np.arange(self.n)

    @property
    def param_end(self) -> float:
        return self.param_start + self.param_step * (self.n - 1)


@dataclass(frozen=True, eq=False)
class DerivativeSet:
    first: np.ndarray
    second: Optional[np.ndarray]
    third: Optional[np.ndarray]
    guard_band: int

    def order(self, k: int) -> np.ndarray:
        value = {1: self.first, 2: self.second, 3: self.third}.get(k)
        if value is None:
            raise ConfigError(f"derivative of order {k} was not computed")
        return value


def sample_curve(position_fn: PositionFn, param_range: Tuple[float, float], n: int, label: str = "") -> SampledCurve:
    a, b = (float(v) for v in param_range)
    if n < MIN_SAMPLES:
        raise SampleCountTooSmall(f"need at least {MIN_SAMPLES} samples, got {n}")
    if not (np.isfinite(a) and np.isfinite(b)) or not b > a:
        raise DegenerateInterval(f"parameter interval [{a!r}, {b!r}] is degenerate")
    grid = np.linspace(a, b, n)
    points = _evaluate(position_fn, grid)
    return SampledCurve(
        param_start=a,
        param_step=(b - a) / (n - 1),
        points=points,
        position_fn=position_fn,
        label=label,
    )


def _evaluate(position_fn: PositionFn, t: np.ndarray) -> np.ndarray:
    points = np.asarray(position_fn(t), dtype=float)
    if points.shape != (t.size, 3):
        raise InputError(f"position function returned shape {points.shape}, expected {(t.size, 3)}")
    if not np.all(np.isfinite(points)):
        raise InputError("position function returned non-finite coordinates")
    return points


# --- finite differences ---------------------------------------------------

def fornberg_weights(z: float, x, m: int) -> np.ndarray:
    """
    Finite-difference weights on nodes x for derivatives 0..m at z.
    Returns an array c with c[j, k] the weight of node j for the k-th derivative.
    """
    x = np.asarray(x, dtype=float)
    c = np.zeros((x.size, m + 1))
    c1 = 1.0
    c4 = x[0] - z
    c[0, 0] = 1.0
    for i in range(1, x.size):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 = c2 * c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c


@lru_cache(maxsize=None)
def stencil_weights(offsets: Tuple[int, ...], order: int) -> Tuple[float, ...]:
    return tuple(fornberg_weights(0.0, offsets, order)[:, order])


def _centered_half_width(order: int) -> int:
    return 3 if order == 3 else 2


def _one_sided_offsets(i: int, n: int, order: int, stride: int) -> Tuple[int, ...]:
    width = order + 4
    left = i // stride
    right = (n - 1 - i) // stride
    if left < right:
        start = -min(left, width - 1)
    else:
        start = -(width - 1 - min(right, width - 1))
    return tuple(range(start, start + width))


def guard_band_for(stride: int = 1) -> int:
    return GUARD_BAND * stride


def differentiate(values, step: float, order: int, stride: int = 1) -> np.ndarray:
    """
    Differentiate a uniformly sampled sequence (scalar or vector valued).

    Centered stencils (5 points for orders 1-2, 7 for order 3) wherever they
    fit, one-sided windows of order + 4 nodes near the ends. Nodes are
    spaced stride samples apart.
    """
    if order not in (1, 2, 3):
        raise ConfigError(f"derivative order must be 1, 2 or 3, got {order!r}")
    if stride < 1:
        raise ConfigError("stride must be >= 1")
    data = np.asarray(values, dtype=float)
    n = data.shape[0]
    if n < max(MIN_SAMPLES, (order + 3) * stride + 1):
        raise SampleCountTooSmall(f"{n} samples are too few for order {order} with stride {stride}")

    h = _centered_half_width(order)
    centered = tuple(range(-h, h + 1))
    weights = stencil_weights(centered, order)
    out = np.zeros_like(data)

    lo, hi = h * stride, n - h * stride
    if hi > lo:
        for offset, weight in zip(centered, weights):
            out[lo:hi] += weight * data[lo + offset * stride:hi + offset * stride]

    for i in list(range(0, min(lo, n))) + list(range(max(hi, lo), n)):
        offsets = _one_sided_offsets(i, n, order, stride)
        edge_weights = stencil_weights(offsets, order)
        acc = np.zeros_like(data[0])
        for offset, weight in zip(offsets, edge_weights):
            acc = acc + weight * data[i + offset * stride]
        out[i] = acc

    return out / (stride * step) ** order


def derivatives(curve: SampledCurve, max_order: int, stride: int = 1) -> DerivativeSet:
    if max_order not in (1, 2, 3):
        raise ConfigError(f"max_order must be 1, 2 or 3, got {max_order!r}")
    computed = [differentiate(curve.points, curve.param_step, k, stride) for k in range(1, max_order + 1)]
    computed += [None] * (3 - max_order)
    return DerivativeSet(
        first=computed[0],
        second=computed[1],
        third=computed[2],
        guard_band=guard_band_for(stride),
    )


def speed(curve: SampledCurve, stride: int = 1) -> np.ndarray:
    return np.linalg.norm(differentiate(curve.points, curve.param_step, 1, stride), axis=1)


def as_unit_speed(curve: SampledCurve, tol: float = UNIT_SPEED_TOL, stride: int = 1) -> SampledCurve:
    """Check |speed - 1| <= tol on interior samples and flag the curve unit-speed."""
    g = guard_band_for(stride)
    deviation = np.abs(speed(curve, stride) - 1.0)[g:curve.n - g]
    if deviation.size and deviation.max() > tol:
        worst = int(np.argmax(deviation)) + g
        raise NotUnitSpeed(
            f"speed deviates from 1 by {deviation.max():.3e} at s={curve.grid[worst]!r}",
            s=float(curve.grid[worst]),
        )
    return replace(curve, unit_speed=True)


# --- arc length -----------------------------------------------------------

def arc_length_table(curve: SampledCurve, stride: int = 1, speed_floor: float = SPEED_FLOOR) -> Tuple[np.ndarray, np.ndarray]:
    """Cumulative composite-trapezoid arc length on the sample grid."""
    v = speed(curve, stride)
    if v.min() < speed_floor:
        worst = int(np.argmin(v))
        raise IrregularCurve(
            f"speed {v[worst]:.3e} below {speed_floor:g} at parameter {curve.grid[worst]!r}",
            parameter=float(curve.grid[worst]),
        )
    return curve.grid, cumulative_trapezoid(v, dx=curve.param_step, initial=0.0)


class _SmoothArcLength:
    """
    Arc length S(t) of a curve by cell-wise Gauss-Legendre quadrature of a
    smooth speed function, used to polish the inverse of the trapezoid table.
    """
    NODES = 8

    def __init__(self, curve: SampledCurve):
        self.a = curve.param_start
        self.b = curve.param_end
        self.grid = curve.grid
        if curve.position_fn is not None:
            self._fn = curve.position_fn
            self._spline = None
            self._h = min(1e-3 * max(1.0, (self.b - self.a) / (2 * np.pi)), (self.b - self.a) / 8)
            self.speed = self._speed_from_function
        else:
            self._spline = make_interp_spline(self.grid, np.asarray(curve.points), k=5)
            self._velocity = self._spline.derivative()
            self.speed = self._speed_from_spline
        self._x, self._w = np.polynomial.legendre.leggauss(self.NODES)
        cells = self._integrate(self.grid[:-1], self.grid[1:])
        self.nodes = np.concatenate(([0.0], np.cumsum(cells)))
        self.length = float(self.nodes[-1])

    def position(self, t: np.ndarray) -> np.ndarray:
        if self._spline is not None:
            return np.asarray(self._spline(t))
        return _evaluate(self._fn, t)

    def _speed_from_spline(self, t: np.ndarray) -> np.ndarray:
        return np.linalg.norm(self._velocity(t), axis=-1)

    def _speed_from_function(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        h = self._h
        velocity = np.zeros(t.shape + (3,))
        forward = t - 2 * h < self.a
        backward = (t + 2 * h > self.b) & ~forward
        centered = ~(forward | backward)
        for mask, offsets in ((centered, (-2, -1, 0, 1, 2)), (forward, (0, 1, 2, 3, 4)), (backward, (-4, -3, -2, -1, 0))):
            if not mask.any():
                continue
            tm = t[mask]
            acc = np.zeros((tm.size, 3))
            for offset, weight in zip(offsets, stencil_weights(offsets, 1)):
                acc += weight * _evaluate(self._fn, tm + offset * h)
            velocity[mask] = acc / h
        return np.linalg.norm(velocity, axis=-1)

    def _integrate(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        points = mid[:, None] + half[:, None] * self._x[None, :]
        values = self.speed(points.ravel()).reshape(points.shape)
        return half * (values @ self._w)

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.clip(np.asarray(t, dtype=float), self.a, self.b)
        cell = np.clip(np.searchsorted(self.grid, t, side="right") - 1, 0, self.grid.size - 2)
        return self.nodes[cell] + self._integrate(self.grid[cell], t)


def arc_length_reparam(
    curve: SampledCurve,
    n_out: int,
    stride: int = 1,
    speed_floor: float = SPEED_FLOOR,
    max_newton: int = 30,
) -> SampledCurve:
    """
    Resample a regular curve at uniform arc length.

    The trapezoid table inverted by monotone cubic interpolation gives the
    initial t(s); Newton steps on the quadrature arc length refine it.
    The result starts at s = 0 and is flagged unit-speed.
    """
    if n_out < MIN_SAMPLES:
        raise SampleCountTooSmall(f"need at least {MIN_SAMPLES} output samples, got {n_out}")
    t_table, s_table = arc_length_table(curve, stride, speed_floor)
    smooth = _SmoothArcLength(curve)
    length = smooth.length
    logger.debug(
        "arc length of %s: quadrature %.17g, trapezoid %.17g",
        curve.label or "curve", length, s_table[-1],
    )

    s_out = np.linspace(0.0, length, n_out)
    inverse = PchipInterpolator(s_table, t_table)
    t = np.clip(inverse(s_out * (s_table[-1] / length)), smooth.a, smooth.b)
    t[0], t[-1] = smooth.a, smooth.b

    target = 1e-13 * max(1.0, length)
    iteration, worst = 0, float("inf")
    for iteration in range(max_newton):
        residual = smooth(t) - s_out
        residual[0] = residual[-1] = 0.0
        worst = float(np.abs(residual).max())
        if worst < target:
            break
        t = np.clip(t - residual / np.maximum(smooth.speed(t), speed_floor), smooth.a, smooth.b)
    else:
        if max_newton:
            logger.warning("arc-length inversion stopped at residual %.3e after %d steps", worst, max_newton)
    logger.debug("arc-length inversion converged in %d Newton steps", iteration)

    return SampledCurve(
        param_start=0.0,
        param_step=length / (n_out - 1),
        points=smooth.position(t),
        unit_speed=True,
        label=curve.label,
    )


# --- CSV ingestion ----------------------------------------------------------

def read_csv_curve(path) -> SampledCurve:
    """Read a `t,x,y,z` file with strictly increasing, uniform t."""
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from exc
    if not rows or tuple(cell.strip() for cell in rows[0]) != CSV_HEADER:
        raise CsvFormatError(f"{path}: header must be {','.join(CSV_HEADER)}")

    values = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 4:
            raise CsvFormatError(f"{path}:{line_no}: expected 4 columns, got {len(row)}")
        try:
            values.append([float(cell) for cell in row])
        except ValueError as exc:
            raise CsvFormatError(f"{path}:{line_no}: {exc}") from exc
    data = np.array(values, dtype=float).reshape(-1, 4)
    if data.shape[0] < MIN_SAMPLES:
        raise SampleCountTooSmall(f"{path}: need at least {MIN_SAMPLES} rows, got {data.shape[0]}")
    if not np.all(np.isfinite(data)):
        raise CsvFormatError(f"{path}: non-finite value")

    t = data[:, 0]
    if np.any(np.diff(t) <= 0):
        raise CsvFormatError(f"{path}: t must be strictly increasing")
    step = (t[-1] - t[0]) / (t.size - 1)
    expected = t[0] + step * np.arange(t.size)
    if np.abs(t - expected).max() > CSV_UNIFORMITY_TOL * max(1.0, abs(t[-1] - t[0])):
        raise CsvFormatError(f"{path}: t is not uniformly spaced")
    return SampledCurve(param_start=t[0], param_step=step, points=data[:, 1:], label=path.stem)
