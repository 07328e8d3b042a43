# curveframes/pipeline.py
"""
Glue between a run configuration and the numeric library: which curve, how
it becomes unit-speed, and the frame / Smarandache / sphere stages on top.

This is the only layer that reads settings.CURVEFRAMES; the library
functions receive every tunable as an argument.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from .conf import derivative_stride, get_setting
from .curve_core import (
    SampledCurve,
    arc_length_reparam,
    as_unit_speed,
    guard_band_for,
    read_csv_curve,
    sample_curve,
)
from .curves_builtin import (
    SalkowskiParams,
    builtin_curve,
    salkowski_s_domain,
    salkowski_unit_speed,
)
from .exceptions import ConfigError, IndexOutOfRange, SampleCountTooSmall
from .expr import curve_function, evaluate, parse
from .frames import BishopData, FrenetData, bishop_from_frenet, frenet_frame
from .plotting import View
from .smarandache import (
    DiscrepancyReport,
    SmarandacheInvariants,
    SmarandacheKind,
    compare,
    construct,
    invariants,
    oracle_bishop,
    oracle_invariants,
)
from .spheres import SphereFrames

logger = logging.getLogger(__name__)

MIN_FRAME_SAMPLES = 64
DEFAULT_T_RANGE = (0.0, 2.0 * math.pi)


def parse_t_range(text: str) -> Tuple[float, float]:
    """'a:b' where a and b may be constant expressions such as 2*pi."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"--t-range expects 'a:b', got {text!r}")
    a, b = (evaluate(parse(part), 0.0) for part in parts)
    return a, b


@dataclass(frozen=True)
class CurveSource:
    kind: str                       # "builtin" | "csv" | "expr"
    name: str = ""
    params: Dict[str, float] = field(default_factory=dict)
    path: str = ""
    expr: str = ""

    @property
    def label(self) -> str:
        if self.kind == "csv":
            return self.path
        if self.kind == "expr":
            return self.expr
        return self.name


@dataclass(frozen=True)
class RunConfig:
    source: CurveSource
    n: int = 2048
    theta0: float = 0.0
    t_range: Optional[Tuple[float, float]] = None
    view: View = field(default_factory=View)
    stride: Optional[int] = None
    rtol: Optional[float] = None
    atol: Optional[float] = None
    theta_beta_wrt: str = "s_star"

    def __post_init__(self):
        if self.n < MIN_FRAME_SAMPLES:
            raise SampleCountTooSmall(f"--n must be at least {MIN_FRAME_SAMPLES}, got {self.n}")

    @property
    def derivative_stride(self) -> int:
        return derivative_stride(self.n, self.stride)

    @property
    def compare_rtol(self) -> float:
        return float(self.rtol if self.rtol is not None else get_setting("COMPARE_RTOL"))

    @property
    def compare_atol(self) -> float:
        return float(self.atol if self.atol is not None else get_setting("COMPARE_ATOL"))

    @property
    def osculating_w_floor(self) -> float:
        return float(get_setting("OSCULATING_W_FLOOR"))


def base_curve(config: RunConfig) -> SampledCurve:
    """The input curve on its own parameter."""
    source = config.source
    if source.kind == "csv":
        return read_csv_curve(source.path)
    t_range = config.t_range or DEFAULT_T_RANGE
    if source.kind == "expr":
        return sample_curve(curve_function(source.expr), t_range, config.n, label="expr")
    return sample_curve(builtin_curve(source.name, **source.params), t_range, config.n, label=source.name)


def unit_speed_curve(config: RunConfig) -> SampledCurve:
    source = config.source
    stride = config.derivative_stride
    if source.kind == "builtin" and source.name == "salkowski" and config.t_range is None:
        params = SalkowskiParams(source.params.get("m") or SalkowskiParams().m)
        domain = salkowski_s_domain(params, get_setting("SALKOWSKI_DOMAIN_FRACTION"))
        curve = sample_curve(salkowski_unit_speed(params), domain, config.n, label="salkowski")
        return as_unit_speed(curve, tol=get_setting("UNIT_SPEED_TOL"), stride=stride)
    curve = base_curve(config)
    logger.info("reparametrizing %s by arc length (%d samples, stride %d)", curve.label, config.n, stride)
    return arc_length_reparam(curve, config.n, stride=stride, speed_floor=get_setting("SPEED_FLOOR"))


class FrameResult(NamedTuple):
    curve: SampledCurve
    frenet: FrenetData
    bishop: BishopData


def bishop_frames(config: RunConfig) -> FrameResult:
    curve = unit_speed_curve(config)
    stride = config.derivative_stride
    frenet = frenet_frame(curve, get_setting("KAPPA_FLOOR"), stride)
    bishop = bishop_from_frenet(frenet, config.theta0)
    logger.info("bishop frame of %s: %d retained samples", curve.label, len(bishop))
    return FrameResult(curve, frenet, bishop)


@dataclass(frozen=True, eq=False)
class SmarandacheResult:
    kind: SmarandacheKind
    beta: SampledCurve
    closed: SmarandacheInvariants
    oracle: Optional[SmarandacheInvariants] = None
    report: Optional[DiscrepancyReport] = None


def smarandache_stage(
    bishop: BishopData,
    kind: SmarandacheKind,
    config: RunConfig,
    verify: bool = False,
) -> SmarandacheResult:
    stride = config.derivative_stride
    beta = construct(kind, bishop)
    closed = invariants(kind, bishop, config.theta_beta_wrt, stride=stride)
    if not verify:
        return SmarandacheResult(kind, beta, closed)
    oracle = oracle_invariants(
        kind, beta, config.theta_beta_wrt, stride=stride, kappa_floor=get_setting("KAPPA_FLOOR"),
    )
    report = compare(
        closed.trim(guard_band_for(stride)), oracle,
        rtol=config.compare_rtol, atol=config.compare_atol, kappa_floor=get_setting("KAPPA_FLOOR"),
    )
    return SmarandacheResult(kind, beta, closed, oracle, report)


def sphere_frames(config: RunConfig, kind: str, mode: str = "oracle") -> SphereFrames:
    """
    Bishop data of the sphere curve: alpha itself for kind 'base', otherwise
    a Smarandache curve, taken either from the oracle (beta reparametrized by
    its own arc length) or from the closed forms on alpha's grid.
    """
    stride = config.derivative_stride
    frames = bishop_frames(config)
    if kind == "base":
        return SphereFrames.from_bishop(frames.bishop, frames.curve, stride)
    (smarandache_kind,) = SmarandacheKind.parse(kind)
    beta = construct(smarandache_kind, frames.bishop)
    if mode == "closed":
        closed = invariants(smarandache_kind, frames.bishop, config.theta_beta_wrt, stride=stride)
        return SphereFrames.from_invariants(closed, beta, stride)
    if mode != "oracle":
        raise ConfigError(f"--invariants must be 'oracle' or 'closed', got {mode!r}")
    unit, bishop = oracle_bishop(beta, beta.n, stride=stride, kappa_floor=get_setting("KAPPA_FLOOR"))
    return SphereFrames.from_bishop(bishop, unit, stride)


def sphere_indices(
    frames: SphereFrames,
    stride: int,
    index: Optional[int] = None,
    s_star: Optional[float] = None,
    every: Optional[int] = None,
) -> List[int]:
    """Frame indices whose contact residuals can be evaluated."""
    g = guard_band_for(stride)
    low = max(0, g - frames.offset)
    high = min(len(frames), frames.curve.n - g - frames.offset)
    if high <= low:
        raise IndexOutOfRange("no samples outside the guard band")
    if every:
        return list(range(low, high, every))
    if s_star is not None:
        index = frames.index_of(s_star)
    if index is None:
        index = (low + high) // 2
    if not low <= index < high:
        raise IndexOutOfRange(f"index {index} outside retained range [{low}, {high - 1}]")
    return [index]
