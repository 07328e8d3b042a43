# curveframes/spheres.py
"""
Curvature and osculating spheres of a curve expressed in its Bishop frame.

A sphere with center c = p + d1 T + d2 N1 + d3 N2 touches the curve at p to
second order when d1 = 0 and k1 d2 + k2 d3 = 1, so the centers of all
curvature spheres at p lie on one line of the normal plane. The osculating
sphere adds the third-order condition k1' d2 + k2' d3 = 0.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .curve_core import SampledCurve, differentiate, guard_band_for
from .exceptions import (
    CurveFramesError,
    DegenerateFrame,
    DiscriminantNegative,
    DivisionByZero,
    IndexOutOfRange,
    OsculatingUndefined,
    SphereTooSmall,
)
from .frames import BishopData

logger = logging.getLogger(__name__)

OSCULATING_W_FLOOR = 1e-9

PAPER_THEOREM = "paper-theorem"
DERIVED_QUADRATIC = "derived-quadratic"
OSCULATING = "osculating"

CONTACT_TOL = 1e-5
THIRD_ORDER_TOL = 1e-3


class FramePoint(NamedTuple):
    position: np.ndarray
    n1: np.ndarray
    n2: np.ndarray


@dataclass(frozen=True, eq=False)
class SphereSolution:
    center: np.ndarray
    radius: float
    branch: Optional[str]        # "+" | "-" | None for the osculating sphere
    deltas: Tuple[float, float, float]
    source: str
    signed_radius: Optional[float] = None

    @property
    def offset_norm(self) -> float:
        return math.hypot(self.deltas[1], self.deltas[2])


class CenterLine(NamedTuple):
    point: np.ndarray
    direction: np.ndarray


def _center(frame: FramePoint, d2: float, d3: float) -> np.ndarray:
    return np.asarray(frame.position, dtype=float) + d2 * np.asarray(frame.n1) + d3 * np.asarray(frame.n2)


def curvature_centers_paper(k1: float, k2: float, r: float, frame: FramePoint) -> Tuple[SphereSolution, SphereSolution]:
    """Both curvature-sphere centers from the reference closed form, unsimplified."""
    if k1 == 0 or k2 == 0:
        raise DivisionByZero(f"reference curvature-sphere centers divide by k1 and k2 (k1={k1!r}, k2={k2!r})")
    discriminant = r ** 2 * (k1 ** 2 - k2 ** 2) - 1.0
    if discriminant < 0:
        raise DiscriminantNegative(discriminant)
    root = math.sqrt(discriminant)
    solutions = []
    for branch, sign in (("+", 1.0), ("-", -1.0)):
        d2 = (k1 - sign * k2 * root) / (4.0 * k1 ** 2)
        d3 = (3.0 * k1 + sign * k2 * root) / (4.0 * k1 * k2)
        solutions.append(SphereSolution(
            center=_center(frame, d2, d3),
            radius=float(r),
            branch=branch,
            deltas=(0.0, d2, d3),
            source=PAPER_THEOREM,
            signed_radius=float(r),
        ))
    return tuple(solutions)


def minimum_radius(k1: float, k2: float) -> float:
    """Distance from the curve point to the line of curvature-sphere centers."""
    total = k1 ** 2 + k2 ** 2
    if total == 0:
        raise DegenerateFrame("curvature vanishes, the center line is at infinity")
    return 1.0 / math.sqrt(total)


def curvature_centers_derived(k1: float, k2: float, r: float, frame: FramePoint) -> Tuple[SphereSolution, SphereSolution]:
    """
    Solve d1 = 0, k1 d2 + k2 d3 = 1 and d2^2 + d3^2 = r^2 directly.
    """
    total = k1 ** 2 + k2 ** 2
    r_min = minimum_radius(k1, k2)
    radicand = r ** 2 * total - 1.0
    if radicand < 0:
        raise SphereTooSmall(r, r_min)
    root = math.sqrt(radicand)
    solutions = []
    for branch, sign in (("+", 1.0), ("-", -1.0)):
        d2 = (k1 - sign * k2 * root) / total
        d3 = (k2 + sign * k1 * root) / total
        solutions.append(SphereSolution(
            center=_center(frame, d2, d3),
            radius=float(r),
            branch=branch,
            deltas=(0.0, d2, d3),
            source=DERIVED_QUADRATIC,
            signed_radius=float(r),
        ))
    return tuple(solutions)


def curvature_center_line(k1: float, k2: float, frame: FramePoint) -> CenterLine:
    total = k1 ** 2 + k2 ** 2
    if total == 0:
        raise DegenerateFrame("curvature vanishes, the center line is undefined")
    point = _center(frame, k1 / total, k2 / total)
    direction = (-k2 * np.asarray(frame.n1) + k1 * np.asarray(frame.n2)) / math.sqrt(total)
    return CenterLine(point=point, direction=direction)


def distance_to_line(point: np.ndarray, line: CenterLine) -> float:
    offset = np.asarray(point) - line.point
    unit = line.direction / np.linalg.norm(line.direction)
    return float(np.linalg.norm(offset - np.dot(offset, unit) * unit))


def osculating_sphere(
    k1: float,
    k2: float,
    dk1: float,
    dk2: float,
    frame: FramePoint,
    w_floor: float = OSCULATING_W_FLOOR,
) -> SphereSolution:
    """
    Osculating sphere from the natural curvatures and their arc-length
    derivatives. The radius is reported as a length; the signed value of
    sqrt(k1'^2 + k2'^2) / W is kept in signed_radius.
    """
    w = k1 * dk2 - dk1 * k2
    if abs(w) < w_floor:
        raise OsculatingUndefined(w)
    d2 = dk2 / w
    d3 = -dk1 / w
    third_order = dk1 * d2 + dk2 * d3
    if abs(third_order) > 1e-12 * max(1.0, abs(dk1 * d2), abs(dk2 * d3)):
        logger.warning("osculating sphere violates k1' d2 + k2' d3 = 0 by %.3e", third_order)
    signed = math.hypot(dk1, dk2) / w
    return SphereSolution(
        center=_center(frame, d2, d3),
        radius=abs(signed),
        branch=None,
        deltas=(0.0, d2, d3),
        source=OSCULATING,
        signed_radius=signed,
    )


def radius_gap(solution: SphereSolution) -> float:
    """| |(d2, d3)| - r |: zero for a true sphere of radius r about the center."""
    return abs(solution.offset_norm - solution.radius)


def contact_residuals(center, radius: float, curve: SampledCurve, index: int, stride: int = 1) -> Tuple[float, float, float, float]:
    """
    F = |c - x|^2 - r^2 and its first three arc-length derivatives at one
    sample. Curves that are not unit-speed are converted to arc-length
    derivatives through the chain rule with their own speed.
    """
    g = guard_band_for(stride)
    if not g <= index < curve.n - g:
        raise IndexOutOfRange(f"index {index} outside retained range [{g}, {curve.n - g - 1}]")
    offset = curve.points - np.asarray(center, dtype=float)
    F = np.einsum("ij,ij->i", offset, offset) - radius ** 2
    h = curve.param_step
    f1, f2, f3 = (differentiate(F, h, order, stride)[index] for order in (1, 2, 3))
    if curve.unit_speed:
        return float(F[index]), float(f1), float(f2), float(f3)

    v = np.linalg.norm(differentiate(curve.points, h, 1, stride), axis=1)
    v0 = v[index]
    v1 = differentiate(v, h, 1, stride)[index]
    v2 = differentiate(v, h, 2, stride)[index]
    g1 = f1 / v0
    g2 = (f2 - v1 * g1) / v0 ** 2
    g3 = (f3 - v2 * g1 - 3.0 * v0 * v1 * g2) / v0 ** 3
    return float(F[index]), float(g1), float(g2), float(g3)


@dataclass(frozen=True, eq=False)
class SphereFrames:
    """
    Bishop data of the curve the spheres touch, with the arc-length
    derivatives of its natural curvatures. Sample i of these arrays is sample
    i + offset of curve.
    """
    s_star: np.ndarray
    points: np.ndarray
    N1: np.ndarray
    N2: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    dk1: np.ndarray
    dk2: np.ndarray
    curve: SampledCurve
    offset: int = 0

    def __len__(self) -> int:
        return self.s_star.size

    def frame_point(self, index: int) -> FramePoint:
        return FramePoint(self.points[index], self.N1[index], self.N2[index])

    def index_of(self, s_star: float) -> int:
        return int(np.argmin(np.abs(self.s_star - s_star)))

    @classmethod
    def from_bishop(cls, bishop: BishopData, curve: SampledCurve, stride: int = 1) -> "SphereFrames":
        """
        curve is the unit-speed curve bishop was built from. Since N1' = -k1 T
        and x'' is normal to T, k1' = <x''', N1> and k2' = <x''', N2>; this
        avoids differentiating k1 and k2, which already carry third derivatives.
        """
        offset = int(round((bishop.s[0] - curve.param_start) / curve.param_step))
        third = differentiate(curve.points, curve.param_step, 3, stride)[offset:offset + bishop.s.size]
        return cls(
            s_star=bishop.s,
            points=bishop.points,
            N1=bishop.N1,
            N2=bishop.N2,
            k1=bishop.k1,
            k2=bishop.k2,
            dk1=np.einsum("ij,ij->i", third, bishop.N1),
            dk2=np.einsum("ij,ij->i", third, bishop.N2),
            curve=curve,
            offset=offset,
        )

    @classmethod
    def from_invariants(cls, inv, curve: SampledCurve, stride: int = 1) -> "SphereFrames":
        """Closed-form invariants on alpha's grid; curve is beta sampled on that grid."""
        step = float(inv.s[1] - inv.s[0])
        offset = int(round((inv.s[0] - curve.param_start) / curve.param_step))
        return cls(
            s_star=inv.s_star,
            points=curve.points[offset:offset + len(inv)],
            N1=inv.N1,
            N2=inv.N2,
            k1=inv.k1,
            k2=inv.k2,
            dk1=differentiate(inv.k1, step, 1, stride) / inv.speed,
            dk2=differentiate(inv.k2, step, 1, stride) / inv.speed,
            curve=curve,
            offset=offset,
        )


def _entry(s_star: float, solution: SphereSolution, residuals) -> Dict[str, Any]:
    entry = {
        "s_star": float(s_star),
        "source": solution.source,
        "branch": solution.branch,
        "center": [float(c) for c in solution.center],
        "radius": float(solution.radius),
        "residuals": [float(value) for value in residuals],
        "deltas": [float(d) for d in solution.deltas],
    }
    if solution.source == PAPER_THEOREM:
        entry["radius_gap"] = radius_gap(solution)
    if solution.source == OSCULATING:
        entry["signed_radius"] = float(solution.signed_radius)
    return entry


def _error_entry(s_star: float, source: str, exc: CurveFramesError) -> Dict[str, Any]:
    return {"s_star": float(s_star), "source": source, "branch": None, "error": exc.as_dict()}


def sphere_report(
    frames: SphereFrames,
    index: int,
    r: Optional[float] = None,
    stride: int = 1,
    w_floor: float = OSCULATING_W_FLOOR,
) -> List[Dict[str, Any]]:
    """
    Every sphere family at one sample with its contact residuals. A family
    that fails contributes an entry with a structured error instead.
    """
    if not 0 <= index < len(frames):
        raise IndexOutOfRange(f"index {index} outside [0, {len(frames) - 1}]")
    k1, k2 = float(frames.k1[index]), float(frames.k2[index])
    s_star = float(frames.s_star[index])
    frame = frames.frame_point(index)
    curve_index = frames.offset + index
    if r is None:
        r = 2.0 * minimum_radius(k1, k2)

    entries: List[Dict[str, Any]] = []
    attempts = (
        (PAPER_THEOREM, lambda: curvature_centers_paper(k1, k2, r, frame)),
        (DERIVED_QUADRATIC, lambda: curvature_centers_derived(k1, k2, r, frame)),
        (OSCULATING, lambda: (osculating_sphere(k1, k2, float(frames.dk1[index]), float(frames.dk2[index]), frame, w_floor),)),
    )
    for source, solve in attempts:
        try:
            for solution in solve():
                residuals = contact_residuals(solution.center, solution.radius, frames.curve, curve_index, stride)
                entries.append(_entry(s_star, solution, residuals))
        except CurveFramesError as exc:
            logger.info("%s spheres at s*=%.6g: %s", source, s_star, exc.message)
            entries.append(_error_entry(s_star, source, exc))
    return entries


def contact_failures(entries: List[Dict[str, Any]]) -> List[str]:
    """
    Entries whose contact residuals break the contact order their family
    promises. Paper-theorem centers are not held to a contact order.
    """
    failures = []
    for entry in entries:
        if entry["source"] == PAPER_THEOREM or "error" in entry:
            continue
        F, F1, F2, F3 = entry["residuals"]
        worst = max(abs(F), abs(F1), abs(F2))
        if worst > CONTACT_TOL:
            failures.append(f"{entry['source']} at s*={entry['s_star']:.6g}: contact residual {worst:.3e} > {CONTACT_TOL:g}")
        if entry["source"] == OSCULATING and abs(F3) > THIRD_ORDER_TOL:
            failures.append(f"osculating at s*={entry['s_star']:.6g}: third-order residual {abs(F3):.3e} > {THIRD_ORDER_TOL:g}")
    return failures
