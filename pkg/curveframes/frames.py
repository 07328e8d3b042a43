# curveframes/frames.py
"""
Frenet and Bishop (parallel transport) frames of unit-speed curves.

The Bishop frame is derived from the Frenet frame by rotating the normal
plane through theta = theta0 + integral(tau ds), so a vanishing curvature
anywhere on the curve is an error here.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import CubicSpline

from .curve_core import SampledCurve, derivatives, differentiate
from .exceptions import NotUnitSpeed, VanishingCurvature

logger = logging.getLogger(__name__)

KAPPA_FLOOR = 1e-7


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", a, b)


@dataclass(frozen=True, eq=False)
class FrenetData:
    s: np.ndarray
    points: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray

    @property
    def grid(self) -> np.ndarray:
        return self.s

    @property
    def step(self) -> float:
        return float(self.s[1] - self.s[0])


@dataclass(frozen=True, eq=False)
class BishopData:
    s: np.ndarray
    points: np.ndarray
    T: np.ndarray
    N1: np.ndarray
    N2: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    theta: np.ndarray
    theta0: float
    kappa: np.ndarray
    tau: np.ndarray

    @property
    def grid(self) -> np.ndarray:
        return self.s

    @property
    def step(self) -> float:
        return float(self.s[1] - self.s[0])

    def __len__(self) -> int:
        return self.s.size


def frenet_frame(curve: SampledCurve, kappa_floor: float = KAPPA_FLOOR, stride: int = 1) -> FrenetData:
    """
    Frenet apparatus of a unit-speed curve on the samples where centered
    stencils apply (the guard band at each end is dropped).
    """
    if not curve.unit_speed:
        raise NotUnitSpeed("Frenet frame needs a unit-speed curve; reparametrize first")
    d = derivatives(curve, 3, stride)
    g = d.guard_band
    keep = slice(g, curve.n - g)
    d1, d2, d3 = d.first[keep], d.second[keep], d.third[keep]
    s = curve.grid[keep]

    cross = np.cross(d1, d2)
    cross_sq = _dot(cross, cross)
    kappa = np.sqrt(cross_sq) / np.linalg.norm(d1, axis=1) ** 3
    low = np.flatnonzero(kappa < kappa_floor)
    if low.size:
        raise VanishingCurvature(float(s[low[0]]))

    T = _unit(d1)
    N = _unit(d2 - _dot(d2, T)[:, None] * T)
    B = np.cross(T, N)
    tau = _dot(cross, d3) / cross_sq
    logger.debug("frenet frame: %d retained samples, kappa in [%.6g, %.6g]", s.size, kappa.min(), kappa.max())
    return FrenetData(s=s, points=np.asarray(curve.points[keep]), T=T, N=N, B=B, kappa=kappa, tau=tau)


def bishop_from_frenet(frenet: FrenetData, theta0: float = 0.0) -> BishopData:
    theta = theta0 + cumulative_trapezoid(frenet.tau, frenet.s, initial=0.0)
    cos, sin = np.cos(theta), np.sin(theta)
    N1 = frenet.N * cos[:, None] - frenet.B * sin[:, None]
    N2 = frenet.N * sin[:, None] + frenet.B * cos[:, None]
    return BishopData(
        s=frenet.s,
        points=frenet.points,
        T=frenet.T,
        N1=N1,
        N2=N2,
        k1=frenet.kappa * cos,
        k2=frenet.kappa * sin,
        theta=theta,
        theta0=float(theta0),
        kappa=frenet.kappa,
        tau=frenet.tau,
    )


def frenet_from_bishop(bishop: BishopData, kappa_floor: float = KAPPA_FLOOR, stride: int = 1) -> FrenetData:
    kappa = np.hypot(bishop.k1, bishop.k2)
    low = np.flatnonzero(kappa < kappa_floor)
    if low.size:
        raise VanishingCurvature(float(bishop.s[low[0]]))
    theta = np.unwrap(np.arctan2(bishop.k2, bishop.k1))
    tau = differentiate(theta, bishop.step, 1, stride)
    cos, sin = np.cos(theta)[:, None], np.sin(theta)[:, None]
    return FrenetData(
        s=bishop.s,
        points=bishop.points,
        T=bishop.T,
        N=bishop.N1 * cos + bishop.N2 * sin,
        B=-bishop.N1 * sin + bishop.N2 * cos,
        kappa=kappa,
        tau=tau,
    )


def transport_residual(bishop: BishopData) -> Tuple[float, float, float]:
    """
    Integrate T' = k1 N1 + k2 N2, N1' = -k1 T, N2' = -k2 T with classical RK4
    from the first frame and return the largest deviation of each row from
    the stored frame.
    """
    s = bishop.s
    h = np.diff(s)
    k1_spline = CubicSpline(s, bishop.k1)
    k2_spline = CubicSpline(s, bishop.k2)
    mid = s[:-1] + 0.5 * h
    k1_mid, k2_mid = k1_spline(mid), k2_spline(mid)

    def rhs(k1: float, k2: float, frame: np.ndarray) -> np.ndarray:
        T, N1, N2 = frame
        return np.array([k1 * N1 + k2 * N2, -k1 * T, -k2 * T])

    frame = np.array([bishop.T[0], bishop.N1[0], bishop.N2[0]])
    worst = np.zeros(3)
    for i in range(s.size - 1):
        a = rhs(bishop.k1[i], bishop.k2[i], frame)
        b = rhs(k1_mid[i], k2_mid[i], frame + 0.5 * h[i] * a)
        c = rhs(k1_mid[i], k2_mid[i], frame + 0.5 * h[i] * b)
        d = rhs(bishop.k1[i + 1], bishop.k2[i + 1], frame + h[i] * c)
        frame = frame + h[i] / 6.0 * (a + 2 * b + 2 * c + d)
        stored = np.array([bishop.T[i + 1], bishop.N1[i + 1], bishop.N2[i + 1]])
        worst = np.maximum(worst, np.linalg.norm(frame - stored, axis=1))
    return float(worst[0]), float(worst[1]), float(worst[2])


def _orthonormality(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    residuals = [np.abs(np.linalg.norm(v, axis=1) - 1.0) for v in (a, b, c)]
    residuals += [np.abs(_dot(a, b)), np.abs(_dot(a, c)), np.abs(_dot(b, c))]
    return float(max(r.max() for r in residuals))


def frame_integrity(frenet: FrenetData, bishop: BishopData, stride: int = 1) -> Dict[str, float]:
    """Residuals of the frame invariants; all should be ~0 for a valid run."""
    n1_prime = differentiate(bishop.N1, bishop.step, 1, stride)
    g = 4 * stride
    interior = slice(g, max(g, bishop.s.size - g))
    return {
        "frenet_orthonormality": _orthonormality(frenet.T, frenet.N, frenet.B),
        "frenet_handedness": float(np.abs(np.cross(frenet.T, frenet.N) - frenet.B).max()),
        "bishop_orthonormality": _orthonormality(bishop.T, bishop.N1, bishop.N2),
        "bishop_handedness": float(np.abs(np.cross(bishop.N1, bishop.N2) - bishop.T).max()),
        "curvature_identity": float(
            (np.abs(bishop.k1 ** 2 + bishop.k2 ** 2 - frenet.kappa ** 2) / frenet.kappa ** 2).max()
        ),
        "normal_parallelism": float(np.abs(_dot(n1_prime, bishop.N2))[interior].max(initial=0.0)),
    }
