# curveframes/smarandache.py
"""
Bishop-frame Smarandache curves TN1, TN2, N1N2 and TN1N2.

For each kind the closed-form apparatus (speed, tangent, curvature, principal
normal, binormal, torsion, Bishop normals and natural curvatures) is written
out term by term in its reference form, unsimplified; the numeric oracle
below reports any term that disagrees.
"""
import enum
import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, NamedTuple, Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .curve_core import SampledCurve, arc_length_reparam, derivatives, differentiate
from .exceptions import ConfigError, DegenerateSpeed, GridMismatch, InputError, IrregularCurve
from .frames import KAPPA_FLOOR, BishopData, bishop_from_frenet, frenet_frame

logger = logging.getLogger(__name__)

SPEED_FLOOR = 1e-9
REL_FLOOR = 1e-8
SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
THETA_WRT = ("s_star", "s")


class SmarandacheKind(str, enum.Enum):
    TN1 = "tn1"
    TN2 = "tn2"
    N1N2 = "n1n2"
    TN1N2 = "tn1n2"

    @classmethod
    def parse(cls, text: str) -> List["SmarandacheKind"]:
        """'tn1' -> [TN1]; 'all' -> every kind."""
        key = (text or "").strip().lower()
        if key == "all":
            return list(cls)
        try:
            return [cls(key)]
        except ValueError:
            raise InputError(f"unknown Smarandache kind '{text}', expected tn1, tn2, n1n2, tn1n2 or all")

    @property
    def label(self) -> str:
        return {"tn1": "TN1", "tn2": "TN2", "n1n2": "N1N2", "tn1n2": "TN1N2"}[self.value]


@dataclass(frozen=True, eq=False)
class CoefficientTriple:
    lam: np.ndarray       # (..., 3): lambda_1..3
    sigma: np.ndarray     # (..., 3)
    rho: np.ndarray       # (..., 3)
    mu: np.ndarray
    eta: np.ndarray
    synthetic: bool = False

    def __getitem__(self, index) -> "CoefficientTriple":
        return replace(
            self,
            lam=self.lam[index], sigma=self.sigma[index], rho=self.rho[index],
            mu=self.mu[index], eta=self.eta[index],
        )


@dataclass(frozen=True, eq=False)
class SmarandacheInvariants:
    kind: SmarandacheKind
    s: np.ndarray
    s_star: np.ndarray
    speed: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    theta: np.ndarray
    N1: np.ndarray
    N2: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    coefficients: Optional[CoefficientTriple] = None
    theta_wrt: str = "s_star"

    def __len__(self) -> int:
        return self.s.size

    def slice(self, index: slice) -> "SmarandacheInvariants":
        arrays = {
            name: getattr(self, name)[index]
            for name in ("s", "s_star", "speed", "T", "N", "B", "kappa", "tau", "theta", "N1", "N2", "k1", "k2")
        }
        coefficients = self.coefficients[index] if self.coefficients is not None else None
        return replace(self, coefficients=coefficients, **arrays)

    def trim(self, guard: int) -> "SmarandacheInvariants":
        """Drop guard samples at both ends to align with the oracle grid."""
        return self.slice(slice(guard, len(self) - guard))


# --- construction -----------------------------------------------------------

def construct(kind: SmarandacheKind, bishop: BishopData) -> SampledCurve:
    T, N1, N2 = bishop.T, bishop.N1, bishop.N2
    if kind is SmarandacheKind.TN1:
        beta = (T + N1) / SQRT2
    elif kind is SmarandacheKind.TN2:
        beta = (T + N2) / SQRT2
    elif kind is SmarandacheKind.N1N2:
        beta = (N1 + N2) / SQRT2
    else:
        beta = (T + N1 + N2) / SQRT3
    return SampledCurve(
        param_start=float(bishop.s[0]),
        param_step=bishop.step,
        points=beta,
        label=kind.value,
    )


def _raw_speed(kind: SmarandacheKind, k1, k2):
    k1, k2 = np.asarray(k1, dtype=float), np.asarray(k2, dtype=float)
    if kind is SmarandacheKind.TN1:
        return np.sqrt((2 * k1 ** 2 + k2 ** 2) / 2)
    if kind is SmarandacheKind.TN2:
        return np.sqrt((k1 ** 2 + 2 * k2 ** 2) / 2)
    if kind is SmarandacheKind.N1N2:
        return (k1 + k2) / SQRT2
    return np.sqrt(2 * (k1 ** 2 + k1 * k2 + k2 ** 2) / 3)


def speed(kind: SmarandacheKind, k1, k2, s=None, floor: float = SPEED_FLOOR):
    """ds*/ds of the Smarandache curve; DegenerateSpeed where it is <= floor."""
    v = _raw_speed(kind, k1, k2)
    bad = np.flatnonzero(np.atleast_1d(v) <= floor)
    if bad.size:
        where = float(np.atleast_1d(s)[bad[0]]) if s is not None else float(bad[0])
        raise DegenerateSpeed(where, float(np.atleast_1d(v)[bad[0]]))
    return float(v) if np.ndim(v) == 0 else v


# --- printed coefficient systems --------------------------------------------

def coefficients(kind: SmarandacheKind, k1, k2, dk1, dk2, ddk1, ddk2) -> CoefficientTriple:
    k1, k2, dk1, dk2, ddk1, ddk2 = (np.asarray(v, dtype=float) for v in (k1, k2, dk1, dk2, ddk1, ddk2))
    synthetic = False

    if kind is SmarandacheKind.TN1:
        l1 = -dk1 * k2 ** 2 - 2 * k1 ** 4 - 3 * k1 ** 2 * k2 ** 2 - k2 ** 4 + k1 * k2 * dk2
        l2 = -2 * k1 ** 4 - k1 ** 2 * k2 ** 2 + dk1 * k2 ** 2 - k1 * k2 * dk2
        l3 = -2 * k1 ** 3 * k2 - k1 * k2 ** 3 + 2 * k1 ** 2 * dk2 - 2 * k1 * dk1 * k2
        s1 = l3 * k1 - l2 * k2
        s2 = l3 * k1 + l1 * k2
        s3 = -k1 * (l1 + l2)
        r1 = -ddk1 - 3 * k1 * dk1 - 3 * k2 * dk2 + k1 ** 3 + k1 * k2 ** 2
        r2 = -3 * k1 * dk1 - k1 ** 3 - k1 * k2 ** 2 + ddk1
        r3 = -2 * dk1 * k2 - k1 ** 2 * k2 - k2 ** 3 - k1 * dk2 + ddk2
        mu = 2 * k1 ** 2 + k2 ** 2

    elif kind is SmarandacheKind.TN2:
        l1 = -k1 ** 2 * dk2 - k1 ** 4 - 3 * k1 ** 2 * k2 ** 2 - 2 * k2 ** 4 + k1 * dk1 * k2
        l2 = -k1 ** 3 * k2 - 2 * k1 * k2 ** 3 + 2 * dk1 * k2 ** 2 - 2 * k1 * k2 * dk2
        l3 = -k1 ** 2 * k2 ** 2 - 2 * k2 ** 4 + k1 ** 2 * dk2 - k1 * dk1 * k2
        s1 = l3 * k1 - l2 * k2
        s2 = (l3 + l1) * k2
        s3 = -(l2 * k2 + l1 * k1)
        r1 = -ddk2 - 3 * k1 * dk1 - 3 * k2 * dk2 + k1 ** 2 * k2 + k2 ** 3
        r2 = -2 * k1 * dk2 - k1 ** 3 - k1 * k2 ** 2 - dk1 * k2 + ddk1
        r3 = -3 * k2 * dk2 - k1 ** 2 * k2 - k2 ** 3 + ddk2
        mu = k1 ** 2 + 2 * k2 ** 2

    elif kind is SmarandacheKind.N1N2:
        # No printed lambda/sigma block: N and B are closed-form multiples of
        # -(k1 N1 + k2 N2) and -(k2 N1 - k1 N2).
        synthetic = True
        zero = np.zeros_like(k1 + k2)
        l1, l2, l3 = zero, -k1 + zero, -k2 + zero
        s1, s2, s3 = zero, -k2 + zero, k1 + zero
        r1 = ddk1 + ddk2 - k1 ** 3 - k1 ** 2 * k2 - k1 * k2 ** 2 - k2 ** 3
        r2 = 3 * k1 * dk1 + 2 * k1 * dk2 + dk1 * k2
        r3 = 2 * dk1 * k2 + 3 * k2 * dk2 + k1 * dk2
        mu = k1 ** 2 + k2 ** 2

    elif kind is SmarandacheKind.TN1N2:
        l1 = (
            -2 * dk1 * k2 ** 2 - k1 ** 2 * dk2 + k1 * k2 * dk2 - 2 * k1 ** 4 - 2 * k1 ** 3 * k2
            - 4 * k1 ** 2 * k2 ** 2 - 2 * k1 * k2 ** 3 - 2 * k2 ** 4 + k1 * dk1 * k2 + dk1 * k2 ** 2
        )
        l2 = (
            -2 * k1 ** 4 - 4 * k1 ** 3 * k2 - 4 * k1 ** 2 * k2 ** 2 - 2 * k1 * k2 ** 3 + k1 * dk1 * k2
            + 2 * dk1 * k2 ** 2 - k1 ** 2 * dk2 - 2 * k1 * k2 * dk2
        )
        l3 = (
            -2 * k1 ** 3 * k2 - 4 * k1 ** 2 * k2 ** 2 - 4 * k1 * k2 ** 3 - 2 * k2 ** 4
            + 2 * k1 ** 2 * dk2 + k1 * k2 * dk2 - 2 * k1 * dk1 * k2 - dk1 * k2 ** 2
        )
        s1 = l3 * k1 - l2 * k2
        s2 = l3 * (k1 + k2) + l1 * k2
        s3 = -(l2 * (k1 + k2) + l1 * k1)
        r1 = (
            -ddk1 - ddk2 - 3 * k1 * dk1 - 3 * k2 * dk2
            + k1 ** 3 + k1 ** 2 * k2 + k1 * k2 ** 2 + k2 ** 3
        )
        r2 = -3 * k1 * dk1 - 2 * k1 * dk2 - k1 ** 3 - k1 * k2 ** 2 - dk1 * k2 + ddk1
        r3 = -2 * dk1 * k2 - 3 * k2 * dk2 - k1 ** 2 * k2 - k2 ** 3 - k1 * dk2 + ddk2
        mu = k1 ** 2 + k1 * k2 + k2 ** 2

    else:
        raise ConfigError(f"unsupported kind {kind!r}")

    lam = np.stack(np.broadcast_arrays(l1, l2, l3), axis=-1)
    return CoefficientTriple(
        lam=lam,
        sigma=np.stack(np.broadcast_arrays(s1, s2, s3), axis=-1),
        rho=np.stack(np.broadcast_arrays(r1, r2, r3), axis=-1),
        mu=np.asarray(mu),
        eta=np.sqrt(np.sum(lam ** 2, axis=-1)),
        synthetic=synthetic,
    )


def _printed_torsion(kind: SmarandacheKind, k1, k2, dk1, dk2, rho):
    r1, r2, r3 = rho[..., 0], rho[..., 1], rho[..., 2]
    if kind is SmarandacheKind.TN1:
        numerator = (
            (k1 ** 2 - dk1) * (r3 * k1 + r1 * k2)
            + k1 * (dk2 - k1 * k2) * (r1 + r2)
            - (dk1 + k1 ** 2 + k2 ** 2) * (r2 * k2 - r3 * k1)
        )
        denominator = (
            (k1 * dk2 - dk1 * k2) ** 2
            + (k1 * dk2 - 2 * k1 ** 2 * k2 - dk1 * k2 - k2 ** 3) ** 2
            + (2 * k1 ** 3 + k1 * k2 ** 2) ** 2
        )
        return SQRT2 * numerator / denominator
    if kind is SmarandacheKind.TN2:
        numerator = (
            k2 * (k1 * k2 - dk1) * (r3 + r1)
            + (dk2 - k2 ** 2) * (r2 * k2 + r1 * k1)
            - (dk2 + k1 ** 2 + k2 ** 2) * (r2 * k2 - r3 * k1)
        )
        denominator = (
            (k1 * dk2 - dk1 * k2) ** 2
            + (-2 * k2 ** 3 - k1 ** 2 * k2) ** 2
            + (2 * k1 * k2 ** 2 - dk1 * k2 + k1 * dk2 + k1 ** 3) ** 2
        )
        return SQRT2 * numerator / denominator
    if kind is SmarandacheKind.N1N2:
        numerator = r3 * (k1 ** 2 + k1 * k2) - r2 * (k1 * k2 + k2 ** 2)
        denominator = (k1 + k2) * ((k1 * k2 + k2 ** 2) ** 2 + (k1 ** 2 + k1 * k2) ** 2)
        return -SQRT2 * numerator / denominator
    numerator = (
        (dk1 - k1 ** 2 - k1 * k2) * (-r3 * k1 - r3 * k2 - r1 * k2)
        + (dk2 - k1 * k2 - k2 ** 2) * (r2 * k1 + r2 * k2 + r1 * k1)
        - (dk1 + dk2 + k1 ** 2 + k2 ** 2) * (-r3 * k1 + r2 * k2)
    )
    denominator = (
        (k1 * dk2 - dk1 * k2) ** 2
        + (k1 * dk2 - 2 * k1 ** 2 * k2 - 2 * k1 * k2 ** 2 - 2 * k2 ** 3 - dk1 * k2) ** 2
        + (2 * k1 ** 3 + 2 * k1 ** 2 * k2 + 2 * k1 * k2 ** 2 - dk1 * k2 + k1 * dk2) ** 2
    )
    return SQRT3 * numerator / denominator


def _combine(c: np.ndarray, T: np.ndarray, N1: np.ndarray, N2: np.ndarray) -> np.ndarray:
    """c1 T + c2 N1 + c3 N2 per sample."""
    return c[:, 0:1] * T + c[:, 1:2] * N1 + c[:, 2:3] * N2


def _integrate_theta(tau, speed, s, wrt: str, theta0: float) -> np.ndarray:
    if wrt not in THETA_WRT:
        raise ConfigError(f"theta_beta_wrt must be one of {THETA_WRT}, got {wrt!r}")
    integrand = tau * speed if wrt == "s_star" else tau
    return theta0 + cumulative_trapezoid(integrand, s, initial=0.0)


def invariants(
    kind: SmarandacheKind,
    bishop: BishopData,
    theta_beta_wrt: str = "s_star",
    theta0_beta: float = 0.0,
    stride: int = 1,
) -> SmarandacheInvariants:
    """Evaluate every closed form for kind on the Bishop data of alpha."""
    k1, k2, s = bishop.k1, bishop.k2, bishop.s
    v = speed(kind, k1, k2, s=s)
    dk1 = differentiate(k1, bishop.step, 1, stride)
    dk2 = differentiate(k2, bishop.step, 1, stride)
    ddk1 = differentiate(k1, bishop.step, 2, stride)
    ddk2 = differentiate(k2, bishop.step, 2, stride)
    coeff = coefficients(kind, k1, k2, dk1, dk2, ddk1, ddk2)
    T, N1, N2 = bishop.T, bishop.N1, bishop.N2
    tau = _printed_torsion(kind, k1, k2, dk1, dk2, coeff.rho)
    theta = _integrate_theta(tau, v, s, theta_beta_wrt, theta0_beta)
    cos, sin = np.cos(theta), np.sin(theta)
    mu, eta, lam, sigma = coeff.mu, coeff.eta, coeff.lam, coeff.sigma

    if kind is SmarandacheKind.N1N2:
        norm = np.sqrt(k1 ** 2 + k2 ** 2)
        T_beta = -T
        kappa = SQRT2 * norm / (k1 + k2)
        N_beta = -(k1[:, None] * N1 + k2[:, None] * N2) / norm[:, None]
        B_beta = -(k2[:, None] * N1 - k1[:, None] * N2) / norm[:, None]
        N1_beta = ((k2 * sin - k1 * cos)[:, None] * N1 - (k2 * cos + k1 * sin)[:, None] * N2) / norm[:, None]
        N2_beta = (-(k1 * sin + k2 * cos)[:, None] * N1 + (k1 * cos - k2 * sin)[:, None] * N2) / norm[:, None]
        magnitude = np.sqrt(2 * (k1 ** 2 + k2 ** 2)) / (k1 + k2)
    else:
        if kind is SmarandacheKind.TN1:
            tangent = np.stack([-k1, k1, k2], axis=-1)
            frame_scale = np.sqrt(mu)
            kappa = SQRT2 * eta / mu ** 2
            magnitude = np.sqrt(2 * eta ** 2) / mu ** 2
        elif kind is SmarandacheKind.TN2:
            tangent = np.stack([-k2, k1, k2], axis=-1)
            frame_scale = np.sqrt(mu)
            kappa = SQRT2 * eta / mu ** 2
            magnitude = np.sqrt(2 * eta ** 2) / mu ** 2
        else:
            tangent = np.stack([-(k1 + k2), k1, k2], axis=-1)
            frame_scale = np.sqrt(2 * mu)
            kappa = SQRT3 * eta / (4 * mu ** 2)
            magnitude = np.sqrt(3 * eta ** 2) / (4 * mu ** 2)
        T_beta = _combine(tangent / frame_scale[:, None], T, N1, N2)
        N_beta = _combine(lam / eta[:, None], T, N1, N2)
        B_beta = _combine(sigma / (frame_scale * eta)[:, None], T, N1, N2)
        scale = (frame_scale * eta)[:, None]
        N1_beta = _combine((frame_scale * cos)[:, None] * lam / scale - sin[:, None] * sigma / scale, T, N1, N2)
        N2_beta = _combine((frame_scale * sin)[:, None] * lam / scale + cos[:, None] * sigma / scale, T, N1, N2)

    return SmarandacheInvariants(
        kind=kind,
        s=s,
        s_star=cumulative_trapezoid(v, s, initial=0.0),
        speed=v,
        T=T_beta,
        N=N_beta,
        B=B_beta,
        kappa=kappa,
        tau=tau,
        theta=theta,
        N1=N1_beta,
        N2=N2_beta,
        k1=magnitude * cos,
        k2=magnitude * sin,
        coefficients=coeff,
        theta_wrt=theta_beta_wrt,
    )


# --- numeric oracle -----------------------------------------------------------

def oracle_invariants(
    kind: SmarandacheKind,
    beta: SampledCurve,
    theta_beta_wrt: str = "s_star",
    theta0_beta: float = 0.0,
    stride: int = 1,
    kappa_floor: float = KAPPA_FLOOR,
) -> SmarandacheInvariants:
    """
    Invariants of beta from finite differences in alpha's arc length s,
    using the parametrization-invariant curvature and torsion formulas.
    Guard-band samples are dropped.
    """
    d = derivatives(beta, 3, stride)
    g = d.guard_band
    keep = slice(g, beta.n - g)
    d1, d2, d3 = d.first[keep], d.second[keep], d.third[keep]
    s = beta.grid[keep]

    v = np.linalg.norm(d1, axis=1)
    if v.min() < SPEED_FLOOR:
        worst = int(np.argmin(v))
        raise IrregularCurve(f"{kind.label} curve is stationary near s={s[worst]!r}", s=float(s[worst]))
    cross = np.cross(d1, d2)
    cross_sq = np.einsum("ij,ij->i", cross, cross)
    kappa = np.sqrt(cross_sq) / v ** 3
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = np.einsum("ij,ij->i", cross, d3) / cross_sq
        T = d1 / v[:, None]
        normal = d2 - np.einsum("ij,ij->i", d2, T)[:, None] * T
        N = normal / np.linalg.norm(normal, axis=1, keepdims=True)
    undefined = kappa < kappa_floor
    N[undefined] = np.nan
    tau = np.where(undefined, np.nan, tau)
    B = np.cross(T, N)

    theta = _integrate_theta(np.nan_to_num(tau), v, s, theta_beta_wrt, theta0_beta)
    cos, sin = np.cos(theta)[:, None], np.sin(theta)[:, None]
    return SmarandacheInvariants(
        kind=kind,
        s=s,
        s_star=cumulative_trapezoid(v, s, initial=0.0),
        speed=v,
        T=T,
        N=N,
        B=B,
        kappa=kappa,
        tau=tau,
        theta=theta,
        N1=N * cos - B * sin,
        N2=N * sin + B * cos,
        k1=kappa * np.cos(theta),
        k2=kappa * np.sin(theta),
        theta_wrt=theta_beta_wrt,
    )


class OracleBishop(NamedTuple):
    curve: SampledCurve
    bishop: BishopData


def oracle_bishop(
    beta: SampledCurve,
    n_out: Optional[int] = None,
    stride: int = 1,
    theta0: float = 0.0,
    kappa_floor: float = KAPPA_FLOOR,
) -> OracleBishop:
    """Bishop apparatus of beta on its own arc length s*, with the resampled curve."""
    unit = arc_length_reparam(beta, n_out or beta.n, stride=stride)
    return OracleBishop(unit, bishop_from_frenet(frenet_frame(unit, kappa_floor, stride), theta0))


# --- comparison -------------------------------------------------------------

class DiscrepancyRecord(NamedTuple):
    quantity: str
    max_abs: float
    max_rel: float
    s_argmax: float
    passed: bool

    def as_dict(self) -> Dict[str, float]:
        return {"quantity": self.quantity, "max_abs": self.max_abs, "max_rel": self.max_rel, "s_argmax": self.s_argmax}


@dataclass(frozen=True)
class DiscrepancyReport:
    kind: SmarandacheKind
    records: tuple
    rtol: float
    atol: float

    def __iter__(self):
        return iter(self.records)

    def get(self, quantity: str) -> DiscrepancyRecord:
        for record in self.records:
            if record.quantity == quantity:
                return record
        raise KeyError(quantity)

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    def failures(self) -> List[DiscrepancyRecord]:
        return [record for record in self.records if not record.passed]


def _scalar_record(name: str, s, closed, oracle, rtol: float, atol: float) -> DiscrepancyRecord:
    valid = np.isfinite(closed) & np.isfinite(oracle)
    if not valid.any():
        return DiscrepancyRecord(name, 0.0, 0.0, float(s[0]), True)
    diff = np.where(valid, np.abs(closed - oracle), 0.0)
    rel = diff / np.maximum(np.abs(np.where(valid, oracle, 1.0)), REL_FLOOR)
    worst = int(np.argmax(diff))
    ok = diff <= atol + rtol * np.abs(np.where(valid, oracle, 0.0))
    return DiscrepancyRecord(name, float(diff.max()), float(rel.max()), float(s[worst]), bool(ok.all()))


def _vector_record(name: str, s, closed, oracle, rtol: float, atol: float) -> DiscrepancyRecord:
    valid = np.all(np.isfinite(closed), axis=1) & np.all(np.isfinite(oracle), axis=1)
    if not valid.any():
        return DiscrepancyRecord(name, 0.0, 0.0, float(s[0]), True)
    delta = np.where(valid[:, None], closed - oracle, 0.0)
    component = np.abs(delta).max(axis=1)
    rel = np.linalg.norm(delta, axis=1) / np.maximum(np.linalg.norm(np.where(valid[:, None], oracle, 1.0), axis=1), REL_FLOOR)
    worst = int(np.argmax(component))
    return DiscrepancyRecord(name, float(component.max()), float(rel.max()), float(s[worst]), bool(component.max() <= atol))


def compare(
    closed: SmarandacheInvariants,
    oracle: SmarandacheInvariants,
    rtol: float = 1e-3,
    atol: float = 1e-6,
    kappa_floor: float = KAPPA_FLOOR,
) -> DiscrepancyReport:
    """
    Per-quantity discrepancy between closed-form and oracle invariants.
    (N, B) are compared up to a joint sign per sample; samples where the
    oracle curvature is below kappa_floor are left out of frame comparisons.
    """
    if len(closed) != len(oracle) or not np.allclose(closed.s, oracle.s, rtol=0.0, atol=1e-9 * max(1.0, abs(closed.s[-1]))):
        raise GridMismatch(f"grids differ: {len(closed)} vs {len(oracle)} samples")
    s = oracle.s
    defined = oracle.kappa >= kappa_floor
    sign = np.sign(np.einsum("ij,ij->i", np.nan_to_num(closed.N), np.nan_to_num(oracle.N)))
    sign[sign == 0] = 1.0
    masked = np.where(defined[:, None], 1.0, np.nan)
    N_oracle = oracle.N * sign[:, None] * masked
    B_oracle = oracle.B * sign[:, None] * masked

    records = (
        _scalar_record("speed", s, closed.speed, oracle.speed, rtol, atol),
        _scalar_record("kappa_beta", s, closed.kappa, oracle.kappa, rtol, atol),
        _scalar_record("tau_beta", s, closed.tau, oracle.tau, rtol, atol),
        _vector_record("T_beta", s, closed.T, oracle.T, rtol, atol),
        _vector_record("N_beta", s, closed.N * masked, N_oracle, rtol, atol),
        _vector_record("B_beta", s, closed.B * masked, B_oracle, rtol, atol),
    )
    report = DiscrepancyReport(kind=closed.kind, records=records, rtol=rtol, atol=atol)
    for record in report.failures():
        logger.info(
            "%s %s: max_abs=%.3e max_rel=%.3e at s=%.6g",
            closed.kind.label, record.quantity, record.max_abs, record.max_rel, record.s_argmax,
        )
    return report
