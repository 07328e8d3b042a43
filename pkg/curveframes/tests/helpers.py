# curveframes/tests/helpers.py
import math

import numpy as np

from curveframes.frames import BishopData


def circle_bishop(n: int = 2048, theta0: float = 0.0, span: float = 2 * math.pi) -> BishopData:
    """Exact Bishop data of the unit circle (kappa = 1, tau = 0)."""
    s = np.linspace(0.0, span, n)
    zero, one = np.zeros_like(s), np.ones_like(s)
    points = np.column_stack([np.cos(s), np.sin(s), zero])
    T = np.column_stack([-np.sin(s), np.cos(s), zero])
    N = np.column_stack([-np.cos(s), -np.sin(s), zero])
    B = np.column_stack([zero, zero, one])
    c, k = math.cos(theta0), math.sin(theta0)
    return BishopData(
        s=s,
        points=points,
        T=T,
        N1=N * c - B * k,
        N2=N * k + B * c,
        k1=one * c,
        k2=one * k,
        theta=one * theta0,
        theta0=theta0,
        kappa=one,
        tau=zero,
    )
