# curveframes/plotting.py
"""Orthographic SVG figures of space curves."""
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from django.template.loader import render_to_string

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

WIDTH = 800
HEIGHT = 600
MARGIN = 60
TICKS = 5
PALETTE = ("#1f4e9c", "#b8321a", "#2f7d32", "#7b3294", "#c07c00")


def _fmt(value: float) -> str:
    return "%.17g" % value


@dataclass(frozen=True)
class View:
    azimuth: float = 30.0
    elevation: float = 20.0

    def __post_init__(self):
        if not 0.0 <= self.azimuth < 360.0:
            raise ConfigError(f"azimuth must be in [0, 360), got {self.azimuth!r}")
        if not -90.0 <= self.elevation <= 90.0:
            raise ConfigError(f"elevation must be in [-90, 90], got {self.elevation!r}")

    @classmethod
    def parse(cls, text: str) -> "View":
        """'az,el' in degrees."""
        try:
            az, el = (float(part) for part in text.split(","))
        except ValueError:
            raise ConfigError(f"--view expects 'az,el', got {text!r}")
        return cls(az, el)

    def basis(self) -> Tuple[np.ndarray, np.ndarray]:
        az, el = math.radians(self.azimuth), math.radians(self.elevation)
        right = np.array([-math.sin(az), math.cos(az), 0.0])
        up = np.array([-math.cos(az) * math.sin(el), -math.sin(az) * math.sin(el), math.cos(el)])
        return right, up


def project(points: np.ndarray, view: View) -> np.ndarray:
    right, up = view.basis()
    points = np.asarray(points, dtype=float)
    return np.column_stack([points @ right, points @ up])


@dataclass(frozen=True)
class ViewTransform:
    scale: float
    x_min: float
    y_min: float
    x_pad: float
    y_pad: float

    def apply(self, xy: np.ndarray) -> np.ndarray:
        """Projected plane -> viewBox units (SVG y grows downward)."""
        xy = np.asarray(xy, dtype=float)
        x = self.x_pad + (xy[:, 0] - self.x_min) * self.scale
        y = HEIGHT - (self.y_pad + (xy[:, 1] - self.y_min) * self.scale)
        return np.column_stack([x, y])


def fit_to_viewbox(projected: Sequence[np.ndarray], margin: float = MARGIN) -> ViewTransform:
    stacked = np.vstack(projected)
    x_min, y_min = stacked.min(axis=0)
    x_span, y_span = stacked.max(axis=0) - stacked.min(axis=0)
    avail_w, avail_h = WIDTH - 2 * margin, HEIGHT - 2 * margin
    spans = [avail_w / x_span if x_span > 0 else math.inf, avail_h / y_span if y_span > 0 else math.inf]
    scale = min(spans)
    if not math.isfinite(scale):
        scale = 1.0
    x_pad = margin + 0.5 * (avail_w - x_span * scale)
    y_pad = margin + 0.5 * (avail_h - y_span * scale)
    return ViewTransform(float(scale), float(x_min), float(y_min), float(x_pad), float(y_pad))


def _ticks(low: float, high: float, count: int = TICKS) -> List[float]:
    if high <= low:
        return [low]
    return [low + (high - low) * i / (count - 1) for i in range(count)]


def render_svg(curves: Sequence[Tuple[str, np.ndarray]], view: View) -> str:
    """curves: (label, (n, 3) points) pairs drawn into one figure."""
    if not curves:
        raise ConfigError("nothing to plot")
    projected = [project(points, view) for _, points in curves]
    transform = fit_to_viewbox(projected)

    polylines = []
    for i, ((label, _), xy) in enumerate(zip(curves, projected)):
        svg_xy = transform.apply(xy)
        polylines.append({
            "label": label,
            "color": PALETTE[i % len(PALETTE)],
            "points": " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in svg_xy),
            "legend_y": MARGIN / 2 + 14 * i,
        })

    left, right = MARGIN / 2, WIDTH - MARGIN / 2
    top, bottom = MARGIN / 2, HEIGHT - MARGIN / 2
    stacked = np.vstack(projected)
    x_values = _ticks(stacked[:, 0].min(), stacked[:, 0].max())
    y_values = _ticks(stacked[:, 1].min(), stacked[:, 1].max())
    x_ticks = [
        {"pos": _fmt(transform.apply(np.array([[v, transform.y_min]]))[0, 0]), "label": "%.3g" % v}
        for v in x_values
    ]
    y_ticks = [
        {"pos": _fmt(transform.apply(np.array([[transform.x_min, v]]))[0, 1]), "label": "%.3g" % v}
        for v in y_values
    ]
    logger.debug("svg: %d curves, scale %.6g", len(curves), transform.scale)
    return render_to_string("curveframes/curve.svg", {
        "width": WIDTH,
        "height": HEIGHT,
        "frame": {"left": _fmt(left), "right": _fmt(right), "top": _fmt(top), "bottom": _fmt(bottom)},
        "tick_bottom": _fmt(bottom + 5),
        "label_bottom": _fmt(bottom + 18),
        "tick_left": _fmt(left - 5),
        "label_left": _fmt(left - 8),
        "x_ticks": x_ticks,
        "y_ticks": y_ticks,
        "polylines": polylines,
        "view": view,
    })
