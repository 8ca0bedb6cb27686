"""Edge-preserving bilateral filter.

Each output pixel is the normalized weighted mean of its window, where a
neighbor's weight is a spatial term (distance from the center) times a
range term (intensity difference from the center).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .image import REPLICATE, Border, GrayImage, InvalidArgument, pad, pixel_extended, round_to_intensity
from .linear import check_window_side

SPATIAL_KINDS = ("gaussian", "box")
RANGE_KINDS = ("gaussian", "tent")


@dataclass(frozen=True)
class BilateralParams:
    """Bilateral filter settings.

    ``sigma_s`` is in pixels, ``sigma_r`` in intensity levels.  ``radius=None``
    resolves to ``ceil(3 * sigma_s)``.  The ``box`` spatial kind weighs the
    whole window equally; the ``tent`` range kind is ``max(0, 1 - d/sigma_r)``.
    """

    sigma_s: float = 2.0
    sigma_r: float = 30.0
    radius: Optional[int] = None
    spatial: str = "gaussian"
    range: str = "gaussian"
    border: Border = REPLICATE

    def __post_init__(self):
        for name in ("sigma_s", "sigma_r"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise InvalidArgument(f"{name} must be a positive finite number, got {v}")
        if self.radius is not None and (int(self.radius) != self.radius or self.radius < 1):
            raise InvalidArgument(f"radius must be an integer >= 1, got {self.radius}")
        if self.spatial not in SPATIAL_KINDS:
            raise InvalidArgument(f"spatial kind must be one of {SPATIAL_KINDS}, got {self.spatial!r}")
        if self.range not in RANGE_KINDS:
            raise InvalidArgument(f"range kind must be one of {RANGE_KINDS}, got {self.range!r}")
        if self.border.kind == "crop":
            raise InvalidArgument("bilateral filter keeps image size; crop border is not supported")

    @property
    def resolved_radius(self) -> int:
        if self.radius is not None:
            return int(self.radius)
        return max(1, math.ceil(3 * self.sigma_s))

    @property
    def side(self) -> int:
        return 2 * self.resolved_radius + 1


def surface_blur(sigma_s: float = 2.0, sigma_r: float = 30.0, radius: Optional[int] = None) -> BilateralParams:
    """Box spatial weight with tent range weight."""
    return BilateralParams(sigma_s, sigma_r, radius, spatial="box", range="tent")


# The weight expressions below are shared by the table builders and the
# reference loop; keeping them textually identical keeps results bit-exact.
def _spatial_weight(kind: str, dy: int, dx: int, sigma_s: float) -> float:
    if kind == "box":
        return 1.0
    return math.exp(-(dy * dy + dx * dx) / (2.0 * sigma_s * sigma_s))


def _range_weight(kind: str, delta: int, sigma_r: float) -> float:
    if kind == "tent":
        return max(0.0, 1.0 - delta / sigma_r)
    return math.exp(-(delta * delta) / (2.0 * sigma_r * sigma_r))


def spatial_mask(p: BilateralParams) -> np.ndarray:
    r = p.resolved_radius
    return np.array(
        [[_spatial_weight(p.spatial, dy, dx, p.sigma_s) for dx in range(-r, r + 1)] for dy in range(-r, r + 1)],
        dtype=np.float64,
    )


def range_table(p: BilateralParams) -> np.ndarray:
    return np.array([_range_weight(p.range, d, p.sigma_r) for d in range(256)], dtype=np.float64)


def bilateral_filter(img: GrayImage, p: BilateralParams = BilateralParams(), workers: int = 1) -> GrayImage:
    """Bilateral filter using a precomputed spatial mask and range table."""
    check_window_side(p.side)
    r = p.resolved_radius
    padded = np.ascontiguousarray(pad(img.pixels, r, r, p.border))
    ratio = _backend.run_banded(_backend.kernels.bilateral, padded, r, workers, spatial_mask(p), range_table(p))
    return GrayImage(round_to_intensity(ratio))


def bilateral_reference(img: GrayImage, p: BilateralParams = BilateralParams()) -> GrayImage:
    """Plain nested-loop bilateral filter, one weight evaluation per pair.

    Slow; exists to check :func:`bilateral_filter` against.
    """
    r = p.resolved_radius
    h, w = img.shape
    out = np.empty((h, w), dtype=np.float64)
    for i in range(h):
        for j in range(w):
            c = int(img.pixels[i, j])
            num = 0.0
            den = 0.0
            for dy in range(-r, r + 1):
                for dx in range(-r, r + 1):
                    v = pixel_extended(img, (i + dy, j + dx), p.border)
                    wgt = _spatial_weight(p.spatial, dy, dx, p.sigma_s) * _range_weight(p.range, abs(v - c), p.sigma_r)
                    num = num + wgt * v
                    den = den + wgt
            out[i, j] = num / den
    return GrayImage(round_to_intensity(out))


def edge_contrast(img: GrayImage, edge_col: int, strip: int = 2) -> float:
    """``|mean(right strip) - mean(left strip)|`` around a vertical edge.

    The right strip is columns ``[edge_col, edge_col + strip)``, the left
    strip the ``strip`` columns before ``edge_col``.
    """
    px = img.pixels.astype(np.float64)
    right = px[:, edge_col : edge_col + strip].mean()
    left = px[:, edge_col - strip : edge_col].mean()
    return abs(right - left)
