"""Linear filters: general convolution, box blur and Gaussian blur."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .image import REPLICATE, Border, GrayImage, InvalidArgument, pad, round_to_intensity

MAX_RECOMMENDED_SIDE = 7


class KernelSizeWarning(UserWarning):
    pass


def check_window_side(side: int) -> None:
    """Warn when a window is larger than the recommended 7x7."""
    if side > MAX_RECOMMENDED_SIDE:
        warnings.warn(
            f"kernel side {side} exceeds {MAX_RECOMMENDED_SIDE}; see guidance",
            KernelSizeWarning,
            stacklevel=3,
        )


@dataclass(frozen=True, eq=False)
class Kernel:
    """Odd-sided square weight matrix."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] % 2 == 0:
            raise InvalidArgument(f"kernel must be square with odd side, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise InvalidArgument("kernel weights must be finite")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def side(self) -> int:
        return self.weights.shape[0]

    @classmethod
    def uniform(cls, side: int) -> "Kernel":
        return cls(np.full((side, side), 1.0 / (side * side)))

    @classmethod
    def identity(cls, side: int = 3) -> "Kernel":
        w = np.zeros((side, side))
        w[side // 2, side // 2] = 1.0
        return cls(w)


@dataclass(frozen=True, eq=False)
class SeparableKernel:
    """1-D taps applied along rows and then along columns."""

    taps: np.ndarray

    def __post_init__(self):
        t = np.array(self.taps, dtype=np.float64)
        if t.ndim != 1 or t.size % 2 == 0:
            raise InvalidArgument(f"taps must be an odd-length vector, got shape {t.shape}")
        if not np.array_equal(t, t[::-1]):
            raise InvalidArgument("taps must be symmetric")
        if abs(t.sum() - 1.0) > 1e-12:
            raise InvalidArgument(f"taps sum to {t.sum()!r}, not 1")
        t.flags.writeable = False
        object.__setattr__(self, "taps", t)

    @property
    def radius(self) -> int:
        return self.taps.size // 2

    def outer(self) -> Kernel:
        return Kernel(np.outer(self.taps, self.taps))


@dataclass(frozen=True)
class BoxParams:
    radius: int = 1
    border: Border = REPLICATE

    def __post_init__(self):
        if int(self.radius) != self.radius or self.radius < 1:
            raise InvalidArgument(f"box radius must be an integer >= 1, got {self.radius}")

    @property
    def side(self) -> int:
        return 2 * self.radius + 1


@dataclass(frozen=True)
class GaussianParams:
    """``radius=None`` means auto: ``ceil(3 * sigma)``."""

    sigma: float
    radius: Optional[int] = None
    border: Border = REPLICATE

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise InvalidArgument(f"sigma must be a positive finite number, got {self.sigma}")
        if self.radius is not None and (int(self.radius) != self.radius or self.radius < 1):
            raise InvalidArgument(f"radius must be an integer >= 1, got {self.radius}")

    @property
    def resolved_radius(self) -> int:
        if self.radius is not None:
            return int(self.radius)
        return max(1, math.ceil(3 * self.sigma))

    @property
    def side(self) -> int:
        return 2 * self.resolved_radius + 1


def _check_crop(img: GrayImage, side: int, border: Border) -> None:
    if border.kind == "crop" and (side > img.height or side > img.width):
        raise InvalidArgument(
            f"crop border needs the {side}x{side} kernel to fit inside the "
            f"{img.width}x{img.height} image"
        )


def convolve_naive(img: GrayImage, k: Kernel, border: Border = REPLICATE, workers: int = 1) -> GrayImage:
    """Direct 2-D convolution with one rounding per output pixel.

    The kernel is flipped (true convolution); for the symmetric kernels used
    throughout this package that is the same as correlation.  With a crop
    border the output shrinks by ``side - 1`` along each axis.
    """
    _check_crop(img, k.side, border)
    r = k.side // 2
    padded = pad(img.pixels, r, r, border)
    flipped = np.ascontiguousarray(k.weights[::-1, ::-1])
    sums = _backend.run_banded(_backend.kernels.correlate, padded, r, workers, flipped)
    return GrayImage(round_to_intensity(sums))


def box_blur(img: GrayImage, p: BoxParams = BoxParams(), workers: int = 1) -> GrayImage:
    """Mean over a ``(2r+1) x (2r+1)`` window using exact integer sums."""
    check_window_side(p.side)
    _check_crop(img, p.side, p.border)
    r = p.radius
    n = p.side * p.side
    padded = np.ascontiguousarray(pad(img.pixels, r, r, p.border))
    sums = _backend.run_banded(_backend.kernels.box_sums, padded, r, workers, r)
    # sums are non-negative, so floor((2S + n) / 2n) rounds half away from zero
    return GrayImage(((2 * sums + n) // (2 * n)).astype(np.uint8))


def gaussian_kernel_1d(p: GaussianParams) -> SeparableKernel:
    r = p.resolved_radius
    raw = np.array([math.exp(-((i - r) ** 2) / (2.0 * p.sigma * p.sigma)) for i in range(2 * r + 1)])
    if raw[0] == 0.0:
        raise InvalidArgument(f"radius {r} is too large for sigma {p.sigma}: outer taps underflow to 0")
    return SeparableKernel(raw / raw.sum())


def gaussian_blur(img: GrayImage, p: GaussianParams, workers: int = 1) -> GrayImage:
    """Separable Gaussian blur: row pass, column pass, one final rounding."""
    k = gaussian_kernel_1d(p)
    check_window_side(p.side)
    _check_crop(img, p.side, p.border)
    r = k.radius
    padded = pad(img.pixels, r, r, p.border).astype(np.float64)
    corr = _backend.kernels.correlate
    rows = _backend.run_banded(corr, padded, 0, workers, np.ascontiguousarray(k.taps[None, :]))
    cols = _backend.run_banded(corr, rows, r, workers, np.ascontiguousarray(k.taps[:, None]))
    return GrayImage(round_to_intensity(cols))
