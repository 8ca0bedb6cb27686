"""Median filtering and iterative switching-median impulse removal."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .image import REPLICATE, Border, GrayImage, InvalidArgument, pad, pixel_extended
from .linear import check_window_side


def _check_half_window(w) -> None:
    if int(w) != w or w < 1:
        raise InvalidArgument(f"half-window W must be an integer >= 1, got {w}")


def _check_border(border: Border) -> None:
    if border.kind == "crop":
        raise InvalidArgument("median filters keep image size; crop border is not supported")


@dataclass(frozen=True)
class MedianParams:
    w: int = 1
    border: Border = REPLICATE

    def __post_init__(self):
        _check_half_window(self.w)
        _check_border(self.border)

    @property
    def side(self) -> int:
        return 2 * self.w + 1


@dataclass(frozen=True)
class SwitchingMedianParams:
    """Window half-width ``w``, detection threshold ``t`` and iteration count ``p``."""

    w: int = 1
    t: int = 40
    p: int = 3

    def __post_init__(self):
        _check_half_window(self.w)
        if not 0 < self.t <= 255:
            raise InvalidArgument(f"threshold T must lie in (0, 255], got {self.t}")
        if int(self.p) != self.p or self.p < 1:
            raise InvalidArgument(f"iteration count p must be an integer >= 1, got {self.p}")

    @property
    def side(self) -> int:
        return 2 * self.w + 1


class FlagImage:
    """Binary per-pixel noise marks (read-only ``uint8`` array of 0/1)."""

    __slots__ = ("flags",)

    def __init__(self, flags) -> None:
        arr = np.array(flags, dtype=np.uint8, copy=True)
        if arr.ndim != 2:
            raise InvalidArgument(f"flag image must be 2-D, got shape {arr.shape}")
        if arr.size and arr.max() > 1:
            raise InvalidArgument("flags must be 0 or 1")
        arr.flags.writeable = False
        self.flags = arr

    @classmethod
    def zeros_like(cls, img: GrayImage) -> "FlagImage":
        return cls(np.zeros(img.shape, dtype=np.uint8))

    @property
    def shape(self):
        return self.flags.shape

    def count(self) -> int:
        return int(self.flags.sum())

    def __eq__(self, other):
        if not isinstance(other, FlagImage):
            return NotImplemented
        return self.flags.shape == other.flags.shape and bool(np.array_equal(self.flags, other.flags))

    __hash__ = None

    def __repr__(self) -> str:
        return f"FlagImage({self.shape[1]}x{self.shape[0]}, set={self.count()})"


@dataclass
class SwitchingMedianResult:
    restored: GrayImage
    flags: FlagImage
    changes: list = field(default_factory=list)


def window_median(img: GrayImage, center, w: int, border: Border = REPLICATE) -> int:
    """Median of the ``(2w+1)**2`` window around ``center``, center included."""
    _check_half_window(w)
    row, col = center
    values = sorted(
        pixel_extended(img, (row + k, col + l), border)
        for k in range(-w, w + 1)
        for l in range(-w, w + 1)
    )
    return values[len(values) // 2]


def _median_array(pixels: np.ndarray, w: int, border: Border, workers: int) -> np.ndarray:
    padded = np.ascontiguousarray(pad(pixels, w, w, border))
    return _backend.run_banded(_backend.kernels.median, padded, w, workers, w)


def median_filter(img: GrayImage, p: MedianParams = MedianParams(), workers: int = 1) -> GrayImage:
    check_window_side(p.side)
    return GrayImage(_median_array(img.pixels, p.w, p.border, workers))


def detect_and_correct_once(x_prev: GrayImage, f_prev: FlagImage, w: int, t, workers: int = 1):
    """One detection/correction sweep.  Returns ``(x, f, changed)``.

    Every pixel is judged against the median of the previous iterate
    (never a partially updated one).  A pixel whose deviation from that
    median reaches ``t`` is flagged; flags are never cleared.  Only pixels
    flagged for the first time in this sweep take the median value.
    """
    if x_prev.shape != f_prev.shape:
        raise InvalidArgument(f"image {x_prev.shape} and flags {f_prev.shape} differ in size")
    x = x_prev.pixels
    m = _median_array(x, w, REPLICATE, workers)
    deviation = np.abs(x.astype(np.int16) - m.astype(np.int16))
    f = np.where(deviation < t, f_prev.flags, 1).astype(np.uint8)
    newly = f != f_prev.flags
    x_next = np.where(newly, m, x)
    return GrayImage(x_next), FlagImage(f), int(newly.sum())


def switching_median(img: GrayImage, p: SwitchingMedianParams = SwitchingMedianParams(),
                     workers: int = 1) -> SwitchingMedianResult:
    """Iterate detection/correction up to ``p`` times from all-clear flags.

    Stops early once a sweep flags nothing new, since every later sweep
    would reproduce the same image.  ``changes`` holds the per-sweep count
    of newly flagged pixels for the sweeps that ran.
    """
    check_window_side(p.side)
    x, f = img, FlagImage.zeros_like(img)
    changes = []
    for _ in range(p.p):
        x, f, changed = detect_and_correct_once(x, f, p.w, p.t, workers)
        changes.append(changed)
        if changed == 0:
            break
    return SwitchingMedianResult(x, f, changes)
