"""Image value types and border extension.

Images are immutable wrappers around ``uint8`` numpy arrays indexed
``(row, col)`` from the top-left corner.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np


class InvalidArgument(ValueError):
    """Raised when an operation receives parameters outside its domain."""


def _as_pixels(data, ndim: int) -> np.ndarray:
    arr = np.asarray(data)
    if arr.ndim != ndim:
        raise InvalidArgument(f"expected a {ndim}-D pixel array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidArgument(f"image dimensions must be positive, got {arr.shape[:2]}")
    if arr.dtype != np.uint8:
        if arr.dtype.kind not in "iub":
            raise InvalidArgument(f"pixel values must be integers, got dtype {arr.dtype}")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise InvalidArgument("pixel intensities must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    arr = np.array(arr, dtype=np.uint8, order="C", copy=True)
    arr.flags.writeable = False
    return arr


class GrayImage:
    """An 8-bit single-channel raster.

    ``pixels`` is a read-only ``(height, width)`` ``uint8`` array.
    """

    __slots__ = ("pixels",)

    def __init__(self, pixels) -> None:
        self.pixels = _as_pixels(pixels, 2)

    @classmethod
    def from_sequence(cls, width: int, height: int, values) -> "GrayImage":
        flat = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
        if flat.size != width * height:
            raise InvalidArgument(
                f"expected {width * height} pixels for {width}x{height}, got {flat.size}"
            )
        return cls(flat.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def __getitem__(self, rc):
        return int(self.pixels[rc])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


class RgbImage:
    """An 8-bit three-plane raster stored as a ``(height, width, 3)`` array."""

    __slots__ = ("pixels",)

    def __init__(self, pixels) -> None:
        arr = _as_pixels(pixels, 3)
        if arr.shape[2] != 3:
            raise InvalidArgument(f"RGB image needs 3 planes, got {arr.shape[2]}")
        self.pixels = arr

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RgbImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"RgbImage({self.width}x{self.height})"


Image = Union[GrayImage, RgbImage]


class PixelCoord(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Border:
    """Rule for reading pixels outside the image.

    ``kind`` is one of ``replicate``, ``mirror``, ``constant`` or ``crop``.
    Mirror reflects about the edge pixel without repeating it
    (``c b | a b c | b a``).
    """

    kind: str = "replicate"
    value: int = 0

    KINDS = ("replicate", "mirror", "constant", "crop")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidArgument(f"unknown border policy {self.kind!r}")
        if not 0 <= int(self.value) <= 255:
            raise InvalidArgument(f"constant border value {self.value} outside [0, 255]")

    @classmethod
    def constant(cls, value: int) -> "Border":
        return cls("constant", int(value))

    @classmethod
    def parse(cls, text: str) -> "Border":
        """Parse ``replicate``, ``mirror``, ``crop`` or ``constant:<v>``."""
        kind, _, val = text.strip().lower().partition(":")
        if kind == "constant":
            try:
                return cls.constant(int(val or 0))
            except ValueError:
                raise InvalidArgument(f"bad constant border value {val!r}") from None
        if val:
            raise InvalidArgument(f"border {kind!r} takes no value")
        return cls(kind)

    def __str__(self) -> str:
        return f"constant:{self.value}" if self.kind == "constant" else self.kind


REPLICATE = Border("replicate")
MIRROR = Border("mirror")
CROP = Border("crop")


def new_filled(width: int, height: int, value: int) -> GrayImage:
    if width < 1 or height < 1:
        raise InvalidArgument(f"image dimensions must be positive, got {width}x{height}")
    if not 0 <= value <= 255:
        raise InvalidArgument(f"fill value {value} outside [0, 255]")
    return GrayImage(np.full((height, width), value, dtype=np.uint8))


def extend_index(idx, n: int, kind: str):
    """Map (possibly out-of-range) indices into ``[0, n)`` for replicate/mirror."""
    idx = np.asarray(idx)
    if kind == "replicate":
        return np.clip(idx, 0, n - 1)
    if kind == "mirror":
        if n == 1:
            return np.zeros_like(idx)
        period = 2 * (n - 1)
        m = np.mod(idx, period)
        return np.where(m >= n, period - m, m)
    raise InvalidArgument(f"border {kind!r} has no index mapping")


def pixel_extended(img: GrayImage, at, border: Border = REPLICATE) -> int:
    row, col = at
    h, w = img.shape
    if 0 <= row < h and 0 <= col < w:
        return int(img.pixels[row, col])
    if border.kind == "crop":
        raise InvalidArgument("crop border has no out-of-bounds values")
    if border.kind == "constant":
        return border.value
    return int(img.pixels[int(extend_index(row, h, border.kind)), int(extend_index(col, w, border.kind))])


def pad(arr: np.ndarray, ry: int, rx: int, border: Border) -> np.ndarray:
    """Extend a 2-D array by ``ry`` rows and ``rx`` columns on each side.

    Crop returns the array unchanged; callers shrink their output instead.
    """
    if border.kind == "crop":
        return arr
    if border.kind == "constant":
        return np.pad(arr, ((ry, ry), (rx, rx)), mode="constant", constant_values=border.value)
    h, w = arr.shape
    rows = extend_index(np.arange(-ry, h + ry), h, border.kind)
    cols = extend_index(np.arange(-rx, w + rx), w, border.kind)
    return np.ascontiguousarray(arr[np.ix_(rows, cols)])


def split_channels(img: RgbImage) -> tuple[GrayImage, GrayImage, GrayImage]:
    return tuple(GrayImage(img.pixels[:, :, c]) for c in range(3))


def merge_channels(r: GrayImage, g: GrayImage, b: GrayImage) -> RgbImage:
    if not (r.shape == g.shape == b.shape):
        raise InvalidArgument(
            f"channel dimensions differ: {r.shape}, {g.shape}, {b.shape}"
        )
    return RgbImage(np.stack([r.pixels, g.pixels, b.pixels], axis=-1))


def map_channels(fn, img: Image) -> Image:
    """Apply a gray-to-gray function to each plane of a color image."""
    if isinstance(img, GrayImage):
        return fn(img)
    return merge_channels(*(fn(plane) for plane in split_channels(img)))


def round_to_intensity(values) -> np.ndarray:
    """Round half away from zero, then clamp to ``[0, 255]`` as ``uint8``."""
    values = np.asarray(values, dtype=np.float64)
    rounded = np.copysign(np.floor(np.abs(values) + 0.5), values)
    return np.clip(rounded, 0, 255).astype(np.uint8)
