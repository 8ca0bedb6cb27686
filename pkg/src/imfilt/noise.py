"""Seeded noise injection.

Random streams come from numpy's PCG64 bit generator seeded with the
caller's 64-bit seed.  Salt-and-pepper draws, in order:

1. one permutation of all ``N`` raster positions; the first
   ``floor(density * N)`` entries are the corrupted pixels;
2. one fair bit per corrupted pixel, visited in raster order
   (1 -> salt 255, 0 -> pepper 0).

Additive Gaussian noise draws one standard normal per pixel in raster
order.
"""
from __future__ import annotations

import math

import numpy as np

from .image import GrayImage, InvalidArgument, round_to_intensity
from .nonlinear import FlagImage


class NoiseMask(FlagImage):
    """Ground-truth marks of the pixels a noise model corrupted."""

    __slots__ = ()


def _rng(seed: int) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise InvalidArgument(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def add_salt_pepper(img: GrayImage, density: float, seed: int):
    """Corrupt exactly ``floor(density * N)`` pixels.  Returns ``(noisy, mask)``."""
    if not (0.0 <= density <= 1.0):
        raise InvalidArgument(f"density must lie in [0, 1], got {density}")
    n = img.width * img.height
    count = math.floor(density * n)
    rng = _rng(seed)
    chosen = np.sort(rng.permutation(n)[:count])
    salt = rng.integers(0, 2, size=count)
    flat = img.pixels.reshape(-1).copy()
    flat[chosen] = np.where(salt == 1, 255, 0)
    mask = np.zeros(n, dtype=np.uint8)
    mask[chosen] = 1
    return GrayImage(flat.reshape(img.shape)), NoiseMask(mask.reshape(img.shape))


def add_gaussian_noise(img: GrayImage, sd: float, seed: int) -> GrayImage:
    if not (sd > 0 and math.isfinite(sd)):
        raise InvalidArgument(f"noise sd must be a positive finite number, got {sd}")
    draws = _rng(seed).standard_normal(img.shape)
    return GrayImage(round_to_intensity(img.pixels + sd * draws))
