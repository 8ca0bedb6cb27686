"""Builtin test images, available to the CLI by name."""
import numpy as np

from .image import GrayImage, InvalidArgument

STEP_EDGE_COL = 64

# (row, col) positions of interest in ``paper9``
PAPER9_SUM360 = (2, 3)
PAPER9_ISOLATED = (7, 1)
PAPER9_HOLE = (4, 4)


def paper9() -> GrayImage:
    """9x9 box-blur fixture: a block of 90s with a 0 hole, plus a lone 90.

    A radius-1 box blur gives 40 at the block corner (window sum 360) and
    10 at the lone 90 (surrounded by zeros).
    """
    px = np.zeros((9, 9), dtype=np.uint8)
    px[2:7, 3:8] = 90
    px[PAPER9_HOLE] = 0
    px[PAPER9_ISOLATED] = 90
    return GrayImage(px)


def step(size: int = 128, low: int = 64, high: int = 192) -> GrayImage:
    """Vertical two-level step; columns ``>= size // 2`` take ``high``."""
    px = np.full((size, size), low, dtype=np.uint8)
    px[:, size // 2 :] = high
    return GrayImage(px)


def step128() -> GrayImage:
    """128x128, left half 64, right half 192 (edge at column 64).

    Both levels sit well inside ``(0, 255)`` so every salt or pepper
    impulse actually changes the pixel it lands on.
    """
    return step(128, 64, 192)


def flat128() -> GrayImage:
    return GrayImage(np.full((128, 128), 128, dtype=np.uint8))


BUILTINS = {"paper9": paper9, "step128": step128, "flat128": flat128}


def builtin(name: str) -> GrayImage:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise InvalidArgument(f"unknown builtin image {name!r}; have {sorted(BUILTINS)}") from None
