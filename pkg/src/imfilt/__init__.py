"""Deterministic image filtering: box, Gaussian, median, switching-median
and bilateral filters with Netpbm I/O, seeded noise and quality metrics.

Hot loops run in a compiled extension when it is built and fall back to
numpy otherwise; ``imfilt.backend()`` reports which one is active.
"""
from . import _backend
from .bilateral import (
    BilateralParams,
    bilateral_filter,
    bilateral_reference,
    edge_contrast,
    surface_blur,
)
from .image import (
    CROP,
    MIRROR,
    REPLICATE,
    Border,
    GrayImage,
    InvalidArgument,
    PixelCoord,
    RgbImage,
    map_channels,
    merge_channels,
    new_filled,
    pixel_extended,
    split_channels,
)
from .linear import (
    BoxParams,
    GaussianParams,
    Kernel,
    KernelSizeWarning,
    SeparableKernel,
    box_blur,
    convolve_naive,
    gaussian_blur,
    gaussian_kernel_1d,
)
from .metrics import DetectionReport, MetricsReport, detection_confusion, mse, psnr
from .noise import NoiseMask, add_gaussian_noise, add_salt_pepper
from .nonlinear import (
    FlagImage,
    MedianParams,
    SwitchingMedianParams,
    SwitchingMedianResult,
    detect_and_correct_once,
    median_filter,
    switching_median,
    window_median,
)
from .pnm import PnmError, read_pnm, write_pnm

__version__ = "0.1.0"


def backend() -> str:
    """Name of the kernel backend in use (``"cython"`` or ``"python"``)."""
    return _backend.kernels.NAME
