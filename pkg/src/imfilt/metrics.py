"""Image quality (MSE/PSNR) and detection (precision/recall) metrics."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .image import GrayImage, InvalidArgument
from .nonlinear import FlagImage

PEAK = 255


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    psnr_db: float  # math.inf when the images are identical
    max_abs_error: int


@dataclass(frozen=True)
class DetectionReport:
    true_positives: int
    false_positives: int
    false_negatives: int
    precision: float
    recall: float

    def as_dict(self) -> dict:
        return asdict(self)


def _same_shape(a, b) -> None:
    if a.shape != b.shape:
        raise InvalidArgument(f"dimension mismatch: {a.shape} vs {b.shape}")


def mse(a: GrayImage, b: GrayImage) -> float:
    _same_shape(a, b)
    diff = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
    return float(np.mean(diff * diff))


def psnr_from_mse(value: float) -> float:
    if value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / value)


def psnr(a: GrayImage, b: GrayImage) -> MetricsReport:
    err = mse(a, b)
    max_abs = int(np.max(np.abs(a.pixels.astype(np.int16) - b.pixels.astype(np.int16))))
    return MetricsReport(err, psnr_from_mse(err), max_abs)


def detection_confusion(flags: FlagImage, truth: FlagImage) -> DetectionReport:
    """Score detected flags against a ground-truth mask.

    Precision and recall are 1 when their denominator is empty.
    """
    _same_shape(flags, truth)
    f = flags.flags.astype(bool)
    t = truth.flags.astype(bool)
    tp = int(np.count_nonzero(f & t))
    fp = int(np.count_nonzero(f & ~t))
    fn = int(np.count_nonzero(~f & t))
    precision = tp / (tp + fp) if tp + fp else 1.0
    recall = tp / (tp + fn) if tp + fn else 1.0
    return DetectionReport(tp, fp, fn, precision, recall)


def format_float(x: float) -> str:
    """CSV spelling: ``inf`` for infinity, integers without a fraction,
    otherwise the shortest round-trip repr."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x.is_integer():
        return str(int(x))
    return repr(x)
