"""Named operations shared by the CLI filter/noise commands and pipelines.

A stage is built from an op name and a flat key/value parameter map; all
validation happens at build time so a pipeline can fail before touching
any file.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

from .bilateral import BilateralParams, bilateral_filter
from .image import Border, GrayImage, Image, InvalidArgument, RgbImage, map_channels, merge_channels, split_channels
from .linear import BoxParams, GaussianParams, KernelSizeWarning, box_blur, gaussian_blur
from .noise import add_gaussian_noise, add_salt_pepper
from .nonlinear import MedianParams, SwitchingMedianParams, median_filter, switching_median

FILTER_OPS = ("box", "gaussian", "median", "switching-median", "bilateral", "surface-blur")
NOISE_OPS = ("salt-pepper", "gaussian-noise")
OPS = FILTER_OPS + NOISE_OPS

# op -> {key: converter}
_KEYS = {
    "box": {"radius": int, "border": Border.parse},
    "gaussian": {"sigma": float, "radius": int, "border": Border.parse},
    "median": {"w": int, "border": Border.parse},
    "switching-median": {"w": int, "t": int, "p": int},
    "bilateral": {
        "sigma_s": float, "sigma_r": float, "radius": int,
        "spatial": str, "range": str, "border": Border.parse,
    },
    "surface-blur": {"sigma_s": float, "sigma_r": float, "radius": int, "border": Border.parse},
    "salt-pepper": {"density": float, "seed": int},
    "gaussian-noise": {"sd": float, "seed": int},
}


class StageError(InvalidArgument):
    def __init__(self, message: str, key: Optional[str] = None, stage: Optional[int] = None):
        where = []
        if stage is not None:
            where.append(f"stage {stage}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.detail = message
        self.key = key
        self.stage = stage


@dataclass
class Stage:
    op: str
    params: object
    run: Callable[[Image], Image] = field(repr=False)
    # filled by switching-median runs so callers can score detection
    last_flags: object = field(default=None, repr=False)

    @property
    def side(self) -> Optional[int]:
        return getattr(self.params, "side", None)


def _convert(op: str, raw: dict) -> dict:
    allowed = _KEYS[op]
    out = {}
    for key, value in raw.items():
        name = key.replace("-", "_")
        if name not in allowed:
            raise StageError(f"unknown parameter for {op!r}; allowed: {sorted(allowed)}", key=key)
        if value is None:
            continue
        conv = allowed[name]
        try:
            if isinstance(value, bool) or (conv is int and isinstance(value, float) and not value.is_integer()):
                raise ValueError("wrong type")
            out[name] = value if isinstance(value, Border) else conv(value)
        except (TypeError, ValueError, AttributeError) as exc:
            raise StageError(f"bad value {value!r}: {exc}", key=key) from None
    return out


def build_stage(op: str, raw: Optional[dict] = None, default_seed: Optional[int] = None, workers: int = 1) -> Stage:
    """Validate parameters for ``op`` and return a runnable stage."""
    if op not in OPS:
        raise StageError(f"unknown op {op!r}; expected one of {list(OPS)}", key="op")
    kw = _convert(op, dict(raw or {}))
    try:
        if op in NOISE_OPS:
            return _noise_stage(op, kw, default_seed)
        return _filter_stage(op, kw, workers)
    except StageError:
        raise
    except InvalidArgument as exc:
        raise StageError(str(exc)) from None
    except TypeError as exc:
        raise StageError(str(exc)) from None


def _filter_stage(op: str, kw: dict, workers: int) -> Stage:
    if op == "box":
        params = BoxParams(**kw)
        fn = lambda g: box_blur(g, params, workers)
    elif op == "gaussian":
        if "sigma" not in kw:
            raise StageError("missing required parameter", key="sigma")
        params = GaussianParams(**kw)
        fn = lambda g: gaussian_blur(g, params, workers)
    elif op == "median":
        params = MedianParams(**kw)
        fn = lambda g: median_filter(g, params, workers)
    elif op == "bilateral":
        params = BilateralParams(**kw)
        fn = lambda g: bilateral_filter(g, params, workers)
    elif op == "surface-blur":
        params = BilateralParams(**kw, spatial="box", range="tent")
        fn = lambda g: bilateral_filter(g, params, workers)
    else:
        params = SwitchingMedianParams(**kw)
        stage = Stage(op, params, None)

        def fn(g):
            result = switching_median(g, params, workers)
            stage.last_flags = result.flags
            return result.restored

        stage.run = lambda img: map_channels(fn, img)
        return stage
    return Stage(op, params, lambda img: map_channels(fn, img))


@dataclass(frozen=True)
class NoiseParams:
    kind: str
    amount: float
    seed: int


def _noise_stage(op: str, kw: dict, default_seed: Optional[int]) -> Stage:
    seed = kw.get("seed", default_seed)
    if seed is None:
        raise StageError("a seed is required for noise stages", key="seed")
    if op == "salt-pepper":
        if "density" not in kw:
            raise StageError("missing required parameter", key="density")
        amount = kw["density"]
        if not 0.0 <= amount <= 1.0:
            raise StageError(f"density must lie in [0, 1], got {amount}", key="density")
    else:
        if "sd" not in kw:
            raise StageError("missing required parameter", key="sd")
        amount = kw["sd"]
        if not amount > 0:
            raise StageError(f"sd must be positive, got {amount}", key="sd")
    if not 0 <= seed < 2**64:
        raise StageError(f"seed must be a 64-bit unsigned integer, got {seed}", key="seed")
    params = NoiseParams(op, amount, seed)
    stage = Stage(op, params, None)

    def plane(g: GrayImage, s: int) -> GrayImage:
        if op == "salt-pepper":
            noisy, mask = add_salt_pepper(g, amount, s)
            stage.last_flags = mask
            return noisy
        return add_gaussian_noise(g, amount, s)

    def run(img: Image) -> Image:
        if isinstance(img, RgbImage):
            # planes get consecutive seeds so channels are not correlated
            return merge_channels(*(plane(p, seed + c) for c, p in enumerate(split_channels(img))))
        return plane(img, seed)

    stage.run = run
    return stage


def run_capturing_warnings(fn, *args):
    """Call ``fn`` and return ``(result, unique kernel-size warning messages)``."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", KernelSizeWarning)
        result = fn(*args)
    messages = []
    for w in caught:
        if issubclass(w.category, KernelSizeWarning) and str(w.message) not in messages:
            messages.append(str(w.message))
    return result, messages
