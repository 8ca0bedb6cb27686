"""Command-line interface: ``imfilt filter|noise|metric|bench|pipeline``.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 parse or validation
error.  Errors are written to stderr as a single JSON object.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from . import pnm
from .image import GrayImage, InvalidArgument
from .metrics import detection_confusion, format_float, psnr
from .nonlinear import FlagImage
from .ops import StageError, build_stage, run_capturing_warnings
from .pnm import PnmError
from .synthetic import BUILTINS

EXIT_USAGE, EXIT_IO, EXIT_INVALID = 1, 2, 3

BENCH_HEADER = ["algorithm", "density", "rep", "seed", "mse", "psnr_db", "precision", "recall", "ms"]

# bench algorithm name -> (op, params); "none" scores the noisy input itself
BENCH_PRESETS = {
    "none": None,
    "box": ("box", {"radius": 1}),
    "gaussian": ("gaussian", {"sigma": 1.0}),
    "median": ("median", {"w": 1}),
    "switching-median": ("switching-median", {"w": 1, "t": 40, "p": 3}),
    "bilateral": ("bilateral", {"sigma_s": 2.0, "sigma_r": 30.0, "radius": 3}),
    "surface-blur": ("surface-blur", {"sigma_s": 2.0, "sigma_r": 30.0, "radius": 3}),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def _warn(messages) -> None:
    for m in messages:
        print(f"warning: {m}", file=sys.stderr)


def load_image(source: str):
    """Read a PNM file, or a builtin synthetic when no such file exists."""
    if not os.path.exists(source) and source in BUILTINS:
        return BUILTINS[source]()
    return pnm.load(source)


def _mask_from_image(img) -> FlagImage:
    if not isinstance(img, GrayImage):
        raise InvalidArgument("mask images must be grayscale")
    return FlagImage((img.pixels > 0).astype(np.uint8))


def _mask_image(mask: FlagImage) -> GrayImage:
    return GrayImage(mask.flags * 255)


def _write(path: str, img, ascii_: bool) -> None:
    pnm.save(path, img, ascii=ascii_)


# ---- filter ---------------------------------------------------------------

def _add_filter_parsers(sub) -> None:
    p = sub.add_parser("filter", help="apply one filter to an image")
    fsub = p.add_subparsers(dest="op", required=True, parser_class=_Parser)

    def common(fp):
        fp.add_argument("input")
        fp.add_argument("output")
        fp.add_argument("--ascii", action="store_true", help="write P2/P3 instead of P5/P6")
        fp.add_argument("--workers", type=int, default=1, help="row-parallel threads")

    def border(fp):
        fp.add_argument("--border", default=None, help="replicate|mirror|crop|constant:<v>")

    fp = fsub.add_parser("box")
    fp.add_argument("--radius", type=int, default=1)
    border(fp)
    common(fp)
    fp = fsub.add_parser("gaussian")
    fp.add_argument("--sigma", type=float, required=True)
    fp.add_argument("--radius", type=int, default=None, help="default ceil(3*sigma)")
    border(fp)
    common(fp)
    fp = fsub.add_parser("median")
    fp.add_argument("--w", type=int, default=1, help="half-window")
    border(fp)
    common(fp)
    fp = fsub.add_parser("switching-median")
    fp.add_argument("--w", type=int, default=1)
    fp.add_argument("--t", type=int, default=40, help="detection threshold")
    fp.add_argument("--p", type=int, default=3, help="iterations")
    fp.add_argument("--flags-out", default=None, help="write the flag image (0/255 PGM)")
    common(fp)
    for name in ("bilateral", "surface-blur"):
        fp = fsub.add_parser(name)
        fp.add_argument("--sigma-s", type=float, default=2.0)
        fp.add_argument("--sigma-r", type=float, default=30.0)
        fp.add_argument("--radius", type=int, default=None, help="default ceil(3*sigma_s)")
        if name == "bilateral":
            fp.add_argument("--spatial", choices=["gaussian", "box"], default="gaussian")
            fp.add_argument("--range", choices=["gaussian", "tent"], default="gaussian")
        border(fp)
        common(fp)


_NOT_PARAMS = {"command", "op", "input", "output", "ascii", "workers", "flags_out", "mask"}


def cmd_filter(args) -> int:
    params = {k: v for k, v in vars(args).items() if k not in _NOT_PARAMS}
    stage = build_stage(args.op, params, workers=args.workers)
    img = load_image(args.input)
    start = time.perf_counter()
    out, warnings_ = run_capturing_warnings(stage.run, img)
    ms = (time.perf_counter() - start) * 1000.0
    _warn(warnings_)
    _write(args.output, out, args.ascii)
    if getattr(args, "flags_out", None) and stage.last_flags is not None:
        _write(args.flags_out, _mask_image(stage.last_flags), False)
    shown = " ".join(f"{k}={v}" for k, v in params.items() if v is not None)
    print(f"filter={args.op} {shown} ms={ms:.3f}", file=sys.stderr)
    return 0


# ---- noise ----------------------------------------------------------------

def _add_noise_parsers(sub) -> None:
    p = sub.add_parser("noise", help="inject seeded noise")
    nsub = p.add_subparsers(dest="op", required=True, parser_class=_Parser)
    sp = nsub.add_parser("sp", help="salt-and-pepper")
    sp.add_argument("--density", type=float, required=True)
    sp.add_argument("--mask", default=None, help="write the corruption mask (0/255 PGM)")
    g = nsub.add_parser("gaussian", help="additive Gaussian")
    g.add_argument("--sd", type=float, required=True)
    for q in (sp, g):
        q.add_argument("--seed", type=int, required=True)
        q.add_argument("input")
        q.add_argument("output")
        q.add_argument("--ascii", action="store_true")


def cmd_noise(args) -> int:
    if args.op == "sp":
        stage = build_stage("salt-pepper", {"density": args.density, "seed": args.seed})
    else:
        stage = build_stage("gaussian-noise", {"sd": args.sd, "seed": args.seed})
    img = load_image(args.input)
    mask_path = getattr(args, "mask", None)
    if mask_path and not isinstance(img, GrayImage):
        raise InvalidArgument("--mask is only supported for grayscale input")
    out = stage.run(img)
    _write(args.output, out, args.ascii)
    if mask_path:
        _write(mask_path, _mask_image(stage.last_flags), False)
    return 0


# ---- metric ---------------------------------------------------------------

def _add_metric_parser(sub) -> None:
    p = sub.add_parser("metric", help="print mse,psnr_db[,precision,recall]")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--flags", default=None, help="detected flag image (nonzero = flagged)")
    p.add_argument("--truth", default=None, help="ground-truth mask image (nonzero = corrupted)")


def cmd_metric(args) -> int:
    if (args.flags is None) != (args.truth is None):
        raise UsageError("--flags and --truth must be given together")
    a, b = load_image(args.a), load_image(args.b)
    if not (isinstance(a, GrayImage) and isinstance(b, GrayImage)):
        raise InvalidArgument("metric expects grayscale images")
    report = psnr(a, b)
    fields = [format_float(report.mse), format_float(report.psnr_db)]
    if args.flags is not None:
        det = detection_confusion(_mask_from_image(load_image(args.flags)), _mask_from_image(load_image(args.truth)))
        fields += [format_float(det.precision), format_float(det.recall)]
    print(",".join(fields))
    return 0


# ---- bench ----------------------------------------------------------------

def _add_bench_parser(sub) -> None:
    p = sub.add_parser("bench", help="noise-density x algorithm sweep as CSV")
    p.add_argument("--densities", default="0.05,0.2,0.4,0.6")
    p.add_argument("--algorithms", default="switching-median", help=f"comma list of {sorted(BENCH_PRESETS)}")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=7, help="base seed; rep i uses seed + i")
    p.add_argument("--image", default="step128", help="clean reference: PNM path or builtin name")
    p.add_argument("--output", default=None, help="write CSV here instead of stdout")


def _parse_list(text: str, conv, what: str):
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise InvalidArgument(f"{what} list is empty")
    try:
        return [conv(t) for t in items]
    except ValueError as exc:
        raise InvalidArgument(f"bad {what} entry: {exc}") from None


def bench_rows(clean: GrayImage, densities, algorithms, reps: int, base_seed: int):
    """Yield one CSV row (list of strings) per grid cell in grid order."""
    stages = {a: (build_stage(*BENCH_PRESETS[a]) if BENCH_PRESETS[a] else None) for a in algorithms}
    for density in densities:
        for alg in algorithms:
            for rep in range(reps):
                seed = base_seed + rep
                noise = build_stage("salt-pepper", {"density": density, "seed": seed})
                noisy = noise.run(clean)
                truth = noise.last_flags
                stage = stages[alg]
                start = time.perf_counter()
                out = stage.run(noisy) if stage else noisy
                ms = (time.perf_counter() - start) * 1000.0
                report = psnr(out, clean)
                precision = recall = ""
                if stage is not None and stage.op == "switching-median":
                    det = detection_confusion(stage.last_flags, truth)
                    precision, recall = format_float(det.precision), format_float(det.recall)
                yield [alg, repr(float(density)), str(rep), str(seed), format_float(report.mse),
                       format_float(report.psnr_db), precision, recall, f"{ms:.3f}"]


def cmd_bench(args) -> int:
    densities = _parse_list(args.densities, float, "density")
    for d in densities:
        if not 0.0 <= d <= 1.0:
            raise InvalidArgument(f"density {d} outside [0, 1]")
    algorithms = _parse_list(args.algorithms, str, "algorithm")
    unknown = [a for a in algorithms if a not in BENCH_PRESETS]
    if unknown:
        raise InvalidArgument(f"unknown algorithms {unknown}; have {sorted(BENCH_PRESETS)}")
    if args.reps < 1:
        raise InvalidArgument("--reps must be >= 1")
    clean = load_image(args.image)
    if not isinstance(clean, GrayImage):
        raise InvalidArgument("bench needs a grayscale reference image")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    _, warnings_ = run_capturing_warnings(
        lambda: writer.writerows(bench_rows(clean, densities, algorithms, args.reps, args.seed))
    )
    _warn(warnings_)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


# ---- pipeline -------------------------------------------------------------

def _add_pipeline_parser(sub) -> None:
    p = sub.add_parser("pipeline", help="run a JSON pipeline config")
    p.add_argument("config")
    p.add_argument("--workers", type=int, default=1)


def load_pipeline(text: str, workers: int = 1):
    """Parse and validate a pipeline document.

    Returns ``(stages, config)``.  Every stage is built (and so validated)
    here, before any image is read.
    """
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"config is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise InvalidArgument("config must be a JSON object")
    extra = set(cfg) - {"input", "output", "seed", "stages", "ascii"}
    if extra:
        raise InvalidArgument(f"unknown config keys {sorted(extra)}")
    for key in ("input", "output"):
        if not isinstance(cfg.get(key), str):
            raise InvalidArgument(f"config key {key!r} must be a string path")
    seed = cfg.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise InvalidArgument("config key 'seed' must be an integer")
    raw_stages = cfg.get("stages", [])
    if not isinstance(raw_stages, list):
        raise InvalidArgument("config key 'stages' must be a list")
    stages = []
    for i, entry in enumerate(raw_stages):
        if not isinstance(entry, dict) or "op" not in entry:
            raise StageError("each stage needs an 'op'", key="op", stage=i)
        bad = set(entry) - {"op", "params"}
        if bad:
            raise StageError(f"unexpected stage keys {sorted(bad)}", key=sorted(bad)[0], stage=i)
        params = entry.get("params", {})
        if not isinstance(params, dict):
            raise StageError("params must be an object", key="params", stage=i)
        try:
            stages.append(build_stage(entry["op"], params, default_seed=seed, workers=workers))
        except StageError as exc:
            raise StageError(exc.detail, key=exc.key, stage=i) from None
    return stages, cfg


def run_pipeline(stages, img):
    for stage in stages:
        img = stage.run(img)
    return img


def cmd_pipeline(args) -> int:
    with open(args.config) as fh:
        text = fh.read()
    stages, cfg = load_pipeline(text, workers=args.workers)
    img = load_image(cfg["input"])
    out, warnings_ = run_capturing_warnings(run_pipeline, stages, img)
    _warn(warnings_)
    _write(cfg["output"], out, bool(cfg.get("ascii", False)))
    return 0


# ---- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="imfilt", description="Deterministic image filtering toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_filter_parsers(sub)
    _add_noise_parsers(sub)
    _add_metric_parser(sub)
    _add_bench_parser(sub)
    _add_pipeline_parser(sub)
    return parser


COMMANDS = {
    "filter": cmd_filter,
    "noise": cmd_noise,
    "metric": cmd_metric,
    "bench": cmd_bench,
    "pipeline": cmd_pipeline,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        _fail("usage", str(exc))
        return EXIT_USAGE
    except PnmError as exc:
        _fail("parse", str(exc))
        return EXIT_INVALID
    except InvalidArgument as exc:
        _fail("validation", str(exc))
        return EXIT_INVALID
    except OSError as exc:
        _fail("io", f"{exc.filename or ''}: {exc.strerror or exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
