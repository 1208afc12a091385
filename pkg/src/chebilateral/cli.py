"""Command-line interface: filter, compare, bench, approx-error, generate.

Exit status is 0 on success, 2 for usage errors and 1 for runtime failures.
All tables go to standard output as comma-separated values.
"""

import argparse
import csv
import statistics
import sys
import time

import numpy as np

from .approximation import MAX_DEGREE, approximation_errors
from .direct import BilateralParams, bilateral_direct
from .fast import FastFilterConfig, fast_bilateral_apply
from .image import IntensityRange, format_db, generate_test_image, mse_db
from .pgm import MAX_MAXVAL, PGMError, load_pgm, save_pgm

METHODS = ("exact", "gpf", "gcf")
SCHEME_OF = {"gpf": "taylor", "gcf": "chebyshev"}
DEFAULT_DEGREE = 20


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not np.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text!r}")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _degree(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer degree: {text!r}") from None
    if not 0 <= value <= MAX_DEGREE:
        raise argparse.ArgumentTypeError(f"degree must be in [0, {MAX_DEGREE}]: {text!r}")
    return value


def _maxval(text):
    value = _positive_int(text)
    if value > MAX_MAXVAL:
        raise argparse.ArgumentTypeError(f"maxval must be <= {MAX_MAXVAL}: {text!r}")
    return value


def _range(text):
    try:
        return IntensityRange.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _levels(text):
    parts = text.split(":")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected levels as lo:hi, got {text!r}") from None
    return lo, hi


def _list_of(item_type):
    def parse(text):
        items = [t.strip() for t in text.split(",") if t.strip()]
        if not items:
            raise argparse.ArgumentTypeError("list must not be empty")
        return [item_type(t) for t in items]

    return parse


def _method_list(text):
    methods = _list_of(str)(text)
    for m in methods:
        if m not in METHODS:
            raise argparse.ArgumentTypeError(f"unknown method {m!r}; choose from {METHODS}")
    return methods


def _param(value):
    """Echo a numeric parameter: integral values without a trailing ``.0``."""
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def _run_engine(method, img, sigma_s, sigma_r, degree, intensity_range, backend):
    """Return ``(image, runtime_ms, q_fallbacks)``."""
    start = time.perf_counter()
    if method == "exact":
        out = bilateral_direct(img, BilateralParams(sigma_s, sigma_r))
        fallbacks = 0
    else:
        cfg = FastFilterConfig(
            BilateralParams(sigma_s, sigma_r), degree, intensity_range, SCHEME_OF[method], backend
        )
        result = fast_bilateral_apply(img, cfg)
        out, fallbacks = result.image, result.q_fallbacks
    return out, (time.perf_counter() - start) * 1e3, fallbacks


def cmd_filter(args):
    img = load_pgm(args.input)
    degree = DEFAULT_DEGREE if args.degree is None else args.degree
    out, ms, fallbacks = _run_engine(
        args.method, img, args.sigma_s, args.sigma_r, degree, args.range, args.backend
    )
    save_pgm(args.output, out, maxval=args.maxval, binary=not args.ascii)
    height, width = img.shape
    fields = [
        "status=ok",
        f"method={args.method}",
        f"width={width}",
        f"height={height}",
        f"sigma_s={_param(args.sigma_s)}",
        f"sigma_r={_param(args.sigma_r)}",
    ]
    if args.method != "exact":
        fields += [f"degree={degree}", f"backend={args.backend}", f"q_fallbacks={fallbacks}"]
    fields.append(f"runtime_ms={ms:.3f}")
    print(" ".join(fields))
    return 0


def cmd_compare(args):
    img = load_pgm(args.input)
    reference, exact_ms, _ = _run_engine(
        "exact", img, args.sigma_s, args.sigma_r, 0, args.range, args.backend
    )
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(
        ["method", "degree", "sigma_s", "sigma_r", "mse_db_vs_exact", "runtime_ms", "q_fallbacks"]
    )
    for method in args.methods:
        for degree in args.degrees:
            if method == "exact":
                out, ms, fallbacks = reference, exact_ms, 0
            else:
                out, ms, fallbacks = _run_engine(
                    method, img, args.sigma_s, args.sigma_r, degree, args.range, args.backend
                )
            writer.writerow([
                method,
                degree,
                _param(args.sigma_s),
                _param(args.sigma_r),
                format_db(mse_db(out, reference)),
                f"{ms:.3f}",
                fallbacks,
            ])
    return 0


def _median_ms(method, img, sigma_s, args, repeats):
    times, out = [], None
    for _ in range(repeats):
        out, ms, _ = _run_engine(
            method, img, sigma_s, args.sigma_r, args.degree, args.range, args.backend
        )
        times.append(ms)
    return out, statistics.median(times)


def cmd_bench(args):
    img = load_pgm(args.input)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["sigma_s", "exact_ms", "gpf_ms", "gpf_mse_db", "gcf_ms", "gcf_mse_db"])
    for sigma_s in args.sigma_s_list:
        # untimed warm-up: JIT compilation and per-sigma recursive coefficient fit
        for method in ("gpf", "gcf"):
            _run_engine(method, img, sigma_s, args.sigma_r, args.degree, args.range, args.backend)
        reference, exact_ms = _median_ms("exact", img, sigma_s, args, args.repeats)
        row = [_param(sigma_s), f"{exact_ms:.3f}"]
        for method in ("gpf", "gcf"):
            out, ms = _median_ms(method, img, sigma_s, args, args.repeats)
            row += [f"{ms:.3f}", format_db(mse_db(out, reference))]
        writer.writerow(row)
        sys.stdout.flush()
    return 0


def cmd_approx_error(args):
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.pointwise is not None:
        x, taylor, cheb = approximation_errors(args.pointwise, args.mu, args.grid)
        writer.writerow(["x", "taylor_err", "cheb_err"])
        for row in zip(x, taylor, cheb):
            writer.writerow([f"{v:.17g}" for v in row])
        return 0
    writer.writerow(["degree", "taylor_linf", "cheb_linf"])
    for degree in args.degrees:
        _, taylor, cheb = approximation_errors(degree, args.mu, args.grid)
        writer.writerow([
            degree, f"{np.max(np.abs(taylor)):.17g}", f"{np.max(np.abs(cheb)):.17g}"
        ])
    return 0


def cmd_generate(args):
    lo, hi = args.levels
    img = generate_test_image(
        args.kind, args.width, args.height, tile=args.tile, levels=(lo, hi), value=args.value
    )
    save_pgm(args.output, img, maxval=args.maxval, binary=not args.ascii)
    return 0


def _add_engine_flags(p, *, sigma_s=True):
    if sigma_s:
        p.add_argument("--sigma-s", type=_positive_float, required=True,
                       help="spatial standard deviation in pixels")
    p.add_argument("--sigma-r", type=_positive_float, required=True,
                   help="range standard deviation in intensity units")
    p.add_argument("--range", type=_range, default=IntensityRange(0.0, 255.0), metavar="L:U",
                   help="declared intensity range for gpf/gcf (default 0:255)")
    p.add_argument("--backend", choices=("fir", "recursive"), default="fir",
                   help="spatial Gaussian backend for gpf/gcf (default fir)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chebilateral",
        description="Exact and fast (Taylor / Chebyshev) Gaussian bilateral filtering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filter", help="filter a PGM image with one engine")
    p.add_argument("--input", required=True, help="input PGM file")
    p.add_argument("--output", required=True, help="output PGM file")
    p.add_argument("--method", choices=METHODS, required=True,
                   help="exact: brute force; gpf: Taylor; gcf: Chebyshev")
    _add_engine_flags(p)
    p.add_argument("--degree", type=_degree, default=None,
                   help=f"polynomial degree for gpf/gcf (default {DEFAULT_DEGREE})")
    p.add_argument("--maxval", type=_maxval, default=255, help="output maxval (default 255)")
    p.add_argument("--ascii", action="store_true", help="write plain P2 instead of P5")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("compare", help="MSE (dB) of fast engines against the exact filter")
    p.add_argument("--input", required=True, help="input PGM file")
    _add_engine_flags(p)
    p.add_argument("--degrees", type=_list_of(_degree), required=True,
                   help="comma-separated polynomial degrees")
    p.add_argument("--methods", type=_method_list, default=["gpf", "gcf"],
                   help="comma-separated engines among exact,gpf,gcf (default gpf,gcf)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="median runtimes and accuracy over spatial sigmas")
    p.add_argument("--input", required=True, help="input PGM file")
    _add_engine_flags(p, sigma_s=False)
    p.add_argument("--degree", type=_degree, default=DEFAULT_DEGREE,
                   help=f"polynomial degree (default {DEFAULT_DEGREE})")
    p.add_argument("--sigma-s-list", type=_list_of(_positive_float), required=True,
                   help="comma-separated spatial sigmas")
    p.add_argument("--repeats", type=_positive_int, default=3,
                   help="timed runs per engine; the median is reported (default 3)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("approx-error", help="Taylor vs Chebyshev error for exp on [-mu, mu]")
    p.add_argument("--mu", type=_positive_float, required=True, help="interval half-width")
    p.add_argument("--degrees", type=_list_of(_degree), default=None,
                   help="comma-separated degrees for the l-infinity table")
    p.add_argument("--grid", type=_positive_int, default=100001,
                   help="number of grid points (default 100001)")
    p.add_argument("--pointwise", type=_degree, default=None, metavar="N",
                   help="emit per-point errors x,taylor_err,cheb_err for degree N instead")
    p.set_defaults(func=cmd_approx_error)

    p = sub.add_parser("generate", help="write a synthetic test image")
    p.add_argument("--kind", choices=("checkerboard", "gradient", "constant"), required=True)
    p.add_argument("--width", type=_positive_int, required=True)
    p.add_argument("--height", type=_positive_int, required=True)
    p.add_argument("--tile", type=_positive_int, default=8, help="checkerboard block size")
    p.add_argument("--levels", type=_levels, default=(0.0, 255.0), metavar="LO:HI",
                   help="checkerboard levels or gradient endpoints (default 0:255)")
    p.add_argument("--value", type=float, default=None, help="fill value for --kind constant")
    p.add_argument("--output", required=True, help="output PGM file")
    p.add_argument("--maxval", type=_maxval, default=255, help="output maxval (default 255)")
    p.add_argument("--ascii", action="store_true", help="write plain P2 instead of P5")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "approx-error":
        if args.grid < 2:
            parser.error("--grid must be at least 2")
        if args.pointwise is None and args.degrees is None:
            parser.error("approx-error needs --degrees or --pointwise")
    try:
        return args.func(args)
    except (OSError, PGMError) as exc:
        print(f"chebilateral: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"chebilateral: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
