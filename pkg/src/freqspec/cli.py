"""Command-line front end.

Subcommands cover the four pipeline entry points (estimate, exact, baseline,
compare) plus `serve` for the HTTP service. All heavy lifting goes through
the bridge module, so CLI output is numerically identical to what any other
host of the bridge produces.

Exit codes: 0 success, 1 user error, 2 enumeration cap exceeded, 3 internal
error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from typing import Optional

from pydantic import ValidationError

from .bridge import (
    EstimateRequest,
    ExactRequest,
    bridge_baseline,
    bridge_estimate,
    bridge_exact,
)
from .datasets import DATASETS
from .isotonic import SpectrumCurve
from .spectrum import DEFAULT_EXACT_CAP, compare_spectra, median_log_error

EXIT_OK = 0
EXIT_USER = 1
EXIT_CAP = 2
EXIT_INTERNAL = 3


class CliError(Exception):
    """User-level failure; message printed without a stack trace."""

    def __init__(self, message: str, code: int = EXIT_USER):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; 2 is reserved for the
    # enumeration cap here, so remap usage errors to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1 or 'auto'")
    return value


def _add_input_flags(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="FIMI file to read ('-' for stdin)")
    src.add_argument(
        "--dataset",
        choices=sorted(DATASETS),
        help="bundled synthetic dataset instead of a file",
    )


def _add_output_flags(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", metavar="PATH", help="write results here instead of stdout")
    p.add_argument("--plot", metavar="PATH.svg", help="also render a static SVG plot")


def _add_estimate_flags(p: argparse.ArgumentParser):
    _add_input_flags(p)
    p.add_argument("--paths", type=_positive, default=5000, metavar="N")
    p.add_argument("--sigma-min", type=int, default=None, metavar="S")
    p.add_argument(
        "--sigma-max",
        type=int,
        default=None,
        metavar="S",
        help="default: min(1000, number of rows)",
    )
    p.add_argument("--seed", type=_seed, default=1, metavar="U64")
    p.add_argument(
        "--include-empty-set",
        choices=("true", "false"),
        default="true",
        help="count the empty itemset (default true)",
    )
    p.add_argument(
        "--log-fit",
        action="store_true",
        help="fit the curve in log10 space instead of linear space",
    )
    p.add_argument(
        "--threads",
        type=_threads,
        default=1,
        metavar="N|auto",
        help="worker processes for path sampling (results are identical for any value)",
    )
    _add_output_flags(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="freqspec",
        description="Estimate pattern frequency spectra of 0/1 datasets by random lattice paths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="sample paths and fit the spectrum curve")
    _add_estimate_flags(p_est)
    p_est.set_defaults(func=_run_estimate)

    p_base = sub.add_parser(
        "baseline",
        help="estimate on a marginal-preserving randomization of the data",
    )
    _add_estimate_flags(p_base)
    p_base.set_defaults(func=_run_baseline)

    p_exact = sub.add_parser("exact", help="count frequent itemsets exactly")
    _add_input_flags(p_exact)
    p_exact.add_argument("--sigma-min", type=int, default=1, metavar="S")
    p_exact.add_argument(
        "--exact-cap",
        type=_positive,
        default=DEFAULT_EXACT_CAP,
        metavar="N",
        help=f"abort when more than N itemsets are found (default {DEFAULT_EXACT_CAP})",
    )
    p_exact.add_argument(
        "--include-empty-set", choices=("true", "false"), default="true"
    )
    _add_output_flags(p_exact)
    p_exact.set_defaults(func=_run_exact)

    p_cmp = sub.add_parser(
        "compare",
        help="per-threshold log10 error between two saved spectrum files",
    )
    p_cmp.add_argument("file_a")
    p_cmp.add_argument("file_b")
    _add_output_flags(p_cmp)
    p_cmp.set_defaults(func=_run_compare)

    p_srv = sub.add_parser("serve", help="run the HTTP service (and the web UI if built)")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8437)
    p_srv.set_defaults(func=_run_serve)

    return parser


def _read_input(args) -> dict:
    if args.dataset is not None:
        return {"dataset": args.dataset}
    if args.input == "-":
        return {"data": sys.stdin.read()}
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            return {"data": fh.read()}
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror or exc}")


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _doc_to_csv(doc: dict) -> str:
    lines = ["kind,sigma,value"]
    for p in doc.get("points", ()):
        lines.append(f"point,{p['sigma']},{p['estimate']!r}")
    for c in doc.get("curve", ()):
        lines.append(f"curve,{c['sigma']!r},{c['value']!r}")
    for c in doc.get("counts", ()):
        lines.append(f"exact,{c['sigma']},{c['count']}")
    for e in doc.get("errors", ()):
        lines.append(f"error,{e['sigma']!r},{e['log10_error']!r}")
    return "\n".join(lines) + "\n"


def _emit_doc(doc: dict, args):
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.output)
    else:
        _emit(_doc_to_csv(doc), args.output)


def _error_exit(error: dict) -> int:
    sys.stderr.write(f"freqspec: {error['message']}\n")
    return EXIT_CAP if error.get("code") == "cap_exceeded" else EXIT_USER


def _run_stream(args, runner, kind: str) -> int:
    source = _read_input(args)
    try:
        request = EstimateRequest(
            **source,
            sigma_min=args.sigma_min,
            sigma_max=args.sigma_max,
            n_paths=args.paths,
            seed=args.seed,
            include_empty_set=args.include_empty_set == "true",
            log_fit=args.log_fit,
            threads=args.threads,
        )
    except ValidationError as exc:
        raise CliError(exc.errors()[0]["msg"])

    doc = None
    for event in runner(request):
        if event["type"] == "error":
            return _error_exit(event["error"])
        if event["type"] == "result":
            doc = event["result"]
    assert doc is not None
    _emit_doc(doc, args)
    cfg = doc["config"]
    sys.stderr.write(
        f"freqspec {kind}: rows={doc['dataset']['rows']} attrs={doc['dataset']['attrs']} "
        f"paths={cfg['n_paths']} sigma=[{cfg['sigma_min']},{cfg['sigma_max']}] "
        f"seed={cfg['seed']} runtime_ms={doc['runtime_ms']:.1f}\n"
    )
    if args.plot:
        _plot_run(doc, args.plot, kind)
    return EXIT_OK


def _run_estimate(args) -> int:
    return _run_stream(args, bridge_estimate, "estimate")


def _run_baseline(args) -> int:
    return _run_stream(args, bridge_baseline, "baseline")


def _run_exact(args) -> int:
    source = _read_input(args)
    try:
        request = ExactRequest(
            **source,
            sigma_min=args.sigma_min,
            include_empty_set=args.include_empty_set == "true",
            max_count=args.exact_cap,
        )
    except ValidationError as exc:
        raise CliError(exc.errors()[0]["msg"])
    event = bridge_exact(request)
    if event["type"] == "error":
        return _error_exit(event["error"])
    doc = event["result"]
    _emit_doc(doc, args)
    counts = doc["counts"]
    sys.stderr.write(
        f"freqspec exact: rows={doc['dataset']['rows']} attrs={doc['dataset']['attrs']} "
        f"sigma_min={doc['config']['sigma_min']} itemsets={counts[0]['count'] if counts else 0} "
        f"runtime_ms={doc['runtime_ms']:.1f}\n"
    )
    if args.plot:
        _plot_run(doc, args.plot, "exact")
    return EXIT_OK


def _load_curve_file(path: str) -> SpectrumCurve:
    """Read the curve from a saved estimate/baseline/exact file, CSV or JSON."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}")

    pairs: list[tuple[float, float]] = []
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"{path}: line {exc.lineno}: invalid JSON: {exc.msg}")
        for c in doc.get("curve", ()):
            pairs.append((float(c["sigma"]), float(c["value"])))
        for c in doc.get("counts", ()):
            pairs.append((float(c["sigma"]), float(c["count"])))
    else:
        for lineno, line in enumerate(text.splitlines(), start=1):
            if lineno == 1 or not line.strip():
                continue  # header
            fields = line.split(",")
            if len(fields) != 3:
                raise CliError(f"{path}: line {lineno}: expected 3 fields, got {len(fields)}")
            kind, sigma, value = fields
            if kind not in ("curve", "exact"):
                continue
            try:
                pairs.append((float(sigma), float(value)))
            except ValueError:
                raise CliError(f"{path}: line {lineno}: non-numeric field")
    if not pairs:
        raise CliError(f"{path}: no curve data found")
    pairs.sort()
    try:
        return SpectrumCurve(
            breakpoints=tuple(x for x, _ in pairs), levels=tuple(y for _, y in pairs)
        )
    except ValueError as exc:
        raise CliError(f"{path}: not a valid spectrum curve: {exc}")


def _run_compare(args) -> int:
    curve_a = _load_curve_file(args.file_a)
    curve_b = _load_curve_file(args.file_b)
    lo = max(curve_a.breakpoints[0], curve_b.breakpoints[0])
    hi = min(curve_a.breakpoints[-1], curve_b.breakpoints[-1])
    if lo > hi:
        raise CliError("curves have no overlapping threshold range")
    if (curve_a.breakpoints[0], curve_a.breakpoints[-1]) != (
        curve_b.breakpoints[0],
        curve_b.breakpoints[-1],
    ):
        sys.stderr.write(
            f"freqspec compare: threshold domains differ, comparing on [{lo}, {hi}]\n"
        )
    grid = sorted(
        {b for b in curve_a.breakpoints + curve_b.breakpoints if lo <= b <= hi}
    )
    report = compare_spectra(curve_a, curve_b, grid)
    median = median_log_error(report)
    doc = {
        "config": {"kind": "compare", "file_a": args.file_a, "file_b": args.file_b},
        "errors": [{"sigma": s, "log10_error": e} for s, e in report],
        "median_log10_error": median,
    }
    _emit_doc(doc, args)
    sys.stderr.write(
        f"freqspec compare: grid={len(grid)} median_log10_error={median:.4f}\n"
    )
    if args.plot:
        from .plot import render_spectrum_svg

        render_spectrum_svg(
            args.plot,
            estimate=(list(curve_a.breakpoints), list(curve_a.levels)),
            exact=(list(curve_b.breakpoints), list(curve_b.levels)),
        )
    return EXIT_OK


def _plot_run(doc: dict, path: str, kind: str):
    from .plot import render_spectrum_svg

    scatter = None
    estimate = None
    baseline = None
    exact = None
    if "points" in doc:
        scatter = (
            [p["sigma"] for p in doc["points"]],
            [p["estimate"] for p in doc["points"]],
        )
    if "curve" in doc:
        xy = (
            [c["sigma"] for c in doc["curve"]],
            [c["value"] for c in doc["curve"]],
        )
        if kind == "baseline":
            baseline = xy
        else:
            estimate = xy
    if "counts" in doc:
        exact = (
            [c["sigma"] for c in doc["counts"]],
            [c["count"] for c in doc["counts"]],
        )
    render_spectrum_svg(
        path, scatter=scatter, estimate=estimate, baseline=baseline, exact=exact
    )


def _run_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"freqspec: {exc}\n")
        return exc.code
    except KeyboardInterrupt:
        return EXIT_USER
    except BrokenPipeError:
        return EXIT_OK
    except Exception:
        sys.stderr.write("freqspec: internal error\n")
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
