"""Batch command line front end.

One job per invocation; files use the JSON formats of ``fileio``.  Exit
status is a pure function of the exact residuals: 0 means every requested
check passed, 1 means a residual was nonzero, higher codes are errors
(2 parse/format, 3 space or order mismatch, 4 extraction, 5 usage).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import fileio
from .classical import check_classical
from .cocycle import extract, verify_lemma1
from .diffeo import verify_quantum
from .errors import (
    ExtractionError,
    FormatError,
    LeadingTermError,
    NotClassicalError,
    OrderMismatchError,
    QuantizationError,
    RMatrixError,
    SpaceMismatchError,
    SubstitutionError,
)
from .families import algebra_R, algebra_r, line_R, line_r, permutation_R, permutation_r
from .quantize import quantize

EXIT_OK = 0
EXIT_RESIDUAL = 1
EXIT_FORMAT = 2
EXIT_MISMATCH = 3
EXIT_EXTRACTION = 4
EXIT_USAGE = 5


@dataclass
class JobConfig:
    """One batch job: a verb plus its file arguments."""

    command: str
    order: int = 4
    input: Path | None = None
    output: Path | None = None
    report: bool = False
    family: str | None = None
    n: int = 1
    c: str = "1"
    algebra: Path | None = None
    field: Path | None = None
    out_r: Path | None = None
    out_R: Path | None = None
    compare_a: Path | None = None
    compare_b: Path | None = None

    def __post_init__(self):
        if self.command in {"quantize"} and self.order < 1:
            raise ValueError("quantize needs truncation order at least 1")


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _first_offender_vf(field) -> str:
    for coord, comp in zip(field.space.coords, field.components):
        if not comp.is_zero():
            exps, coeff = comp.leading_term()
            mono = "*".join(f"{v}^{e}" for v, e in zip(comp.vars, exps) if e) or "1"
            return f"component {coord}: {coeff} * {mono}"
    return "none"


def _first_offender_series(entries) -> str:
    for coord, series in entries.items():
        for m, poly in enumerate(series.coeffs):
            if not poly.is_zero():
                exps, coeff = poly.leading_term()
                mono = "*".join(f"{v}^{e}" for v, e in zip(poly.vars, exps) if e) or "1"
                return f"component {coord} at h^{m}: {coeff} * {mono}"
    return "none"


def _run_verify_classical(cfg: JobConfig) -> int:
    r = fileio.load_vector_field(cfg.input)
    residual = check_classical(r)
    _emit(fileio.classical_report(residual))
    if residual.passes:
        return EXIT_OK
    if not residual.cybe_passes:
        print(f"classical Yang-Baxter residual is nonzero: {_first_offender_vf(residual.cybe)}", file=sys.stderr)
    if not residual.unitarity_passes:
        print(f"unitarity residual is nonzero: {_first_offender_vf(residual.unitarity)}", file=sys.stderr)
    return EXIT_RESIDUAL


def _run_verify_quantum(cfg: JobConfig) -> int:
    R = fileio.load_diffeo(cfg.input)
    residual = verify_quantum(R)
    _emit(fileio.quantum_report(residual))
    if residual.passes:
        return EXIT_OK
    if residual.qybe is not None and not residual.qybe_passes:
        print(f"quantum Yang-Baxter residual is nonzero: {_first_offender_series(residual.qybe)}", file=sys.stderr)
    if residual.unitarity is not None and not residual.unitarity_passes:
        print(f"quantum unitarity residual is nonzero: {_first_offender_series(residual.unitarity)}", file=sys.stderr)
    return EXIT_RESIDUAL


def _run_classical_limit(cfg: JobConfig) -> int:
    R = fileio.load_diffeo(cfg.input)
    r = R.classical_limit()
    if cfg.output:
        fileio.save_vector_field(cfg.output, r)
    else:
        _emit(fileio.vf_to_doc(r))
    return EXIT_OK


def _run_quantize(cfg: JobConfig) -> int:
    r = fileio.load_vector_field(cfg.input)
    R = quantize(r, cfg.order)
    if cfg.output:
        fileio.save_diffeo(cfg.output, R)
    doc = {
        "order": cfg.order,
        "residuals": fileio.quantum_report(verify_quantum(R)),
        "classical_limit_matches": R.classical_limit() == r,
    }
    if not cfg.output:
        doc["R"] = fileio.fd_to_doc(R)
    if cfg.report:
        data = extract(r)
        ok, residuals = verify_lemma1(data)
        doc["lie_data"] = fileio.lie_report(data, ok, residuals)
    _emit(doc)
    return EXIT_OK


def _run_lie_report(cfg: JobConfig) -> int:
    r = fileio.load_vector_field(cfg.input)
    data = extract(r)
    ok, residuals = verify_lemma1(data)
    _emit(fileio.lie_report(data, ok, residuals))
    return EXIT_OK if ok else EXIT_RESIDUAL


def _run_example(cfg: JobConfig) -> int:
    from fractions import Fraction

    if cfg.family == "line":
        r = line_r(cfg.n, Fraction(cfg.c))
        R = line_R(cfg.n, cfg.order) if Fraction(cfg.c) == 1 else None
    elif cfg.family == "algebra":
        spec = fileio.load_algebra(cfg.algebra)
        r = algebra_r(spec)
        R = algebra_R(spec, cfg.order)
    elif cfg.family == "permutation":
        v = fileio.load_vector_field(cfg.field)
        r = permutation_r(v)
        R = permutation_R(v, cfg.order)
    else:
        print(f"unknown family {cfg.family!r}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out_r:
        fileio.save_vector_field(cfg.out_r, r)
    if cfg.out_R:
        if R is None:
            print("no closed form available for a scaled line family", file=sys.stderr)
            return EXIT_USAGE
        fileio.save_diffeo(cfg.out_R, R)
    if not cfg.out_r and not cfg.out_R:
        doc = {"r": fileio.vf_to_doc(r)}
        if R is not None:
            doc["R"] = fileio.fd_to_doc(R)
        _emit(doc)
    return EXIT_OK


def _run_compare(cfg: JobConfig) -> int:
    a = fileio.load_diffeo(cfg.compare_a)
    b = fileio.load_diffeo(cfg.compare_b)
    if a.space != b.space:
        raise SpaceMismatchError("compared maps live on different spaces")
    order = min(a.order, b.order)
    equal = a.truncate(order) == b.truncate(order)
    _emit({"equal": equal, "compared_order": order})
    return EXIT_OK if equal else EXIT_RESIDUAL


_RUNNERS = {
    "verify-classical": _run_verify_classical,
    "verify-quantum": _run_verify_quantum,
    "classical-limit": _run_classical_limit,
    "quantize": _run_quantize,
    "lie-report": _run_lie_report,
    "example": _run_example,
    "compare": _run_compare,
}


def run(cfg: JobConfig) -> int:
    """Execute one job; returns the process exit status."""
    runner = _RUNNERS.get(cfg.command)
    if runner is None:
        print(f"unknown command {cfg.command!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return runner(cfg)
    except (FormatError, LeadingTermError, SubstitutionError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (SpaceMismatchError, OrderMismatchError) as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ExtractionError, NotClassicalError, QuantizationError) as exc:
        print(f"extraction error: {exc}", file=sys.stderr)
        return EXIT_EXTRACTION
    except RMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmatrix",
        description="Verify and quantize geometric classical r-matrices (exact arithmetic).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-classical", help="check the classical Yang-Baxter and unitarity conditions")
    p.add_argument("--in", dest="input", required=True, type=Path)

    p = sub.add_parser("verify-quantum", help="check the quantum Yang-Baxter and unitarity conditions")
    p.add_argument("--in", dest="input", required=True, type=Path)

    p = sub.add_parser("classical-limit", help="extract the h^1 part of a quantum R-matrix")
    p.add_argument("--in", dest="input", required=True, type=Path)
    p.add_argument("--out", dest="output", type=Path)

    p = sub.add_parser("quantize", help="quantize a classical r-matrix")
    p.add_argument("--in", dest="input", required=True, type=Path)
    p.add_argument("--out", dest="output", type=Path)
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--report", action="store_true", help="also emit the Lie-cocycle report")

    p = sub.add_parser("lie-report", help="emit the extracted Lie-algebra and cocycle data")
    p.add_argument("--in", dest="input", required=True, type=Path)

    p = sub.add_parser("example", help="emit a family r-matrix and its closed-form quantization")
    p.add_argument("--family", required=True, choices=["permutation", "algebra", "line"])
    p.add_argument("--n", type=int, default=1, help="index of the line family")
    p.add_argument("--c", default="1", help="rational prefactor for the line family")
    p.add_argument("--algebra", type=Path, help="algebra spec file (family: algebra)")
    p.add_argument("--v", dest="field", type=Path, help="vector field file (family: permutation)")
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--out-r", dest="out_r", type=Path)
    p.add_argument("--out-R", dest="out_R", type=Path)

    p = sub.add_parser("compare", help="exact comparison of two R-matrix files up to common order")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    return parser


def config_from_args(args: argparse.Namespace) -> JobConfig:
    kwargs = {}
    for name in ("order", "input", "output", "report", "family", "n", "c", "algebra", "field", "out_r", "out_R"):
        if hasattr(args, name) and getattr(args, name) is not None:
            kwargs[name] = getattr(args, name)
    if args.command == "compare":
        kwargs["compare_a"] = args.a
        kwargs["compare_b"] = args.b
    return JobConfig(command=args.command, **kwargs)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
