"""Command-line front end.

Exit codes: 0 when every evaluated inequality holds, 1 when one is violated
(the report carries the witness), 2 for unreadable input or bad usage.
Reports are JSON with floats rounded to 15 significant digits; matrices
printed by ``portrait`` use the lossless matrix format.
"""
import argparse
import json
import sys

import numpy as np

from . import config
from .entropy import (
    InequalityReport,
    chain_gaps,
    chain_report,
    monotonicity_gap,
    portrait_nonneg_gap,
    relative_entropy,
    von_neumann,
)
from .errors import ValidationError
from .hermitian import as_hermitian
from .portraits import BlockPartition, PortraitKind, apply_portrait
from .scalar import entropy_exp_bound, gibbs_gap, pairwise_exp_sum, tomogram_uncertainty
from .search import TARGET_NAMES, fuzz, minimize_gap
from .serialize import MatrixFormatError, dumps_matrix, dumps_report, loads_matrix
from .states import DEFAULT_SEED, validate_density, validate_probability

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
KINDS = ("monotonicity", "nonneg", "klein", "pairwise", "gibbs", "tomogram", "expbound")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _keyed_int(key):
    def parse(text):
        value = text.split("=", 1)[1] if text.startswith(key + "=") else text
        try:
            n = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {key}=<int>, got {text!r}") from None
        if n < 1:
            raise argparse.ArgumentTypeError(f"{key} must be positive, got {n}")
        return n

    return parse


def _seed(text):
    n = int(text, 0)
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text}")
    return n


def build_parser():
    parser = _Parser(prog="qportrait", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, *flags):
        p = sub.add_parser(name, help=help_text)
        if "rho" in flags:
            p.add_argument("--rho", help="JSON matrix (or JSON array for probability-vector kinds)")
        if "sigma" in flags:
            p.add_argument("--sigma", help="second JSON matrix, or B / b for the scalar kinds")
        if "partition" in flags:
            group = p.add_mutually_exclusive_group()
            group.add_argument("--fold", type=_keyed_int("m"), metavar="m=<int>", help="fold portrait with lower block size m")
            group.add_argument(
                "--traceblocks", type=_keyed_int("n"), metavar="n=<int>", help="trace-block portrait with upper block size n"
            )
        if "search" in flags:
            p.add_argument("--kind", "--target", dest="kind", default="monotonicity", choices=TARGET_NAMES)
            p.add_argument("--dim", type=int, default=3)
            p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="unsigned 64-bit seed (default 0xC0FFEE)")
            p.add_argument("--csv", metavar="path", help="also write the gap histogram as CSV")
        p.add_argument("--json", action="store_true", help="JSON output (the default and only format)")
        return p

    add("validate", "check that --rho is a density matrix", "rho")
    add("portrait", "apply a portrait map to --rho and print the matrix", "rho", "partition")
    add("entropy", "von Neumann entropy of --rho, or S(rho||sigma) with --sigma", "rho", "sigma")
    ineq = add("inequality", "evaluate one inequality", "rho", "sigma", "partition")
    ineq.add_argument("--kind", "--target", dest="kind", required=True, choices=KINDS)
    add("chain", "fold chain of relative entropies down to a qubit", "rho", "sigma")
    fz = add("fuzz", "evaluate a target on seeded random inputs", "partition", "search")
    fz.add_argument("--samples", type=int, default=1000)
    mn = add("minimize", "Nelder-Mead search for the smallest gap", "partition", "search")
    mn.add_argument("--restarts", type=int, default=10)
    mn.add_argument("--iters", type=int, default=500)
    return parser


# -- input -------------------------------------------------------------------

def _read_text(path, flag):
    if path is None:
        raise UsageError(f"--{flag} is required")
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read --{flag} {path}: {exc.strerror}") from None


def _load_matrix(path, flag):
    try:
        return loads_matrix(_read_text(path, flag))
    except MatrixFormatError as exc:
        raise UsageError(f"--{flag} {path}: {exc}") from None


def _load_state(path, flag):
    try:
        return validate_density(_load_matrix(path, flag))
    except ValidationError as exc:
        raise UsageError(f"--{flag} {path}: {exc}") from None


def _load_reals(path, flag):
    """A JSON array of reals, or a Hermitian matrix whose eigenvalues are used."""
    text = _read_text(path, flag)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{flag} {path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(obj, list) and obj and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj):
        return np.array(obj, dtype=np.float64)
    try:
        from .hermitian import eigvalsh
        from .serialize import matrix_from_obj

        return eigvalsh(matrix_from_obj(obj))
    except ValidationError as exc:
        raise UsageError(f"--{flag} {path}: {exc}") from None


def _pair(args):
    rho, sigma = _load_state(args.rho, "rho"), _load_state(args.sigma, "sigma")
    if rho.dim != sigma.dim:
        raise UsageError(f"dimension mismatch: rho is {rho.dim}x{rho.dim}, sigma is {sigma.dim}x{sigma.dim}")
    return rho, sigma


def _portrait_choice(args, dim=None):
    if getattr(args, "traceblocks", None) is not None:
        kind, n = PortraitKind.TRACE_BLOCKS, args.traceblocks
        if dim is None:
            return kind, ("n_top", n)
        p = BlockPartition(n, dim - n)
    else:
        kind, m = PortraitKind.FOLD, args.fold if getattr(args, "fold", None) is not None else 1
        if dim is None:
            return kind, ("m", m)
        p = BlockPartition(dim - m, m)
    try:
        return kind, p.checked(dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _search_partition(args):
    kind, (key, value) = _portrait_choice(args)
    if key == "m":
        return kind, value
    if value >= args.dim:
        raise UsageError(f"traceblocks n={value} leaves no lower block at dim {args.dim}")
    return kind, args.dim - value


# -- commands ----------------------------------------------------------------

def _emit(obj):
    print(dumps_report(obj))


def _verdict(*reports):
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATION


def cmd_validate(args):
    m = _load_matrix(args.rho, "rho")
    try:
        rho = validate_density(m)
    except ValidationError as exc:
        _emit({"valid": False, "error": type(exc).__name__, "message": str(exc)})
        return EXIT_VIOLATION
    _emit({"valid": True, "dim": rho.dim, "trace": float(rho.matrix.real.trace()), "eigenvalues": rho.eigenvalues})
    return EXIT_OK


def cmd_portrait(args):
    rho = _load_state(args.rho, "rho")
    kind, p = _portrait_choice(args, rho.dim)
    print(dumps_matrix(apply_portrait(rho, kind, p).matrix))
    return EXIT_OK


def cmd_entropy(args):
    if args.sigma is None:
        rho = _load_state(args.rho, "rho")
        _emit({"quantity": "von_neumann", "value": von_neumann(rho)})
    else:
        _emit({"quantity": "relative_entropy", "value": relative_entropy(*_pair(args))})
    return EXIT_OK


def _scalar_report(args):
    kind = args.kind
    if kind == "pairwise":
        return pairwise_exp_sum(_load_reals(args.sigma, "sigma"))
    if kind == "tomogram":
        return tomogram_uncertainty(_probability(args.rho))
    if kind == "gibbs":
        b, w = _load_reals(args.sigma, "sigma"), _probability(args.rho)
        if b.size != w.size:
            raise UsageError(f"dimension mismatch: {b.size} eigenvalues, {w.size} weights")
        return gibbs_gap(b, w)
    rho = _load_state(args.rho, "rho")
    b = _load_matrix(args.sigma, "sigma")
    if b.shape[0] != rho.dim:
        raise UsageError(f"dimension mismatch: rho is {rho.dim}x{rho.dim}, B is {b.shape[0]}x{b.shape[0]}")
    try:
        return entropy_exp_bound(rho, as_hermitian(b))
    except ValidationError as exc:
        raise UsageError(f"--sigma {args.sigma}: {exc}") from None


def _probability(path):
    w = _load_reals(path, "rho")
    try:
        return validate_probability(w)
    except ValidationError as exc:
        raise UsageError(f"--rho {path}: {exc}") from None


def cmd_inequality(args):
    if args.kind == "monotonicity":
        rho, sigma = _pair(args)
        kind, p = _portrait_choice(args, rho.dim)
        report = monotonicity_gap(rho, sigma, kind, p)
    elif args.kind == "nonneg":
        rho = _load_state(args.rho, "rho")
        kind, p = _portrait_choice(args, rho.dim)
        report = portrait_nonneg_gap(rho, kind, p)
    elif args.kind == "klein":
        report = InequalityReport.build("klein", relative_entropy(*_pair(args)), 0.0)
    else:
        report = _scalar_report(args)
    _emit(report.to_dict())
    return _verdict(report)


def cmd_chain(args):
    rho, sigma = _pair(args)
    if rho.dim < 2:
        raise UsageError("chain needs dimension >= 2")
    report = chain_report(rho, sigma)
    _emit({"values": chain_gaps(rho, sigma), "report": report.to_dict()})
    return _verdict(report)


def _finish_search(args, report):
    if args.csv:
        try:
            report.write_csv(args.csv)
        except OSError as exc:
            raise UsageError(f"cannot write --csv {args.csv}: {exc.strerror}") from None
    _emit(report.to_dict())
    return EXIT_OK if report.violations == 0 else EXIT_VIOLATION


def _search_args(args):
    kind, m = _search_partition(args)
    return dict(target=args.kind, dim=args.dim, seed=args.seed, kind=kind, m=m)


def cmd_fuzz(args):
    try:
        report = fuzz(samples=args.samples, **_search_args(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _finish_search(args, report)


def cmd_minimize(args):
    try:
        report = minimize_gap(restarts=args.restarts, iters=args.iters, **_search_args(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _finish_search(args, report)


COMMANDS = {
    "validate": cmd_validate,
    "portrait": cmd_portrait,
    "entropy": cmd_entropy,
    "inequality": cmd_inequality,
    "chain": cmd_chain,
    "fuzz": cmd_fuzz,
    "minimize": cmd_minimize,
}


def run(argv=None):
    """Parse ``argv``, run one command and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        config.reload()
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, OverflowError) as exc:
        # ValueError covers ValidationError and argument errors from the library
        print(f"qportrait: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
