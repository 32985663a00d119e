# PYTHON_ARGCOMPLETE_OK
import argparse
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NoReturn, Optional, Sequence

from . import bezout, sweep
from .errors import BetaDomainError, ConfigError, Failure, NonConvergenceError
from .formatters import FORMATS, Field, Formatter, TableData, create_formatter
from .identities import second_proof_coefficients
from .numeric_core import format_rational, parse_rational
from .polynomial import evaluate, render
from .special_fn import incomplete_beta_estimate, incomplete_beta_exact

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3

TABLE_KINDS = ("P", "Q", "mu", "a_coeffs", "d_coeffs")
SOLVE_METHODS = tuple(method.value for method in bezout.Method)


def fail(msg: str, status: int = EXIT_FAILED) -> NoReturn:
    print(msg, file=sys.stderr)
    sys.exit(status)


# ==== CONFIG ====


@dataclass(frozen=True)
class SolveConfig:
    n: int
    m: int
    method: bezout.Method
    output_format: str


@dataclass(frozen=True)
class TableConfig:
    kind: str
    n: int
    m: int
    output_format: str


@dataclass(frozen=True)
class BetaConfig:
    x: Fraction
    y: Fraction
    a: Fraction
    output_format: str


def parse_index(text: str, flag: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ConfigError(
            f"{flag}: expected a nonnegative integer, got {text!r}"
        ) from None
    if value < 0:
        raise ConfigError(f"{flag}: expected a nonnegative integer, got {value}")
    return value


def parse_range(text: Optional[str], flag: str) -> Optional[sweep.Range]:
    """Accepts "lo..hi" (inclusive) or a single index."""
    if text is None:
        return None
    lo_text, sep, hi_text = text.partition("..")
    lo = parse_index(lo_text, flag)
    hi = parse_index(hi_text, flag) if sep else lo
    if lo > hi:
        raise ConfigError(f"{flag}: empty range {text}")
    return lo, hi


def _optional_rational(text: Optional[str]) -> Optional[Fraction]:
    return None if text is None else parse_rational(text)


def create_sweep_config(
    args: argparse.Namespace, progress_allowed: bool
) -> sweep.SweepConfig:
    if args.jobs < 1:
        raise ConfigError(f"--jobs must be at least 1, got {args.jobs}")
    if args.samples is not None and args.samples < 1:
        raise ConfigError(f"--samples must be at least 1, got {args.samples}")
    a = _optional_rational(args.a)
    if a is not None and not 0 <= a <= 1:
        raise ConfigError(f"--a must lie in [0, 1], got {format_rational(a)}")
    alpha = _optional_rational(args.alpha)
    beta = _optional_rational(args.beta)
    if args.identity in ("beta", "remark62-beta") and any(
        v is not None and v <= 0 for v in (alpha, beta)
    ):
        raise ConfigError(
            "--alpha and --beta must be positive for the beta identities"
        )
    return sweep.SweepConfig(
        identity=args.identity,
        n_range=parse_range(args.n, "--n"),
        m_range=parse_range(args.m, "--m"),
        k_range=parse_range(args.k, "--k"),
        p_range=parse_range(args.p, "--p"),
        alpha=alpha,
        beta=beta,
        a=a,
        samples=args.samples,
        jobs=args.jobs,
        seed=args.seed,
        inject_fault=args.inject_fault,
        progress=progress_allowed and not args.no_progress and args.format == "human",
    )


def create_solve_config(args: argparse.Namespace) -> SolveConfig:
    return SolveConfig(
        n=parse_index(args.n, "--n"),
        m=parse_index(args.m, "--m"),
        method=bezout.Method(args.method),
        output_format=args.format,
    )


def create_table_config(args: argparse.Namespace) -> TableConfig:
    return TableConfig(
        kind=args.kind,
        n=parse_index(args.n, "--n"),
        m=parse_index(args.m, "--m"),
        output_format=args.format,
    )


def create_beta_config(args: argparse.Namespace) -> BetaConfig:
    x, y, a = parse_rational(args.x), parse_rational(args.y), parse_rational(args.a)
    if x <= 0 or y <= 0:
        raise ConfigError("--x and --y must be positive")
    if not 0 <= a <= 1:
        raise ConfigError(f"--a must lie in [0, 1], got {format_rational(a)}")
    return BetaConfig(x, y, a, args.format)


# ==== COMMANDS ====


def cmd_solve(config: SolveConfig, formatter: Formatter) -> int:
    if config.method is bezout.Method.RECURRENCE:
        sol = bezout.recurrence_solution(config.n, config.m)
    elif config.method is bezout.Method.EUCLID_ORACLE:
        sol = bezout.euclid_solution(config.n, config.m)
    else:
        sol = bezout.closed_form(config.n, config.m)
    residual = bezout.bezout_residual(sol)
    fields: List[Field] = [
        ("P", sol.P),
        ("Q", sol.Q),
        ("mu", bezout.mu(config.n, config.m)),
        ("residual", render(residual)),
    ]
    print(formatter.solution(fields))
    return EXIT_OK if residual.is_zero() else EXIT_FAILED


def table_data(config: TableConfig) -> TableData:
    n, m, kind = config.n, config.m, config.kind
    values: Sequence[Fraction]
    if kind == "P":
        values = bezout.closed_form(n, m).P.coeffs
    elif kind == "Q":
        values = bezout.closed_form(n, m).Q.coeffs
    elif kind == "a_coeffs":
        values = second_proof_coefficients(n, m).a
    elif kind == "d_coeffs":
        values = second_proof_coefficients(n, m).d
    else:
        return TableData(
            f"mu for n={n}, m={m}",
            {"kind": kind, "n": str(n), "m": str(m)},
            ("mu",),
            [(str(bezout.mu(n, m)),)],
        )
    return TableData(
        f"{kind} for n={n}, m={m}",
        {"kind": kind, "n": str(n), "m": str(m)},
        ("k", kind),
        [(str(k), format_rational(v)) for k, v in enumerate(values)],
    )


def cmd_table(config: TableConfig, formatter: Formatter) -> int:
    print(formatter.table(table_data(config)))
    return EXIT_OK


def cmd_beta(config: BetaConfig, formatter: Formatter) -> int:
    fields: List[Field] = [("x", config.x), ("y", config.y), ("a", config.a)]
    if config.x.denominator == 1 and config.y.denominator == 1:
        poly = incomplete_beta_exact(int(config.x), int(config.y))
        value = evaluate(poly, config.a)
        fields += [
            ("mode", "exact"),
            ("polynomial", render(poly, "a")),
            ("value", value),
            ("approx", float(value)),
        ]
    else:
        estimate, error = incomplete_beta_estimate(
            float(config.x), float(config.y), float(config.a)
        )
        fields += [
            ("mode", "numeric"),
            ("value", estimate),
            ("error_estimate", error),
        ]
    print(formatter.solution(fields))
    return EXIT_OK


def cmd_check(config: sweep.SweepConfig, formatter: Formatter) -> int:
    logger.debug("sweep config: %s", config)
    reports = sweep.run_sweep(config)
    for report in reports:
        print(formatter.report(report))
    passed = sweep.count_passed(reports)
    print(
        formatter.summary(passed, len(reports)),
        file=sys.stderr if formatter.summary_to_stderr else sys.stdout,
    )
    if any(r.error == NonConvergenceError.__name__ for r in reports):
        return EXIT_NONCONVERGENCE
    return EXIT_OK if passed == len(reports) else EXIT_FAILED


# ==== COMMAND-LINE ====


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=FORMATS,
        default="human",
        help="Output format. (default: %(default)s)",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Log debug diagnostics to stderr.",
    )

    parser = argparse.ArgumentParser(
        description="Exact verification of the two-term polynomial partition of unity "
        "x^(m+1) P + (1-x)^(n+1) Q = 1 and its companion identities."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser(
        "solve", parents=[common], help="Print P, Q and mu."
    )
    solve.add_argument("--n", required=True, metavar="N")
    solve.add_argument("--m", required=True, metavar="M")
    solve.add_argument(
        "--method",
        choices=SOLVE_METHODS,
        default=bezout.Method.CLOSED_FORM.value,
        help="Construction to use. (default: %(default)s)",
    )

    check = subparsers.add_parser(
        "check", parents=[common], help="Verify an identity over a parameter grid."
    )
    check.add_argument("--identity", required=True, choices=sweep.IDENTITY_NAMES)
    for flag in ("--n", "--m", "--k", "--p"):
        check.add_argument(
            flag,
            metavar="LO..HI",
            help="Inclusive index range, or a single index. "
            "Defaults to the identity's built-in grid.",
        )
    check.add_argument("--alpha", help="Rational alpha, e.g. 3/2 or 0.7.")
    check.add_argument("--beta", help="Rational beta.")
    check.add_argument("--a", help="Upper limit of the incomplete beta integral.")
    check.add_argument(
        "--samples",
        type=int,
        help="Random samples per grid point for identities with rational parameters.",
    )
    check.add_argument(
        "--jobs", type=int, default=1, help="Worker processes. (default: %(default)s)"
    )
    check.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Seed for sampled parameters. (default: %(default)s)",
    )
    check.add_argument(
        "--inject-fault",
        action="store_true",
        help="Corrupt one coefficient in every check; each check should then fail.",
    )
    check.add_argument(
        "--no-progress", action="store_true", help="Hide the progress bar."
    )

    table = subparsers.add_parser(
        "table", parents=[common], help="Print coefficient tables."
    )
    table.add_argument("--kind", required=True, choices=TABLE_KINDS)
    table.add_argument("--n", required=True, metavar="N")
    table.add_argument("--m", required=True, metavar="M")

    beta = subparsers.add_parser(
        "beta",
        parents=[common],
        help="Evaluate the incomplete beta function B_a(x, y).",
    )
    beta.add_argument("--x", required=True)
    beta.add_argument("--y", required=True)
    beta.add_argument("--a", required=True)

    try:
        import argcomplete
    except ModuleNotFoundError:
        pass
    else:
        argcomplete.autocomplete(parser)
    return parser


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    formatter = create_formatter(args.format, color=sys.stdout.isatty())

    try:
        if args.command == "solve":
            return cmd_solve(create_solve_config(args), formatter)
        if args.command == "table":
            return cmd_table(create_table_config(args), formatter)
        if args.command == "beta":
            return cmd_beta(create_beta_config(args), formatter)
        return cmd_check(create_sweep_config(args, sys.stderr.isatty()), formatter)
    except (ConfigError, BetaDomainError) as e:
        fail(str(e), EXIT_CONFIG)
    except NonConvergenceError as e:
        fail(str(e), EXIT_NONCONVERGENCE)
    except Failure as e:
        fail(str(e), EXIT_FAILED)


def main() -> None:
    sys.exit(run())
