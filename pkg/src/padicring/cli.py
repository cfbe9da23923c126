"""Command-line front end.

Exit codes: 0 success / divides, 1 property refuted / does not divide,
2 error or undecided. Output is line-oriented plain text.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from . import divrel, funcring, hensel, padic
from .errors import FormatError, InsufficientPrecision, PAdicError
from .funcring import CompactSpace
from .logic import Verdict
from .padic import DEFAULT_PRECISION, INF
from .rings import FunctionRing

SEED_ENV = "PADICRING_SEED"
DEFAULT_TRIALS = 10_000

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if not padic.is_prime(n):
        raise argparse.ArgumentTypeError(f"{n} is not prime")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV}={env!r} is not an integer")
    return 0


def _value(text: str, p: int, n: int) -> padic.PAdic:
    """A rational (``num/den``) or a p-adic literal."""
    if "[" in text:
        return padic.parse_literal(text, p)
    return padic.embed_rational(padic.parse_rational(text), p, n)


def _read_function(path: str, p: int | None) -> funcring.LCFunction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    try:
        f = funcring.parse_function(text)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if p is not None and f.prime != p:
        raise UsageError(f"{path} is over p={f.prime}, but --p {p} was given")
    return f


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_val(v) -> str:
    return "inf" if v == INF else str(v)


# -- commands ----------------------------------------------------------------


def cmd_vp(args) -> int:
    print(_fmt_val(padic.vp_rational(padic.parse_rational(args.value), args.p)))
    return EXIT_OK


def cmd_embed(args) -> int:
    print(padic.format_literal(padic.embed_rational(padic.parse_rational(args.value), args.p, args.N)))
    return EXIT_OK


def cmd_gamma(args) -> int:
    print(padic.format_literal(padic.kochen_gamma(_value(args.value, args.p, args.N))))
    return EXIT_OK


def cmd_norm(args) -> int:
    print(padic.format_rational(padic.norm_abs(_value(args.value, args.p, args.N))))
    return EXIT_OK


def cmd_hensel_root(args) -> int:
    spec = hensel.RootSpec(args.q, _value(args.value, args.p, args.N))
    print(padic.format_literal(hensel.qth_root_of_unit(spec)))
    return EXIT_OK


def cmd_divides(args) -> int:
    g = _read_function(args.g, args.p)
    f = _read_function(args.f, args.p)
    result = hensel.divides_by_root_criterion(g, f, args.q)
    if result.verdict is Verdict.YES:
        _emit(funcring.format_function(result.witness), args.out)
        return EXIT_OK
    if result.verdict is Verdict.NO:
        print(
            f"refuted point={result.point} v_g={_fmt_val(result.v_g)} "
            f"v_f={_fmt_val(result.v_f)} v_rhs={_fmt_val(result.v_rhs)}"
        )
        return EXIT_REFUTED
    print("undecided")
    return EXIT_ERROR


def _relation(args) -> divrel.DivRelation:
    if args.relation == "canonical-qp":
        return divrel.canonical_qp(args.p, args.N)
    if args.relation == "canonical-q":
        return divrel.canonical_q(args.p, args.N)
    return divrel.canonical_star(CompactSpace.parse(args.space, args.p), args.p, args.N)


def cmd_axioms_check(args) -> int:
    rel = _relation(args)
    report = divrel.full_report(rel, args.trials, _seed(args))
    print(report)
    return EXIT_OK if report.failures(divrel.AXIOMS) == 0 else EXIT_REFUTED


def cmd_seminorm_check(args) -> int:
    rel = _relation(args)
    report = divrel.check_seminorm_laws(rel, args.trials, _seed(args))
    print(report)
    return EXIT_OK if report.failures() == 0 else EXIT_REFUTED


def cmd_local_global(args) -> int:
    if args.file:
        f = _read_function(args.file, args.p)
        agree = funcring.local_global_check(f)
        print(f"agree={'yes' if agree else 'no'}")
        return EXIT_OK if agree else EXIT_REFUTED
    if args.p is None:
        raise UsageError("--p is required without an input file")
    space = CompactSpace.parse(args.space, args.p)
    ring = FunctionRing(space, args.p, args.N)
    rng = random.Random(_seed(args))
    agree = disagree = undecided = 0
    for _ in range(args.trials):
        try:
            if funcring.local_global_check(ring.sample(rng)):
                agree += 1
            else:
                disagree += 1
        except InsufficientPrecision:
            undecided += 1
    print(f"trials={args.trials} agree={agree} disagree={disagree} undecided={undecided}")
    return EXIT_OK if disagree == 0 else EXIT_REFUTED


def cmd_approx(args) -> int:
    coeffs = [padic.parse_rational(c) for c in args.coeffs]
    result = funcring.approx_by_level(coeffs, args.p, args.k, args.N)
    bound = f"error_bound={padic.format_rational(result.error_bound)}"
    if args.out:
        _emit(funcring.format_function(result.function), args.out)
        print(bound)
    else:
        sys.stdout.write(funcring.format_function(result.function))
        print(bound, file=sys.stderr)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    f = _read_function(args.file, args.p)
    for pt in funcring.spectrum_points(f.space):
        value = funcring.gelfand(f, pt)
        print(
            f"point={pt.index} value={padic.format_literal(value)} "
            f"abs={padic.format_rational(padic.norm_abs(value))}"
        )
    print(f"sup_norm={padic.format_rational(funcring.sup_norm(f))}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padicring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, p_required=True):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--p", type=_prime, required=p_required, help="the prime p")
        sp.add_argument("--N", type=_positive, default=DEFAULT_PRECISION, help="relative digits")
        sp.set_defaults(func=func)
        return sp

    def sampling(sp):
        sp.add_argument("--seed", type=int, default=None, help=f"RNG seed (env {SEED_ENV}, default 0)")
        sp.add_argument("--trials", type=_nonnegative, default=DEFAULT_TRIALS)

    command("vp", cmd_vp, "p-adic valuation of a rational").add_argument("value")
    command("embed", cmd_embed, "base-p expansion of a rational").add_argument("value")
    command("gamma", cmd_gamma, "Kochen operator").add_argument("value")
    command("norm", cmd_norm, "p-adic absolute value").add_argument("value")

    sp = command("hensel-root", cmd_hensel_root, "q-th root of a 1-unit")
    sp.add_argument("--q", type=_prime, required=True)
    sp.add_argument("value")

    sp = command("divides", cmd_divides, "decide g |* f by the q-th root criterion", p_required=False)
    sp.add_argument("--q", type=_prime, required=True)
    sp.add_argument("--out", help="write the witness h here instead of stdout")
    sp.add_argument("g")
    sp.add_argument("f")

    for name, func, text in (
        ("axioms-check", cmd_axioms_check, "sample-test axioms (1)-(8), totality, cancellation"),
        ("seminorm-check", cmd_seminorm_check, "sample-test the semi-norm laws"),
    ):
        sp = command(name, func, text)
        sampling(sp)
        sp.add_argument("--space", default="finite:2", help="space for canonical-star")
        sp.add_argument("relation", choices=("canonical-qp", "canonical-q", "canonical-star"))

    sp = command("local-global", cmd_local_global, "pointwise vs |* divisibility by p", p_required=False)
    sampling(sp)
    sp.add_argument("--space", default="finite:2")
    sp.add_argument("file", nargs="?")

    sp = command("approx", cmd_approx, "level-k approximation of an integral polynomial")
    sp.add_argument("--k", type=_nonnegative, required=True)
    sp.add_argument("--out")
    sp.add_argument("coeffs", nargs="+", help="coefficients, constant term first")

    sp = command("spectrum", cmd_spectrum, "Gelfand values at every spectrum point", p_required=False)
    sp.add_argument("file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InsufficientPrecision as exc:
        print(f"error: insufficient precision in {args.command}: {exc}", file=sys.stderr)
    except (PAdicError, UsageError, ValueError) as exc:
        print(f"error: {args.command}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
