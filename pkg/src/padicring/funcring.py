"""Locally constant Q_p-valued functions on desk-scale compact spaces.

Two kinds of space are modelled: a finite discrete set of ``n`` points, and
``Z_p`` cut into its ``p**k`` cosets ``a + p**k Z_p`` (representatives
``a = 0 .. p**k - 1``). In both cases a function is a tuple of values, one
per point or coset, and the maximal spectrum is the set of evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import padic
from .errors import FormatError, SpaceMismatch, UndecidedError, UnsupportedTarget
from .logic import Verdict, all_of
from .padic import DEFAULT_PRECISION, PAdic


@dataclass(frozen=True)
class CompactSpace:
    kind: str  # "finite" or "zp"
    param: int  # number of points, or the level k
    prime: int | None = None  # only for "zp"

    def __post_init__(self):
        if self.kind == "finite":
            if self.param < 1:
                raise ValueError("a finite space needs at least one point")
        elif self.kind == "zp":
            if self.param < 0:
                raise ValueError("level must be >= 0")
            if self.prime is None or not padic.is_prime(self.prime):
                raise ValueError("a Z_p level space needs a prime")
        else:
            raise ValueError(f"unknown space kind {self.kind!r}")

    @classmethod
    def finite(cls, n: int) -> "CompactSpace":
        return cls("finite", n)

    @classmethod
    def zp(cls, p: int, k: int) -> "CompactSpace":
        return cls("zp", k, p)

    @property
    def size(self) -> int:
        if self.kind == "finite":
            return self.param
        return self.prime**self.param

    @property
    def label(self) -> str:
        return f"finite:{self.param}" if self.kind == "finite" else f"zp:{self.param}"

    @classmethod
    def parse(cls, text: str, p: int) -> "CompactSpace":
        kind, _, num = text.partition(":")
        if kind not in ("finite", "zp") or not num.strip().isdigit():
            raise FormatError(f"bad space descriptor {text!r}", field="space")
        n = int(num)
        return cls.finite(n) if kind == "finite" else cls.zp(p, n)


@dataclass(frozen=True)
class LCFunction:
    space: CompactSpace
    prime: int
    values: tuple[PAdic, ...]

    def __post_init__(self):
        if len(self.values) != self.space.size:
            raise SpaceMismatch(
                f"{len(self.values)} values for a space of size {self.space.size}"
            )
        if self.space.kind == "zp" and self.space.prime != self.prime:
            raise SpaceMismatch("space prime and function prime differ")
        if any(v.prime != self.prime for v in self.values):
            raise SpaceMismatch("values over different primes")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i: int) -> PAdic:
        return self.values[i]

    def __add__(self, other: "LCFunction") -> "LCFunction":
        return add(self, other)

    def __sub__(self, other: "LCFunction") -> "LCFunction":
        return sub(self, other)

    def __mul__(self, other: "LCFunction") -> "LCFunction":
        return mul(self, other)

    def __neg__(self) -> "LCFunction":
        return LCFunction(self.space, self.prime, tuple(padic.neg(v) for v in self.values))

    def __pow__(self, n: int) -> "LCFunction":
        return LCFunction(self.space, self.prime, tuple(padic.power(v, n) for v in self.values))


def _same_space(f: LCFunction, g: LCFunction) -> None:
    if f.space != g.space or f.prime != g.prime:
        raise SpaceMismatch(
            f"functions live on {f.space.label}/p={f.prime} and {g.space.label}/p={g.prime}"
        )


def from_values(space: CompactSpace, p: int, values: Iterable, precision: int = DEFAULT_PRECISION) -> LCFunction:
    """Build a function from PAdic or rational values."""
    vals = tuple(
        v if isinstance(v, PAdic) else padic.embed_rational(v, p, precision) for v in values
    )
    return LCFunction(space, p, vals)


def constant(space: CompactSpace, p: int, c, precision: int = DEFAULT_PRECISION) -> LCFunction:
    value = c if isinstance(c, PAdic) else padic.embed_rational(c, p, precision)
    return LCFunction(space, p, (value,) * space.size)


def indicator(space: CompactSpace, p: int, index: int, precision: int = DEFAULT_PRECISION) -> LCFunction:
    return from_values(space, p, [1 if i == index else 0 for i in range(space.size)], precision)


def add(f: LCFunction, g: LCFunction) -> LCFunction:
    _same_space(f, g)
    return LCFunction(f.space, f.prime, tuple(map(padic.add, f.values, g.values)))


def sub(f: LCFunction, g: LCFunction) -> LCFunction:
    _same_space(f, g)
    return LCFunction(f.space, f.prime, tuple(map(padic.sub, f.values, g.values)))


def mul(f: LCFunction, g: LCFunction) -> LCFunction:
    _same_space(f, g)
    return LCFunction(f.space, f.prime, tuple(map(padic.mul, f.values, g.values)))


def refine(f: LCFunction, level: int) -> LCFunction:
    """Re-express a level-k function on Z_p at a finer level ``level >= k``.

    The coset ``r + p**level Z_p`` sits inside ``(r mod p**k) + p**k Z_p``.
    """
    if f.space.kind != "zp":
        raise SpaceMismatch("refine only applies to Z_p level spaces")
    if level < f.space.param:
        raise ValueError("cannot refine to a coarser level")
    p = f.prime
    m = f.space.size
    space = CompactSpace.zp(p, level)
    return LCFunction(space, p, tuple(f.values[r % m] for r in range(space.size)))


def sup_norm(f: LCFunction) -> Fraction:
    """``max_x |f(x)|_p``."""
    return max(padic.norm_abs(v) for v in f.values)


def divides_star(f: LCFunction, g: LCFunction) -> Verdict:
    """``f |* g``: ``v(f(x)) <= v(g(x))`` at every point."""
    _same_space(f, g)
    return all_of(map(padic.divides, f.values, g.values))


# -- spectrum and Gelfand map ----------------------------------------------


@dataclass(frozen=True)
class SpectrumPoint:
    index: int


def spectrum_points(space: CompactSpace) -> list[SpectrumPoint]:
    return [SpectrumPoint(i) for i in range(space.size)]


def gelfand(f: LCFunction, pt: SpectrumPoint) -> PAdic:
    """Value of the Gelfand transform of ``f`` at a spectrum point: evaluation."""
    if not 0 <= pt.index < f.space.size:
        raise IndexError(f"spectrum point {pt.index} out of range")
    return f.values[pt.index]


def local_global_check(f: LCFunction) -> bool:
    """Compare "p divides f at every spectrum point" with ``p |* f``.

    Returns whether the two decisions agree. Raises UndecidedError if
    either side is undecided at the stored precision.
    """
    p = f.prime
    p_const = padic.embed_rational(p, p, 1)
    pointwise = all_of(padic.divides(p_const, gelfand(f, pt)) for pt in spectrum_points(f.space))
    star = divides_star(constant(f.space, p, p_const), f)
    if not (pointwise.decided and star.decided):
        raise UndecidedError("local-global comparison undecided")
    return pointwise is star


# -- Stone-Weierstrass approximation ----------------------------------------


def eval_poly(coeffs: Sequence[Fraction], x) -> Fraction:
    """Horner evaluation, constant coefficient first."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class Approximation:
    function: LCFunction
    error_bound: Fraction


def approx_by_level(coeffs: Sequence, p: int, k: int, precision: int = DEFAULT_PRECISION) -> Approximation:
    """Approximate ``x -> sum c_i x**i`` on Z_p by its level-k step function.

    For coefficients in Z_(p), ``P(x) - P(a)`` is divisible by ``x - a``,
    so on the coset ``a + p**k Z_p`` the error is at most ``p**-k``.
    """
    coeffs = [Fraction(c) for c in coeffs]
    for i, c in enumerate(coeffs):
        if padic.vp_rational(c, p) < 0:
            raise UnsupportedTarget(f"coefficient {i} = {c} is not p-integral")
    space = CompactSpace.zp(p, k)
    values = [eval_poly(coeffs, a) for a in range(space.size)]
    nonconstant = any(c != 0 for c in coeffs[1:])
    bound = Fraction(1, p**k) if nonconstant else Fraction(0)
    return Approximation(from_values(space, p, values, precision), bound)


# -- text format -------------------------------------------------------------


def format_function(f: LCFunction) -> str:
    lines = [f"p={f.prime} space={f.space.label}"]
    lines.extend(padic.format_literal(v) for v in f.values)
    return "\n".join(lines) + "\n"


def parse_function(text: str) -> LCFunction:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty function file", 1, "header")
    header = lines[0].split()
    fields = dict(item.partition("=")[::2] for item in header)
    if set(fields) != {"p", "space"} or len(header) != 2:
        raise FormatError("header must be 'p=<p> space=<finite:n|zp:k>'", 1, "header")
    if not fields["p"].isdigit() or not padic.is_prime(int(fields["p"])):
        raise FormatError(f"p must be a prime, got {fields['p']!r}", 1, "p")
    p = int(fields["p"])
    try:
        space = CompactSpace.parse(fields["space"], p)
    except ValueError as exc:
        raise FormatError(str(exc), 1, "space") from exc
    body = lines[1:]
    if len(body) != space.size:
        raise FormatError(
            f"expected {space.size} value lines, found {len(body)}", len(lines), "values"
        )
    values = tuple(padic.parse_literal(line, p, line=i + 2) for i, line in enumerate(body))
    return LCFunction(space, p, values)
