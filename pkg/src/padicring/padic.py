"""Bounded-precision arithmetic in Q_p.

An element is stored in relative-precision normal form: a valuation ``v``
and a unit ``u`` known modulo ``p**precision``, so that the element is
``p**v * u`` up to an error of valuation ``>= v + precision``.

Two kinds of zero are kept apart:

* the exact zero (``valuation == INF``), which is provably 0;
* a precision-limited zero (``precision == 0``), which only says that the
  valuation is at least ``valuation``.

Rationals are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, FormatError, InsufficientPrecision
from .logic import Verdict

INF = math.inf
DEFAULT_PRECISION = 64

Rational = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _split(n: int, p: int) -> tuple[int, int]:
    """Return ``(v, m)`` with ``n == p**v * m`` and ``p`` not dividing ``m``."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def vp_rational(r: Rational, p: int) -> int | float:
    """p-adic valuation of a rational; ``INF`` for zero."""
    r = Fraction(r)
    if r == 0:
        return INF
    return _int_valuation(r.numerator, p) - _int_valuation(r.denominator, p)


class PAdic:
    """An element of Q_p known to a fixed number of relative digits."""

    __slots__ = ("prime", "valuation", "unit", "precision")

    def __init__(self, prime: int, valuation: int | float, unit: int, precision: int):
        if valuation == INF:
            unit, precision = 0, 0
        elif precision < 0:
            raise ValueError("precision must be non-negative")
        elif precision == 0:
            unit = 0
        else:
            unit %= prime**precision
            if unit % prime == 0:
                raise ValueError("unit part must not be divisible by p")
        self.prime = prime
        self.valuation = valuation
        self.unit = unit
        self.precision = precision

    @classmethod
    def _raw(cls, prime, valuation, unit, precision) -> "PAdic":
        obj = object.__new__(cls)
        obj.prime = prime
        obj.valuation = valuation
        obj.unit = unit
        obj.precision = precision
        return obj

    @classmethod
    def zero(cls, prime: int) -> "PAdic":
        return cls._raw(prime, INF, 0, 0)

    @classmethod
    def approx_zero(cls, prime: int, lower: int) -> "PAdic":
        """Zero to the available digits: only ``valuation >= lower`` is known."""
        return cls._raw(prime, lower, 0, 0)

    @classmethod
    def from_digits(cls, prime: int, valuation: int, digits) -> "PAdic":
        unit = 0
        for d in reversed(digits):
            unit = unit * prime + d
        return cls(prime, valuation, unit, len(digits))

    # -- state -------------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation == INF

    @property
    def is_approx_zero(self) -> bool:
        return self.precision == 0 and self.valuation != INF

    @property
    def is_zero(self) -> bool:
        return self.precision == 0

    @property
    def absolute_precision(self) -> int | float:
        return self.valuation + self.precision

    @property
    def digits(self) -> list[int]:
        out = []
        u = self.unit
        for _ in range(self.precision):
            u, d = divmod(u, self.prime)
            out.append(d)
        return out

    def valuation_bounds(self) -> tuple[int | float, int | float]:
        """Closed interval known to contain the true valuation."""
        if self.precision == 0:
            return self.valuation, INF
        return self.valuation, self.valuation

    def with_precision(self, n: int) -> "PAdic":
        """Pad with zero digits (or truncate) to ``n`` relative digits.

        Padding picks the particular element whose unknown digits are 0.
        Precision-limited zeros cannot be padded and are returned unchanged.
        """
        if self.precision == 0:
            return self
        if n <= 0:
            return PAdic.approx_zero(self.prime, self.valuation)
        if n >= self.precision:
            return PAdic._raw(self.prime, self.valuation, self.unit, n)
        return PAdic._raw(self.prime, self.valuation, self.unit % self.prime**n, n)

    def to_fraction(self) -> Fraction:
        """The rational ``p**v * unit`` read off the stored digits."""
        if self.precision == 0:
            return Fraction(0)
        return Fraction(self.prime) ** self.valuation * self.unit

    # -- dunder plumbing ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PAdic):
            return NotImplemented
        return (
            self.prime == other.prime
            and self.valuation == other.valuation
            and self.unit == other.unit
            and self.precision == other.precision
        )

    def __hash__(self):
        return hash((self.prime, self.valuation, self.unit, self.precision))

    def __repr__(self):
        return f"PAdic({self.prime}, {format_literal(self)!r})"

    def __str__(self):
        return format_literal(self)

    def _coerce(self, other) -> "PAdic":
        if isinstance(other, PAdic):
            return other
        if isinstance(other, (int, Fraction)):
            return constant_like(Fraction(other), self)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else div(other, self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, n: int):
        return power(self, n)


def _check_prime(a: PAdic, b: PAdic) -> None:
    if a.prime != b.prime:
        raise ValueError(f"prime mismatch: {a.prime} vs {b.prime}")


def embed_rational(r: Rational, p: int, precision: int = DEFAULT_PRECISION) -> PAdic:
    """Image of a rational in Q_p, to ``precision`` relative digits."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    r = Fraction(r)
    if r == 0:
        return PAdic.zero(p)
    vn, num = _split(r.numerator, p)
    vd, den = _split(r.denominator, p)
    mod = p**precision
    unit = num * pow(den, -1, mod) % mod
    return PAdic._raw(p, vn - vd, unit, precision)


def constant_like(r: Fraction, x: PAdic) -> PAdic:
    """Embed ``r`` with enough digits that it never limits arithmetic with ``x``."""
    if r == 0:
        return PAdic.zero(x.prime)
    v = vp_rational(r, x.prime)
    if x.is_exact_zero:
        n = max(x.precision, DEFAULT_PRECISION)
    else:
        n = max(1, x.absolute_precision - v, x.precision)
    return embed_rational(r, x.prime, n)


def neg(a: PAdic) -> PAdic:
    if a.precision == 0:
        return a
    return PAdic._raw(a.prime, a.valuation, (-a.unit) % a.prime**a.precision, a.precision)


def add(a: PAdic, b: PAdic) -> PAdic:
    _check_prime(a, b)
    if a.valuation == INF:
        return b
    if b.valuation == INF:
        return a
    p = a.prime
    top = min(a.valuation + a.precision, b.valuation + b.precision)
    low = min(a.valuation, b.valuation)
    rel = top - low
    if rel <= 0:
        return PAdic.approx_zero(p, top)
    mod = p**rel
    s = 0
    for x in (a, b):
        shift = x.valuation - low
        if x.precision and shift < rel:
            s += x.unit * p**shift
    s %= mod
    if s == 0:
        return PAdic.approx_zero(p, top)
    k, unit = _split(s, p)
    return PAdic._raw(p, low + k, unit, rel - k)


def sub(a: PAdic, b: PAdic) -> PAdic:
    """``a - b``; identical representations give the exact zero.

    Precision-limited zeros are excluded from that rule: two unknowns
    with the same bound need not be equal.
    """
    if a.precision and a == b:
        return PAdic.zero(a.prime)
    return add(a, neg(b))


def mul(a: PAdic, b: PAdic) -> PAdic:
    _check_prime(a, b)
    p = a.prime
    if a.valuation == INF or b.valuation == INF:
        return PAdic.zero(p)
    if a.precision == 0 or b.precision == 0:
        return PAdic.approx_zero(p, a.valuation + b.valuation)
    n = min(a.precision, b.precision)
    return PAdic._raw(p, a.valuation + b.valuation, a.unit * b.unit % p**n, n)


def div(a: PAdic, b: PAdic) -> PAdic:
    _check_prime(a, b)
    p = a.prime
    if b.valuation == INF:
        raise DivisionByZero("division by exact zero")
    if b.precision == 0:
        raise InsufficientPrecision(
            f"division by a value known only to be 0 mod p^{b.valuation}"
        )
    if a.valuation == INF:
        return PAdic.zero(p)
    if a.precision == 0:
        return PAdic.approx_zero(p, a.valuation - b.valuation)
    n = min(a.precision, b.precision)
    mod = p**n
    return PAdic._raw(p, a.valuation - b.valuation, a.unit * pow(b.unit, -1, mod) % mod, n)


def one_like(a: PAdic) -> PAdic:
    return PAdic._raw(a.prime, 0, 1, max(a.precision, 1) if a.valuation != INF else DEFAULT_PRECISION)


def power(a: PAdic, n: int) -> PAdic:
    if n < 0:
        return div(one_like(a), power(a, -n))
    if n == 0:
        return one_like(a)
    p = a.prime
    if a.valuation == INF:
        return PAdic.zero(p)
    if a.precision == 0:
        return PAdic.approx_zero(p, n * a.valuation)
    # relative precision is preserved, so one modular power does it
    return PAdic._raw(p, n * a.valuation, pow(a.unit, n, p**a.precision), a.precision)


def norm_abs(a: PAdic) -> Fraction:
    """``|a|_p = p**(-v(a))``."""
    if a.valuation == INF:
        return Fraction(0)
    if a.precision == 0:
        raise InsufficientPrecision(
            f"|a|_p undetermined: only v(a) >= {a.valuation} is known"
        )
    return Fraction(a.prime) ** (-a.valuation)


def divides(a: PAdic, b: PAdic) -> Verdict:
    """The canonical p-adic divisibility ``v(a) <= v(b)``, three-valued."""
    a_lo, a_hi = a.valuation_bounds()
    b_lo, b_hi = b.valuation_bounds()
    if a_hi <= b_lo:
        return Verdict.YES
    if a_lo > b_hi:
        return Verdict.NO
    return Verdict.UNDECIDED


def in_ball(x: PAdic, r: Rational, n: int) -> bool:
    """Whether ``v(x - r) >= n``, i.e. ``x`` lies in the ball ``U_n(r)``."""
    r = Fraction(r)
    p = x.prime
    if r == 0:
        d = x
    else:
        vr = vp_rational(r, p)
        if x.is_exact_zero:
            digits = max(1, n - vr + 1)
        else:
            # one digit more than x carries, so the two never share a representation
            digits = max(1, x.absolute_precision - vr + 1)
        d = sub(x, embed_rational(r, p, digits))
    if d.valuation == INF:
        return True
    if d.precision == 0:
        if d.valuation >= n:
            return True
        raise InsufficientPrecision(
            f"cannot decide v(x - r) >= {n}: only v >= {d.valuation} is known"
        )
    return d.valuation >= n


def kochen_gamma(x: PAdic) -> PAdic:
    """The Kochen operator ``(1/p) * (x^p - x) / ((x^p - x)^2 - 1)``.

    The denominator is handled by valuation case split. For ``v(x) >= 0``,
    Fermat gives ``v(x^p - x) >= 1`` so the denominator is a unit; for
    ``v(x) < 0`` the term ``x^p`` dominates and the denominator has valuation
    ``2p v(x)``. Either way the result has valuation ``>= 0``.
    """
    p = x.prime
    if x.valuation == INF:
        return PAdic.zero(p)
    if x.precision == 0 and x.valuation < 0:
        raise InsufficientPrecision(
            "kochen_gamma: cannot tell which valuation regime x is in"
        )
    t = sub(power(x, p), x)
    if x.valuation >= 0:
        if t.valuation == INF:
            return PAdic.zero(p)
        if t.precision == 0:
            # only a lower bound on v(t); Fermat guarantees at least 1
            return PAdic.approx_zero(p, max(t.valuation, 1) - 1)
        if t.valuation < 1:
            raise AssertionError("Fermat congruence violated")
        # (t^2 - 1) is the negative of the 1-unit (1 - t^2)
        one = PAdic._raw(p, 0, 1, 2 * t.valuation + t.precision)
        denom = neg(sub(one, mul(t, t)))
    else:
        if t.precision == 0 or t.valuation != p * x.valuation:
            raise InsufficientPrecision("kochen_gamma: x^p - x lost its leading digit")
        t2 = mul(t, t)
        denom = sub(t2, PAdic._raw(p, 0, 1, max(1, t2.absolute_precision)))
        if denom.valuation != 2 * p * x.valuation:
            raise AssertionError("denominator valuation mismatch")
    p_elt = PAdic._raw(p, 1, 1, max(denom.precision, 1))
    return div(t, mul(p_elt, denom))


# -- textual literals ------------------------------------------------------

_LITERAL = re.compile(r"^\s*(?:p|(\d+))\^(-?\d+)\s*\*\s*\[([0-9,\s]*)\]\s*$")


def format_literal(a: PAdic) -> str:
    """``p^<v> * [d0,d1,...]``, least significant digit first; ``0`` for exact zero.

    A precision-limited zero has no known digits and prints as ``p^<v> * []``.
    """
    if a.valuation == INF:
        return "0"
    return f"p^{a.valuation} * [{','.join(map(str, a.digits))}]"


def parse_literal(text: str, p: int, line: int | None = None) -> PAdic:
    if text.strip() == "0":
        return PAdic.zero(p)
    m = _LITERAL.match(text)
    if not m:
        raise FormatError(f"not a p-adic literal: {text.strip()!r}", line, "value")
    if m.group(1) is not None and int(m.group(1)) != p:
        raise FormatError(f"literal base {m.group(1)} does not match p={p}", line, "value")
    v = int(m.group(2))
    body = m.group(3).strip()
    digits = [int(d) for d in body.split(",")] if body else []
    if any(not 0 <= d < p for d in digits):
        raise FormatError(f"digit out of range for p={p}", line, "digits")
    if not digits:
        return PAdic.approx_zero(p, v)
    if digits[0] == 0:
        raise FormatError("leading digit must be nonzero", line, "digits")
    return PAdic.from_digits(p, v, digits)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {text.strip()!r}", field="rational") from exc


def format_rational(r: Rational) -> str:
    """``num/den`` in lowest terms, denominator always written."""
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"
