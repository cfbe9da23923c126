"""Ambient rings that divisibility relations live on.

Each ring bundles its arithmetic with a seeded, valuation-stratified sampler.
Uniform sampling almost never lands on the equality branches of the axioms
(``v(a) == v(b)``, deep cancellation, zeros), so the samplers bias toward
them on purpose.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import funcring, padic
from .funcring import CompactSpace, LCFunction
from .padic import DEFAULT_PRECISION, PAdic

SAMPLE_KINDS = ("any", "nonzero", "integral", "unit")


def _valuation(rng: random.Random, kind: str) -> int:
    if kind == "unit":
        return 0
    if kind == "integral":
        return rng.randint(0, 6)
    if rng.random() < 0.5:
        return rng.randint(-3, 3)
    return rng.randint(-12, 12)


def _small_units(p: int) -> list[Fraction]:
    return [Fraction(1), Fraction(-1), Fraction(2 if p != 2 else 3), Fraction(p - 1 or 1), Fraction(1 + p)]


class QpRing:
    """Q_p at a fixed relative precision."""

    tag = "Qp"

    def __init__(self, p: int, precision: int = DEFAULT_PRECISION):
        self.prime = p
        self.precision = precision

    def __repr__(self):
        return f"QpRing(p={self.prime}, N={self.precision})"

    def zero(self) -> PAdic:
        return PAdic.zero(self.prime)

    def one(self) -> PAdic:
        return padic.embed_rational(1, self.prime, self.precision)

    def const(self, r) -> PAdic:
        return padic.embed_rational(r, self.prime, self.precision)

    add = staticmethod(padic.add)
    sub = staticmethod(padic.sub)
    mul = staticmethod(padic.mul)
    neg = staticmethod(padic.neg)
    power = staticmethod(padic.power)

    def lift(self, a: PAdic, precision: int) -> PAdic:
        return a.with_precision(precision)

    def fmt(self, a: PAdic) -> str:
        return padic.format_literal(a)

    def sample(self, rng: random.Random, kind: str = "any") -> PAdic:
        p = self.prime
        if kind in ("any", "integral") and rng.random() < 0.05:
            return self.zero()
        v = _valuation(rng, kind)
        if rng.random() < 0.2:
            u = padic.embed_rational(rng.choice(_small_units(p)), p, self.precision)
            return PAdic(p, v, u.unit, self.precision)
        mod = p**self.precision
        while True:
            unit = rng.randrange(1, mod)
            if unit % p:
                return PAdic(p, v, unit, self.precision)


class QRing:
    """The rationals, exactly. ``precision`` only sizes the ord search window."""

    tag = "Q"

    def __init__(self, p: int, precision: int = DEFAULT_PRECISION):
        self.prime = p
        self.precision = precision

    def __repr__(self):
        return f"QRing(p={self.prime})"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def const(self, r) -> Fraction:
        return Fraction(r)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def power(a, n):
        return a**n

    def lift(self, a: Fraction, precision: int) -> Fraction:
        return a

    def fmt(self, a: Fraction) -> str:
        return padic.format_rational(a)

    def sample(self, rng: random.Random, kind: str = "any") -> Fraction:
        p = self.prime
        if kind in ("any", "integral") and rng.random() < 0.05:
            return Fraction(0)
        v = _valuation(rng, kind)
        if rng.random() < 0.2:
            u = rng.choice(_small_units(p))
        else:
            num = den = 0
            while num % p == 0:
                num = rng.randint(1, 10**6)
            while den % p == 0:
                den = rng.randint(1, 10**3)
            u = Fraction(rng.choice((-1, 1)) * num, den)
        return u * Fraction(p) ** v


class FunctionRing:
    """C(X, Q_p) for a desk-scale space X, values at a fixed precision."""

    tag = "LC"

    def __init__(self, space: CompactSpace, p: int, precision: int = DEFAULT_PRECISION):
        self.space = space
        self.prime = p
        self.precision = precision
        self._points = QpRing(p, precision)

    def __repr__(self):
        return f"FunctionRing({self.space.label}, p={self.prime}, N={self.precision})"

    def zero(self) -> LCFunction:
        return funcring.constant(self.space, self.prime, 0, self.precision)

    def one(self) -> LCFunction:
        return funcring.constant(self.space, self.prime, 1, self.precision)

    def const(self, r) -> LCFunction:
        return funcring.constant(self.space, self.prime, r, self.precision)

    add = staticmethod(funcring.add)
    sub = staticmethod(funcring.sub)
    mul = staticmethod(funcring.mul)

    @staticmethod
    def neg(f):
        return -f

    @staticmethod
    def power(f, n):
        return f**n

    def lift(self, f: LCFunction, precision: int) -> LCFunction:
        return LCFunction(f.space, f.prime, tuple(v.with_precision(precision) for v in f.values))

    def fmt(self, f: LCFunction) -> str:
        return "(" + " | ".join(padic.format_literal(v) for v in f.values) + ")"

    def sample(self, rng: random.Random, kind: str = "any") -> LCFunction:
        pts = self._points
        n = self.space.size
        if kind == "any" and rng.random() < 0.05:
            return self.zero()
        # a shared valuation makes pointwise collisions common
        if kind in ("unit", "integral") or rng.random() < 0.5:
            point_kind = kind if kind in ("unit", "integral") else "any"
            values = [pts.sample(rng, point_kind) for _ in range(n)]
        else:
            v = _valuation(rng, "any")
            values = []
            for _ in range(n):
                u = pts.sample(rng, "unit")
                values.append(PAdic(self.prime, v, u.unit, u.precision))
        if kind == "any" or kind == "nonzero":
            values = [PAdic.zero(self.prime) if rng.random() < 0.1 else x for x in values]
        if kind == "nonzero" and all(x.is_exact_zero for x in values):
            values[rng.randrange(n)] = pts.sample(rng, "nonzero")
        return LCFunction(self.space, self.prime, tuple(values))
