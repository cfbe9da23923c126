"""q-th roots of 1-units and the root criterion for ``|*``.

For a prime ``q != p`` and functions ``g, f`` on the same space,

    g |* f   iff   h^q = g^q + p f^q  for some h.

Forward direction: where ``g(x) != 0`` put
``h(x) = g(x) * root(1 + p (f(x)/g(x))^q)``, the 1-unit q-th root.
Converse: at a point with ``v(g(x)) > v(f(x))`` the right-hand side has
valuation ``1 + q v(f(x))``, which is not a multiple of ``q``, so it cannot
be a q-th power.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import padic
from .errors import InsufficientPrecision, NotOneUnit, UnsupportedExponent
from .funcring import LCFunction, _same_space
from .logic import Verdict
from .padic import INF, PAdic


@dataclass(frozen=True)
class RootSpec:
    q: int
    target: PAdic

    def __post_init__(self):
        p = self.target.prime
        if not padic.is_prime(self.q):
            raise UnsupportedExponent(f"q={self.q} is not prime")
        if self.q == p:
            raise UnsupportedExponent(f"q must differ from p={p}")
        t = self.target
        if t.precision == 0 or t.valuation != 0 or t.unit % p != 1:
            raise NotOneUnit(f"{padic.format_literal(t)} is not a 1-unit")

    @property
    def precision(self) -> int:
        return self.target.precision


def newton_iterates(spec: RootSpec) -> Iterator[int]:
    """Successive Newton approximations ``y_n`` (as integers mod p^N), from ``y_0 = 1``.

    ``q y^(q-1)`` is a unit because ``q != p``, so a step from an iterate
    correct to ``d`` digits gives ``2d`` correct digits; it only needs to
    work mod ``p^(2d)``. Stops once ``y^q`` matches to all N digits.
    """
    p, q = spec.target.prime, spec.q
    n = spec.precision
    mod = p**n
    t = spec.target.unit
    y = 1
    yield y
    residual = (1 - t) % mod
    digits = 0
    while residual:
        # digits is a lower bound on v(residual); count up from there
        while residual % p ** (digits + 1) == 0:
            digits += 1
        digits = min(2 * digits, n)
        m = p**digits
        y = (y - (pow(y, q, m) - t) * pow(q * pow(y, q - 1, m), -1, m)) % m
        residual = (pow(y, q, mod) - t) % mod
        yield y


def qth_root_of_unit(spec: RootSpec) -> PAdic:
    """The unique ``y`` with ``y^q = target`` and ``y = 1 mod p``."""
    y = 1
    for y in newton_iterates(spec):
        pass
    return PAdic(spec.target.prime, 0, y, spec.precision)


@dataclass(frozen=True)
class RootCriterion:
    verdict: Verdict
    witness: LCFunction | None = None
    point: int | None = None
    v_g: int | float | None = None
    v_f: int | float | None = None
    v_rhs: int | float | None = None


def _rhs(g: PAdic, f: PAdic, q: int) -> PAdic:
    p = g.prime
    p_elt = PAdic(p, 1, 1, max(f.precision, g.precision, 1))
    return padic.add(padic.power(g, q), padic.mul(p_elt, padic.power(f, q)))


def divides_by_root_criterion(g: LCFunction, f: LCFunction, q: int) -> RootCriterion:
    """Decide ``g |* f`` by building or refuting a q-th root of ``g^q + p f^q``."""
    _same_space(g, f)
    p = g.prime
    if not padic.is_prime(q) or q == p:
        raise UnsupportedExponent(f"q={q} must be a prime different from p={p}")
    pending = False
    for i, (gx, fx) in enumerate(zip(g.values, f.values)):
        d = padic.divides(gx, fx)
        if d is Verdict.NO:
            rhs = _rhs(gx, fx, q)
            return RootCriterion(Verdict.NO, None, i, gx.valuation, fx.valuation, rhs.valuation)
        if d is Verdict.UNDECIDED:
            if gx.is_approx_zero and not fx.is_zero:
                raise InsufficientPrecision(
                    f"g is only known to vanish to O(p^{gx.valuation}) at point {i}, where f is nonzero"
                )
            pending = True
    if pending:
        return RootCriterion(Verdict.UNDECIDED)

    values = []
    for i, (gx, fx) in enumerate(zip(g.values, f.values)):
        if fx.is_exact_zero:
            # covers g(x) = 0 too: v(g) = inf <= v(f) forces f(x) = 0
            values.append(gx)
            continue
        ratio = padic.div(fx, gx)
        one = PAdic(p, 0, 1, gx.precision)
        target = padic.add(one, padic.mul(PAdic(p, 1, 1, gx.precision), padic.power(ratio, q)))
        values.append(padic.mul(gx, qth_root_of_unit(RootSpec(q, target))))
    h = LCFunction(g.space, p, tuple(values))
    for i, (hx, gx, fx) in enumerate(zip(h.values, g.values, f.values)):
        if agreement_digits(hx, gx, fx, q) < hx.precision:
            raise AssertionError(f"root identity fails at point {i}")
    return RootCriterion(Verdict.YES, witness=h)


def agreement_digits(h: PAdic, g: PAdic, f: PAdic, q: int) -> int | float:
    """Relative digits to which ``h^q`` and ``g^q + p f^q`` are known to agree.

    ``INF`` for an exact match, ``-1`` when the known digits differ.
    """
    rhs = _rhs(g, f, q)
    diff = padic.sub(padic.power(h, q), rhs)
    if diff.is_exact_zero:
        return INF
    if not diff.is_zero:
        return -1
    if rhs.is_zero:
        return 0
    return diff.valuation - rhs.valuation


def verify_root_identity(h: LCFunction, g: LCFunction, f: LCFunction, q: int, digits: int = 1) -> Verdict:
    """Check ``h^q = g^q + p f^q`` pointwise to at least ``digits`` relative digits."""
    _same_space(h, g)
    _same_space(g, f)
    result = Verdict.YES
    for hx, gx, fx in zip(h.values, g.values, f.values):
        agree = agreement_digits(hx, gx, fx, q)
        if agree < 0:
            return Verdict.NO
        if agree < digits:
            result = Verdict.UNDECIDED
    return result
