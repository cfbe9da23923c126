"""Divisibility relations as values, with sampled axiom checking.

A relation is a three-valued predicate on the elements of an ambient ring
(see :mod:`padicring.rings`). The checkers run seeded, valuation-stratified
trials and tally every instance as pass, fail, or undecided; undecided
instances are never folded into the other two counts.

Axioms, for all a, b, c:

    (1) a | a                       (5) 0 does not divide 1
    (2) a | b, b | c  =>  a | c     (6) 0 ∤ a  =>  pa ∤ a
    (3) a | b, a | c  =>  a | b - c (7) p[(a^p b - b^p a)^2 - (b^{p+1})^2]
    (4) a | b  =>  ac | bc                  | (a^p b - b^p a) b^{p+1}
    (8) every a is divisible by some p^m, m in Z
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import funcring, padic
from .errors import InsufficientPrecision, WindowExceeded
from .funcring import CompactSpace
from .logic import Verdict, all_of, any_of
from .padic import DEFAULT_PRECISION, INF
from .rings import FunctionRing, QpRing, QRing

AXIOMS = ("1", "2", "3", "4", "5", "6", "7", "8")
WINDOW_MARGIN = 16


@dataclass(frozen=True)
class DivRelation:
    name: str
    prime: int
    ring: Any
    predicate: Callable[[Any, Any], Verdict] = field(repr=False)

    @property
    def ring_tag(self) -> str:
        return self.ring.tag

    def __call__(self, a, b) -> Verdict:
        return self.predicate(a, b)


def canonical_qp(p: int, precision: int = DEFAULT_PRECISION) -> DivRelation:
    """``a | b`` iff ``v_p(a) <= v_p(b)`` on Q_p."""
    return DivRelation("canonical-qp", p, QpRing(p, precision), padic.divides)


def canonical_star(space: CompactSpace, p: int, precision: int = DEFAULT_PRECISION) -> DivRelation:
    """``f |* g`` iff ``v_p(f(x)) <= v_p(g(x))`` at every point of ``space``."""
    return DivRelation("canonical-star", p, FunctionRing(space, p, precision), funcring.divides_star)


def pullback(rel: DivRelation, hom: Callable, ring, name: str | None = None) -> DivRelation:
    """The relation ``a |' b  iff  hom(a) | hom(b)`` on the domain ring of ``hom``.

    ``hom`` must be a unital ring map into ``rel.ring``.
    """
    base = rel.predicate
    return DivRelation(
        name or f"pullback({rel.name})",
        rel.prime,
        ring,
        lambda a, b: base(hom(a), hom(b)),
    )


def canonical_q(p: int, precision: int = DEFAULT_PRECISION) -> DivRelation:
    """canonical_qp pulled back along the embedding Q -> Q_p."""
    return pullback(
        canonical_qp(p, precision),
        lambda r: padic.embed_rational(r, p, precision),
        QRing(p, precision),
        "canonical-q",
    )


def evaluation_map(pt: funcring.SpectrumPoint) -> Callable:
    return lambda f: funcring.gelfand(f, pt)


# -- ord and the induced semi-norm -------------------------------------------


@dataclass(frozen=True)
class OrdValue:
    """``ord a``; when ``exact`` is false, only ``ord a >= value`` is known."""

    value: int | float
    exact: bool = True

    @property
    def infinite(self) -> bool:
        return self.value == INF

    def __str__(self):
        if self.infinite:
            return "inf"
        return str(self.value) if self.exact else f">={self.value}"


@dataclass(frozen=True)
class NormAtMost:
    """Upper bound on a semi-norm whose ord is only bounded below."""

    bound: Fraction


def search_window(rel: DivRelation) -> int:
    return (rel.ring.precision or DEFAULT_PRECISION) + WINDOW_MARGIN


def ord(rel: DivRelation, a) -> OrdValue:
    """``sup{m : p^m | a}`` by binary search over a bounded window."""
    ring = rel.ring
    p = rel.prime
    if rel(ring.zero(), a) is Verdict.YES:
        return OrdValue(INF)
    w = search_window(rel)

    def test(m: int) -> Verdict:
        return rel(ring.const(Fraction(p) ** m), a)

    if test(-w) is not Verdict.YES:
        raise WindowExceeded(f"no p^m with m >= {-w} divides the element")
    if test(w) is Verdict.YES:
        raise WindowExceeded(f"p^{w} still divides the element")
    lo, hi = -w, w
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if test(mid) is Verdict.YES:
            lo = mid
        else:
            hi = mid
    return OrdValue(lo, exact=test(hi) is Verdict.NO)


def seminorm(rel: DivRelation, a) -> Fraction | NormAtMost:
    """``p^(-ord a)``, or an upper bound when ord is only bounded below."""
    o = ord(rel, a)
    if o.infinite:
        return Fraction(0)
    value = Fraction(rel.prime) ** (-o.value)
    return value if o.exact else NormAtMost(value)


# -- reports -----------------------------------------------------------------


@dataclass
class AxiomStats:
    axiom: str
    trials: int = 0
    passed: int = 0
    failed: int = 0
    undecided: int = 0
    witness: str | None = None

    def record(self, outcome: Verdict, witness: Callable[[], str] | None = None) -> None:
        self.trials += 1
        if outcome is Verdict.YES:
            self.passed += 1
        elif outcome is Verdict.NO:
            self.failed += 1
            if self.witness is None and witness is not None:
                self.witness = witness()
        else:
            self.undecided += 1

    def merge(self, other: "AxiomStats") -> "AxiomStats":
        return AxiomStats(
            self.axiom,
            self.trials + other.trials,
            self.passed + other.passed,
            self.failed + other.failed,
            self.undecided + other.undecided,
            self.witness if self.witness is not None else other.witness,
        )

    def line(self) -> str:
        return (
            f"axiom={self.axiom} trials={self.trials} pass={self.passed} "
            f"fail={self.failed} undecided={self.undecided} witness={self.witness or '-'}"
        )


@dataclass
class Report:
    stats: dict[str, AxiomStats] = field(default_factory=dict)

    def __getitem__(self, key: str) -> AxiomStats:
        return self.stats[key]

    def get(self, key: str) -> AxiomStats:
        if key not in self.stats:
            self.stats[key] = AxiomStats(key)
        return self.stats[key]

    def merge(self, other: "Report") -> "Report":
        out = dict(self.stats)
        for key, st in other.stats.items():
            out[key] = out[key].merge(st) if key in out else st
        return Report(out)

    __add__ = merge

    def failures(self, keys=None) -> int:
        return sum(st.failed for k, st in self.stats.items() if keys is None or k in keys)

    def lines(self) -> list[str]:
        return [st.line() for st in self.stats.values()]

    def __str__(self):
        return "\n".join(self.lines())


def _implies(premise: Verdict, conclusion: Callable[[], Verdict]) -> Verdict:
    """Outcome of one instance of ``premise => conclusion``; YES means pass."""
    if premise is Verdict.NO:
        return Verdict.YES
    if premise is Verdict.UNDECIDED:
        return Verdict.UNDECIDED
    return conclusion()


def _rng(seed: int, stream: int) -> random.Random:
    return random.Random(seed * 1000 + stream)


def _maybe(rng: random.Random, prob: float, make, otherwise):
    return make() if rng.random() < prob else otherwise()


def _fmt(ring, *elems) -> str:
    return "; ".join(ring.fmt(e) for e in elems)


def _ppow(ring, p: int, k: int):
    return ring.const(Fraction(p) ** k)


# -- individual axioms ---------------------------------------------------------


def _axiom1(rel, ring, p, rng):
    a = ring.sample(rng)
    return rel(a, a), lambda: _fmt(ring, a)


def _axiom2(rel, ring, p, rng):
    a = ring.sample(rng)
    b = _maybe(rng, 0.6, lambda: ring.mul(a, ring.sample(rng, "integral")), lambda: ring.sample(rng))
    c = _maybe(rng, 0.6, lambda: ring.mul(b, ring.sample(rng, "integral")), lambda: ring.sample(rng))
    out = _implies(all_of([rel(a, b), rel(b, c)]), lambda: rel(a, c))
    return out, lambda: _fmt(ring, a, b, c)


def _axiom3(rel, ring, p, rng):
    a = ring.sample(rng)
    b = _maybe(rng, 0.7, lambda: ring.mul(a, ring.sample(rng, "integral")), lambda: ring.sample(rng))
    mode = rng.randrange(3)
    if mode == 0:
        c = ring.mul(a, ring.sample(rng, "integral"))
    elif mode == 1:
        # c agrees with b to several digits: b - c cancels
        shift = ring.mul(_ppow(ring, p, rng.randint(1, 10)), ring.sample(rng, "integral"))
        c = ring.add(b, ring.mul(a, shift))
    else:
        c = ring.sample(rng)
    out = _implies(all_of([rel(a, b), rel(a, c)]), lambda: rel(a, ring.sub(b, c)))
    return out, lambda: _fmt(ring, a, b, c)


def _axiom4(rel, ring, p, rng):
    a = ring.sample(rng)
    b = _maybe(rng, 0.6, lambda: ring.mul(a, ring.sample(rng, "integral")), lambda: ring.sample(rng))
    c = ring.sample(rng)
    out = _implies(rel(a, b), lambda: rel(ring.mul(a, c), ring.mul(b, c)))
    return out, lambda: _fmt(ring, a, b, c)


def _axiom5(rel, ring, p, rng):
    return rel(ring.zero(), ring.one()).negate(), lambda: _fmt(ring, ring.zero(), ring.one())


def _axiom6(rel, ring, p, rng):
    a = ring.sample(rng)
    pa = ring.mul(ring.const(p), a)
    out = _implies(rel(ring.zero(), a).negate(), lambda: rel(pa, a).negate())
    return out, lambda: _fmt(ring, a)


def kochen_brackets(ring, p: int, a, b):
    """Return ``(p[(a^p b - b^p a)^2 - (b^{p+1})^2], (a^p b - b^p a) b^{p+1})``."""
    s = ring.sub(ring.mul(ring.power(a, p), b), ring.mul(ring.power(b, p), a))
    t = ring.power(b, p + 1)
    lhs = ring.mul(ring.const(p), ring.sub(ring.mul(s, s), ring.mul(t, t)))
    rhs = ring.mul(s, t)
    return lhs, rhs


def sample_kochen_pair(ring, p: int, rng: random.Random):
    """A pair (a, b) for axiom (7), often with v(a) = v(b) or a/b near +-1."""
    mode = rng.randrange(5)
    b = ring.sample(rng)
    if mode == 0:
        a = ring.sample(rng)
    elif mode == 1:
        a = ring.mul(b, ring.sample(rng, "unit"))
    elif mode == 2:
        k = rng.randint(1, 12)
        near = ring.add(ring.one(), ring.mul(_ppow(ring, p, k), ring.sample(rng, "integral")))
        a = ring.mul(b, near)
    elif mode == 3:
        k = rng.randint(1, 12)
        near = ring.sub(ring.mul(_ppow(ring, p, k), ring.sample(rng, "integral")), ring.one())
        a = ring.mul(b, near)
    else:
        a = ring.mul(b, ring.sample(rng, "nonzero"))
    return a, b


def _axiom7(rel, ring, p, rng):
    a, b = sample_kochen_pair(ring, p, rng)
    # the brackets cancel hard near v(a) = v(b); evaluate with 2pN digits
    m = 2 * p * (ring.precision or DEFAULT_PRECISION)
    la, lb = ring.lift(a, m), ring.lift(b, m)
    lhs, rhs = kochen_brackets(ring, p, la, lb)
    return rel(lhs, rhs), lambda: _fmt(ring, a, b)


def _axiom8(rel, ring, p, rng):
    a = ring.sample(rng)
    try:
        o = ord(rel, a)
    except WindowExceeded:
        return Verdict.NO, lambda: _fmt(ring, a)
    m = 0 if o.infinite else o.value
    return rel(_ppow(ring, p, m), a), lambda: _fmt(ring, a)


_AXIOM_CHECKS = {
    "1": _axiom1,
    "2": _axiom2,
    "3": _axiom3,
    "4": _axiom4,
    "5": _axiom5,
    "6": _axiom6,
    "7": _axiom7,
    "8": _axiom8,
}


def _run(rel: DivRelation, key: str, stream: int, instance, trials: int, seed: int) -> AxiomStats:
    stats = AxiomStats(key)
    rng = _rng(seed, stream)
    for _ in range(trials):
        outcome, witness = instance(rel, rel.ring, rel.prime, rng)
        stats.record(outcome, witness)
    return stats


def check_axioms(rel: DivRelation, trials: int = 10_000, seed: int = 0, axioms=AXIOMS) -> Report:
    """Sample-test axioms (1)-(8). Axiom (5) is a single fixed instance."""
    report = Report()
    for key in axioms:
        n = 1 if key == "5" else trials
        report.stats[key] = _run(rel, key, int(key), _AXIOM_CHECKS[key], n, seed)
    return report


def _total(rel, ring, p, rng):
    a = ring.sample(rng)
    b = _maybe(rng, 0.3, lambda: ring.mul(a, ring.sample(rng, "unit")), lambda: ring.sample(rng))
    return any_of([rel(a, b), rel(b, a)]), lambda: _fmt(ring, a, b)


def _cancel(rel, ring, p, rng):
    c = ring.sample(rng, "nonzero")
    a = ring.sample(rng)
    b = _maybe(rng, 0.3, lambda: ring.mul(a, ring.sample(rng)), lambda: ring.sample(rng))
    premise = all_of([rel(ring.zero(), c).negate(), rel(ring.mul(a, c), ring.mul(b, c))])
    return _implies(premise, lambda: rel(a, b)), lambda: _fmt(ring, a, b, c)


def check_total(rel: DivRelation, trials: int = 10_000, seed: int = 0) -> Report:
    return Report({"total": _run(rel, "total", 21, _total, trials, seed)})


def check_cancellation(rel: DivRelation, trials: int = 10_000, seed: int = 0) -> Report:
    return Report({"cancel": _run(rel, "cancel", 22, _cancel, trials, seed)})


def _complement(rel, ring, p, rng):
    a = ring.sample(rng)
    b = _maybe(rng, 0.4, lambda: ring.mul(a, ring.sample(rng, "unit")), lambda: ring.sample(rng))
    zero = ring.zero()
    if rel(zero, a) is Verdict.YES and rel(zero, b) is Verdict.YES:
        # both in the support: a | b and pb | a hold together
        return Verdict.YES, None
    lhs = rel(a, b)
    rhs = rel(ring.mul(ring.const(p), b), a).negate()
    if not (lhs.decided and rhs.decided):
        return Verdict.UNDECIDED, None
    return Verdict.of(lhs is rhs), lambda: _fmt(ring, a, b)


def check_complement_identity(rel: DivRelation, trials: int = 10_000, seed: int = 0) -> Report:
    """``a | b  iff  not (pb | a)``, which holds for total p-divisibilities with cancellation."""
    return Report({"complement": _run(rel, "complement", 23, _complement, trials, seed)})


def full_report(rel: DivRelation, trials: int = 10_000, seed: int = 0) -> Report:
    """Axioms (1)-(8) followed by totality and cancellation."""
    return check_axioms(rel, trials, seed) + check_total(rel, trials, seed) + check_cancellation(rel, trials, seed)


# -- semi-norm laws -------------------------------------------------------------


def _ords(rel, *elems):
    """Exact ords of all elements, or None when any is only bounded."""
    out = []
    for e in elems:
        o = ord(rel, e)
        if not o.exact:
            return None
        out.append(o.value)
    return out


def _law(rel, ring, rng, build, holds):
    elems = build()
    try:
        values = _ords(rel, *elems)
    except (WindowExceeded, InsufficientPrecision):
        return Verdict.UNDECIDED, None
    if values is None:
        return Verdict.UNDECIDED, None
    return Verdict.of(holds(*values)), lambda: _fmt(ring, *elems)


def _law_a(rel, ring, p, rng):
    a = ring.sample(rng)
    b = _maybe(rng, 0.5, lambda: ring.neg(ring.mul(a, ring.sample(rng, "unit"))), lambda: ring.sample(rng))
    return _law(rel, ring, rng, lambda: (a, b, ring.add(a, b)), lambda oa, ob, os: os >= min(oa, ob))


def _law_b(rel, ring, p, rng):
    a, b = ring.sample(rng), ring.sample(rng)
    return _law(rel, ring, rng, lambda: (a, b, ring.mul(a, b)), lambda oa, ob, om: om >= oa + ob)


def _random_rational(rng: random.Random, p: int) -> Fraction:
    return QRing(p).sample(rng, "nonzero")


def _law_c(rel, ring, p, rng):
    r = _random_rational(rng, p)
    return _law(rel, ring, rng, lambda: (ring.const(r),), lambda o: o == padic.vp_rational(r, p))


def _law_d(rel, ring, p, rng):
    r = _random_rational(rng, p)
    a = ring.sample(rng)
    vr = padic.vp_rational(r, p)
    return _law(rel, ring, rng, lambda: (a, ring.mul(ring.const(r), a)), lambda oa, ora: ora == vr + oa)


def _law_power(rel, ring, p, rng):
    a = ring.sample(rng)
    return _law(rel, ring, rng, lambda: (a, ring.mul(a, a)), lambda oa, osq: osq == 2 * oa)


def _law_i(rel, ring, p, rng):
    a = ring.sample(rng)
    pc = ring.const(p)
    return _implies(rel(pc, ring.mul(a, a)), lambda: rel(pc, a)), lambda: _fmt(ring, a)


_LAWS = {"a": _law_a, "b": _law_b, "c": _law_c, "d": _law_d, "power": _law_power, "i": _law_i}


def check_seminorm_laws(rel: DivRelation, trials: int = 10_000, seed: int = 0) -> Report:
    """Ultrametric (a), submultiplicative (b), ``||r|| = |r|_p`` (c), scaling (d),
    power multiplicativity, and ``p | a^2 => p | a`` (i)."""
    report = Report()
    for i, (key, law) in enumerate(_LAWS.items()):
        report.stats[key] = _run(rel, key, 30 + i, law, trials, seed)
    return report
