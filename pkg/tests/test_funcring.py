import random
from fractions import Fraction

import pytest

from padicring import funcring, padic
from padicring.errors import FormatError, SpaceMismatch, UnsupportedTarget
from padicring.funcring import (
    CompactSpace,
    LCFunction,
    approx_by_level,
    constant,
    divides_star,
    from_values,
    gelfand,
    indicator,
    local_global_check,
    refine,
    spectrum_points,
    sup_norm,
)
from padicring.logic import Verdict
from padicring.padic import INF, PAdic
from padicring.rings import FunctionRing

from oracles import vp_loop

TWO = CompactSpace.finite(2)


def fn(p, *values, space=None):
    space = space or CompactSpace.finite(len(values))
    return from_values(space, p, values)


def min_valuation(f: LCFunction):
    return min(v.valuation for v in f.values)


def random_space(rng, p):
    if rng.random() < 0.5:
        return CompactSpace.finite(rng.randint(1, 8))
    k = rng.randint(0, 3)
    while p**k > 27:
        k -= 1
    return CompactSpace.zp(p, k)


def test_space_basics():
    assert CompactSpace.finite(3).size == 3
    assert CompactSpace.zp(3, 2).size == 9
    assert CompactSpace.zp(5, 0).size == 1
    assert CompactSpace.parse("zp:2", 3) == CompactSpace.zp(3, 2)
    with pytest.raises(ValueError):
        CompactSpace.finite(0)
    with pytest.raises(SpaceMismatch):
        LCFunction(TWO, 3, (padic.embed_rational(1, 3),))


def test_ring_op_examples():
    p = 3
    f = fn(p, 5, Fraction(1, 3))
    assert f + constant(TWO, p, 0) == f
    assert fn(p, p, 1) * fn(p, 1, p) == fn(p, p, p)
    c = constant(CompactSpace.zp(p, 1), p, 7)
    assert refine(c, 2) == constant(CompactSpace.zp(p, 2), p, 7)


def test_space_mismatch():
    with pytest.raises(SpaceMismatch):
        fn(3, 1, 2) + fn(3, 1, 2, 3)
    with pytest.raises(SpaceMismatch):
        fn(3, 1, 2) * fn(5, 1, 2)
    with pytest.raises(SpaceMismatch):
        refine(fn(3, 1, 2), 3)


def test_refine_follows_coset_containment():
    p = 2
    f = from_values(CompactSpace.zp(p, 1), p, [5, 6])
    g = refine(f, 3)
    assert [x.to_fraction() for x in g.values] == [5, 6] * 4


@pytest.mark.parametrize("p", [2, 3])
def test_refine_is_a_ring_homomorphism(p):
    rng = random.Random(p)
    space = CompactSpace.zp(p, 1)
    ring = FunctionRing(space, p, 20)
    for _ in range(200):
        f, g = ring.sample(rng), ring.sample(rng)
        k = rng.randint(1, 3)
        assert refine(f + g, k) == refine(f, k) + refine(g, k)
        assert refine(f * g, k) == refine(f, k) * refine(g, k)
        assert sup_norm(refine(f, k)) == sup_norm(f)
        assert divides_star(refine(f, k), refine(g, k)) is divides_star(f, g)


def test_sup_norm_examples():
    assert sup_norm(fn(5, 5, Fraction(1, 5))) == 5
    assert sup_norm(constant(TWO, 5, 0)) == 0
    assert sup_norm(fn(3, 1, 3, 9)) == 1


def test_divides_star_examples():
    p = 3
    assert divides_star(fn(p, p, p), fn(p, p**2, p**3)) is Verdict.YES
    f, g = fn(p, 1, p), fn(p, p, 1)
    assert divides_star(f, g) is Verdict.NO
    assert divides_star(g, f) is Verdict.NO
    zero = constant(TWO, p, 0)
    assert divides_star(zero, zero) is Verdict.YES


def test_divides_star_undecided_propagates():
    p = 3
    f = fn(p, 1, 27)
    g = LCFunction(TWO, p, (padic.embed_rational(1, p), PAdic.approx_zero(p, 2)))
    assert divides_star(f, g) is Verdict.UNDECIDED
    # a decided NO elsewhere wins over the undecided point
    h = LCFunction(TWO, p, (padic.embed_rational(1, p), PAdic.approx_zero(p, 2)))
    assert divides_star(fn(p, 9, 27), h) is Verdict.NO


def test_spectrum_and_gelfand():
    assert len(spectrum_points(CompactSpace.finite(3))) == 3
    assert len(spectrum_points(CompactSpace.zp(2, 3))) == 8
    f = fn(3, 4, 5, 6)
    assert [gelfand(f, pt).to_fraction() for pt in spectrum_points(f.space)] == [4, 5, 6]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_gelfand_isometry(p):
    rng = random.Random(p)
    for _ in range(250):
        space = random_space(rng, p)
        f = FunctionRing(space, p, 16).sample(rng)
        pointwise = max(padic.norm_abs(gelfand(f, pt)) for pt in spectrum_points(space))
        assert sup_norm(f) == pointwise


def test_indicator_separates_points():
    space = CompactSpace.finite(4)
    for i in range(4):
        e = indicator(space, 3, i)
        for j in range(4):
            if j != i:
                assert gelfand(e, spectrum_points(space)[i]) != gelfand(e, spectrum_points(space)[j])


def test_local_global_examples():
    p = 3
    assert local_global_check(fn(p, p, p**2))
    assert local_global_check(fn(p, 1, p))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_local_global_against_min_oracle(p):
    rng = random.Random(p)
    for _ in range(300):
        f = FunctionRing(random_space(rng, p), p, 16).sample(rng)
        assert local_global_check(f)
        # both sides say: min valuation >= 1
        star = divides_star(constant(f.space, p, p), f)
        assert star is Verdict.of(min_valuation(f) >= 1)


# -- norms ----------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
def test_sup_norm_laws(p):
    rng = random.Random(10 + p)
    for _ in range(300):
        ring = FunctionRing(random_space(rng, p), p, 20)
        f, g = ring.sample(rng), ring.sample(rng)
        try:
            assert sup_norm(f + g) <= max(sup_norm(f), sup_norm(g))
        except padic.InsufficientPrecision:
            pass
        assert sup_norm(f * g) <= sup_norm(f) * sup_norm(g)
        assert sup_norm(f * f) == sup_norm(f) ** 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_square_then_divisible_implies_divisible(p):
    rng = random.Random(20 + p)
    pc = lambda space: constant(space, p, p)  # noqa: E731
    for _ in range(300):
        f = FunctionRing(random_space(rng, p), p, 20).sample(rng)
        if divides_star(pc(f.space), f * f) is Verdict.YES:
            assert divides_star(pc(f.space), f) is Verdict.YES
            # oracle: 2 v >= 1 with v an integer forces v >= 1
            assert all(v.valuation >= 1 for v in f.values)


def test_cauchy_sequence_has_limit():
    # a_n = sum_{i<n} p^i c_i converges; the model realises the limit to N digits
    p, n_digits = 3, 30
    space = CompactSpace.finite(3)
    rng = random.Random(5)
    coeffs = [[rng.randrange(p) for _ in range(3)] for _ in range(n_digits)]

    def partial(n):
        vals = [sum(coeffs[i][j] * p**i for i in range(n)) for j in range(3)]
        return from_values(space, p, vals, n_digits)

    seq = [partial(n) for n in range(1, n_digits + 1)]
    limit = seq[-1]
    for n in range(len(seq)):
        for m in range(n, len(seq)):
            assert sup_norm(seq[m] - seq[n]) <= Fraction(1, p ** (n + 1))
        assert sup_norm(limit - seq[n]) <= Fraction(1, p ** (n + 1))


# -- approximation -----------------------------------------------------------------


def test_approx_examples():
    a = approx_by_level([0, 1], 3, 1)
    assert [v.to_fraction() for v in a.function.values] == [0, 1, 2]
    assert a.error_bound == Fraction(1, 3)
    sq = approx_by_level([0, 0, 1], 3, 2)
    assert [v.to_fraction() for v in sq.function.values] == [a * a for a in range(9)]
    assert sq.error_bound == Fraction(1, 9)
    c = approx_by_level([Fraction(5, 7)], 3, 2)
    assert c.error_bound == 0
    assert all(v == padic.embed_rational(Fraction(5, 7), 3) for v in c.function.values)


def test_approx_rejects_non_integral():
    with pytest.raises(UnsupportedTarget):
        approx_by_level([0, Fraction(1, 3)], 3, 2)


def sampled_error(coeffs, p, k, approx, rng, samples):
    """Worst |P(x) - approx(x)|_p over random x, by exact rational evaluation."""
    worst = Fraction(0)
    for _ in range(samples):
        x = rng.randrange(p ** (k + 40))
        value = approx.function.values[x % p**k].to_fraction()
        err = funcring.eval_poly(coeffs, x) - value
        v = vp_loop(err, p)
        if v != INF:
            worst = max(worst, Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v)))
    return worst


def test_square_error_certificate():
    rng = random.Random(0)
    approx = approx_by_level([0, 0, 1], 3, 2)
    assert sampled_error([0, 0, 1], 3, 2, approx, rng, 1000) <= Fraction(1, 9)


# -- file format ---------------------------------------------------------------------


def test_function_file_round_trip():
    f = from_values(CompactSpace.zp(3, 1), 3, [0, Fraction(1, 3), -1], 5)
    text = funcring.format_function(f)
    assert text.splitlines()[0] == "p=3 space=zp:1"
    assert text.splitlines()[1] == "0"
    assert text.splitlines()[3] == "p^0 * [2,2,2,2,2]"
    assert funcring.parse_function(text) == f
    assert funcring.format_function(funcring.parse_function(text)) == text


@pytest.mark.parametrize(
    "text, line, field",
    [
        ("", 1, "header"),
        ("p=4 space=finite:1\n0\n", 1, "p"),
        ("p=3 space=ball:1\n0\n", 1, "space"),
        ("p=3 space=finite:2\n0\n", 2, "values"),
        ("p=3 space=finite:2\n0\np^0 * [5]\n", 3, "digits"),
        ("p=3 space=finite:1\nhello\n", 2, "value"),
    ],
)
def test_function_file_errors_name_line_and_field(text, line, field):
    with pytest.raises(FormatError) as info:
        funcring.parse_function(text)
    assert info.value.line == line
    assert info.value.field == field
