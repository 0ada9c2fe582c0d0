"""Divisor calculus: pullbacks, restricted differents, principal divisors,
and reconstruction of functions from degree-zero divisors."""

import random

import pytest

from rectower.divisor import (
    Divisor,
    div_of_set,
    divisor_to_function,
    principal_divisor,
    pullback,
    restricted_different,
)
from rectower.errors import InsufficientField, NonzeroDegree, ZeroFunction
from rectower.ff import FieldCtx
from rectower.p1 import ProjPoint, map_parse, point_parse, ratfun_parse
from rectower.upoly import Poly, RatFun, ratfun_proportional

F5 = FieldCtx(5)
F25 = FieldCtx(5, 2, [2, -1, 1])

F = map_parse("(x^2+x)/(3*x-1)", 5)
G = map_parse("y^2", 5)


def pts(*exprs, ctx=F5):
    return [point_parse(e, ctx) for e in exprs]


def S0():
    return pts("0", "1", "1/9", "inf")


def test_div_of_set_examples():
    d = div_of_set(S0())
    assert d.degree == 4 and d.is_effective()
    assert div_of_set([], ctx=F5).is_zero()
    assert div_of_set(pts("0", "0")) == Divisor(F5, {pts("0")[0]: 1})


def test_pullback_of_fixture_support():
    lhs = pullback(F, div_of_set(S0()))
    expected = Divisor(F5, dict(zip(
        pts("0", "-1", "1", "-1/3", "1/3", "inf"),
        (1, 1, 2, 2, 1, 1))))
    assert lhs == expected
    assert lhs.degree == 2 * 4


def test_pullback_through_square_map():
    lhs = pullback(G, div_of_set(S0()))
    expected = Divisor(F5, dict(zip(
        pts("0", "1", "-1", "1/3", "-1/3", "inf"),
        (2, 1, 1, 1, 1, 2))))
    assert lhs == expected


def test_pullback_zero_divisor():
    assert pullback(F, Divisor.zero(F5)).is_zero()


def test_pullback_insufficient_field():
    with pytest.raises(InsufficientField):
        pullback(G, div_of_set(pts("2")))  # nonsquare target


def test_restricted_differents():
    assert restricted_different(F, S0()) == div_of_set(pts("-1/3", "1"))
    assert restricted_different(G, S0()) == div_of_set(pts("0", "inf"))


def test_restricted_different_away_from_ramification():
    # T0 = roots of the splitting polynomial avoids Ram(g) = {0, inf}
    chi = Poly(F25, [-1, 2, 0, 2, 1])
    t0 = [ProjPoint.affine(x) for x in chi.roots()]
    assert restricted_different(G, t0, F25).is_zero()


def test_principal_divisor_rho():
    rho = ratfun_parse("(x-1)*(x+1/3)/x", F5)
    assert principal_divisor(rho) == Divisor(F5, dict(zip(
        pts("1", "-1/3", "0", "inf"), (1, 1, -1, -1))))


def test_principal_divisor_constant_and_zero():
    assert principal_divisor(ratfun_parse("3", F5)).is_zero()
    with pytest.raises(ZeroFunction):
        principal_divisor(RatFun.constant(F5, 0))


def test_principal_divisor_classical_tower():
    rho = ratfun_parse("(x-1)*(x+1)/x", F5)
    assert principal_divisor(rho) == Divisor(F5, dict(zip(
        pts("1", "-1", "0", "inf"), (1, 1, -1, -1))))


def test_principal_divisor_has_degree_zero_random():
    rng = random.Random(13)
    for _ in range(40):
        num = Poly(F25, [rng.randrange(5) for _ in range(rng.randint(1, 4))])
        den = Poly(F25, [rng.randrange(5) for _ in range(rng.randint(1, 4))])
        if num.is_zero() or den.is_zero():
            continue
        phi = RatFun(num, den)
        if phi.is_zero():
            continue
        try:
            d = principal_divisor(phi)
        except InsufficientField:
            continue
        assert d.degree == 0


def test_divisor_identity_for_both_towers():
    # f* div(S0) - g* div(S0) = D_f(S0) - D_g(S0)
    d0 = div_of_set(S0())
    assert pullback(F, d0) - pullback(G, d0) == \
        restricted_different(F, S0()) - restricted_different(G, S0())

    f2 = map_parse("(x^2+1)/(2*x)", 5)
    s0 = pts("1", "-1", "0", "inf")
    d0 = div_of_set(s0)
    assert pullback(f2, d0) - pullback(G, d0) == \
        restricted_different(f2, s0) - restricted_different(G, s0)


def test_rho_divisor_matches_different_gap():
    rho = ratfun_parse("(x-1)*(x+1/3)/x", F5)
    gap = restricted_different(F, S0()) - restricted_different(G, S0())
    assert principal_divisor(rho) == gap


def test_divisor_to_function_examples():
    d = Divisor(F5, dict(zip(pts("1", "-1/3", "0", "inf"), (1, 1, -1, -1))))
    phi = divisor_to_function(d)
    assert principal_divisor(phi) == d
    assert ratfun_proportional(phi, ratfun_parse("(x-1)*(x+1/3)/x", F5)) is not None

    assert divisor_to_function(Divisor.zero(F5)) == RatFun.constant(F5, 1)


def test_divisor_to_function_splitting_values():
    # div(T0) - div(S0) is the divisor of H_5(x) / (x (x-1) (x-1/9))
    chi = Poly(F25, [-1, 2, 0, 2, 1])
    t0 = [ProjPoint.affine(x) for x in chi.roots()]
    s0 = pts("0", "1", "1/9", "inf", ctx=F25)
    phi = divisor_to_function(div_of_set(t0) - div_of_set(s0))
    hp_lifted = Poly(F25, [1, 3, 0, 3, 4])
    reference = RatFun(hp_lifted, Poly(F25, [0, 1]) * Poly(F25, [-1, 1]) * Poly(F25, [-4, 1]))
    assert ratfun_proportional(phi, reference) is not None


def test_divisor_to_function_requires_degree_zero():
    with pytest.raises(NonzeroDegree):
        divisor_to_function(div_of_set(S0()))


def test_divisor_to_function_roundtrip_random():
    rng = random.Random(14)
    points = [ProjPoint.affine(x) for x in F25.elements()]
    points.append(ProjPoint.infinity(F25))
    for _ in range(40):
        chosen = rng.sample(points, rng.randint(2, 6))
        mults = [rng.randint(-3, 3) for _ in chosen[:-1]]
        mults.append(-sum(mults))
        d = Divisor(F25, dict(zip(chosen, mults)))
        assert d.degree == 0
        if d.is_zero():
            continue
        assert principal_divisor(divisor_to_function(d)) == d


def test_divisor_json_shape():
    d = div_of_set(pts("0", "inf"))
    assert d.to_json_obj() == [{"point": "0", "mult": 1}, {"point": "inf", "mult": 1}]
