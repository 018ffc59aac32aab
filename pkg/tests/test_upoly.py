import pytest
from hypothesis import given, settings, strategies as st
from sympy import Rational

from src.errors import DomainError, IntegralityError, ParseError
from src.upoly.models import Poly, PolyModP, format_poly, parse_poly
from src.upoly.services import upoly_services
from tests.conftest import nonzero_rationals, small_rationals

polys = st.lists(small_rationals, min_size=2, max_size=7).filter(lambda cs: cs[-1] != 0).map(Poly)


def test_parse_and_format():
    P = parse_poly("x^4 - 2x^2 + 1")
    assert P.coefficients == (1, 0, -2, 0, 1)
    assert format_poly(P) == "x^4-2x^2+1"
    assert format_poly(parse_poly("3/8*x^2 - x")) == "3/8*x^2-x"
    assert format_poly(Poly()) == "0"
    assert parse_poly("4x^3+4x") == Poly([0, 4, 0, 4])


@pytest.mark.parametrize("text", ["x^^2", "", "2**x", "x+", "*x"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_poly(text)


def test_zero_polynomial_degree_is_negative_infinity():
    assert Poly().degree < 0
    assert Poly().is_zero


def test_resultant_orientation():
    a, b = Rational(2), Rational(7)
    assert upoly_services.resultant(Poly([-a, 1]), Poly([-b, 1])) == b - a


def test_disc_known_values():
    assert upoly_services.disc(parse_poly("x^3+x")) == -4
    assert upoly_services.disc(parse_poly("x^2-1")) == 4
    with pytest.raises(DomainError):
        upoly_services.disc(Poly([5]))


def test_resultant_of_zero_is_rejected():
    with pytest.raises(DomainError):
        upoly_services.resultant(Poly(), parse_poly("x"))


def test_subresultants_start_with_inputs():
    P, Q = parse_poly("x^3-2x+1"), parse_poly("3x^2-2")
    chain = upoly_services.subresultants(P, Q)
    assert chain[0] == P and chain[1] == Q


def test_gcd_is_monic():
    P = parse_poly("2x^2-2")
    Q = parse_poly("3x-3")
    assert upoly_services.gcd(P, Q) == parse_poly("x-1")
    with pytest.raises(DomainError):
        upoly_services.gcd(Poly(), Poly())


def test_reduce_mod_p():
    reduced = upoly_services.reduce_mod_p(parse_poly("x^2+3/2*x+7"), 5)
    assert reduced.coefficients == (2, 4, 1)
    with pytest.raises(IntegralityError):
        upoly_services.reduce_mod_p(parse_poly("1/2*x+1"), 2)


def test_squarefree_mod_p():
    assert upoly_services.is_squarefree_mod_p(PolyModP(5, [-1, 0, 1]))
    assert not upoly_services.is_squarefree_mod_p(PolyModP(3, [1, 2, 1]))
    # derivative vanishes identically
    assert not upoly_services.is_squarefree_mod_p(PolyModP(3, [0, 0, 0, 1]))


def test_roots_mod_p():
    assert PolyModP(7, [-1, 0, 1]).roots() == [1, 6]
    assert PolyModP(3, [1, 0, 1]).roots() == []


@settings(max_examples=200, deadline=None)
@given(polys, nonzero_rationals)
def test_disc_scaling(P, lam):
    N = int(P.degree)
    assert upoly_services.disc(P * lam) == lam ** (2 * N - 2) * upoly_services.disc(P)


@settings(max_examples=200, deadline=None)
@given(polys, nonzero_rationals, small_rationals)
def test_disc_under_affine_substitution(P, alpha, beta):
    N = int(P.degree)
    substituted = upoly_services.affine_substitute(P, alpha, beta)
    assert upoly_services.disc(substituted) == alpha ** (N * (N - 1)) * upoly_services.disc(P)


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_raw_wronskian_is_antisymmetric(A, B):
    assert upoly_services.raw_wronskian(A, B) == -upoly_services.raw_wronskian(B, A)


@settings(max_examples=100, deadline=None)
@given(polys)
def test_text_form_round_trips(P):
    assert parse_poly(format_poly(P)) == P


integer_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=6).filter(lambda cs: cs[-1] != 0).map(Poly)


def test_resultant_and_gcd_known_values():
    assert upoly_services.resultant(parse_poly("x^4-2x^2+1"), parse_poly("4x^3+4x")) != 0
    assert upoly_services.gcd(parse_poly("x^3+x"), parse_poly("3x^2+1")) == Poly([1])


def test_affine_substitution_round_trip():
    P = parse_poly("x^4-2x^2+1")
    beta = Rational(-5, 3)
    shifted = upoly_services.affine_substitute(P, 1, beta)
    assert upoly_services.affine_substitute(shifted, 1, -beta) == P


@settings(max_examples=200, deadline=None)
@given(polys, small_rationals)
def test_affine_substitution_round_trip_property(P, beta):
    shifted = upoly_services.affine_substitute(P, 1, beta)
    assert upoly_services.affine_substitute(shifted, 1, -beta) == P


@settings(max_examples=150, deadline=None)
@given(integer_polys, integer_polys, st.booleans())
def test_disc_vanishes_exactly_on_repeated_roots(Q, R, square):
    P = Q * Q * R if square else Q * R
    if P.degree < 1:
        return
    repeated = upoly_services.gcd(P, P.derivative()).degree > 0
    assert (upoly_services.disc(P) == 0) == repeated


@settings(max_examples=150, deadline=None)
@given(integer_polys, integer_polys, integer_polys, st.booleans())
def test_resultant_vanishes_exactly_on_common_factors(P, Q, shared, share):
    if share:
        P, Q = P * shared, Q * shared
    common = upoly_services.gcd(P, Q).degree > 0
    assert (upoly_services.resultant(P, Q) == 0) == common


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_resultant_is_multiplicative(P, Q, R):
    assert upoly_services.resultant(P, Q * R) == upoly_services.resultant(P, Q) * upoly_services.resultant(P, R)


@settings(max_examples=150, deadline=None)
@given(integer_polys, integer_polys)
def test_subresultants_stay_integral(P, Q):
    chain = upoly_services.subresultants(P, Q)
    for S in chain:
        assert all(c.q == 1 for c in S.coefficients)
    degrees = [int(S.degree) for S in chain]
    assert degrees[0] >= degrees[1]
    assert all(later < earlier for earlier, later in zip(degrees[1:], degrees[2:]))
    assert chain[-1].monic() == upoly_services.gcd(P, Q)


def test_squarefree_mod_p_matches_disc(rng):
    for _ in range(500):
        p = rng.choice([3, 5, 7, 11, 13])
        n = rng.randint(2, 6)
        lc = rng.choice([u for u in range(1, 3 * p) if u % p])
        W = Poly([rng.randint(-3 * p, 3 * p) for _ in range(n)] + [lc])
        disc = upoly_services.disc(W)
        assert disc.q == 1
        squarefree = upoly_services.is_squarefree_mod_p(upoly_services.reduce_mod_p(W, p))
        assert squarefree == (disc % p != 0)
