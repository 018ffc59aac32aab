import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError
from sympy import Rational, oo, primefactors

from src.errors import DomainError, UnsupportedCaseError
from src.family.models import AffineAut
from src.family.services import family_services
from src.lattes.models import Cubic, EllipticPoint
from src.lattes.schemas import ReductionType
from src.lattes.services import lattes_services
from src.upoly.models import parse_poly
from tests.conftest import nonzero_rationals, random_cubic, small_rationals


def manufactured_point(rng: random.Random) -> tuple[Cubic, EllipticPoint]:
    """Pick x0, y0 != 0, a, b and solve for c so that (x0, y0) lies on the curve."""
    while True:
        x0 = Rational(rng.randint(-12, 12), rng.randint(1, 4))
        y0 = Rational(rng.choice([n for n in range(-12, 13) if n]), rng.randint(1, 4))
        a, b = Rational(rng.randint(-6, 6)), Rational(rng.randint(-6, 6), rng.randint(1, 3))
        c = y0**2 - x0**3 - a * x0**2 - b * x0
        cubic = Cubic(a=a, b=b, c=c)
        if cubic.is_elliptic():
            return cubic, EllipticPoint.affine(x0, y0)


def test_build_lattes_known_values(x3_plus_x):
    pair = lattes_services.build_lattes(x3_plus_x)
    assert (pair.d, pair.lam) == (4, 4)
    assert pair.A == parse_poly("x^4-2x^2+1")
    assert pair.B == parse_poly("4x^3+4x")

    other = lattes_services.build_lattes(Cubic(a=0, b=-1, c=1))
    assert other.A == parse_poly("x^4+2x^2-8x+1")
    assert other.B == parse_poly("4x^3-4x+4")


def test_build_lattes_needs_elliptic_curve():
    with pytest.raises(DomainError):
        lattes_services.build_lattes(Cubic(a=0, b=0, c=0))
    with pytest.raises(DomainError):
        lattes_services.build_lattes(Cubic(a=-2, b=1, c=0))


def test_lattes_pairs_are_members(rng):
    for _ in range(100):
        assert family_services.is_member(lattes_services.build_lattes(random_cubic(rng))).member


def test_weierstrass_invariants(x3_plus_x):
    invariants = lattes_services.weierstrass_invariants(x3_plus_x)
    assert invariants.disc_f == -4
    assert invariants.delta_E == -64

    other = lattes_services.weierstrass_invariants(Cubic(a=0, b=-1, c=0))
    assert (other.disc_f, other.delta_E, other.c4) == (4, 64, 48)


def test_cubic_disc_matches_polynomial_discriminant(rng):
    for _ in range(100):
        cubic = random_cubic(rng)
        invariants = lattes_services.weierstrass_invariants(cubic)
        assert cubic.disc == invariants.disc_f
        assert invariants.j * invariants.delta_E == invariants.c4**3


def test_discriminant_identities(rng, x3_plus_x):
    report = lattes_services.verify_identities(x3_plus_x)
    assert report.delta == 2**48
    assert report.ok
    for _ in range(100):
        report = lattes_services.verify_identities(random_cubic(rng))
        assert report.delta == report.from_disc_f == report.from_delta_E
        assert report.numerator_identity_ok


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=-9, max_value=9), st.integers(min_value=-9, max_value=9), st.integers(min_value=-9, max_value=9), nonzero_rationals)
def test_scaling_the_cubic(a, b, c, alpha):
    cubic = Cubic(a=a, b=b, c=c)
    if not cubic.is_elliptic():
        return
    scaled = lattes_services.transformed_cubic(cubic, AffineAut.scaling(alpha))
    assert scaled.disc == alpha**6 * cubic.disc
    delta = family_services.critical_discriminant(lattes_services.build_lattes(cubic))
    assert family_services.critical_discriminant(lattes_services.build_lattes(scaled)) == alpha**30 * delta


def test_double_point_hand_case():
    cubic = Cubic(a=0, b=-1, c=1)
    doubled = lattes_services.double_point(EllipticPoint.affine(0, 1), cubic)
    assert doubled.x == Rational(1, 4)
    assert lattes_services.on_curve(doubled, cubic)
    assert lattes_services.lattes_x_of_double(EllipticPoint.affine(0, 1), cubic) == Rational(1, 4)


def test_two_torsion_doubles_to_infinity():
    cubic = Cubic(a=0, b=-1, c=0)
    assert lattes_services.double_point(EllipticPoint.affine(1, 0), cubic).infinity
    assert lattes_services.double_point(EllipticPoint.at_infinity(), cubic).infinity
    assert lattes_services.lattes_x_of_double(EllipticPoint.affine(1, 0), cubic) == oo


def test_double_point_off_curve():
    with pytest.raises(DomainError):
        lattes_services.double_point(EllipticPoint.affine(0, 2), Cubic(a=0, b=-1, c=1))


def test_point_validation():
    with pytest.raises(ValidationError):
        EllipticPoint(x=1)
    with pytest.raises(ValidationError):
        EllipticPoint(x=1, y=1, infinity=True)


def test_lattes_commutes_with_doubling(rng):
    for _ in range(50):
        cubic, point = manufactured_point(rng)
        doubled = lattes_services.double_point(point, cubic)
        assert lattes_services.on_curve(doubled, cubic)
        assert family_services.evaluate_map(lattes_services.build_lattes(cubic), point.x) == doubled.x


def test_add_points_group_law(rng):
    for _ in range(20):
        cubic, point = manufactured_point(rng)
        doubled = lattes_services.add_points(point, point, cubic)
        tripled = lattes_services.add_points(doubled, point, cubic)
        assert lattes_services.on_curve(tripled, cubic)
        assert lattes_services.add_points(point, point.negate(), cubic).infinity
        assert lattes_services.add_points(point, EllipticPoint.at_infinity(), cubic) == point


def test_conjugation_check(x3_plus_x):
    report = lattes_services.lattes_conjugation_check(x3_plus_x, AffineAut.identity())
    assert report.equal
    report = lattes_services.lattes_conjugation_check(x3_plus_x, AffineAut.scaling(4))
    assert report.transformed_cubic == Cubic(a=0, b=16, c=0)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), nonzero_rationals, small_rationals)
def test_conjugation_check_random(seed, alpha, beta):
    cubic = random_cubic(random.Random(seed))
    assert lattes_services.lattes_conjugation_check(cubic, AffineAut(alpha=alpha, beta=beta)).equal


def test_isomorphism_check(rng):
    for _ in range(20):
        cubic = random_cubic(rng)
        u = Rational(rng.choice([1, 2, 3, -2]), rng.choice([1, 2, 5]))
        report = lattes_services.lattes_isomorphism_check(cubic, u, rng.randint(-5, 5))
        assert report.sigma.alpha == u**2
        assert report.equal


def test_center_depresses_the_cubic():
    cubic = Cubic(a=3, b=1, c=2)
    centered, sigma = family_services.center(lattes_services.build_lattes(cubic))
    depressed = lattes_services.transformed_cubic(cubic, sigma)
    assert depressed.a == 0
    assert centered == lattes_services.build_lattes(depressed)


def test_reduction_type():
    assert lattes_services.reduction_type_at(Cubic(a=0, b=1, c=0), 5).reduction_type == ReductionType.GOOD
    report = lattes_services.reduction_type_at(Cubic(a=0, b=-1, c=1), 23)
    assert report.reduction_type == ReductionType.MULTIPLICATIVE_MINIMAL
    assert report.ord_delta_E == 1
    assert lattes_services.reduction_type_at(Cubic(a=0, b=0, c=3), 3).reduction_type == ReductionType.ADDITIVE_OR_NONMINIMAL
    with pytest.raises(DomainError):
        lattes_services.reduction_type_at(Cubic(a=0, b=1, c=0), 2)


def test_reduction_type_integralizes():
    report = lattes_services.reduction_type_at(Cubic(a=0, b=Rational(1, 81), c=0), 3)
    assert report.scaling_exponent == 1
    assert report.reduction_type == ReductionType.GOOD


def test_szpiro_local_check():
    report = lattes_services.szpiro_local_check(Cubic(a=0, b=-1, c=1), 23)
    assert report.lhs == 5
    assert report.delta_phi == 5
    assert report.certified and report.holds

    good = lattes_services.szpiro_local_check(Cubic(a=0, b=1, c=0), 5)
    assert good.delta_phi == 0 and good.holds

    with pytest.raises(UnsupportedCaseError):
        lattes_services.szpiro_local_check(Cubic(a=0, b=0, c=3), 3)


def test_szpiro_local_inequality_on_multiplicative_primes():
    grid = (Cubic(a=a, b=b, c=c) for a in (0, 1, -1) for b in (-2, -1, 1, 2) for c in (1, 2, 3, 5))
    cubics = list(itertools.islice((cubic for cubic in grid if cubic.is_elliptic()), 20))
    assert len(cubics) == 20
    checked = 0
    for cubic in cubics:
        delta_E = lattes_services.weierstrass_invariants(cubic).delta_E
        for p in primefactors(abs(int(delta_E))):
            if p == 2:
                continue
            if lattes_services.reduction_type_at(cubic, p).reduction_type != ReductionType.MULTIPLICATIVE_MINIMAL:
                continue
            report = lattes_services.szpiro_local_check(cubic, p)
            checked += 1
            if report.certified:
                assert report.holds
    assert checked > 0


def test_curve_szpiro_report():
    report = lattes_services.curve_szpiro_report(Cubic(a=0, b=-1, c=1))
    assert report.scaling == 1
    assert [c.p for c in report.classifications] == [23]
    assert report.semistable_at_checked_primes
    assert report.radical_ok
    assert 23 in report.phi_primes
    assert report.szpiro.exponent_bound == 30
