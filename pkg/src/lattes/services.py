"""The Lattes family: phi(x(P)) = x(2P) on y^2 = f(x).

For a cubic f with distinct roots the Lattes pair is

    A = x^4 - 2b x^2 - 8c x + b^2 - 4ac = (f')^2 - (8x + 4a) f
    B = 4 f

a member of F_{4,4} whose critical discriminant is
-2^38 disc(f)^5 = -2^18 Delta_E^5.
"""

import logging

from sympy import primefactors

from src.errors import ConsistencyError, DomainError, UnsupportedCaseError
from src.exactnum.models import INFINITY, Rational, to_rat
from src.exactnum.services import ExactNumServices
from src.family.models import AffineAut, StandardPair
from src.family.services import FamilyServices
from src.lattes.models import Cubic, EllipticPoint
from src.lattes.schemas import (
    ConjugationCheckReport,
    CurveSzpiroReport,
    IdentityReport,
    ReductionType,
    ReductionTypeReport,
    SzpiroLocalReport,
    WeierstrassInvariants,
)
from src.reduction.services import ReductionServices
from src.upoly.models import Poly
from src.upoly.services import UPolyServices

logger = logging.getLogger(__name__)

exactnum_services = ExactNumServices()
upoly_services = UPolyServices()
family_services = FamilyServices()
reduction_services = ReductionServices()


class LattesServices:

    def require_elliptic(self, cubic: Cubic) -> Cubic:
        if not cubic.is_elliptic():
            raise DomainError(f"{cubic.f} has a repeated root, so y^2 = f(x) is not an elliptic curve")
        return cubic

    def build_lattes(self, cubic: Cubic) -> StandardPair:
        a, b, c = self.require_elliptic(cubic).a, cubic.b, cubic.c
        return StandardPair(
            d=4,
            lam=4,
            A=Poly([b**2 - 4 * a * c, -8 * c, -2 * b, 0, 1]),
            B=cubic.f * 4,
        )

    def weierstrass_invariants(self, cubic: Cubic) -> WeierstrassInvariants:
        self.require_elliptic(cubic)
        disc_f = upoly_services.disc(cubic.f)
        delta_E = 16 * disc_f
        c4 = 16 * cubic.a**2 - 48 * cubic.b
        return WeierstrassInvariants(disc_f=disc_f, delta_E=delta_E, c4=c4, j=c4**3 / delta_E)

    def verify_identities(self, cubic: Cubic) -> IdentityReport:
        """
        Check Delta_{A,B} = -2^38 disc(f)^5 = -2^18 Delta_E^5 and the numerator identity.

        Args:
            cubic (Cubic): an elliptic cubic.

        Returns:
            IdentityReport: the three values, all equal.

        Raises:
            ConsistencyError: if any identity fails.
        """
        pair = self.build_lattes(cubic)
        invariants = self.weierstrass_invariants(cubic)
        delta = family_services.critical_discriminant(pair)
        from_disc_f = -(Rational(2) ** 38) * invariants.disc_f**5
        from_delta_E = -(Rational(2) ** 18) * invariants.delta_E**5

        f = cubic.f
        numerator_identity_ok = pair.A == f.derivative() * f.derivative() - Poly([4 * cubic.a, 8]) * f
        if delta != from_disc_f or delta != from_delta_E or not numerator_identity_ok:
            raise ConsistencyError(f"Lattes discriminant identities fail for {f}")
        return IdentityReport(
            pair=pair,
            delta=delta,
            from_disc_f=from_disc_f,
            from_delta_E=from_delta_E,
            numerator_identity_ok=numerator_identity_ok,
            ok=True,
        )

    def on_curve(self, P: EllipticPoint, cubic: Cubic) -> bool:
        return P.infinity or P.y**2 == cubic.f(P.x)

    def _require_on_curve(self, P: EllipticPoint, cubic: Cubic):
        if not self.on_curve(P, cubic):
            raise DomainError(f"({P.x}, {P.y}) is not on y^2 = {cubic.f}")

    def add_points(self, P: EllipticPoint, Q: EllipticPoint, cubic: Cubic) -> EllipticPoint:
        """Chord and tangent law on y^2 = f(x), identity at infinity."""
        self._require_on_curve(P, cubic)
        self._require_on_curve(Q, cubic)
        if P.infinity:
            return Q
        if Q.infinity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return EllipticPoint.at_infinity()
            return self.double_point(P, cubic)
        slope = (Q.y - P.y) / (Q.x - P.x)
        x3 = slope**2 - cubic.a - P.x - Q.x
        return EllipticPoint(x=x3, y=-(P.y + slope * (x3 - P.x)))

    def double_point(self, P: EllipticPoint, cubic: Cubic) -> EllipticPoint:
        self._require_on_curve(P, cubic)
        if P.infinity or P.y == 0:
            return EllipticPoint.at_infinity()
        slope = cubic.f.derivative()(P.x) / (2 * P.y)
        x3 = slope**2 - cubic.a - 2 * P.x
        return EllipticPoint(x=x3, y=-(P.y + slope * (x3 - P.x)))

    def lattes_x_of_double(self, P: EllipticPoint, cubic: Cubic):
        """phi(x(P)) through the Lattes pair; `oo` for 2-torsion and for infinity."""
        if P.infinity:
            return INFINITY
        return family_services.evaluate_map(self.build_lattes(cubic), P.x)

    def transformed_cubic(self, cubic: Cubic, sigma: AffineAut) -> Cubic:
        """f*(x) = alpha^3 f(alpha^-1 (x - beta))."""
        inv = sigma.inverse()
        f_star = upoly_services.affine_substitute(cubic.f, inv.alpha, inv.beta) * sigma.alpha**3
        return Cubic(a=f_star.coeff(2), b=f_star.coeff(1), c=f_star.coeff(0))

    def lattes_conjugation_check(self, cubic: Cubic, sigma: AffineAut) -> ConjugationCheckReport:
        pair = self.build_lattes(cubic)
        f_star = self.transformed_cubic(cubic, sigma)
        conjugated = family_services.conjugate(pair, sigma)
        expected = self.build_lattes(f_star)
        if conjugated != expected:
            raise ConsistencyError(f"conjugating the Lattes pair of {cubic.f} by {sigma} misses the Lattes pair of {f_star.f}")
        return ConjugationCheckReport(
            sigma=sigma,
            transformed_cubic=f_star,
            conjugated=conjugated,
            expected=expected,
            equal=True,
        )

    def lattes_isomorphism_check(self, cubic: Cubic, u, r=0) -> ConjugationCheckReport:
        """(x, y) -> (u^2 x + r, u^3 y) carries the Lattes pair along with sigma(x) = u^2 x + r."""
        u = to_rat(u)
        if u == 0:
            raise DomainError("u must be nonzero")
        return self.lattes_conjugation_check(cubic, AffineAut(alpha=u**2, beta=to_rat(r)))

    def _integralizing_exponent(self, cubic: Cubic, p: int) -> int:
        k = 0
        for value, weight in ((cubic.a, 2), (cubic.b, 4), (cubic.c, 6)):
            v = exactnum_services.padic_valuation(value, p)
            if v < 0:
                k = max(k, -(v // weight))
        return k

    def scale_cubic(self, cubic: Cubic, u) -> Cubic:
        """The model y^2 = x^3 + a u^2 x^2 + b u^4 x + c u^6."""
        u = to_rat(u)
        return Cubic(a=cubic.a * u**2, b=cubic.b * u**4, c=cubic.c * u**6)

    def reduction_type_at(self, cubic: Cubic, p) -> ReductionTypeReport:
        """Classify y^2 = f(x) at an odd prime from ord_p(Delta_E) and ord_p(c4).

        When Delta_E is divisible by p but c4 is a p-unit the equation is
        p-minimal and the reduction is multiplicative; otherwise no
        minimality claim is made.

        Args:
            cubic (Cubic): any elliptic cubic; it is made p-integral by
                (a, b, c) -> (p^2k a, p^4k b, p^6k c) first.
            p (int): an odd prime.

        Returns:
            ReductionTypeReport: the type, k, ord_p(Delta_E) and ord_p(c4)
            (None when c4 = 0).

        Raises:
            DomainError: for p = 2 or a singular cubic.
        """
        p = exactnum_services.require_prime(p)
        if p == 2:
            raise DomainError("the short form y^2 = f(x) is not classified at p = 2")
        self.require_elliptic(cubic)
        k = self._integralizing_exponent(cubic, p)
        invariants = self.weierstrass_invariants(self.scale_cubic(cubic, p**k))
        ord_delta = exactnum_services.padic_valuation(invariants.delta_E, p)
        ord_c4 = exactnum_services.padic_valuation(invariants.c4, p)
        if ord_delta == 0:
            kind = ReductionType.GOOD
        elif ord_c4 == 0:
            kind = ReductionType.MULTIPLICATIVE_MINIMAL
        else:
            kind = ReductionType.ADDITIVE_OR_NONMINIMAL
        return ReductionTypeReport(
            p=p,
            reduction_type=kind,
            scaling_exponent=k,
            ord_delta_E=ord_delta,
            ord_c4=None if ord_c4 == INFINITY else ord_c4,
        )

    def szpiro_local_check(self, cubic: Cubic, p, m_max: int | None = None) -> SzpiroLocalReport:
        """
        Compare 5 ord_p(Delta_E) with delta_p(phi) at a semistable odd prime.

        Args:
            cubic (Cubic): an elliptic cubic.
            p (int): an odd prime of good or multiplicative reduction.
            m_max (int): deepest descent jump for delta_p.

        Returns:
            SzpiroLocalReport: both sides, the certificate of delta_p and
            whether the inequality holds.

        Raises:
            UnsupportedCaseError: at additive or non-minimal primes.
        """
        classification = self.reduction_type_at(cubic, p)
        if classification.reduction_type == ReductionType.ADDITIVE_OR_NONMINIMAL:
            raise UnsupportedCaseError(f"p = {classification.p} is additive or the equation is not minimal there")
        scaled = self.scale_cubic(cubic, classification.p**classification.scaling_exponent)
        result = reduction_services.local_minimize(self.build_lattes(scaled), classification.p, m_max)
        lhs = 5 * classification.ord_delta_E
        return SzpiroLocalReport(
            p=classification.p,
            reduction_type=classification.reduction_type,
            ord_delta_E=classification.ord_delta_E,
            lhs=lhs,
            delta_phi=result.delta,
            certified=result.certified,
            holds=lhs <= result.delta,
        )

    def curve_szpiro_report(self, cubic: Cubic, m_max: int | None = None) -> CurveSzpiroReport:
        """Classify every odd prime of Delta_E and compare with Delta(phi)."""
        self.require_elliptic(cubic)
        u = 1
        for q in sorted({int(q) for value in (cubic.a, cubic.b, cubic.c) for q in primefactors(int(value.q))}):
            u *= q ** self._integralizing_exponent(cubic, q)
        integral = self.scale_cubic(cubic, u)
        delta_E = self.weierstrass_invariants(integral).delta_E
        curve_primes = set(primefactors(abs(int(delta_E.p))))

        classifications = [self.reduction_type_at(integral, q) for q in sorted(curve_primes - {2})]
        local_checks = [
            self.szpiro_local_check(integral, report.p, m_max)
            for report in classifications
            if report.reduction_type != ReductionType.ADDITIVE_OR_NONMINIMAL
        ]
        gd = reduction_services.minimal_critical_discriminant(self.build_lattes(integral), m_max)
        phi_primes = [entry.p for entry in gd.entries]
        logger.info("curve %s: Delta_E primes %s, Delta(phi) primes %s", integral.f, sorted(curve_primes), phi_primes)
        return CurveSzpiroReport(
            integral_cubic=integral,
            scaling=u,
            delta_E=delta_E,
            classifications=classifications,
            semistable_at_checked_primes=all(
                report.reduction_type != ReductionType.ADDITIVE_OR_NONMINIMAL for report in classifications
            ),
            local_checks=local_checks,
            phi_primes=phi_primes,
            radical_ok=all(q in curve_primes for q in phi_primes if q not in (2, 3)),
            szpiro=reduction_services.szpiro_report(gd, 4),
        )


lattes_services = LattesServices()
