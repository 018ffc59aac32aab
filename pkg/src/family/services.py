"""Wronskian, critical discriminant, membership in F_{d,lambda} and the
Aut^inf conjugation action on standard-form pairs.
"""

import logging

from sympy import primefactors

from src.config import Config
from src.errors import ConsistencyError, DomainError, NonMemberError
from src.exactnum.models import INFINITY, Rational, to_rat
from src.exactnum.services import ExactNumServices
from src.family.models import AffineAut, StandardPair
from src.family.schemas import MembershipReport
from src.upoly.models import Poly
from src.upoly.services import UPolyServices

logger = logging.getLogger(__name__)

exactnum_services = ExactNumServices()
upoly_services = UPolyServices()


class FamilyServices:
    """Operations on standard-form pairs; all of them are pure."""

    def wronskian(self, pair: StandardPair) -> Poly:
        """W_{A,B} = B*A' - A*B', of degree 2d-2 with leading coefficient lambda."""
        W = upoly_services.raw_wronskian(pair.A, pair.B)
        if W.degree != 2 * pair.d - 2 or W.leading_coefficient != pair.lam:
            raise ConsistencyError(f"Wronskian {W} does not have degree {2 * pair.d - 2} and leading coefficient {pair.lam}")
        return W

    def critical_discriminant(self, pair: StandardPair) -> Rational:
        return upoly_services.disc(self.wronskian(pair))

    def epsilon(self, d: int, lam) -> Rational:
        lam = to_rat(lam)
        if lam == 0:
            raise DomainError("epsilon is undefined for lambda = 0")
        if d < 2:
            raise DomainError("d must be at least 2")
        return (d - lam) / ((d - 1) * lam)

    def is_member(self, pair: StandardPair) -> MembershipReport:
        """
        Test the four conditions of F_{d,lambda}.

        Args:
            pair (StandardPair): any standard-form pair.

        Returns:
            MembershipReport: one flag per condition, epsilon, Delta and the verdict.
        """
        d = pair.d
        eps = self.epsilon(d, pair.lam)
        delta = self.critical_discriminant(pair)
        degree_ok = upoly_services.resultant(pair.A, pair.B) != 0
        f3_ok = pair.a(d - 1) == eps * pair.b(d - 2)
        separable_ok = delta != 0
        # (F2) holds by the shape of a standard-form pair
        multiplier_ok = True
        return MembershipReport(
            degree_ok=degree_ok,
            multiplier_ok=multiplier_ok,
            f3_ok=f3_ok,
            separable_ok=separable_ok,
            epsilon=eps,
            delta=delta,
            member=degree_ok and multiplier_ok and f3_ok and separable_ok,
        )

    def require_member(self, pair: StandardPair) -> MembershipReport:
        report = self.is_member(pair)
        if not report.member:
            failed = [
                name
                for name, ok in (("F1", report.degree_ok), ("F3", report.f3_ok), ("F4", report.separable_ok))
                if not ok
            ]
            raise NonMemberError(f"pair is not in F_{{{pair.d},{pair.lam}}}: fails {', '.join(failed)}")
        return report

    def conjugate(self, pair: StandardPair, sigma: AffineAut) -> StandardPair:
        """The pair of sigma o phi o sigma^-1:

            A^s(x) = alpha^d A(s^-1 x) + alpha^(d-1) beta B(s^-1 x)
            B^s(x) = alpha^(d-1) B(s^-1 x)

        Conjugating by tau and then by sigma equals conjugating by sigma o tau.

        Args:
            pair (StandardPair): the map phi.
            sigma (AffineAut): x -> alpha x + beta.

        Returns:
            StandardPair: a standard-form pair for the same (d, lambda), whose
            critical discriminant is alpha^((2d-2)(2d-3)) times the old one.

        Raises:
            ConsistencyError: when the debug re-check of that scaling fails.
        """
        d, alpha, beta = pair.d, sigma.alpha, sigma.beta
        inv = sigma.inverse()
        A_inv = upoly_services.affine_substitute(pair.A, inv.alpha, inv.beta)
        B_inv = upoly_services.affine_substitute(pair.B, inv.alpha, inv.beta)
        conjugated = StandardPair(
            d=d,
            lam=pair.lam,
            A=A_inv * alpha**d + B_inv * (alpha ** (d - 1) * beta),
            B=B_inv * alpha ** (d - 1),
        )
        if __debug__ and Config.CONSISTENCY_CHECKS and alpha != 1:
            self._check_discriminant_change(pair, conjugated, alpha)
        return conjugated

    def _check_discriminant_change(self, before: StandardPair, after: StandardPair, alpha: Rational):
        k = (2 * before.d - 2) * (2 * before.d - 3)
        delta_before = self.critical_discriminant(before)
        delta_after = self.critical_discriminant(after)
        if len(str(abs(delta_before.p))) <= Config.CONSISTENCY_DIGIT_THRESHOLD:
            ok = delta_after == alpha**k * delta_before
        else:
            ok = delta_before == 0 and delta_after == 0 or all(
                exactnum_services.padic_valuation(delta_after, q)
                == exactnum_services.padic_valuation(delta_before, q) + k * exactnum_services.padic_valuation(alpha, q)
                for q in primefactors(int(alpha.p) * int(alpha.q))
            )
        if not ok:
            raise ConsistencyError(f"critical discriminant did not scale by alpha^{k} under conjugation")

    def center(self, pair: StandardPair) -> tuple[StandardPair, AffineAut]:
        """Conjugate by x -> x + b_{d-2}/((d-1) lambda), killing b_{d-2}.

        Returns:
            tuple[StandardPair, AffineAut]: the centered pair and the translation
            used. The pair comes back unchanged when b_{d-2} is already 0.
        """
        beta = pair.b(pair.d - 2) / ((pair.d - 1) * pair.lam)
        sigma = AffineAut(alpha=1, beta=beta)
        if beta == 0:
            return pair, sigma
        centered = self.conjugate(pair, sigma)
        logger.debug("centered pair with beta=%s", beta)
        return centered, sigma

    def quadratic_normal_form(self, pair: StandardPair) -> tuple[StandardPair, AffineAut]:
        """For d = 2 members: the isomorphic pair (x^2 + a, lambda x), a != 0."""
        if pair.d != 2:
            raise DomainError("quadratic normal form needs d = 2")
        centered, sigma = self.center(pair)
        if centered.a(1) != 0:
            raise DomainError("(F3) fails: the centered pair still has a linear numerator term")
        if centered.a(0) == 0:
            raise DomainError("x^2 / (lambda x) is degenerate: the constant term must be nonzero")
        return centered, sigma

    def evaluate_map(self, pair: StandardPair, value):
        """phi(value) = A(value)/B(value); sympy's `oo` for poles and at infinity."""
        if value == INFINITY:
            return INFINITY
        value = to_rat(value)
        denominator = pair.B(value)
        if denominator == 0:
            return INFINITY
        return pair.A(value) / denominator


family_services = FamilyServices()
