"""Polynomial algorithms: substitution, gcd, resultant, discriminant and
reduction modulo a prime.

Resultants come from sympy's subresultant polynomial remainder sequence
(fraction-free on integer input), never from expanding a Sylvester
determinant. Orientation: res(x - a, x - b) = b - a, i.e.

    res(P, Q) = lc(Q)^deg(P) * prod_{Q(s) = 0} P(s)

and disc(P) = (-1)^(N(N-1)/2) * res(P, P') / lc(P), which gives
disc(x^3 + x) = -4.
"""

from src.errors import DomainError, IntegralityError
from src.exactnum.models import Rational, rat_to_str, to_rat
from src.exactnum.services import ExactNumServices
from src.upoly.models import Poly, PolyModP

exactnum_services = ExactNumServices()


class UPolyServices:

    def affine_substitute(self, P: Poly, alpha, beta) -> Poly:
        """P(alpha*x + beta) by Horner composition."""
        return P.compose(Poly([to_rat(beta), to_rat(alpha)]))

    def gcd(self, P: Poly, Q: Poly) -> Poly:
        """Monic gcd over Q."""
        if P.is_zero and Q.is_zero:
            raise DomainError("gcd(0, 0) is undefined")
        return Poly.from_sympy(P.rep.gcd(Q.rep)).monic()

    def resultant(self, P: Poly, Q: Poly) -> Rational:
        """
        res(P, Q) from the subresultant sequence.

        Args:
            P (Poly): nonzero.
            Q (Poly): nonzero.

        Returns:
            Rational: lc(Q)^deg(P) times the product of P over the roots of Q;
            0 exactly when P and Q share a factor.
        """
        if P.is_zero or Q.is_zero:
            raise DomainError("resultant with the zero polynomial is undefined")
        return to_rat(Q.rep.resultant(P.rep))

    def subresultants(self, P: Poly, Q: Poly) -> list[Poly]:
        """The subresultant PRS of (P, Q), starting with P and Q themselves."""
        return [Poly.from_sympy(s) for s in P.rep.subresultants(Q.rep)]

    def disc(self, P: Poly) -> Rational:
        if P.is_zero or P.degree < 1:
            raise DomainError(f"discriminant needs degree >= 1, got {P}")
        n = int(P.degree)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return sign * self.resultant(P, P.derivative()) / P.leading_coefficient

    def raw_wronskian(self, A: Poly, B: Poly) -> Poly:
        """B*A' - A*B' for arbitrary polynomials."""
        return B * A.derivative() - A * B.derivative()

    def reduce_rat_mod_p(self, q, p: int) -> int:
        q = to_rat(q)
        return int(q.p) * pow(int(q.q), -1, p) % p

    def reduce_mod_p(self, P: Poly, p) -> PolyModP:
        p = exactnum_services.require_prime(p)
        for j, c in enumerate(P.coefficients):
            if not exactnum_services.is_p_integral(c, p):
                raise IntegralityError(
                    f"coefficient of x^{j} ({rat_to_str(c)}) is not {p}-integral"
                )
        return PolyModP(p, [self.reduce_rat_mod_p(c, p) for c in P.coefficients])

    def is_squarefree_mod_p(self, P: PolyModP) -> bool:
        """gcd(P, P') constant over F_p; degree checks are the caller's."""
        if P.is_zero:
            raise DomainError("the zero polynomial is not squarefree")
        return bool(P.gcd(P.derivative()).degree <= 0)


upoly_services = UPolyServices()
