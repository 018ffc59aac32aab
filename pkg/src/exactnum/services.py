"""p-adic valuations, integrality and integer factorization over Q."""

from sympy import factorint, isprime, multiplicity

from src.errors import DomainError
from src.exactnum.models import INFINITY, PrimeFactorization, Valuation, rat_to_str, to_rat


class ExactNumServices:
    """Valuation and factorization helpers; every method is pure."""

    def require_prime(self, p) -> int:
        """Coerce `p` to an int prime without truncating.

        Args:
            p: an int, an integral rational or its decimal text.

        Returns:
            int: the prime itself.

        Raises:
            DomainError: for non-integral, non-exact or composite input.
        """
        value = to_rat(p)
        if value.q != 1:
            raise DomainError(f"{rat_to_str(value)} is not an integer prime")
        p = int(value.p)
        if not isprime(p):
            raise DomainError(f"{p} is not prime")
        return p

    def padic_valuation(self, q, p) -> Valuation:
        """
        The p-adic valuation of a rational.

        Args:
            q: anything `to_rat` accepts.
            p: a prime, see `require_prime`.

        Returns:
            int | Infinity: ord_p(numerator) - ord_p(denominator); sympy's `oo` when q = 0.
        """
        p = self.require_prime(p)
        q = to_rat(q)
        if q == 0:
            return INFINITY
        return int(multiplicity(p, abs(int(q.p)))) - int(multiplicity(p, int(q.q)))

    def is_p_integral(self, q, p) -> bool:
        return bool(self.padic_valuation(q, p) >= 0)

    def factorize(self, n) -> PrimeFactorization:
        n = int(n)
        if n == 0:
            raise DomainError("cannot factorize 0")
        factors = factorint(abs(n))
        return PrimeFactorization(
            sign=1 if n > 0 else -1,
            factors=tuple(sorted((int(p), int(e)) for p, e in factors.items())),
        )

    def radical(self, n) -> int:
        rad = 1
        for p in self.factorize(n).primes():
            rad *= p
        return rad


exactnum_services = ExactNumServices()
