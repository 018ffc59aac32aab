"""Local theory at a prime p: integrality, reduction of standard-form pairs,
the descent computing delta_p, and the global minimal critical
discriminant.

Over Q an ideal prod p^e is the positive integer prod p^e, and its norm is
that integer itself.
"""

import logging
from math import lcm

from mpmath import mp
from sympy import ZZ, Rational, primefactors
from sympy.polys.densetools import dup_shift

from src.config import Config
from src.errors import ConsistencyError, DomainError, IntegralityError, NonMemberError
from src.exactnum.models import to_rat
from src.exactnum.services import ExactNumServices
from src.family.models import AffineAut, StandardPair
from src.family.services import FamilyServices
from src.reduction.schemas import (
    GlobalDiscriminant,
    GlobalDiscriminantEntry,
    LocalMinimizationResult,
    QuadraticBoundCheck,
    ReductionReport,
    SzpiroReport,
)
from src.upoly.models import PolyModP
from src.upoly.services import UPolyServices

logger = logging.getLogger(__name__)

exactnum_services = ExactNumServices()
upoly_services = UPolyServices()
family_services = FamilyServices()


def exponent_bound(d: int) -> int:
    """(2d-2)(2d-3): how much ord_p(Delta) moves per level of p-scaling."""
    return (2 * d - 2) * (2 * d - 3)


class ReductionServices:
    """
    Local and global minimization of critical discriminants.

    Responsibilities:
    - Reducing integral pairs modulo p
    - Descending to p-minimal models and certifying delta_p
    - Assembling Delta(phi) and its Szpiro report
    """

    def s_lambda(self, lam) -> set[int]:
        """Primes where lambda is not integral (the finite part of S_lambda)."""
        lam = to_rat(lam)
        if lam == 0:
            raise DomainError("S_lambda is undefined for lambda = 0")
        return set(int(q) for q in primefactors(int(lam.q)))

    def is_v_integral(self, pair: StandardPair, p) -> bool:
        return all(exactnum_services.is_p_integral(c, p) for c in [pair.lam, *pair.free_coefficients()])

    def reduce_map(self, pair: StandardPair, p) -> tuple[PolyModP, PolyModP, ReductionReport]:
        """Reduce an integral pair mod p and test critically separable good reduction.

        When lambda = 0 mod p the reduced map has infinity as a critical
        point and the reduced Wronskian drops to degree 2d-3.

        Args:
            pair (StandardPair): a p-integral pair.
            p (int): a prime.

        Returns:
            tuple[PolyModP, PolyModP, ReductionReport]: A mod p, B mod p and
            the report whose `model_good` agrees with Delta != 0 mod p.

        Raises:
            IntegralityError: if some coefficient has p in its denominator.
        """
        p = exactnum_services.require_prime(p)
        if not self.is_v_integral(pair, p):
            raise IntegralityError(f"pair is not {p}-integral")

        A_bar = upoly_services.reduce_mod_p(pair.A, p)
        B_bar = upoly_services.reduce_mod_p(pair.B, p)
        W_bar = upoly_services.reduce_mod_p(upoly_services.raw_wronskian(pair.A, pair.B), p)

        infinity_critical = upoly_services.reduce_rat_mod_p(pair.lam, p) == 0
        expected = 2 * pair.d - 3 if infinity_critical else 2 * pair.d - 2
        reduced_degree_ok = A_bar.degree == pair.d
        coprime_ok = not B_bar.is_zero and A_bar.gcd(B_bar).degree <= 0
        if W_bar.is_zero:
            wronskian_degree = None
            squarefree_ok = False
        else:
            wronskian_degree = int(W_bar.degree)
            squarefree_ok = wronskian_degree == expected and upoly_services.is_squarefree_mod_p(W_bar)

        report = ReductionReport(
            p=p,
            reduced_A=str(A_bar),
            reduced_B=str(B_bar),
            reduced_degree_ok=reduced_degree_ok,
            coprime_ok=coprime_ok,
            wronskian_squarefree_ok=squarefree_ok,
            wronskian_degree=wronskian_degree,
            infinity_critical=infinity_critical,
            model_good=reduced_degree_ok and coprime_ok and squarefree_ok,
        )
        return A_bar, B_bar, report

    def _integralizing_exponent(self, pair: StandardPair, p: int) -> int:
        """Least m >= 0 such that conjugating by x -> p^m x makes a_j, b_j p-integral."""
        d, m = pair.d, 0
        for j in range(d):
            v = exactnum_services.padic_valuation(pair.a(j), p)
            if v < 0:
                m = max(m, -(v // (d - j)))
        for j in range(d - 1):
            v = exactnum_services.padic_valuation(pair.b(j), p)
            if v < 0:
                m = max(m, -(v // (d - 1 - j)))
        return m

    def _integer_coefficients(self, pair: StandardPair) -> tuple[list[int], list[int]]:
        """A and B times the lcm of their denominators, descending, for dup_shift."""
        scale = lcm(*(int(c.q) for c in pair.A.coefficients + pair.B.coefficients))
        A = [int(c * scale) for c in reversed(pair.A.coefficients)]
        B = [int(c * scale) for c in reversed(pair.B.coefficients)]
        return A, B

    def _descent_candidates(self, pair: StandardPair, p: int, m: int):
        """Residues gamma mod p^m worth testing: -gamma reduces to a common root of A, B mod p."""
        for root in self._common_roots(pair, p):
            base = -root % p
            for lift in range(p ** (m - 1)):
                yield base + p * lift

    def _descent_step(self, pair: StandardPair, p: int, m: int) -> AffineAut | None:
        """Look for sigma(x) = (x + gamma)/p^m keeping the conjugated pair p-integral.

        With H = A + gamma B the conditions are that H(p^m x - gamma) vanishes
        mod p^(md) and B(p^m x - gamma) mod p^(m(d-1)), coefficientwise.
        Returns None when no residue gamma mod p^m works.
        """
        d = pair.d
        A, B = self._integer_coefficients(pair)
        B_padded = [0] + B
        for gamma in self._descent_candidates(pair, p, m):
            g = dup_shift(B, -gamma, ZZ)[::-1]
            if any(g[k] % p ** (m * (d - 1 - k)) for k in range(d - 1)):
                continue
            H = [a + gamma * b for a, b in zip(A, B_padded)]
            h = dup_shift(H, -gamma, ZZ)[::-1]
            if any(h[k] % p ** (m * (d - k)) for k in range(d)):
                continue
            return AffineAut(alpha=Rational(1, p**m), beta=Rational(gamma, p**m))
        return None

    def _common_roots(self, pair: StandardPair, p: int) -> list[int]:
        A_bar = upoly_services.reduce_mod_p(pair.A, p)
        B_bar = upoly_services.reduce_mod_p(pair.B, p)
        return A_bar.gcd(B_bar).roots()

    def _find_step(self, model: StandardPair, p: int, m_max: int, order: int, capped: list[int]):
        """Single level first, then jumps of 2..m_max levels; None when all fail."""
        bound = exponent_bound(model.d)
        roots = len(self._common_roots(model, p))
        for m in range(1, max(m_max, 1) + 1):
            if m * bound > order:
                break
            if m > 1 and roots * p ** (m - 1) > Config.JUMP_CANDIDATE_CAP:
                if m not in capped:
                    logger.warning("p=%s: jump level %s exceeds the candidate cap, skipped", p, m)
                    capped.append(m)
                continue
            sigma = self._descent_step(model, p, m)
            if sigma is not None:
                return m, sigma
        return None

    def local_minimize(self, pair: StandardPair, p, m_max: int | None = None) -> LocalMinimizationResult:
        """Compute delta_p of the map, certified when it drops below (2d-2)(2d-3).

        Args:
            pair (StandardPair): any model of the map; it need not be p-integral.
            p (int): a prime outside S_lambda.
            m_max (int): deepest multi-level jump to try once single-level
                descent stalls. Defaults to `Config.M_MAX`.

        Returns:
            LocalMinimizationResult: delta, certificate, the witness
            conjugation and the p-integral model it produces.
        """
        p = exactnum_services.require_prime(p)
        m_max = Config.M_MAX if m_max is None else m_max
        if m_max < 0:
            raise DomainError("m_max must be nonnegative")
        if p in self.s_lambda(pair.lam):
            raise DomainError(f"delta_p is only defined outside S_lambda, and {p} divides the denominator of lambda")
        if family_services.critical_discriminant(pair) == 0:
            raise NonMemberError("the critical discriminant vanishes, so delta_p is infinite")

        bound = exponent_bound(pair.d)
        witness = AffineAut.scaling(p ** self._integralizing_exponent(pair, p))
        model = family_services.conjugate(pair, witness) if not witness.is_identity() else pair
        start = exactnum_services.padic_valuation(family_services.critical_discriminant(model), p)
        order, steps, capped = start, 0, []

        while order >= bound:
            step = self._find_step(model, p, m_max, order, capped)
            if step is None:
                break
            m, sigma = step
            model = family_services.conjugate(model, sigma)
            witness = sigma.compose(witness)
            order -= m * bound
            steps += m
            logger.debug("p=%s: descended %s level(s), ord_p(Delta) now %s", p, m, order)

        minimal_model = self._verify_witness(pair, witness, model, p, order)
        certified = order < bound
        if not certified:
            logger.info("p=%s: descent stalled at ord_p(Delta)=%s, result uncertified", p, order)
        return LocalMinimizationResult(
            p=p,
            delta=order,
            certified=certified,
            witness=witness,
            minimal_model=minimal_model,
            input_valuation=start,
            descent_steps=steps,
            capped_levels=capped,
        )

    def _verify_witness(self, pair: StandardPair, witness: AffineAut, model: StandardPair, p: int, order: int) -> StandardPair:
        rebuilt = family_services.conjugate(pair, witness)
        if rebuilt != model:
            raise ConsistencyError("the composed witness does not reproduce the descended model")
        if not self.is_v_integral(rebuilt, p):
            raise ConsistencyError(f"minimal model is not {p}-integral")
        if exactnum_services.padic_valuation(family_services.critical_discriminant(rebuilt), p) != order:
            raise ConsistencyError("ord_p of the minimal model's discriminant disagrees with the descent")
        return rebuilt

    def has_good_reduction(self, pair: StandardPair, p, m_max: int | None = None) -> bool:
        return self.local_minimize(pair, p, m_max).delta == 0

    def minimal_critical_discriminant(self, pair: StandardPair, m_max: int | None = None) -> GlobalDiscriminant:
        """
        Delta(phi) = prod p^delta_p over the primes outside S_lambda.

        The pair is first scaled by the least N clearing every denominator,
        then minimized at each prime of the resulting Delta in ascending order.

        Args:
            pair (StandardPair): a member of F_{d,lambda}.
            m_max (int): deepest descent jump, `Config.M_MAX` when omitted.

        Returns:
            GlobalDiscriminant: the primes with delta_p > 0, their certificates,
            the excluded primes of S_lambda and the scaling N.

        Raises:
            NonMemberError: if the pair is not in F_{d,lambda}.
        """
        family_services.require_member(pair)
        excluded = self.s_lambda(pair.lam)

        denominators = {int(q) for c in pair.free_coefficients() for q in primefactors(int(c.q))}
        N = 1
        for q in sorted(denominators):
            N *= q ** self._integralizing_exponent(pair, q)
        model = family_services.conjugate(pair, AffineAut.scaling(N)) if N != 1 else pair
        delta = family_services.critical_discriminant(model)

        entries = []
        for q in sorted(set(primefactors(abs(int(delta.p)))) - excluded):
            result = self.local_minimize(model, q, m_max)
            if result.delta > 0:
                entries.append(GlobalDiscriminantEntry(p=q, delta=result.delta, certified=result.certified))
        logger.info("minimal critical discriminant support: %s", [entry.p for entry in entries])
        return GlobalDiscriminant(excluded_primes=sorted(excluded), entries=entries, scaling=N)

    def radical(self, gd: GlobalDiscriminant) -> int:
        rad = 1
        for entry in gd.entries:
            rad *= entry.p
        return rad

    def norm(self, gd: GlobalDiscriminant) -> int:
        value = 1
        for entry in gd.entries:
            value *= entry.p**entry.delta
        return value

    def format_ratio(self, norm_delta: int, norm_radical: int) -> str | None:
        """log N(Delta) / log N(rad) with `Config.RATIO_DIGITS` decimals; None when rad = 1."""
        if norm_radical == 1:
            return None
        digits = Config.RATIO_DIGITS
        with mp.workdps(Config.LOG_PRECISION):
            scaled = int(mp.nint(mp.log(norm_delta) / mp.log(norm_radical) * 10**digits))
        whole, frac = divmod(scaled, 10**digits)
        return f"{whole}.{frac:0{digits}d}" if digits else str(whole)

    def szpiro_report(self, gd: GlobalDiscriminant, d: int) -> SzpiroReport:
        """
        Summarize a global discriminant for Szpiro-style comparisons.

        Args:
            gd (GlobalDiscriminant): output of `minimal_critical_discriminant`.
            d (int): degree of the map, for the exponent bound.

        Returns:
            SzpiroReport: norm, radical, (2d-2)(2d-3), the rounded log ratio
            (None when the radical is 1) and whether every entry is certified.
        """
        norm_delta, norm_radical = self.norm(gd), self.radical(gd)
        return SzpiroReport(
            norm_delta=norm_delta,
            norm_radical=norm_radical,
            exponent_bound=exponent_bound(d),
            ratio=self.format_ratio(norm_delta, norm_radical),
            all_certified=all(entry.certified for entry in gd.entries),
        )

    def quadratic_bound_model(self, pair: StandardPair, p) -> tuple[StandardPair, QuadraticBoundCheck]:
        """The model x^2 + p^(2m) a, lambda x with 0 <= ord_p(p^(2m) a) <= 1.

        Its discriminant 4 lambda^2 p^(2m) a bounds delta_p by ord_p(4 lambda^2) + 1.

        Args:
            pair (StandardPair): a member of F_{2,lambda}.
            p (int): a prime outside S_lambda.

        Returns:
            tuple[StandardPair, QuadraticBoundCheck]: the model and the check of
            both its valuation and its minimized delta against the bound.

        Raises:
            ConsistencyError: if either value exceeds the bound.
        """
        if pair.d != 2:
            raise DomainError("the quadratic model needs d = 2")
        if not family_services.is_member(pair).member:
            raise DomainError("the quadratic model needs a member of F_{2,lambda}")
        p = exactnum_services.require_prime(p)
        if p in self.s_lambda(pair.lam):
            raise DomainError(f"{p} is in S_lambda")

        normal, _ = family_services.quadratic_normal_form(pair)
        m = -(exactnum_services.padic_valuation(normal.a(0), p) // 2)
        sigma = AffineAut.scaling(Rational(p) ** m)
        model = family_services.conjugate(normal, sigma)

        bound = exactnum_services.padic_valuation(4 * pair.lam**2, p) + 1
        model_valuation = exactnum_services.padic_valuation(family_services.critical_discriminant(model), p)
        if model_valuation > bound:
            raise ConsistencyError(f"ord_{p}(Delta) = {model_valuation} exceeds ord_{p}(4 lambda^2) + 1 = {bound}")
        minimized = self.local_minimize(model, p)
        if minimized.delta > bound:
            raise ConsistencyError(f"descent ended at {minimized.delta}, above the bound {bound}")
        return model, QuadraticBoundCheck(
            p=p,
            m=m,
            sigma=sigma,
            model_valuation=model_valuation,
            bound=bound,
            minimized_delta=minimized.delta,
            within_bound=True,
        )


reduction_services = ReductionServices()
