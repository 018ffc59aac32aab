"""Exact numbers: the `Rat` / `BigInt` aliases and prime factorizations.

Rationals are sympy `Rational` values. They are reduced on construction
with a positive denominator, so `q.p` / `q.q` always satisfy
gcd(|p|, q) = 1 and q > 0. Integers are plain Python `int`.
"""

import re
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import Integer, Rational
from sympy.core.numbers import Infinity, oo

from src.errors import ParseError

Rat = Rational
BigInt = int
Valuation = int | Infinity

INFINITY = oo

_RAT_TEXT = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


def to_rat(value) -> Rational:
    """Coerce `value` into an exact rational.

    Accepts ints, sympy rationals, `fractions.Fraction` and strings of the
    form "num" or "num/den". Floats are refused: there is no inexact mode.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise ParseError(f"booleans are not rationals: {value!r}")
    if isinstance(value, int):
        return Integer(value)
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        match = _RAT_TEXT.fullmatch(value)
        if not match:
            raise ParseError(f"not an exact rational: {value!r}")
        den = int(match.group(2) or 1)
        if den == 0:
            raise ParseError(f"zero denominator in {value!r}")
        return Rational(int(match.group(1)), den)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        # sympy QQ domain elements (PythonMPQ / gmpy2 mpq)
        return Rational(int(value.numerator), int(value.denominator))
    raise ParseError(f"cannot interpret {value!r} as an exact rational")


def rat_to_str(value) -> str:
    q = to_rat(value)
    if q.q == 1:
        return str(int(q.p))
    return f"{int(q.p)}/{int(q.q)}"


class PrimeFactorization(BaseModel):
    """Factorization sign * prod(p**e) of a nonzero integer."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_shape(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be positive")
        return self

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]
