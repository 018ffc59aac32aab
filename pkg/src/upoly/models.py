"""Univariate polynomials over Q and over prime fields.

`Poly` wraps a sympy `Poly` over `QQ` and `PolyModP` a sympy `Poly` with
`modulus=p`. Both are immutable; coefficient sequences are exposed in
ascending powers. The zero polynomial has degree `-oo` (sympy's tag),
never -1.

Text form (parse and print round-trip exactly)::

    poly  := term (("+"|"-") term)*
    term  := coeff "*"? "x" ("^" nat)? | coeff | "x" ("^" nat)?
    coeff := int | int "/" posint

Whitespace is ignored. Printing uses descending powers, drops zero
terms and prints "0" for the zero polynomial.
"""

import re
from collections import defaultdict

from sympy import QQ, Symbol
from sympy import Poly as SymPoly

from src.errors import ParseError
from src.exactnum.models import Rational, rat_to_str, to_rat

X = Symbol("x")

_TERM = re.compile(r"(?P<coeff>\d+(?:/\d+)?)?(?P<star>\*)?(?P<var>x(?:\^(?P<exp>\d+))?)?")


class Poly:
    """Polynomial with exact rational coefficients."""

    __slots__ = ("_rep",)

    def __init__(self, coefficients=()):
        coeffs = [to_rat(c) for c in coefficients]
        self._rep = SymPoly(list(reversed(coeffs)) or [0], X, domain=QQ)

    @classmethod
    def from_sympy(cls, rep: SymPoly) -> "Poly":
        poly = cls.__new__(cls)
        poly._rep = rep if rep.get_domain() == QQ else rep.set_domain(QQ)
        return poly

    @property
    def rep(self) -> SymPoly:
        return self._rep

    @property
    def coefficients(self) -> tuple[Rational, ...]:
        if self._rep.is_zero:
            return ()
        return tuple(to_rat(c) for c in reversed(self._rep.all_coeffs()))

    @property
    def degree(self):
        return self._rep.degree()

    @property
    def is_zero(self) -> bool:
        return bool(self._rep.is_zero)

    @property
    def leading_coefficient(self) -> Rational:
        return to_rat(self._rep.LC())

    def coeff(self, k: int) -> Rational:
        coeffs = self.coefficients
        return coeffs[k] if 0 <= k < len(coeffs) else to_rat(0)

    def derivative(self) -> "Poly":
        return Poly.from_sympy(self._rep.diff(X))

    def scale(self, c) -> "Poly":
        return Poly.from_sympy(self._rep.mul_ground(to_rat(c)))

    def compose(self, other: "Poly") -> "Poly":
        return Poly.from_sympy(self._rep.compose(other._rep))

    def monic(self) -> "Poly":
        return self if self.is_zero else Poly.from_sympy(self._rep.monic())

    def __call__(self, value) -> Rational:
        return to_rat(self._rep.eval(to_rat(value)))

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return Poly.from_sympy(self._rep + other._rep)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return Poly.from_sympy(self._rep - other._rep)

    def __rsub__(self, other):
        return Poly([other]) - self

    def __neg__(self):
        return Poly.from_sympy(-self._rep)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        return Poly.from_sympy(self._rep * other._rep)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


class PolyModP:
    """Polynomial over the prime field F_p, residues kept in [0, p)."""

    __slots__ = ("p", "_rep")

    def __init__(self, p: int, coefficients=()):
        self.p = int(p)
        residues = [int(c) % self.p for c in coefficients]
        self._rep = SymPoly(list(reversed(residues)) or [0], X, modulus=self.p)

    @classmethod
    def from_sympy(cls, p: int, rep: SymPoly) -> "PolyModP":
        poly = cls.__new__(cls)
        poly.p = int(p)
        poly._rep = rep
        return poly

    @property
    def coefficients(self) -> tuple[int, ...]:
        if self._rep.is_zero:
            return ()
        return tuple(int(c) % self.p for c in reversed(self._rep.all_coeffs()))

    @property
    def degree(self):
        return self._rep.degree()

    @property
    def is_zero(self) -> bool:
        return bool(self._rep.is_zero)

    def derivative(self) -> "PolyModP":
        return PolyModP.from_sympy(self.p, self._rep.diff(X))

    def gcd(self, other: "PolyModP") -> "PolyModP":
        return PolyModP.from_sympy(self.p, self._rep.gcd(other._rep))

    def roots(self) -> list[int]:
        """Distinct roots in F_p, ascending, read off the linear factors."""
        if self.is_zero:
            return list(range(self.p))
        found = set()
        for factor, _ in self._rep.factor_list()[1]:
            if factor.degree() == 1:
                c1, c0 = (int(c) % self.p for c in factor.all_coeffs())
                found.add(-c0 * pow(c1, -1, self.p) % self.p)
        return sorted(found)

    def __call__(self, value: int) -> int:
        return int(self._rep.eval(int(value) % self.p)) % self.p

    def __eq__(self, other):
        if not isinstance(other, PolyModP):
            return NotImplemented
        return self.p == other.p and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.p, self.coefficients))

    def __str__(self):
        return _format_terms(self.coefficients)

    def __repr__(self):
        return f"PolyModP({self.p}, {_format_terms(self.coefficients)!r})"


def _format_terms(coefficients) -> str:
    terms = []
    for k in range(len(coefficients) - 1, -1, -1):
        c = to_rat(coefficients[k])
        if c == 0:
            continue
        magnitude = abs(c)
        if k == 0:
            body = rat_to_str(magnitude)
        else:
            var = "x" if k == 1 else f"x^{k}"
            if magnitude == 1:
                body = var
            elif magnitude.q == 1:
                body = f"{int(magnitude.p)}{var}"
            else:
                body = f"{rat_to_str(magnitude)}*{var}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    return text + "".join(sign + body for sign, body in terms[1:])


def format_poly(poly: Poly) -> str:
    return _format_terms(poly.coefficients)


def parse_poly(text: str) -> Poly:
    """Parse the polynomial text grammar; raises ParseError on bad input."""
    if not isinstance(text, str):
        raise ParseError(f"expected polynomial text, got {text!r}")
    s = "".join(text.split())
    if not s:
        raise ParseError("empty polynomial")
    coeffs = defaultdict(lambda: to_rat(0))
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError(f"unexpected {s[pos]!r} at position {pos} in {text!r}")
        match = _TERM.match(s, pos)
        coeff, star, var = match.group("coeff"), match.group("star"), match.group("var")
        if not coeff and not var:
            raise ParseError(f"missing term at position {pos} in {text!r}")
        if star and not (coeff and var):
            raise ParseError(f"dangling '*' at position {pos} in {text!r}")
        c = to_rat(coeff) if coeff else to_rat(1)
        if not var:
            k = 0
        elif match.group("exp") is not None:
            k = int(match.group("exp"))
        else:
            k = 1
        coeffs[k] += sign * c
        pos = match.end()
        first = False
    top = max(coeffs)
    return Poly([coeffs[k] for k in range(top + 1)])


def to_poly(value) -> Poly:
    """Coerce text, coefficient lists or Poly into a Poly (pydantic helper)."""
    if isinstance(value, Poly):
        return value
    if isinstance(value, str):
        return parse_poly(value)
    if isinstance(value, (list, tuple)):
        return Poly(value)
    raise ParseError(f"cannot interpret {value!r} as a polynomial")
