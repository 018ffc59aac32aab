"""Standard-form pairs and the conjugation group Aut^inf(P^1).

A rational map of degree d fixing infinity with multiplier lambda is
written phi(x) = A(x)/B(x) with

    A(x) = x^d + a_{d-1} x^{d-1} + ... + a_0
    B(x) = lambda x^{d-1} + b_{d-2} x^{d-2} + ... + b_0

and serializes as {"d": 4, "lambda": "4", "A": "x^4-2x^2+1", "B": "4x^3+4x"}.
"""

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import Integer

from src.exactnum.models import Rational, to_rat
from src.upoly.models import Poly
from src.utils.fields import PolyField, RatField


class StandardPair(BaseModel):
    d: int
    lam: RatField = Field(alias="lambda")
    A: PolyField
    B: PolyField

    model_config = ConfigDict(frozen=True, populate_by_name=True, arbitrary_types_allowed=True)

    @field_validator("d")
    @classmethod
    def validate_degree(cls, value: int):
        if value < 2:
            raise ValueError("d must be at least 2")
        return value

    @field_validator("lam")
    @classmethod
    def validate_multiplier(cls, value):
        if value == 0:
            raise ValueError("lambda must be nonzero")
        return value

    @model_validator(mode="after")
    def check_standard_form(self):
        if self.A.degree != self.d or self.A.leading_coefficient != 1:
            raise ValueError(f"A must be monic of degree {self.d}, got {self.A}")
        if self.B.degree != self.d - 1 or self.B.leading_coefficient != self.lam:
            raise ValueError(
                f"B must have degree {self.d - 1} and leading coefficient {self.lam}, got {self.B}"
            )
        return self

    @classmethod
    def from_coefficients(cls, d: int, lam, a, b) -> "StandardPair":
        """Build from a_0..a_{d-1} and b_0..b_{d-2} (ascending)."""
        return cls(d=d, lam=to_rat(lam), A=Poly(list(a) + [1]), B=Poly(list(b) + [lam]))

    def a(self, j: int) -> Rational:
        return self.A.coeff(j)

    def b(self, j: int) -> Rational:
        return self.B.coeff(j)

    def free_coefficients(self) -> list[Rational]:
        """a_0..a_{d-1} followed by b_0..b_{d-2}."""
        return [self.a(j) for j in range(self.d)] + [self.b(j) for j in range(self.d - 1)]


class AffineAut(BaseModel):
    """sigma(x) = alpha*x + beta with alpha != 0."""

    alpha: RatField
    beta: RatField = Field(default_factory=lambda: Integer(0))

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, value):
        if value == 0:
            raise ValueError("alpha must be nonzero")
        return value

    @classmethod
    def identity(cls) -> "AffineAut":
        return cls(alpha=1, beta=0)

    @classmethod
    def scaling(cls, alpha) -> "AffineAut":
        return cls(alpha=alpha, beta=0)

    def is_identity(self) -> bool:
        return self.alpha == 1 and self.beta == 0

    def compose(self, other: "AffineAut") -> "AffineAut":
        """self o other, i.e. x -> self(other(x))."""
        return AffineAut(alpha=self.alpha * other.alpha, beta=self.alpha * other.beta + self.beta)

    def inverse(self) -> "AffineAut":
        return AffineAut(alpha=1 / self.alpha, beta=-self.beta / self.alpha)

    def __call__(self, value) -> Rational:
        return self.alpha * to_rat(value) + self.beta
