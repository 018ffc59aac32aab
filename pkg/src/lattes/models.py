"""Cubics f(x) = x^3 + a x^2 + b x + c and points on y^2 = f(x).

A `Cubic` may be singular; operations that need an elliptic curve raise
`DomainError` when disc(f) = 0.
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from src.exactnum.models import Rational, to_rat
from src.upoly.models import Poly
from src.utils.fields import RatField


class Cubic(BaseModel):
    a: RatField
    b: RatField
    c: RatField

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def f(self) -> Poly:
        return Poly([self.c, self.b, self.a, 1])

    @property
    def disc(self) -> Rational:
        """a^2 b^2 + 18abc - 4a^3 c - 4b^3 - 27c^2"""
        a, b, c = self.a, self.b, self.c
        return a**2 * b**2 + 18 * a * b * c - 4 * a**3 * c - 4 * b**3 - 27 * c**2

    def is_elliptic(self) -> bool:
        return self.disc != 0


class EllipticPoint(BaseModel):
    """An affine point (x, y), or the point at infinity when `infinity` is set."""

    x: Optional[RatField] = None
    y: Optional[RatField] = None
    infinity: bool = False

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_coordinates(self):
        if self.infinity and (self.x is not None or self.y is not None):
            raise ValueError("the point at infinity has no coordinates")
        if not self.infinity and (self.x is None or self.y is None):
            raise ValueError("an affine point needs both x and y")
        return self

    @classmethod
    def at_infinity(cls) -> "EllipticPoint":
        return cls(infinity=True)

    @classmethod
    def affine(cls, x, y) -> "EllipticPoint":
        return cls(x=to_rat(x), y=to_rat(y))

    def negate(self) -> "EllipticPoint":
        if self.infinity:
            return self
        return EllipticPoint(x=self.x, y=-self.y)
