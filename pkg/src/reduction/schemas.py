from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.family.models import AffineAut, StandardPair
from src.utils.fields import BigIntField


class ReductionReport(BaseModel):
    """Reduction of an integral pair modulo p.

    `model_good` is the critically separable good reduction criterion for
    this model; it agrees with `Delta mod p != 0`.
    """

    p: BigIntField
    reduced_A: str
    reduced_B: str
    reduced_degree_ok: bool
    coprime_ok: bool
    wronskian_squarefree_ok: bool
    wronskian_degree: int | None
    infinity_critical: bool
    model_good: bool

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class LocalMinimizationResult(BaseModel):
    p: BigIntField
    delta: int = Field(ge=0)
    certified: bool
    witness: AffineAut
    minimal_model: StandardPair
    input_valuation: int = Field(ge=0)
    descent_steps: int = Field(ge=0)
    capped_levels: list[int] = []

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_certificate(self):
        bound = (2 * self.minimal_model.d - 2) * (2 * self.minimal_model.d - 3)
        if self.certified and self.delta >= bound and self.descent_steps > 0:
            raise ValueError("a certified result below the input needs delta < (2d-2)(2d-3)")
        if (self.input_valuation - self.delta) % bound:
            raise ValueError("delta must be congruent to the input valuation")
        return self


class GlobalDiscriminantEntry(BaseModel):
    p: BigIntField
    delta: int = Field(ge=1)
    certified: bool

    model_config = ConfigDict(frozen=True)


class GlobalDiscriminant(BaseModel):
    """The minimal critical discriminant as a positive integer prod p^delta_p."""

    excluded_primes: list[BigIntField] = []
    entries: list[GlobalDiscriminantEntry] = []
    scaling: BigIntField = 1

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_entries(self):
        primes = [entry.p for entry in self.entries]
        if primes != sorted(set(primes)):
            raise ValueError("entries must be in strictly ascending prime order")
        if set(primes) & set(self.excluded_primes):
            raise ValueError("excluded primes cannot carry a local delta")
        return self


class SzpiroReport(BaseModel):
    norm_delta: BigIntField
    norm_radical: BigIntField
    exponent_bound: int
    ratio: str | None
    all_certified: bool

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_radical(self):
        if self.norm_delta % self.norm_radical:
            raise ValueError("every prime of the radical must divide the norm")
        if (self.ratio is None) != (self.norm_radical == 1):
            raise ValueError("ratio is undefined exactly when the radical is 1")
        return self


class QuadraticBoundCheck(BaseModel):
    p: BigIntField
    m: int
    sigma: AffineAut
    model_valuation: int
    bound: int
    minimized_delta: int
    within_bound: bool

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
