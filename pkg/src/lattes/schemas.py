from enum import Enum

from pydantic import BaseModel, ConfigDict, model_validator

from src.family.models import AffineAut, StandardPair
from src.lattes.models import Cubic
from src.reduction.schemas import SzpiroReport
from src.utils.fields import BigIntField, RatField


class ReductionType(str, Enum):
    GOOD = "good"
    MULTIPLICATIVE_MINIMAL = "multiplicative-minimal"
    ADDITIVE_OR_NONMINIMAL = "additive-or-nonminimal"


class WeierstrassInvariants(BaseModel):
    disc_f: RatField
    delta_E: RatField
    c4: RatField
    j: RatField

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_invariants(self):
        if self.delta_E != 16 * self.disc_f:
            raise ValueError("delta_E must be 2^4 disc(f)")
        if self.j * self.delta_E != self.c4**3:
            raise ValueError("j * delta_E must equal c4^3")
        return self


class IdentityReport(BaseModel):
    pair: StandardPair
    delta: RatField
    from_disc_f: RatField
    from_delta_E: RatField
    numerator_identity_ok: bool
    ok: bool

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class ConjugationCheckReport(BaseModel):
    sigma: AffineAut
    transformed_cubic: Cubic
    conjugated: StandardPair
    expected: StandardPair
    equal: bool

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class ReductionTypeReport(BaseModel):
    """Classification of y^2 = f(x) at an odd prime.

    `scaling_exponent` is k in the integralizing change x -> u^2 x, u = p^k.
    """

    p: BigIntField
    reduction_type: ReductionType
    scaling_exponent: int
    ord_delta_E: int
    ord_c4: int | None

    model_config = ConfigDict(frozen=True)


class SzpiroLocalReport(BaseModel):
    p: BigIntField
    reduction_type: ReductionType
    ord_delta_E: int
    lhs: int
    delta_phi: int
    certified: bool
    holds: bool

    model_config = ConfigDict(frozen=True)


class CurveSzpiroReport(BaseModel):
    integral_cubic: Cubic
    scaling: BigIntField
    delta_E: RatField
    classifications: list[ReductionTypeReport]
    semistable_at_checked_primes: bool
    local_checks: list[SzpiroLocalReport]
    phi_primes: list[BigIntField]
    radical_ok: bool
    szpiro: SzpiroReport

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
