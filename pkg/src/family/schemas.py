from pydantic import BaseModel, ConfigDict, model_validator

from src.family.models import StandardPair
from src.utils.fields import PolyField, RatField


class MembershipReport(BaseModel):
    """Conditions (F1)-(F4) for a standard-form pair."""

    degree_ok: bool
    multiplier_ok: bool
    f3_ok: bool
    separable_ok: bool
    epsilon: RatField
    delta: RatField
    member: bool

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_flags(self):
        if self.member != (self.degree_ok and self.multiplier_ok and self.f3_ok and self.separable_ok):
            raise ValueError("member must be the conjunction of the four conditions")
        if self.separable_ok != (self.delta != 0):
            raise ValueError("separable_ok must match delta != 0")
        if self.separable_ok and not self.degree_ok:
            raise ValueError("a critically separable pair has full degree")
        return self


class EvalReport(BaseModel):
    pair: StandardPair
    wronskian: PolyField
    delta: RatField
    membership: MembershipReport

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
