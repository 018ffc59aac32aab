from typing import Any, Optional

from pydantic import BaseModel

from src.utils.fields import BigIntField


class CommandResponse(BaseModel):
    success: bool
    message: str
    data: Optional[dict[str, Any]] = None


class ErrorResponse(BaseModel):
    success: bool = False
    message: str
    errors: Optional[list[dict[str, str]]] = None
    data: None = None


class ScanRow(BaseModel):
    """One scanned family member; `key` is (a, b, c) or (A, B) as exact strings."""

    key: tuple[str, ...]
    norm_delta: BigIntField
    norm_radical: BigIntField
    ratio: Optional[str]
    all_certified: bool
    ms: float

    def csv_values(self) -> list[str]:
        return [
            *self.key,
            str(self.norm_delta),
            str(self.norm_radical),
            self.ratio if self.ratio is not None else "undefined",
            "true" if self.all_certified else "false",
            f"{self.ms:.3f}",
        ]
