from enum import Enum
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator


class BackendTag(str, Enum):
    FINITE_FIELD = "finite-field-quadratic"
    SERIES = "truncated-series-quadratic"
    RATIONAL = "rational-quadratic"


BACKEND_ALIASES = {
    "ff": BackendTag.FINITE_FIELD,
    "series": BackendTag.SERIES,
    "rational": BackendTag.RATIONAL,
}


class DescriptorSchema(BaseModel):
    """Wire form of an involutive ring; p and d are checked by the ring factory."""
    model_config = ConfigDict(
        frozen=True,
        populate_by_name=True,
        json_schema_extra={
            "example": {"backend": "finite-field-quadratic", "p": 3, "d": 2, "N": None}
        },
    )

    backend: BackendTag
    p: Optional[int] = None
    d: Optional[int] = None
    precision: Optional[int] = Field(default=None, alias="N")

    @field_validator("backend", mode="before")
    @classmethod
    def resolve_alias(cls, value):
        if isinstance(value, str):
            return BACKEND_ALIASES.get(value.lower(), value)
        return value

    def to_json_dict(self):
        return self.model_dump(mode="json", by_alias=True)


class FiniteFieldPayload(BaseModel):
    model_config = ConfigDict(strict=True)

    x: int
    y: int


class SeriesPayload(BaseModel):
    coeffs: List[List[int]]


class RationalPayload(BaseModel):
    model_config = ConfigDict(strict=True)

    x: str
    y: str


ElementPayload = Union[FiniteFieldPayload, SeriesPayload, RationalPayload]
