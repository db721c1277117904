from typing import List, Optional

from pydantic import BaseModel

from app.schemas.ring import ElementPayload


class MatrixPayload(BaseModel):
    n: int
    entries: List[List[ElementPayload]]


class PolynomialPayload(BaseModel):
    monic_coeffs_low_to_high: List[ElementPayload]


class EntryFailure(BaseModel):
    """First nonzero entry of Phi A + sigma(A^t) Phi, 1-based."""
    i: int
    j: int
    value: ElementPayload


class MembershipReport(BaseModel):
    passed: bool
    paths_agree: bool
    first_failure: Optional[EntryFailure] = None

    class Config:
        json_schema_extra = {
            "example": {
                "passed": False,
                "paths_agree": True,
                "first_failure": {"i": 1, "j": 1, "value": {"x": 2, "y": 0}},
            }
        }
