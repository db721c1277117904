from enum import Enum
from typing import List, Optional

from pydantic import BaseModel

from app.schemas.matrix import EntryFailure, MatrixPayload, PolynomialPayload
from app.schemas.ring import DescriptorSchema, ElementPayload


class SectionReport(BaseModel):
    """Checks run on every constructed section."""
    membership: bool
    charpoly_match: bool
    conjugacy_match: bool
    b_parity: bool
    placement_match: bool
    first_failure: Optional[EntryFailure] = None

    @property
    def all_passed(self) -> bool:
        return (
            self.membership
            and self.charpoly_match
            and self.conjugacy_match
            and self.b_parity
            and self.placement_match
        )


class SectionResponse(BaseModel):
    n: int
    a: List[ElementPayload]
    b: List[ElementPayload]
    alpha: ElementPayload
    X: MatrixPayload
    report: SectionReport

    class Config:
        json_schema_extra = {
            "example": {
                "n": 2,
                "a": [{"x": 0, "y": 1}, {"x": 1, "y": 0}],
                "b": [{"x": 0, "y": 2}, {"x": 1, "y": 0}],
                "alpha": {"x": 0, "y": 1},
                "X": {
                    "n": 2,
                    "entries": [
                        [{"x": 0, "y": 1}, {"x": 0, "y": 2}],
                        [{"x": 0, "y": 1}, {"x": 0, "y": 1}],
                    ],
                },
                "report": {
                    "membership": True,
                    "charpoly_match": True,
                    "conjugacy_match": True,
                    "b_parity": True,
                    "placement_match": True,
                    "first_failure": None,
                },
            }
        }


class VerifyResponse(BaseModel):
    """Result of checking an arbitrary matrix."""
    descriptor: DescriptorSchema
    membership: bool
    paths_agree: bool
    first_failure: Optional[EntryFailure] = None
    char_poly: PolynomialPayload
    invariants: Optional[List[ElementPayload]] = None
    krylov_unit: bool


class ExistenceStatus(str, Enum):
    YES_OVER_O = "yes-over-o"
    NO_GUARANTEE = "no-guarantee"


class TheoremCase(str, Enum):
    ODD_N = "odd-n"
    EVEN_N = "even-n-requires-odd-char"


class ExistenceVerdict(BaseModel):
    n: int
    residue_char: int
    status: ExistenceStatus
    theorem_case: TheoremCase
    constructive_here: bool
    via_rank_condition: bool
    via_explicit_section: bool
