from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.schemas.matrix import MatrixPayload
from app.schemas.ring import DescriptorSchema


class CampaignTag(str, Enum):
    MEMBERSHIP = "membership"
    LIE_CLOSURE = "lie-closure"
    SECTION = "section"
    ROUND_TRIP = "round-trip"
    PHI_ROUND_TRIP = "phi-round-trip"
    NEGATIVE_CONTROL = "negative-control"
    CHARPOLY = "charpoly"
    CAYLEY_HAMILTON = "cayley-hamilton"
    ORACLE = "oracle"


class SampleConfig(BaseModel):
    descriptor: DescriptorSchema
    n: int = Field(ge=1)
    count: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2 ** 64)
    campaign: CampaignTag = CampaignTag.MEMBERSHIP
    exhaustive: bool = False

    class Config:
        json_schema_extra = {
            "example": {
                "descriptor": {"backend": "finite-field-quadratic", "p": 5, "d": 2, "N": None},
                "n": 4,
                "count": 100,
                "seed": 7,
                "campaign": "round-trip",
                "exhaustive": False,
            }
        }


class SampleResponse(BaseModel):
    config: SampleConfig
    samples: List[MatrixPayload]


class CampaignReport(BaseModel):
    """Outcome of one property campaign; counterexamples are data, not errors."""
    campaign: CampaignTag
    config: SampleConfig
    passes: int
    failures: int
    first_counterexample: Optional[Dict[str, Any]] = None
    elapsed_ms: float

    @property
    def all_passed(self) -> bool:
        return self.failures == 0


class OracleTerm(BaseModel):
    exponents: List[int]
    coefficient: int


class OracleCoefficient(BaseModel):
    k: int
    expression: str
    terms: List[OracleTerm]


class OracleResponse(BaseModel):
    n: int
    coefficients: List[OracleCoefficient]
    triangular: bool
    alpha_independent: bool
