from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from app.schemas.harness import CampaignTag

DEFAULT_BACKEND = "ff"
DEFAULT_P = 3


class Subcommand(str, Enum):
    BUILD = "build"
    VERIFY = "verify"
    SAMPLE = "sample"
    CAMPAIGN = "campaign"
    ORACLE = "oracle"
    EXISTS = "exists"


class CliConfig(BaseModel):
    """Validated command line; JSON-ish arguments stay raw strings until a ring exists."""
    subcommand: Subcommand
    backend: Optional[str] = None
    p: Optional[int] = None
    d: Optional[int] = None
    precision: Optional[int] = None
    n: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = Field(default=None, ge=0, lt=2 ** 64)
    count: int = Field(default=1, ge=1)
    campaign: Optional[CampaignTag] = None
    workers: Optional[int] = Field(default=None, ge=1)
    exhaustive: bool = False
    residue_char: Optional[int] = None
    a: Optional[str] = None
    alpha: Optional[str] = None
    matrix: Optional[str] = None
    output: Optional[str] = None
    log_level: Optional[str] = None

    @model_validator(mode="after")
    def check_required(self):
        required = {
            Subcommand.BUILD: ["a"],
            Subcommand.VERIFY: ["matrix"],
            Subcommand.SAMPLE: ["n"],
            Subcommand.CAMPAIGN: ["n", "campaign"],
            Subcommand.ORACLE: ["n"],
            Subcommand.EXISTS: ["n", "residue_char"],
        }[self.subcommand]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.subcommand.value} requires {', '.join('--' + m for m in missing)}")
        if self.alpha is not None and self.subcommand != Subcommand.BUILD:
            raise ValueError("--alpha only applies to build")
        if self.exhaustive and self.subcommand != Subcommand.CAMPAIGN:
            raise ValueError("--exhaustive only applies to campaign")
        return self

