from typing import Tuple

from pydantic import BaseModel

from app.schemas.cli import CliConfig
from app.schemas.harness import CampaignTag, SampleConfig, SampleResponse
from app.services.campaign import CampaignService
from app.services.oracle import OracleService
from app.services.sampler import SamplerService
from app.utils.arguments import resolve_descriptor
from app.utils.config import Config


def _sample_config(config: CliConfig, campaign: CampaignTag) -> SampleConfig:
    return SampleConfig(
        descriptor=resolve_descriptor(config),
        n=config.n,
        count=config.count,
        seed=Config.SEED if config.seed is None else config.seed,
        campaign=campaign,
        exhaustive=config.exhaustive,
    )


def cmd_sample(config: CliConfig) -> Tuple[BaseModel, int]:
    """
    Emit --count seeded members of u_n.
    """
    sample_config = _sample_config(config, CampaignTag.MEMBERSHIP)
    samples = [m.to_dict() for m in SamplerService.sample_stream(sample_config)]
    return SampleResponse(config=sample_config, samples=samples), 0


def cmd_campaign(config: CliConfig) -> Tuple[BaseModel, int]:
    """
    Run one property campaign; exit status 0 iff it has no failures.
    """
    sample_config = _sample_config(config, config.campaign)
    report = CampaignService.run_campaign(sample_config, workers=config.workers)
    return report, 0 if report.all_passed else 1


def cmd_oracle(config: CliConfig) -> Tuple[BaseModel, int]:
    """
    Print the symbolic characteristic-polynomial coefficients of the model matrix.
    """
    return OracleService.describe(config.n), 0
