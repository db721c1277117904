import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

from pydantic import BaseModel, ValidationError

from app.routers import harness, section
from app.schemas.cli import CliConfig, Subcommand
from app.schemas.harness import CampaignTag
from app.schemas.response import ErrorResponse
from app.services.logger import Logger, configure_logging
from app.utils.errors import KostantError, UsageError

logger = logging.getLogger(__name__)

Command = Callable[[CliConfig], Tuple[BaseModel, int]]

COMMANDS: Dict[Subcommand, Command] = {
    Subcommand.BUILD: section.cmd_build,
    Subcommand.VERIFY: section.cmd_verify,
    Subcommand.EXISTS: section.cmd_exists,
    Subcommand.SAMPLE: harness.cmd_sample,
    Subcommand.CAMPAIGN: harness.cmd_campaign,
    Subcommand.ORACLE: harness.cmd_oracle,
}


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors get the JSON treatment."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kostant",
        description="Kostant sections for unitary Lie algebras over unramified quadratic extensions",
    )
    parser.add_argument("subcommand", choices=[s.value for s in Subcommand])

    ring = parser.add_argument_group("ring descriptor")
    ring.add_argument("--backend", help="ff | series | rational, or a full backend tag")
    ring.add_argument("--p", type=int, help="residue characteristic (odd prime)")
    ring.add_argument("--d", type=int, help="quadratic non-residue mod p; smallest one if omitted")
    ring.add_argument("--N", dest="precision", type=int, help="series precision")

    parser.add_argument("--n", type=int)
    parser.add_argument("--a", help="invariant tuple: JSON list or path to a JSON file")
    parser.add_argument("--alpha", help="trace-zero unit overriding the canonical alpha (build only)")
    parser.add_argument("--matrix", help="matrix: JSON rows, {\"n\", \"entries\"}, or a file path")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--count", type=int, default=1)
    parser.add_argument("--campaign", choices=[t.value for t in CampaignTag])
    parser.add_argument("--workers", type=int)
    parser.add_argument("--exhaustive", action="store_true")
    parser.add_argument("--char", dest="residue_char", type=int, help="residue characteristic for exists")
    parser.add_argument("--output", help="write the JSON payload here instead of standard output")
    parser.add_argument("--log-level", dest="log_level")
    return parser


def _emit(payload: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as handle:
            handle.write(payload + "\n")
    else:
        sys.stdout.write(payload + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; the return value is the process exit status."""
    command = "kostant"
    output = None
    try:
        args = build_parser().parse_args(argv)
        command = args.subcommand
        configure_logging(args.log_level)
        try:
            config = CliConfig(**vars(args))
            output = config.output
            logger.info(f"Running {command}")
            response, status = COMMANDS[config.subcommand](config)
        except ValidationError as e:
            raise UsageError(f"Invalid arguments: {str(e)}", subcommand=command)
        _emit(response.model_dump_json(by_alias=True), output)
        return status
    except KostantError as e:
        Logger().log_command_error(command, e, function_name=f"cmd_{command}")
        logger.error(f"{command} failed with {e.code}: {e.detail}")
        error = ErrorResponse(**e.to_dict())
        _emit(error.model_dump_json(), output)
        return e.exit_status


if __name__ == "__main__":
    sys.exit(main())
