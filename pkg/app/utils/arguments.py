import json
import os
from typing import Any

from pydantic import ValidationError

from app.schemas.cli import DEFAULT_BACKEND, DEFAULT_P, CliConfig
from app.schemas.ring import BACKEND_ALIASES, DescriptorSchema
from app.utils.config import Config
from app.utils.errors import UsageError


def load_json_argument(value: str, flag: str) -> Any:
    """Inline JSON literal, or the path of a file holding one."""
    try:
        if os.path.isfile(value):
            with open(value, "r") as handle:
                return json.load(handle)
        return json.loads(value)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"{flag} is neither a JSON literal nor a readable JSON file: {str(e)}", flag=flag)


def resolve_descriptor(config: CliConfig) -> DescriptorSchema:
    """Flags override KOSTANT_DESCRIPTOR, which overrides the built-in default."""
    base = Config.default_descriptor()
    fields = base.to_json_dict() if base is not None else {"backend": DEFAULT_BACKEND, "p": DEFAULT_P}
    requested = BACKEND_ALIASES.get(config.backend.lower(), config.backend) if config.backend else None
    if requested is not None and base is not None and requested != base.backend:
        # a different backend does not inherit p, d, N from the environment
        fields = {"p": DEFAULT_P}
    if config.p is not None and config.d is None:
        fields["d"] = None
    overrides = {"backend": config.backend, "p": config.p, "d": config.d, "N": config.precision}
    fields.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return DescriptorSchema.model_validate(fields)
    except ValidationError as e:
        raise UsageError(f"Invalid descriptor flags: {str(e)}", fields=fields)
