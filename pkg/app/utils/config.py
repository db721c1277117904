import json
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from app.schemas.ring import DescriptorSchema
from app.utils.errors import UsageError

load_dotenv()


class Config:
    DESCRIPTOR = os.environ.get('KOSTANT_DESCRIPTOR')
    SEED = int(os.environ.get('KOSTANT_SEED', '0'))
    WORKERS = int(os.environ.get('KOSTANT_WORKERS', '1'))
    LOG_LEVEL = os.environ.get('KOSTANT_LOG_LEVEL', 'WARNING')
    LOG_DIR = os.environ.get('KOSTANT_LOG_DIR', 'logs')

    @classmethod
    def default_descriptor(cls) -> Optional[DescriptorSchema]:
        """Parse KOSTANT_DESCRIPTOR, if set."""
        if not cls.DESCRIPTOR:
            return None
        try:
            return DescriptorSchema.model_validate(json.loads(cls.DESCRIPTOR))
        except (json.JSONDecodeError, ValidationError) as e:
            raise UsageError(f"KOSTANT_DESCRIPTOR is not a valid descriptor: {str(e)}")
