import json
import logging
import os
import sys
import traceback
from typing import Any, Dict, Optional

from app.utils.config import Config
from app.utils.errors import UsageError


def configure_logging(level: Optional[str] = None) -> None:
    """Send diagnostics to stderr; stdout carries JSON only."""
    root = logging.getLogger("app")
    for stale in list(root.handlers):
        root.removeHandler(stale)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
    root.addHandler(handler)
    try:
        root.setLevel((level or Config.LOG_LEVEL).upper())
    except ValueError as e:
        raise UsageError(f"Unknown log level: {str(e)}", level=level)


class Logger:
    def __init__(self, base_log_dir: Optional[str] = None):
        self.base_log_dir = Config.LOG_DIR if base_log_dir is None else base_log_dir

    def _setup_logger(self, logger_name: str, log_file: str) -> logging.Logger:
        logger = logging.getLogger(logger_name)
        target = os.path.abspath(log_file)

        for stale in [h for h in logger.handlers if getattr(h, "baseFilename", None) != target]:
            logger.removeHandler(stale)
            stale.close()

        if not logger.handlers:
            file_handler = logging.FileHandler(log_file)
            formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
            logger.setLevel(logging.ERROR)
            logger.propagate = False

        return logger

    def _scope_logger(self, scope: str, name: str) -> Optional[logging.Logger]:
        if not self.base_log_dir:
            return None
        scope_dir = os.path.join(self.base_log_dir, scope)
        os.makedirs(scope_dir, exist_ok=True)
        log_file = os.path.join(scope_dir, f"{name}.log")
        return self._setup_logger(f"kostant_{scope}_{name}", log_file)

    def log_command_error(self, command: str, error: Exception, function_name: str = None):
        """Log a failed CLI command"""
        logger = self._scope_logger('commands', command)
        if logger is None:
            return

        stack_trace = ''.join(traceback.format_tb(error.__traceback__))
        context = getattr(error, 'context', {})
        error_message = f"""
Command Error Details
------------------------
Command: {command}
Error Type: {type(error).__name__}
Error Message: {str(error)}
Context: {json.dumps(context, sort_keys=True, default=str)}
Function: {function_name if function_name else 'Unknown'}
Stack Trace:
{stack_trace}
------------------------
"""
        logger.error(error_message)

    def log_campaign_failure(self, campaign: str, counterexample: Dict[str, Any], function_name: str = None):
        """Log the first counterexample a campaign produced"""
        logger = self._scope_logger('campaigns', campaign)
        if logger is None:
            return

        error_message = f"""
Campaign Failure Details
------------------------
Campaign: {campaign}
Counterexample: {json.dumps(counterexample, sort_keys=True)}
Function: {function_name if function_name else 'Unknown'}
------------------------
"""
        logger.error(error_message)
