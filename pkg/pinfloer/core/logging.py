"""
Logging configuration for pinfloer
"""
import logging
import sys
from typing import Optional
from pinfloer.core import config

_run_id: str = "N/A"


class RunContextFilter(logging.Filter):
    """Add the current run ID to log records"""

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "run_id"):
            record.run_id = _run_id
        return True


def set_run_id(run_id: Optional[str]) -> None:
    """Set the run ID stamped on subsequent log records"""
    global _run_id
    _run_id = run_id or "N/A"


def setup_logging(level: Optional[str] = None) -> None:
    """Configure logging for the command line tool"""

    # Reports go to stdout, so logs go to stderr
    formatter = logging.Formatter(
        fmt="%(asctime)s - %(name)s - %(levelname)s - %(run_id)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.addFilter(RunContextFilter())

    root_logger = logging.getLogger()
    for handler in list(root_logger.handlers):
        if getattr(handler, "_pinfloer", False):
            root_logger.removeHandler(handler)
    console_handler._pinfloer = True
    root_logger.setLevel(getattr(logging, (level or config.DEFAULT_LOG_LEVEL).upper()))
    root_logger.addHandler(console_handler)

    logging.getLogger("joblib").setLevel(logging.WARNING)
