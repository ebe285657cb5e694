"""
Entry point: parse arguments, dispatch to a subcommand, print its report
"""
import argparse
import hashlib
import logging
import sys
from typing import List, Optional, TextIO

from pinfloer.cli.commands import COMMANDS
from pinfloer.cli.output import emit
from pinfloer.core import config
from pinfloer.core.exceptions import handle_exception
from pinfloer.core.logging import set_run_id, setup_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=config.PROJECT_NAME,
        description="Exact Pin structures, Floer gradings and grid homology over Z",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {config.VERSION}")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help=f"log level for stderr (default: {config.DEFAULT_LOG_LEVEL})")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def _run_id(argv: List[str]) -> str:
    """Same arguments, same run id"""
    return hashlib.sha1("\0".join(argv).encode()).hexdigest()[:12]


def run(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Run the tool and return its exit status.

    Args:
        argv: arguments without the program name; sys.argv[1:] when omitted
        stdout: stream receiving the report

    Returns:
        int: 0 on success, 1 on a failed check or computation, 2 on invalid input or usage
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    setup_logging(args.log_level)
    run_id = _run_id(argv)
    set_run_id(run_id)
    logger.info(f"Running {args.command} {getattr(args, 'action', '')}")

    try:
        config.get_settings()
        report, exit_code = args.handler(args)
    except Exception as e:
        exit_code, report = handle_exception(e, run_id)
    emit(report, getattr(args, "format", "json"), stdout)
    return exit_code


def main() -> int:
    return run()
