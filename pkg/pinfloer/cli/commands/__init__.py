"""
Subcommands of the pinfloer command line tool; each module exposes register(subparsers)
"""
from . import grading, grid, pin, signs, triangle

COMMANDS = (pin, grading, signs, grid, triangle)

__all__ = ["COMMANDS", "grading", "grid", "pin", "signs", "triangle"]
