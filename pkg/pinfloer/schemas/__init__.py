"""
Pydantic schemas for pinfloer reports and file formats.
"""
from .base import ReportHeader, BaseReport, ErrorReport
from .reports import (
    SignViolation, SignVerificationReport, SignBuildReport, PinDemoReport,
    GeneratorGrading, GradingReport, HomologyEntry, HomologyReport, MinusReport,
    MoveComparison, MoveCheckReport, TriangleRow, TriangleReport
)

__all__ = [
    "ReportHeader",
    "BaseReport",
    "ErrorReport",
    "SignViolation",
    "SignVerificationReport",
    "SignBuildReport",
    "PinDemoReport",
    "GeneratorGrading",
    "GradingReport",
    "HomologyEntry",
    "HomologyReport",
    "MinusReport",
    "MoveComparison",
    "MoveCheckReport",
    "TriangleRow",
    "TriangleReport",
]
