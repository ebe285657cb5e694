"""
Base report schemas for pinfloer
"""
from typing import Any, Dict, Optional
from pydantic import BaseModel, Field

from pinfloer.core.config import FORMAT_VERSION, PROJECT_NAME, VERSION


class ReportHeader(BaseModel):
    """Version header carried by every report and file format"""
    tool: str = PROJECT_NAME
    version: str = VERSION
    format_version: int = FORMAT_VERSION


class BaseReport(BaseModel):
    """Base report model with common fields"""
    header: ReportHeader = Field(default_factory=ReportHeader)
    success: bool = True
    message: str = "Computation completed successfully"


class ErrorReport(BaseModel):
    """Standard error report model"""
    header: ReportHeader = Field(default_factory=ReportHeader)
    success: bool = False
    error_code: str
    message: str
    details: Optional[Dict[str, Any]] = None
    run_id: Optional[str] = None
