"""
Report rendering and file access for the command line tool
"""
import argparse
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, TextIO

import pandas as pd
from pydantic import BaseModel

from pinfloer.core.exceptions import InvalidInputException

logger = logging.getLogger(__name__)

FORMATS = ("json", "text")


def common_options() -> argparse.ArgumentParser:
    """Options shared by every subcommand"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=FORMATS, default="json", help="report format (default: json)")
    return parent


def read_text(path: str) -> str:
    """Read an input file, mapping OS errors to input errors"""
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InvalidInputException(f"cannot read {path}: {e.strerror}", details={"path": path})


def write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise InvalidInputException(f"cannot write {path}: {e.strerror}", details={"path": path})
    logger.info(f"Wrote {path}")


def to_json(report: BaseModel) -> str:
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def _table(rows: List[Dict[str, Any]]) -> str:
    frame = pd.DataFrame(rows)
    frame = frame[sorted(frame.columns)]
    return frame.to_string(index=False)


def to_text(report: BaseModel) -> str:
    """
    Aligned tables: scalar fields first, then one table per list or mapping field
    """
    data = report.model_dump(mode="json")
    header = data.pop("header", {})
    scalars = {k: v for k, v in data.items() if not isinstance(v, (list, dict))}
    for key, value in data.items():
        if isinstance(value, list) and not any(isinstance(v, dict) for v in value):
            scalars[key] = " ".join(str(v) for v in value)
    lines = [f"{header.get('tool', '')} {header.get('version', '')}".strip()]
    lines.append(pd.DataFrame(sorted(scalars.items()), columns=["field", "value"]).to_string(index=False))
    for key in sorted(data):
        value = data[key]
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.extend(["", f"{key}:", _table(value)])
        elif isinstance(value, dict) and value:
            rows = [{"key": k, "value": json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}
                    for k, v in sorted(value.items())]
            lines.extend(["", f"{key}:", _table(rows)])
    return "\n".join(lines) + "\n"


def emit(report: BaseModel, fmt: str, stream: TextIO) -> None:
    stream.write(to_text(report) if fmt == "text" else to_json(report))
    stream.flush()
