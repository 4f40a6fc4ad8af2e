"""
Command Helpers
JSON emission and loading shared by the command handlers
"""
import json
from pathlib import Path
from typing import Optional

import numpy as np

from ..utils.errors import InvalidParameterError


def _default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(data) -> str:
    """Stable JSON: sorted keys, fixed indentation"""
    return json.dumps(data, sort_keys=True, indent=2, default=_default)


def emit_json(data, out: Optional[str] = None):
    """Write JSON to a file, or print it when no path is given"""
    text = dumps(data)
    if out:
        Path(out).write_text(text + "\n")
        print(f"✅ Wrote {out}")
    else:
        print(text)


def load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidParameterError(f"cannot read JSON from {path}: {e}")
