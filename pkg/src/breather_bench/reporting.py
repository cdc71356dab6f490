"""Deterministic, atomically written CSV/JSON artifacts.

Floats are serialized with ``repr`` (shortest round-trip form), reports carry
no timestamps, and JSON keys are sorted, so a fixed config and seed produce
byte-identical outputs.  Files are written to a temp name in the target
directory and renamed into place.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Iterable, Sequence


def _atomic_write(path: str, text: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def format_value(value) -> str:
    # float subclasses (e.g. numpy scalars) repr with a wrapper; canonicalize
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    return _atomic_write(path, "\n".join(lines) + "\n")


def write_json(path: str, payload: dict) -> str:
    return _atomic_write(
        path, json.dumps(payload, indent=2, sort_keys=True) + "\n"
    )
