"""Canonical JSON rendering for trace and certificate documents.

One fixed formatting so that identical configurations yield byte-identical
files (insertion order preserved, two-space indent, trailing newline).
"""

from __future__ import annotations

import json
from pathlib import Path


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_document(path, doc: dict) -> None:
    Path(path).write_text(dumps_document(doc))


def read_document(path) -> dict:
    return json.loads(Path(path).read_text())
