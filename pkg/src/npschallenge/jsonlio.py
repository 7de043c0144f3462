"""Shared JSONL reading/writing with an optional leading metadata line."""

from __future__ import annotations

import json
from typing import Any, Iterable, Iterator


def write_jsonl(path: str, records: Iterable[dict], meta: dict | None = None) -> None:
    """Write one JSON object per line; ``meta`` becomes a ``{"_meta": ...}`` header line."""
    with open(path, "w", encoding="utf-8") as f:
        if meta is not None:
            f.write(json.dumps({"_meta": meta}, ensure_ascii=False) + "\n")
        for rec in records:
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


def iter_jsonl(path: str) -> Iterator[dict]:
    """Yield data records from a JSONL file, skipping blank and ``_meta`` lines."""
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if isinstance(rec, dict) and "_meta" in rec:
                continue
            yield rec


def read_meta(path: str) -> dict[str, Any] | None:
    """Return the ``_meta`` header of a JSONL file, if any."""
    with open(path, encoding="utf-8") as f:
        first = f.readline().strip()
    if not first:
        return None
    rec = json.loads(first)
    if isinstance(rec, dict) and "_meta" in rec:
        return rec["_meta"]
    return None
