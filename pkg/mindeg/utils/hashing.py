"""Canonical fingerprints for element sets.

orjson is an optional dependency; the stdlib json fallback produces the same
bytes for the integer sequences hashed here.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Iterable

try:
    import orjson

    def _dumps(obj: Any) -> bytes:
        return orjson.dumps(obj, option=orjson.OPT_SORT_KEYS)

    def dumps_str(obj: Any, indent: bool = False) -> str:
        option = orjson.OPT_SORT_KEYS | (orjson.OPT_INDENT_2 if indent else 0)
        return orjson.dumps(obj, option=option).decode()

except ImportError:
    def _dumps(obj: Any) -> bytes:
        return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()

    def dumps_str(obj: Any, indent: bool = False) -> str:
        if indent:
            return json.dumps(obj, sort_keys=True, indent=2)
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def fingerprint(image_sequences: Iterable[tuple[int, ...]]) -> str:
    """SHA-256 over image sequences, streamed in the order given.

    Callers pass the sorted element set so equal sets hash equally.
    """
    hasher = hashlib.sha256()
    for images in image_sequences:
        hasher.update(_dumps(list(images)))
    return hasher.hexdigest()[:16]
