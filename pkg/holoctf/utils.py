"""Small helpers: checksums, version info, timing."""

import hashlib
import json
import logging
import os
import time
from contextlib import contextmanager
from typing import Dict, Iterator

logger = logging.getLogger(__name__)

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_version() -> Dict[str, str]:
    """Load version info from version.json at the project root."""
    path = os.path.join(_PROJECT_ROOT, "version.json")
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError):
        return {"version": "1.0.0", "updated": ""}


def sha256_file(path: str) -> str:
    """Hex SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@contextmanager
def timed(label: str, sink: Dict[str, float]) -> Iterator[None]:
    """Record the wall time of a block into sink[label] (seconds)."""
    start = time.perf_counter()
    try:
        yield
    finally:
        sink[label] = time.perf_counter() - start
        logger.debug(f"{label} took {sink[label]:.3f}s")
