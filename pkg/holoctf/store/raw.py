"""Raw float64 arrays with a JSON side-car manifest."""

import json
import logging
import os
from typing import Optional, Tuple

import numpy as np

from ..errors import ContractError
from ..fields import Grid2D, RealField2D

logger = logging.getLogger(__name__)

RAW_DTYPE = "<f8"


def raw_paths(stem: str) -> Tuple[str, str]:
    """(array path, manifest path) for a stem or for either file name."""
    base, ext = os.path.splitext(stem)
    if ext in (".raw", ".json"):
        stem = base
    return f"{stem}.raw", f"{stem}.json"


def write_raw(stem: str, field: RealField2D, kind: str, extra: Optional[dict] = None) -> Tuple[str, str]:
    """Write field values (row-major, little-endian float64) and their manifest."""
    raw_path, manifest_path = raw_paths(stem)
    os.makedirs(os.path.dirname(os.path.abspath(raw_path)), exist_ok=True)
    field.values.astype(RAW_DTYPE).tofile(raw_path)
    manifest = {"n": field.grid.n, "extent": field.grid.extent, "kind": kind}
    if extra:
        manifest.update(extra)
    with open(manifest_path, "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
    logger.debug(f"Wrote {kind} field to {raw_path}")
    return raw_path, manifest_path


def read_raw(stem: str) -> Tuple[RealField2D, dict]:
    """Read a field written by write_raw; the manifest must exist."""
    raw_path, manifest_path = raw_paths(stem)
    if not os.path.exists(manifest_path):
        raise FileNotFoundError(f"manifest {manifest_path} not found next to {raw_path}")
    with open(manifest_path) as f:
        manifest = json.load(f)
    try:
        grid = Grid2D(int(manifest["n"]), float(manifest["extent"]))
    except KeyError as e:
        raise ContractError(f"manifest {manifest_path} lacks {e.args[0]!r}") from None
    values = np.fromfile(raw_path, dtype=RAW_DTYPE)
    if values.size != grid.n * grid.n:
        raise ContractError(f"{raw_path} holds {values.size} values, manifest says {grid.n}x{grid.n}")
    return RealField2D(grid, values.reshape(grid.n, grid.n)), manifest
