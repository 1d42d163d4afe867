"""Plot-ready exports: CSV tables and 16-bit PGM quicklooks."""

import csv
import logging
import os
from typing import Dict

import numpy as np
from PIL import Image

from ..fields import RealField2D
from ..genfn import ZeroTable
from ..interp import WksResult

logger = logging.getLogger(__name__)

PGM_MAX = 65535


def _num(value) -> str:
    """repr of a scalar as a plain Python float (NumPy 2 reprs include the type)."""
    return repr(float(value))


def _ensure_parent(path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)


def _write_rows(path: str, header, rows) -> str:
    _ensure_parent(path)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_zero_table_csv(path: str, table: ZeroTable) -> str:
    rows = ((_num(e.lam), _num(e.lambda_sq), e.l, _num(e.dZ), e.family) for e in table.entries)
    return _write_rows(path, ("lambda", "lambda_sq", "l", "dZ", "family"), rows)


def write_error_curve_csv(path: str, result: WksResult) -> str:
    rows = zip(map(_num, result.t), map(_num, result.truth), map(_num, result.approx), map(_num, result.error))
    return _write_rows(path, ("t", "truth", "approx", "error"), rows)


def write_profile_csv(path: str, recon: RealField2D, reference: RealField2D = None) -> str:
    """Values along the first axis through the origin: y, recon[, reference]."""
    grid = recon.grid
    row = grid.n // 2
    y = grid.coords
    if reference is None:
        return _write_rows(path, ("y", "recon"), zip(map(_num, y), map(_num, recon.values[:, row])))
    rows = zip(map(_num, y), map(_num, recon.values[:, row]), map(_num, reference.values[:, row]))
    return _write_rows(path, ("y", "recon", "reference"), rows)


def write_pgm(path: str, field: RealField2D) -> Dict[str, float]:
    """Min-max scaled 16-bit binary PGM; returns the scale that maps counts back to values."""
    values = field.values
    low, high = float(values.min()), float(values.max())
    span = high - low
    if span > 0:
        counts = np.rint((values - low) / span * PGM_MAX)
    else:
        counts = np.zeros_like(values)
    _ensure_parent(path)
    Image.fromarray(counts.astype(np.int32)).save(path, format="PPM")
    return {"min": low, "max": high, "step": span / PGM_MAX if span > 0 else 0.0}
