"""Lagrange-type interpolation from samples at the zeros of a sine-type function.

    g(t) = Σ_λ Z(t)·g(λ) / ((t − λ)·Z′(λ))

summed over the first n_terms tabulated zeros and their mirrors −λ.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .errors import ContractError
from .genfn import ZeroEntry, ZeroTable

logger = logging.getLogger(__name__)

# rows of t evaluated per batch
T_CHUNK = 256


@dataclass(frozen=True)
class SineLattice:
    """sin(πt): odd, zeros at the integers, Z′(k) = π(−1)^k."""
    parity: int = -1
    name: str = "sin(pi t)"

    def eval(self, t):
        return np.sin(np.pi * np.asarray(t, dtype=np.float64))


def integer_lattice_table(count: int) -> ZeroTable:
    """Zeros 0, 1, …, count−1 of sin(πt); with mirrors this covers −(count−1)..count−1."""
    if count < 1:
        raise ContractError(f"lattice table needs at least one zero, got {count}")
    entries = tuple(
        ZeroEntry(float(k), float(k * k), k, math.pi * (-1.0) ** k, f"int(k={k})")
        for k in range(count)
    )
    return ZeroTable(SineLattice(), entries, parity=-1)


@dataclass(frozen=True)
class SampleSet:
    """Samples g(+λ) and g(−λ) aligned with table entries."""
    table: ZeroTable
    values_pos: np.ndarray = field(repr=False)
    values_neg: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        pos = np.array(self.values_pos, dtype=np.complex128)
        neg = np.array(self.values_neg, dtype=np.complex128)
        if pos.shape != (len(self.table),) or neg.shape != (len(self.table),):
            raise ContractError(
                f"sample arrays {pos.shape}/{neg.shape} do not match a table of {len(self.table)} zeros"
            )
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(neg))):
            raise ContractError("samples must be finite")
        object.__setattr__(self, "values_pos", pos)
        object.__setattr__(self, "values_neg", neg)

    @classmethod
    def from_function(cls, table: ZeroTable, g: Callable[[np.ndarray], np.ndarray]) -> "SampleSet":
        lams = table.lambdas
        return cls(table, g(lams), g(-lams))

    def scaled(self, factor: complex) -> "SampleSet":
        return SampleSet(self.table, self.values_pos * factor, self.values_neg * factor)

    def __add__(self, other: "SampleSet") -> "SampleSet":
        if other.table is not self.table:
            raise ContractError("cannot add samples taken on different tables")
        return SampleSet(self.table, self.values_pos + other.values_pos, self.values_neg + other.values_neg)


@dataclass(frozen=True)
class InterpConfig:
    n_terms: int
    near_zero_eps: float = 1e-8

    def __post_init__(self) -> None:
        if self.n_terms < 1:
            raise ContractError(f"n_terms must be at least 1, got {self.n_terms}")
        if not 0 < self.near_zero_eps < 1e-3:
            raise ContractError(f"near_zero_eps must lie in (0, 1e-3), got {self.near_zero_eps}")


def truncation_radius(t_max: float, margin: float = 2.0) -> float:
    """Table radius needed to interpolate on |t| <= t_max."""
    return margin * t_max


def _aligned(table: ZeroTable, samples: SampleSet, cfg: InterpConfig) -> None:
    if samples.table is not table:
        raise ContractError("samples were taken on a different zero table")
    if cfg.n_terms > len(table):
        raise ContractError(f"n_terms={cfg.n_terms} exceeds the {len(table)} tabulated zeros")


def _series(t: np.ndarray, nodes: np.ndarray, weights: np.ndarray, values: np.ndarray,
            z_t: np.ndarray, eps: float) -> np.ndarray:
    """Σ_j z_t·w_j/(t − x_j), with the cardinal limit values_j where t ≈ x_j.

    weights already hold g(x_j)/Z′(x_j).
    """
    out = np.empty(len(t), dtype=np.complex128)
    for start in range(0, len(t), T_CHUNK):
        tc = t[start:start + T_CHUNK]
        diff = tc[:, None] - nodes[None, :]
        near = np.abs(diff) < eps * np.maximum(1.0, np.abs(tc))[:, None]
        safe = np.where(near, 1.0, diff)
        terms = np.where(near, 0.0, weights[None, :] / safe)
        out[start:start + len(tc)] = z_t[start:start + T_CHUNK] * terms.sum(axis=1) + (near * values[None, :]).sum(axis=1)
    return out


def _as_output(t, values: np.ndarray):
    return complex(values[0]) if np.ndim(t) == 0 else values


def interpolate(table: ZeroTable, samples: SampleSet, t, cfg: InterpConfig):
    """Truncated Lagrange series at t (scalar or array)."""
    _aligned(table, samples, cfg)
    n = cfg.n_terms
    lams = table.lambdas[:n]
    dZ = table.dZs[:n]
    mirrored = lams > 0

    nodes = np.concatenate([lams, -lams[mirrored]])
    derivs = np.concatenate([dZ, -table.parity * dZ[mirrored]])
    values = np.concatenate([samples.values_pos[:n], samples.values_neg[:n][mirrored]])
    weights = values / derivs

    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if not np.all(np.isfinite(t_arr)):
        raise ContractError("interpolation points must be finite")
    z_t = np.asarray(table.generator.eval(t_arr), dtype=np.float64)
    return _as_output(t, _series(t_arr, nodes, weights, values, z_t, cfg.near_zero_eps))


def interpolate_even(table: ZeroTable, samples: SampleSet, t, cfg: InterpConfig):
    """Paired form Z(t)·Σ_{λ>0} [g(λ)/(t−λ) − g(−λ)/(t+λ)] / Z′(λ) for even Z with Z(0) ≠ 0."""
    _aligned(table, samples, cfg)
    if table.parity != 1:
        raise ContractError("the paired form needs an even generating function")
    if table.generator.eval(0.0) == 0.0 or (len(table) and table.entries[0].lam == 0.0):
        raise ContractError("the paired form needs Z(0) != 0")

    n = cfg.n_terms
    lams = table.lambdas[:n]
    dZ = table.dZs[:n]
    g_pos = samples.values_pos[:n]
    g_neg = samples.values_neg[:n]

    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if not np.all(np.isfinite(t_arr)):
        raise ContractError("interpolation points must be finite")
    z_t = np.asarray(table.generator.eval(t_arr), dtype=np.float64)
    eps = cfg.near_zero_eps

    out = np.empty(len(t_arr), dtype=np.complex128)
    for start in range(0, len(t_arr), T_CHUNK):
        tc = t_arr[start:start + T_CHUNK]
        scale = eps * np.maximum(1.0, np.abs(tc))[:, None]
        d_pos = tc[:, None] - lams[None, :]
        d_neg = tc[:, None] + lams[None, :]
        near_pos = np.abs(d_pos) < scale
        near_neg = np.abs(d_neg) < scale
        paired = (np.where(near_pos, 0.0, g_pos / np.where(near_pos, 1.0, d_pos))
                  - np.where(near_neg, 0.0, g_neg / np.where(near_neg, 1.0, d_neg))) / dZ[None, :]
        limits = (near_pos * g_pos[None, :]).sum(axis=1) + (near_neg * g_neg[None, :]).sum(axis=1)
        out[start:start + len(tc)] = z_t[start:start + T_CHUNK] * paired.sum(axis=1) + limits
    return _as_output(t, out)


# ---- truncation benchmark on the integer lattice ----

# indicator of [−b, −a] ∪ [a, b]
WKS_BANDS: Dict[str, Tuple[float, float]] = {
    "wide": (2.0 / 3.0, 1.0),
    "paley-wiener": (1.0 / 3.0, 0.5),
}


def band_indicator_transform(t, band: str = "paley-wiener"):
    """Transform of the two-sided band indicator: (sin 2πbt − sin 2πat)/(πt)."""
    a, b = _band(band)
    t = np.asarray(t, dtype=np.float64)
    return 2 * b * np.sinc(2 * b * t) - 2 * a * np.sinc(2 * a * t)


def _band(band: str) -> Tuple[float, float]:
    try:
        return WKS_BANDS[band]
    except KeyError:
        raise ContractError(f"unknown band {band!r}, expected one of {sorted(WKS_BANDS)}") from None


@dataclass(frozen=True)
class WksResult:
    N: int
    band: str
    max_abs_error: float
    t: np.ndarray = field(repr=False)
    truth: np.ndarray = field(repr=False)
    approx: np.ndarray = field(repr=False)

    @property
    def error(self) -> np.ndarray:
        return np.abs(self.truth - self.approx)


def wks_truncation_demo(N: int, t_grid: Optional[np.ndarray] = None, band: str = "paley-wiener") -> WksResult:
    """Error of the cardinal series truncated to |k| <= N.

    The "wide" band reaches past the integer-sampling band [−1/2, 1/2]
    and so measures aliasing as well as truncation.
    """
    if N < 0:
        raise ContractError(f"N must be nonnegative, got {N}")
    _band(band)
    if t_grid is None:
        t_grid = np.linspace(-6.0, 6.0, 12001)
    t_grid = np.asarray(t_grid, dtype=np.float64)

    table = integer_lattice_table(N + 1)
    samples = SampleSet.from_function(table, lambda x: band_indicator_transform(x, band))
    approx = interpolate(table, samples, t_grid, InterpConfig(n_terms=N + 1)).real
    truth = band_indicator_transform(t_grid, band)
    result = WksResult(N, band, float(np.max(np.abs(truth - approx))), t_grid, truth, approx)
    logger.info(f"Cardinal series N={N} ({band}): max error {result.max_abs_error:.6g} on {len(t_grid)} points")
    return result
