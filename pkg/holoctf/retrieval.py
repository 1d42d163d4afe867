"""Reconstruction of one channel from CTF data.

At a zero λ of the generating function one trigonometric factor of the CTF
vanishes and the other equals (−1)^l, so along a ray θ

    channel_hat(λθ) = (−1)^l · Ψ̂(λθ),

and the whole radial slice follows by interpolation from these samples.
The sin-channel (φ) uses Z_f, the cos-channel (μ) uses W_f.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .config import Config
from .errors import ContractError, TruncationDomainError, UnsupportedConfigurationError
from .fields import (
    ComplexField2D,
    Direction,
    Grid2D,
    RealField2D,
    fft2_inverse,
    uniform_directions,
)
from .forward import AnalyticSampler, Sampler, phantom_fields, phantom_spectrum
from .genfn import GenFn, GenFnKind, ZeroTable, build_genfn, zeros_up_to
from .interp import InterpConfig, SampleSet, interpolate_even, truncation_radius
from .phantom import Phantom
from .utils import timed

logger = logging.getLogger(__name__)

# Even Fresnel numbers whose phase generating function is entire.
RECONSTRUCTABLE_EVEN = (2,)


class Channel(str, Enum):
    SIN = "sin"
    COS = "cos"

    @property
    def kind(self) -> GenFnKind:
        return GenFnKind.PHASE if self is Channel.SIN else GenFnKind.ATTENUATION


def as_channel(value: Union[Channel, GenFnKind, str]) -> Channel:
    if isinstance(value, GenFnKind):
        return Channel.SIN if value is GenFnKind.PHASE else Channel.COS
    try:
        return Channel(value)
    except ValueError:
        return as_channel(GenFnKind(value))


@dataclass(frozen=True)
class ReconConfig:
    n_directions: int = 64
    zero_margin: float = 2.0
    n_terms: Optional[int] = None
    grid: Grid2D = Grid2D(128, 2.0)
    sampler: str = "analytic"
    workers: int = 1
    near_zero_eps: float = 1e-8

    def __post_init__(self) -> None:
        if self.n_directions < 4:
            raise ContractError(f"n_directions must be at least 4, got {self.n_directions}")
        if not self.zero_margin >= 1:
            raise ContractError(f"zero_margin must be at least 1, got {self.zero_margin}")
        if self.n_terms is not None and self.n_terms < 1:
            raise ContractError(f"n_terms must be positive, got {self.n_terms}")
        if self.workers < 1:
            raise ContractError(f"workers must be positive, got {self.workers}")
        if self.sampler not in ("analytic", "hologram"):
            raise ContractError(f"sampler must be 'analytic' or 'hologram', got {self.sampler!r}")

    @classmethod
    def from_config(cls, config: Config, **overrides) -> "ReconConfig":
        values = {
            "n_directions": config.n_directions,
            "zero_margin": config.zero_margin,
            "grid": Grid2D(config.grid_n, config.extent),
            "workers": config.workers,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def grid_radius(self) -> float:
        """Largest |η| among the grid's frequency nodes."""
        return self.grid.nyquist * math.sqrt(2.0)


@dataclass
class ReconReport:
    kind: str
    f: int
    n_directions: int
    n_terms: int
    table_radius: float
    safe_radius: float
    sampler: str
    rel_l2_error: Optional[float] = None
    max_abs_error: Optional[float] = None
    raster_rel_l2: Optional[float] = None
    imag_residue: float = 0.0
    direction_residuals: List[float] = field(default_factory=list)
    timing: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


# ---- zero tables ----

@dataclass(frozen=True)
class RayTable:
    """Zero table truncated to n_terms, with the radius it supports."""
    table: ZeroTable
    zero_margin: float

    @property
    def n_terms(self) -> int:
        return len(self.table)

    @property
    def safe_radius(self) -> float:
        return self.table.radius / self.zero_margin


def reconstruction_table(genfn: GenFn, cfg: ReconConfig) -> RayTable:
    """Zeros out to zero_margin × the grid radius, or exactly n_terms of them."""
    if genfn.is_literal_f4:
        raise UnsupportedConfigurationError(
            "the phase generating function at f=4 has a square-root branch point at λ=√2 and cannot "
            "carry an interpolation series; use --refresnel to move to f=5"
        )
    needed = truncation_radius(cfg.grid_radius, cfg.zero_margin)
    table = zeros_up_to(genfn, needed, extra=1)
    if cfg.n_terms is not None:
        if cfg.n_terms > len(table):
            table = zeros_up_to(genfn, needed, extra=cfg.n_terms - len(table) + 1)
        table = table.head(cfg.n_terms)
    return RayTable(table, cfg.zero_margin)


def ray_samples(sampler: Sampler, table: ZeroTable, theta: Direction) -> SampleSet:
    """g(±λ) = (−1)^l · Ψ̂(±λθ)."""
    lams = table.lambdas
    sign = np.where(table.ls % 2, -1.0, 1.0)
    pos = sign * sampler(theta.points(lams))
    neg = sign * sampler(theta.points(-lams))
    return SampleSet(table, pos, neg)


def reconstruct_spectrum_on_ray(sampler: Sampler, ray_table: RayTable, theta: Direction, t,
                                cfg: ReconConfig, samples: Optional[SampleSet] = None):
    """Channel spectrum at t·θ (t scalar or array)."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(np.abs(t_arr) > ray_table.safe_radius * (1 + 1e-12)):
        raise TruncationDomainError(
            f"|t| = {np.max(np.abs(t_arr)):.4g} exceeds the safe radius {ray_table.safe_radius:.4g} "
            f"of {ray_table.n_terms} zeros (margin {ray_table.zero_margin:g})"
        )
    if samples is None:
        samples = ray_samples(sampler, ray_table.table, theta)
    interp_cfg = InterpConfig(ray_table.n_terms, cfg.near_zero_eps)
    return interpolate_even(ray_table.table, samples, t, interp_cfg)


# ---- full field ----

def hermitian_symmetrize(spectrum: np.ndarray) -> np.ndarray:
    """(S + conj S(−η)) / 2 on a centered grid; index m mirrors to (n − m) mod n."""
    n = spectrum.shape[0]
    rev = (n - np.arange(n)) % n
    return 0.5 * (spectrum + np.conj(spectrum[np.ix_(rev, rev)]))


def _assign_directions(grid: Grid2D, directions) -> Tuple[np.ndarray, np.ndarray]:
    """Nearest direction index per node and the radius signed along it."""
    e1, e2 = grid.freq_mesh()
    count = len(directions)
    angle = np.mod(np.arctan2(e2, e1), np.pi)
    index = np.rint(angle / (np.pi / count)).astype(np.int64) % count
    cos_t = np.array([d.vector[0] for d in directions])[index]
    sin_t = np.array([d.vector[1] for d in directions])[index]
    radius = np.hypot(e1, e2)
    t = np.where(e1 * cos_t + e2 * sin_t >= 0, radius, -radius)
    return index, t


def _band_limited(values: np.ndarray, grid: Grid2D) -> np.ndarray:
    spectrum = hermitian_symmetrize(values.reshape(grid.n, grid.n))
    return fft2_inverse(ComplexField2D(grid, spectrum)).values.real


def reference_field(phantom: Phantom, channel: Union[Channel, str], grid: Grid2D) -> RealField2D:
    """Inverse transform of the exact channel spectrum sampled on the grid nodes."""
    channel = as_channel(channel)
    e1, e2 = grid.freq_mesh()
    mu_hat, phi_hat = phantom_spectrum(phantom, np.column_stack([e1.ravel(), e2.ravel()]))
    values = phi_hat if channel is Channel.SIN else mu_hat
    return RealField2D(grid, _band_limited(values, grid))


def _relative(diff: np.ndarray, ref: np.ndarray) -> float:
    ref_norm = float(np.linalg.norm(ref))
    diff_norm = float(np.linalg.norm(diff))
    return diff_norm / ref_norm if ref_norm > 0 else diff_norm


def reconstruct_field(sampler: Sampler, kind: Union[Channel, GenFnKind, str], f: int, cfg: ReconConfig,
                      truth: Optional[Phantom] = None) -> Tuple[RealField2D, ReconReport]:
    """Channel field on cfg.grid from samples of Ψ̂ at generating-function zeros.

    Every grid node η is evaluated on the nearest of cfg.n_directions rays at
    t = ±|η|. With `truth`, errors are measured on the support disc against
    the band-limited reference.
    """
    channel = as_channel(kind)
    grid = cfg.grid
    timing: Dict[str, float] = {}
    start = time.perf_counter()

    with timed("table", timing):
        genfn = build_genfn(channel.kind, f)
        ray_table = reconstruction_table(genfn, cfg)
    if cfg.grid_radius > ray_table.safe_radius:
        raise TruncationDomainError(
            f"{ray_table.n_terms} zeros reach λ={ray_table.table.radius:.4g}, which supports "
            f"|η| <= {ray_table.safe_radius:.4g}; the grid needs {cfg.grid_radius:.4g}"
        )

    directions = uniform_directions(cfg.n_directions)
    index, t = _assign_directions(grid, directions)
    flat_index = index.ravel()
    flat_t = t.ravel()
    # zeros inside the safe radius, used as per-direction consistency checks
    checkpoints = ray_table.table.lambdas[ray_table.table.lambdas <= ray_table.safe_radius]

    def solve(j: int):
        nodes = np.flatnonzero(flat_index == j)
        samples = ray_samples(sampler, ray_table.table, directions[j])
        points = np.concatenate([flat_t[nodes], checkpoints])
        values = np.atleast_1d(reconstruct_spectrum_on_ray(sampler, ray_table, directions[j], points, cfg, samples))
        expected = samples.values_pos[:len(checkpoints)]
        residual = float(np.max(np.abs(values[len(nodes):] - expected))) if len(checkpoints) else 0.0
        return nodes, values[:len(nodes)], residual

    with timed("rays", timing):
        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                results = list(pool.map(solve, range(len(directions))))
        else:
            results = [solve(j) for j in range(len(directions))]

    spectrum = np.zeros(grid.n * grid.n, dtype=np.complex128)
    residuals = []
    for nodes, values, residual in results:
        spectrum[nodes] = values
        residuals.append(residual)

    with timed("inverse", timing):
        spectrum = hermitian_symmetrize(spectrum.reshape(grid.n, grid.n))
        raw = fft2_inverse(ComplexField2D(grid, spectrum)).values
    peak = float(np.max(np.abs(raw.real)))
    imag_residue = float(np.max(np.abs(raw.imag))) / peak if peak > 0 else float(np.max(np.abs(raw.imag)))
    recon = RealField2D(grid, raw.real)

    report = ReconReport(
        kind=channel.kind.value,
        f=int(f),
        n_directions=cfg.n_directions,
        n_terms=ray_table.n_terms,
        table_radius=ray_table.table.radius,
        safe_radius=ray_table.safe_radius,
        sampler=getattr(sampler, "name", cfg.sampler),
        imag_residue=imag_residue,
        direction_residuals=residuals,
        timing=timing,
    )
    if truth is not None:
        with timed("metrics", timing):
            _fill_metrics(report, recon, truth, channel)
    timing["total"] = time.perf_counter() - start
    logger.info(
        f"Reconstructed {channel.value} channel at f={f} with {cfg.n_directions} directions, "
        f"{ray_table.n_terms} zeros in {timing['total']:.2f}s"
        + (f", rel L2 {report.rel_l2_error:.3e}" if report.rel_l2_error is not None else "")
    )
    return recon, report


def _fill_metrics(report: ReconReport, recon: RealField2D, truth: Phantom, channel: Channel) -> None:
    grid = recon.grid
    support = grid.support_mask()
    reference = reference_field(truth, channel, grid).values
    diff = recon.values - reference
    report.rel_l2_error = _relative(diff[support], reference[support])
    report.max_abs_error = float(np.max(np.abs(diff[support])))
    raster = phantom_fields(truth, grid).channel(channel.value).values
    report.raster_rel_l2 = _relative((recon.values - raster)[support], raster[support])


@dataclass
class LeakageReport:
    populated: str
    populated_rel_l2: float
    leakage: float


def channel_leakage_check(phantom: Phantom, f: int, cfg: ReconConfig) -> LeakageReport:
    """Reconstruct the channel the phantom leaves empty.

    leakage is its L² norm on the support relative to the populated
    channel's reference.
    """
    if phantom.has_mu and phantom.has_phi:
        raise ContractError("leakage is measured on a phantom populating exactly one channel")
    populated = Channel.COS if phantom.has_mu else Channel.SIN
    empty = Channel.SIN if populated is Channel.COS else Channel.COS
    sampler = AnalyticSampler(phantom, f)

    _, report = reconstruct_field(sampler, populated, f, cfg, truth=phantom)
    leaked, _ = reconstruct_field(sampler, empty, f, cfg)
    support = cfg.grid.support_mask()
    reference = reference_field(phantom, populated, cfg.grid).values
    leakage = _relative(leaked.values[support], reference[support])
    logger.info(f"Leakage into the {empty.value} channel: {leakage:.3e}")
    return LeakageReport(populated.value, report.rel_l2_error, leakage)
