"""Forward model: phantom rasters and spectra, CTF transfer, Fresnel propagation, holograms.

The object is ψ = μ − iφ. The propagator multiplier is exp(+iπ|η|²/f), so
that Re D(ψ) has the spectrum cos(π|η|²/f)·μ̂ + sin(π|η|²/f)·φ̂.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np
from scipy.special import j1

from .errors import ContractError, DomainError, OverflowGuardError
from .fields import (
    ComplexField2D,
    FresnelGeometry,
    Grid2D,
    RealField2D,
    fft2_forward,
    fft2_inverse,
    nudft_at,
)
from .phantom import Component, Phantom

logger = logging.getLogger(__name__)

# max |ψ| accepted by the full model
OVERFLOW_GUARD = 5.0


class Model(str, Enum):
    LINEAR = "linear"
    FULL = "full"


@dataclass(frozen=True)
class ProjectionPair:
    """mu is the cos-channel, phi the sin-channel."""
    mu: RealField2D
    phi: RealField2D

    def __post_init__(self) -> None:
        if self.mu.grid != self.phi.grid:
            raise ContractError("mu and phi must share a grid")

    @property
    def grid(self) -> Grid2D:
        return self.mu.grid

    @property
    def psi(self) -> ComplexField2D:
        return ComplexField2D(self.grid, self.mu.values - 1j * self.phi.values)

    def channel(self, name: str) -> RealField2D:
        return self.phi if name == "sin" else self.mu


@dataclass(frozen=True)
class Hologram:
    intensity: RealField2D
    geometry: FresnelGeometry
    model: Model

    @property
    def f(self) -> float:
        return self.geometry.fresnel_number

    @property
    def data(self) -> RealField2D:
        """CTF data (I − 1)/2."""
        return RealField2D(self.intensity.grid, (self.intensity.values - 1.0) / 2.0)


# ---- phantoms ----

def _indicator(component: Component, y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
    c1, c2 = component.center
    if component.shape == "rect":
        a, b = component.size
        return (np.abs(y1 - c1) <= a) & (np.abs(y2 - c2) <= b)
    return (y1 - c1) ** 2 + (y2 - c2) ** 2 <= component.radius ** 2


def phantom_fields(phantom: Phantom, grid: Grid2D) -> ProjectionPair:
    """Pointwise rasters of both channels."""
    if grid.extent < 1:
        raise ContractError(f"grid extent {grid.extent} does not cover the support disc")
    y1, y2 = grid.mesh()
    mu = np.zeros((grid.n, grid.n))
    phi = np.zeros((grid.n, grid.n))
    for component in phantom.components:
        mask = _indicator(component, y1, y2)
        mu += component.mu * mask
        phi += component.phi * mask
    return ProjectionPair(RealField2D(grid, mu), RealField2D(grid, phi))


def _shape_spectrum(component: Component, points: np.ndarray) -> np.ndarray:
    e1, e2 = points[:, 0], points[:, 1]
    c1, c2 = component.center
    shift = np.exp(-2j * np.pi * (c1 * e1 + c2 * e2))
    if component.shape == "rect":
        a, b = component.size
        return 4 * a * b * np.sinc(2 * a * e1) * np.sinc(2 * b * e2) * shift
    r = component.radius
    rho = np.hypot(e1, e2)
    at_origin = rho == 0
    safe = np.where(at_origin, 1.0, rho)
    radial = np.where(at_origin, np.pi * r * r, r * j1(2 * np.pi * r * safe) / safe)
    return radial * shift


def phantom_spectrum(phantom: Phantom, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Closed-form (mu_hat, phi_hat) at frequency points of shape (P, 2)."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if not np.all(np.isfinite(points)):
        raise ContractError("frequency points must be finite")
    mu_hat = np.zeros(len(points), dtype=np.complex128)
    phi_hat = np.zeros(len(points), dtype=np.complex128)
    for component in phantom.components:
        shape = _shape_spectrum(component, points)
        mu_hat += component.mu * shape
        phi_hat += component.phi * shape
    return mu_hat, phi_hat


# ---- transfer and propagation ----

def _chirp(f: float, radius_sq: np.ndarray) -> np.ndarray:
    if f == 0 or math.isnan(f):
        raise DomainError(f"Fresnel number must be nonzero, got {f}")
    if math.isinf(f):
        return np.zeros_like(radius_sq)
    return np.pi * radius_sq / f


def ctf_transfer(f: float, eta: np.ndarray, mu_hat, phi_hat):
    """cos(π|η|²/f)·mu_hat + sin(π|η|²/f)·phi_hat; eta has a trailing axis of length 2."""
    if not f > 0:
        raise DomainError(f"Fresnel number must be positive, got {f}")
    eta = np.asarray(eta, dtype=np.float64)
    angle = _chirp(f, np.sum(eta ** 2, axis=-1))
    return np.cos(angle) * mu_hat + np.sin(angle) * phi_hat


def fresnel_propagate(field, f: float) -> ComplexField2D:
    """D(ψ): multiply the spectrum by exp(+iπ|η|²/f). Negative f inverts it."""
    grid = field.grid
    e1, e2 = grid.freq_mesh()
    angle = _chirp(f, e1 ** 2 + e2 ** 2)
    if np.max(np.abs(angle)) < 1e-15:
        return ComplexField2D(grid, field.values)
    spectrum = fft2_forward(field)
    return fft2_inverse(ComplexField2D(grid, spectrum.values * np.exp(1j * angle)))


def simulate_hologram(pair: ProjectionPair, f: float, model: Union[Model, str] = Model.LINEAR) -> Hologram:
    """Linear: I = 1 + 2·Re D(ψ). Full: I = |D(exp ψ)|²."""
    model = Model(model)
    grid = pair.grid
    if grid.extent < 2:
        raise ContractError(f"simulation grid must be padded (extent >= 2), got {grid.extent}")
    geometry = FresnelGeometry.for_fresnel_number(f)
    psi = pair.psi
    if model is Model.LINEAR:
        intensity = 1.0 + 2.0 * fresnel_propagate(psi, f).values.real
    else:
        peak = float(np.max(np.abs(psi.values)))
        if peak > OVERFLOW_GUARD:
            raise OverflowGuardError(f"max |ψ| = {peak:.3g} exceeds {OVERFLOW_GUARD} for the full model")
        transmitted = fresnel_propagate(ComplexField2D(grid, np.exp(psi.values)), f)
        intensity = np.abs(transmitted.values) ** 2
    logger.info(f"Simulated {model.value} hologram at f={f:g} on {grid.n}x{grid.n} (extent {grid.extent:g})")
    return Hologram(RealField2D(grid, intensity), geometry, model)


# ---- samplers ----

@dataclass(frozen=True)
class AnalyticSampler:
    """Exact CTF data Ψ̂(η) of a phantom."""
    phantom: Phantom
    f: float
    name: str = "analytic"

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return ctf_transfer(self.f, points, *phantom_spectrum(self.phantom, points))

    def rescaled(self, scale: float) -> "AnalyticSampler":
        """Data in coordinates normalized by a support diameter `scale` times larger."""
        return AnalyticSampler(self.phantom.shrunk(scale), self.f * scale * scale)


@dataclass(frozen=True)
class HologramSampler:
    """Direct transform of (I − 1)/2 at arbitrary points."""
    hologram: Hologram
    scale: float = 1.0
    name: str = "hologram"

    @property
    def f(self) -> float:
        return self.hologram.f * self.scale ** 2

    @property
    def reliable_radius(self) -> float:
        """Largest |η| whose fringes, displaced by |η|/f, stay inside the simulation window.

        Beyond it (or beyond the grid's Nyquist frequency) off-grid samples
        no longer match the continuous CTF data.
        """
        grid = self.hologram.intensity.grid
        reach = self.hologram.f * max(grid.extent / 2 - 0.5, 0.0)
        return min(reach, grid.nyquist) * self.scale

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return nudft_at(self.hologram.data, points / self.scale) / self.scale ** 2

    def rescaled(self, scale: float) -> "HologramSampler":
        return HologramSampler(self.hologram, self.scale * scale)


Sampler = Union[AnalyticSampler, HologramSampler]


def ctf_data_sampler(source, f: float = None) -> Sampler:
    """Sampler for a Hologram, a Phantom (with f) or a (Phantom, f) pair."""
    if isinstance(source, Hologram):
        return HologramSampler(source)
    if isinstance(source, tuple):
        source, f = source
    if isinstance(source, Phantom):
        if f is None or not f > 0:
            raise DomainError(f"an analytic sampler needs a positive Fresnel number, got {f}")
        return AnalyticSampler(source, float(f))
    raise ContractError(f"cannot build a sampler from {type(source).__name__}")
