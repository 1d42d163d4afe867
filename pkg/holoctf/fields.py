"""Grids, fields and the Fourier conventions used throughout.

The continuous transform is a(η) = ∫ exp(−2πi y·η) a(y) dy on normalized
coordinates y (support diameter 1). A Grid2D samples y on a centered n×n
lattice of width `extent`; its dual lattice has spacing 1/extent. The discrete
transforms below carry the area weight and the centered-index phases
explicitly, so fft2_forward and nudft_at agree at grid frequencies.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from .errors import ContractError, DomainError

logger = logging.getLogger(__name__)

# Points per nudft_at batch; bounds the (batch × n) exponential tables.
NUDFT_CHUNK = 512


@dataclass(frozen=True)
class FresnelGeometry:
    """Physical parameters of the setup; the Fresnel number is derived."""
    wavenumber: float
    support_diameter: float
    distance: float

    def __post_init__(self) -> None:
        for name in ("wavenumber", "support_diameter", "distance"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value}")

    @property
    def fresnel_number(self) -> float:
        return fresnel_number(self.wavenumber, self.support_diameter, self.distance)

    def to_dict(self) -> dict:
        return {
            "k": self.wavenumber,
            "b": self.support_diameter,
            "d": self.distance,
            "f": self.fresnel_number,
        }

    @classmethod
    def for_fresnel_number(cls, f: float, support_diameter: float = 1.0, distance: float = 1.0) -> "FresnelGeometry":
        """Geometry with the given f, solving for the wavenumber."""
        if not (math.isfinite(f) and f > 0):
            raise DomainError(f"Fresnel number must be positive, got {f}")
        k = 2.0 * math.pi * distance * f / support_diameter ** 2
        return cls(k, support_diameter, distance)


def fresnel_number(k: float, b: float, d: float) -> float:
    """f = k·b²/(2π·d)."""
    for name, value in (("k", k), ("b", b), ("d", d)):
        if not (math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be positive and finite, got {value}")
    return k * b * b / (2.0 * math.pi * d)


def choose_odd_fresnel(f_raw: float) -> Tuple[int, float]:
    """Smallest odd integer f_odd >= f_raw and the factor enlarging b to reach it.

    f grows like b², so the support diameter must be multiplied by
    sqrt(f_odd / f_raw).
    """
    if not (math.isfinite(f_raw) and f_raw > 0):
        raise DomainError(f"Fresnel number must be positive, got {f_raw}")
    f_odd = math.ceil(f_raw)
    if f_odd % 2 == 0:
        f_odd += 1
    if f_odd == f_raw:
        return f_odd, 1.0
    return f_odd, math.sqrt(f_odd / f_raw)


@dataclass(frozen=True)
class Grid2D:
    """Centered square grid: y_j = (j − n/2)·Δy, Δy = extent/n."""
    n: int
    extent: float

    def __post_init__(self) -> None:
        if self.n < 2 or self.n % 2:
            raise ContractError(f"grid size must be an even positive integer, got {self.n}")
        if not (math.isfinite(self.extent) and self.extent > 0):
            raise ContractError(f"grid extent must be positive, got {self.extent}")

    @property
    def spacing(self) -> float:
        return self.extent / self.n

    @property
    def freq_spacing(self) -> float:
        return 1.0 / self.extent

    @property
    def nyquist(self) -> float:
        """Largest axis frequency magnitude on the dual grid."""
        return self.n / (2.0 * self.extent)

    @property
    def coords(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.spacing

    @property
    def freqs(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.freq_spacing

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """(y1, y2) arrays indexed [i1, i2]."""
        return np.meshgrid(self.coords, self.coords, indexing="ij")

    def freq_mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """(η1, η2) arrays indexed [m1, m2]."""
        return np.meshgrid(self.freqs, self.freqs, indexing="ij")

    def support_mask(self, radius: float = 0.5) -> np.ndarray:
        y1, y2 = self.mesh()
        return y1 ** 2 + y2 ** 2 <= radius ** 2


def _frozen(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class RealField2D:
    grid: Grid2D
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        _check_values(self.grid, values)
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def zeros(cls, grid: Grid2D) -> "RealField2D":
        return cls(grid, np.zeros((grid.n, grid.n)))

    def norm(self) -> float:
        """Continuous L² norm, Δy-weighted."""
        return float(np.sqrt(np.sum(self.values ** 2)) * self.grid.spacing)


@dataclass(frozen=True)
class ComplexField2D:
    grid: Grid2D
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128)
        _check_values(self.grid, values)
        object.__setattr__(self, "values", _frozen(values))

    @property
    def real(self) -> RealField2D:
        return RealField2D(self.grid, self.values.real)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2)) * self.grid.spacing)


Field2D = Union[RealField2D, ComplexField2D]


def _check_values(grid: Grid2D, values: np.ndarray) -> None:
    if values.shape != (grid.n, grid.n):
        raise ContractError(f"field shape {values.shape} does not match grid n={grid.n}")
    if not np.all(np.isfinite(values)):
        raise ContractError("field contains non-finite values")


@dataclass(frozen=True)
class Direction:
    """Unit vector θ = (cos a, sin a) with a in [0, π)."""
    angle: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.angle < math.pi):
            raise ContractError(f"direction angle must lie in [0, π), got {self.angle}")

    @property
    def vector(self) -> np.ndarray:
        return np.array([math.cos(self.angle), math.sin(self.angle)])

    def points(self, radii: np.ndarray) -> np.ndarray:
        """Frequency points r·θ as an (len(radii), 2) array."""
        radii = np.asarray(radii, dtype=np.float64)
        return np.outer(radii, self.vector)


def uniform_directions(count: int) -> Tuple[Direction, ...]:
    """count directions spaced evenly over [0, π)."""
    if count < 1:
        raise ContractError(f"direction count must be positive, got {count}")
    return tuple(Direction(math.pi * j / count) for j in range(count))


def _alternating(n: int) -> np.ndarray:
    return np.where(np.arange(n) % 2, -1.0, 1.0)


def fft2_forward(field: Field2D) -> ComplexField2D:
    """Continuous-convention 2D transform sampled on the dual grid."""
    grid = field.grid
    s = _alternating(grid.n)
    sign = np.outer(s, s)
    spectrum = np.fft.fft2(sign * field.values) * sign * grid.spacing ** 2
    return ComplexField2D(grid, spectrum)


def fft2_inverse(spectrum: ComplexField2D) -> ComplexField2D:
    """Inverse of fft2_forward: a(y) = ∫ exp(2πi y·η) â(η) dη on the grid."""
    grid = spectrum.grid
    s = _alternating(grid.n)
    sign = np.outer(s, s)
    values = np.fft.ifft2(sign * spectrum.values) * sign * (grid.n * grid.freq_spacing) ** 2
    return ComplexField2D(grid, values)


def nudft_at(field: Field2D, points: np.ndarray) -> np.ndarray:
    """Direct-sum transform Σ a(y_j)·exp(−2πi y_j·η)·Δy² at arbitrary points.

    points is an (P, 2) array of (η1, η2); returns P complex values.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[-1] != 2:
        raise ContractError(f"points must have shape (P, 2), got {points.shape}")
    if not np.all(np.isfinite(points)):
        raise ContractError("frequency points must be finite")

    grid = field.grid
    y = grid.coords
    values = field.values
    out = np.empty(len(points), dtype=np.complex128)
    for start in range(0, len(points), NUDFT_CHUNK):
        chunk = points[start:start + NUDFT_CHUNK]
        e1 = np.exp(-2j * np.pi * np.outer(chunk[:, 0], y))
        e2 = np.exp(-2j * np.pi * np.outer(chunk[:, 1], y))
        out[start:start + len(chunk)] = np.sum((e1 @ values) * e2, axis=1)
    return out * grid.spacing ** 2
