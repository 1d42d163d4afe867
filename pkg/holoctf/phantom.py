"""Analytic phantoms: rectangles and disks in the cos (mu) and sin (phi) channels."""

import logging
import math
from typing import List, Literal, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from .errors import PhantomValidationError

logger = logging.getLogger(__name__)

SUPPORT_RADIUS = 0.5


class Component(BaseModel):
    """One indicator shape; `size` holds the half-sizes (a, b) of a rect."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    shape: Literal["rect", "disk"]
    center: Tuple[float, float] = (0.0, 0.0)
    size: Optional[Tuple[float, float]] = None
    radius: Optional[float] = None
    mu: float = 0.0
    phi: float = 0.0

    @model_validator(mode="after")
    def _check_geometry(self) -> "Component":
        if self.shape == "rect":
            if self.size is None or min(self.size) <= 0:
                raise ValueError("rect needs positive half-sizes in 'size'")
        elif self.radius is None or self.radius <= 0:
            raise ValueError("disk needs a positive 'radius'")
        return self

    @property
    def reach(self) -> float:
        """Largest distance from the origin covered by the shape."""
        c1, c2 = self.center
        if self.shape == "disk":
            return math.hypot(c1, c2) + self.radius
        a, b = self.size
        return max(math.hypot(c1 + s1 * a, c2 + s2 * b) for s1 in (-1, 1) for s2 in (-1, 1))


class Phantom(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    components: List[Component] = []

    @model_validator(mode="after")
    def _check_support(self) -> "Phantom":
        for i, component in enumerate(self.components):
            if component.reach > SUPPORT_RADIUS + 1e-12:
                raise ValueError(
                    f"component {i} ({component.shape}) reaches |y| = {component.reach:.4g}, "
                    f"outside the support disc of radius {SUPPORT_RADIUS}"
                )
        return self

    @property
    def has_mu(self) -> bool:
        return any(c.mu != 0 for c in self.components)

    @property
    def has_phi(self) -> bool:
        return any(c.phi != 0 for c in self.components)

    def shrunk(self, factor: float) -> "Phantom":
        """The same object in coordinates normalized by a support diameter `factor` times larger."""
        components = []
        for c in self.components:
            update = {"center": (c.center[0] / factor, c.center[1] / factor)}
            if c.size is not None:
                update["size"] = (c.size[0] / factor, c.size[1] / factor)
            if c.radius is not None:
                update["radius"] = c.radius / factor
            components.append(c.model_copy(update=update))
        return Phantom(components=components)


def parse_phantom(data) -> Phantom:
    """Validate a decoded phantom description."""
    if data is None:
        data = {}
    try:
        return Phantom.model_validate(data)
    except ValidationError as e:
        raise PhantomValidationError(f"invalid phantom: {e}") from e


def load_phantom(path: str) -> Phantom:
    """Read a phantom from a YAML or JSON file."""
    with open(path) as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise PhantomValidationError(f"cannot parse {path}: {e}") from e
    phantom = parse_phantom(data)
    logger.info(f"Loaded phantom with {len(phantom.components)} components from {path}")
    return phantom


def rect_phantom(half_size: float = 0.25, mu: float = 0.0, phi: float = 0.0,
                 center: Tuple[float, float] = (0.0, 0.0)) -> Phantom:
    return Phantom(components=[Component(shape="rect", center=center, size=(half_size, half_size), mu=mu, phi=phi)])


def disk_phantom(radius: float = 0.3, mu: float = 0.0, phi: float = 0.0,
                 center: Tuple[float, float] = (0.0, 0.0)) -> Phantom:
    return Phantom(components=[Component(shape="disk", center=center, radius=radius, mu=mu, phi=phi)])
