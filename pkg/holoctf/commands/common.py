"""Helpers shared by the command modules."""

import logging
import os
from typing import Optional, Tuple

from ..errors import UnsupportedConfigurationError
from ..fields import choose_odd_fresnel
from ..retrieval import RECONSTRUCTABLE_EVEN

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEMO_PHANTOM = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
                            "assets", "demo_phantom.json")


def out_path(out_dir: str, name: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def as_integer_fresnel(f: float) -> Optional[int]:
    """f as an int when it is one to rounding, else None."""
    nearest = round(f)
    return int(nearest) if abs(f - nearest) < 1e-9 * max(1.0, abs(f)) else None


def supported(channel: str, f: Optional[int]) -> bool:
    if f is None or f < 1:
        return False
    return f % 2 == 1 or (channel == "sin" and f in RECONSTRUCTABLE_EVEN)


def resolve_fresnel(f_raw: float, channel: str, refresnel: bool) -> Tuple[int, float]:
    """(f used for reconstruction, support scale) for a measured Fresnel number."""
    f_int = as_integer_fresnel(f_raw)
    if supported(channel, f_int):
        return f_int, 1.0
    if not refresnel:
        raise UnsupportedConfigurationError(
            f"no {channel}-channel generating function at f={f_raw:g}; "
            "rerun with --refresnel to enlarge the support to the next odd Fresnel number"
        )
    f_odd, scale = choose_odd_fresnel(f_raw)
    logger.info(f"Re-Fresnel: f={f_raw:g} -> {f_odd} (support scale {scale:.6g})")
    return f_odd, scale
