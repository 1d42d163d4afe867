"""Configuration loading and validation."""

import os
import sys
from dataclasses import dataclass

from dotenv import load_dotenv


@dataclass
class Config:
    """Runtime defaults; CLI flags override them."""
    output_dir: str
    log_level: str
    workers: int
    n_directions: int
    zero_margin: float
    grid_n: int
    extent: float
    sim_extent: float


def load_config() -> Config:
    """Load and validate configuration from environment variables."""
    load_dotenv()

    output_dir = os.getenv("HOLOCTF_OUTPUT_DIR", "out")
    log_level = os.getenv("HOLOCTF_LOG_LEVEL", "INFO").upper()
    workers_str = os.getenv("HOLOCTF_WORKERS", "1")
    directions_str = os.getenv("HOLOCTF_DIRECTIONS", "64")
    margin_str = os.getenv("HOLOCTF_ZERO_MARGIN", "2.0")
    grid_str = os.getenv("HOLOCTF_GRID", "128")
    extent_str = os.getenv("HOLOCTF_EXTENT", "2.0")
    sim_extent_str = os.getenv("HOLOCTF_SIM_EXTENT", "4.0")

    try:
        workers = int(workers_str)
        n_directions = int(directions_str)
        grid_n = int(grid_str)
        zero_margin = float(margin_str)
        extent = float(extent_str)
        sim_extent = float(sim_extent_str)
    except ValueError:
        sys.stderr.write(
            "HOLOCTF_WORKERS, HOLOCTF_DIRECTIONS and HOLOCTF_GRID must be integers; "
            "HOLOCTF_ZERO_MARGIN, HOLOCTF_EXTENT and HOLOCTF_SIM_EXTENT must be numbers.\n"
        )
        sys.exit(2)

    problems = []
    if workers < 1:
        problems.append("HOLOCTF_WORKERS >= 1")
    if n_directions < 4:
        problems.append("HOLOCTF_DIRECTIONS >= 4")
    if grid_n < 2 or grid_n % 2:
        problems.append("HOLOCTF_GRID even and >= 2")
    if zero_margin < 1:
        problems.append("HOLOCTF_ZERO_MARGIN >= 1")
    if extent < 1 or sim_extent < 1:
        problems.append("HOLOCTF_EXTENT and HOLOCTF_SIM_EXTENT >= 1")
    if log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        problems.append("HOLOCTF_LOG_LEVEL a logging level name")

    if problems:
        sys.stderr.write(f"Invalid configuration, expected: {', '.join(problems)}\n")
        sys.exit(2)

    return Config(
        output_dir=output_dir,
        log_level=log_level,
        workers=workers,
        n_directions=n_directions,
        zero_margin=zero_margin,
        grid_n=grid_n,
        extent=extent,
        sim_extent=sim_extent,
    )


config = load_config()
