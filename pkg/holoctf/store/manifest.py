"""Run manifests: every command records what it ran and what it wrote."""

import logging
import os
import platform
from typing import Any, Dict, List, Optional

import numpy as np
import scipy
from pydantic import BaseModel

from ..utils import load_version, sha256_file

logger = logging.getLogger(__name__)


class RunManifest(BaseModel):
    command: str
    parameters: Dict[str, Any] = {}
    inputs: Dict[str, str] = {}
    outputs: Dict[str, str] = {}
    metrics: Optional[Dict[str, Any]] = None
    notes: List[str] = []
    versions: Dict[str, str] = {}

    def record_output(self, path: str) -> None:
        """Store the SHA-256 of a written artifact."""
        self.outputs[path] = sha256_file(path)

    def record_input(self, path: str) -> None:
        self.inputs[path] = sha256_file(path)


def current_versions() -> Dict[str, str]:
    info = load_version()
    return {
        "holoctf": info.get("version", "unknown"),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }


def new_manifest(command: str, parameters: Dict[str, Any]) -> RunManifest:
    return RunManifest(command=command, parameters=parameters, versions=current_versions())


def write_manifest(path: str, manifest: RunManifest) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as f:
        f.write(manifest.model_dump_json(indent=2))
    logger.info(f"Run manifest written to {path}")
    return path


def load_manifest(path: str) -> RunManifest:
    with open(path) as f:
        return RunManifest.model_validate_json(f.read())
