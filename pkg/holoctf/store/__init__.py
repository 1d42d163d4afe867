"""Store package: everything persisted to disk."""

from .export import write_error_curve_csv, write_pgm, write_profile_csv, write_zero_table_csv
from .manifest import RunManifest, load_manifest, new_manifest, write_manifest
from .raw import read_raw, raw_paths, write_raw

__all__ = [
    "RunManifest",
    "load_manifest",
    "new_manifest",
    "raw_paths",
    "read_raw",
    "write_error_curve_csv",
    "write_manifest",
    "write_pgm",
    "write_profile_csv",
    "write_raw",
    "write_zero_table_csv",
]
