"""simulate: hologram of an analytic phantom."""

import logging

from ..config import config
from ..fields import Grid2D
from ..forward import phantom_fields, simulate_hologram
from ..phantom import load_phantom
from ..store import new_manifest, write_manifest, write_pgm, write_raw
from .common import DEMO_PHANTOM, EXIT_OK, out_path

logger = logging.getLogger(__name__)


def cmd_simulate(args) -> int:
    phantom_path = args.phantom or DEMO_PHANTOM
    phantom = load_phantom(phantom_path)
    grid = Grid2D(args.grid, args.extent or config.sim_extent)
    pair = phantom_fields(phantom, grid)
    hologram = simulate_hologram(pair, args.fresnel, args.model)

    out_dir = args.out or config.output_dir
    manifest = new_manifest("simulate", {
        "phantom": phantom_path, "fresnel": args.fresnel, "grid": grid.n,
        "extent": grid.extent, "model": hologram.model.value,
    })
    manifest.record_input(phantom_path)

    geometry = hologram.geometry.to_dict()
    extra = {**geometry, "model": hologram.model.value, "phantom": phantom.model_dump(mode="json")}
    for path in write_raw(out_path(out_dir, "hologram"), hologram.intensity, "hologram", extra):
        manifest.record_output(path)
    for name, field in (("truth_mu", pair.mu), ("truth_phi", pair.phi)):
        for path in write_raw(out_path(out_dir, name), field, name):
            manifest.record_output(path)

    pgm_path = out_path(out_dir, "hologram.pgm")
    scale = write_pgm(pgm_path, hologram.intensity)
    manifest.record_output(pgm_path)
    manifest.metrics = {"pgm_scale": scale, "intensity_min": scale["min"], "intensity_max": scale["max"]}
    write_manifest(out_path(out_dir, "manifest.json"), manifest)

    print(f"Hologram f={hologram.f:g} ({hologram.model.value}) written to {out_dir}")
    return EXIT_OK


def register_simulate_command(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="simulate a hologram from a phantom")
    parser.add_argument("--phantom", help="phantom YAML/JSON (default: bundled demo phantom)")
    parser.add_argument("--fresnel", type=float, required=True)
    parser.add_argument("--grid", type=int, default=256)
    parser.add_argument("--extent", type=float, help="normalized grid width (default HOLOCTF_SIM_EXTENT)")
    parser.add_argument("--model", choices=["linear", "full"], default="linear")
    parser.add_argument("--out", help="output directory")
    parser.set_defaults(handler=cmd_simulate)
