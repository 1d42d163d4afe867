"""reconstruct: recover one channel from a hologram or an analytic phantom."""

import json
import logging

from ..config import config
from ..errors import ContractError
from ..fields import FresnelGeometry, Grid2D
from ..forward import AnalyticSampler, Hologram, HologramSampler, Model
from ..phantom import load_phantom, parse_phantom
from ..retrieval import ReconConfig, reconstruct_field, reference_field
from ..store import new_manifest, raw_paths, read_raw, write_manifest, write_pgm, write_profile_csv, write_raw
from .common import EXIT_OK, out_path, resolve_fresnel

logger = logging.getLogger(__name__)


def _load_source(args):
    """(sampler, ground-truth phantom or None, input path)."""
    if args.hologram:
        intensity, manifest = read_raw(args.hologram)
        try:
            geometry = FresnelGeometry(manifest["k"], manifest["b"], manifest["d"])
        except KeyError as e:
            raise ContractError(f"hologram manifest lacks geometry field {e.args[0]!r}") from None
        try:
            model = Model(manifest.get("model", "linear"))
        except ValueError:
            raise ContractError(f"hologram manifest has an unknown model {manifest['model']!r}") from None
        hologram = Hologram(intensity, geometry, model)
        truth = parse_phantom(manifest["phantom"]) if "phantom" in manifest else None
        return HologramSampler(hologram), truth, args.hologram
    if args.fresnel is None:
        raise ContractError("--analytic needs --fresnel")
    phantom = load_phantom(args.analytic)
    return AnalyticSampler(phantom, args.fresnel), phantom, args.analytic


def cmd_reconstruct(args) -> int:
    sampler, truth, source = _load_source(args)
    f_raw = sampler.f
    f, scale = resolve_fresnel(f_raw, args.channel, args.refresnel)
    extent = args.extent or config.extent
    if scale != 1.0:
        sampler = sampler.rescaled(scale)
        truth = truth.shrunk(scale) if truth is not None else None
        extent = extent / scale

    cfg = ReconConfig.from_config(
        config,
        n_directions=args.directions,
        n_terms=args.zeros,
        zero_margin=args.margin,
        grid=Grid2D(args.grid or config.grid_n, extent),
        sampler=sampler.name,
        workers=args.workers,
    )
    if isinstance(sampler, HologramSampler) and sampler.reliable_radius < cfg.zero_margin * cfg.grid_radius:
        logger.warning(
            f"Hologram data is reliable up to |η| = {sampler.reliable_radius:.3g} but the zero table "
            f"reaches {cfg.zero_margin * cfg.grid_radius:.3g}; enlarge the simulation extent or shrink the grid"
        )
    recon, report = reconstruct_field(sampler, args.channel, f, cfg, truth=truth)

    out_dir = args.out or config.output_dir
    manifest = new_manifest("reconstruct", {
        "source": source, "sampler": sampler.name, "channel": args.channel,
        "f_raw": f_raw, "f": f, "scale": scale, "refresnel": args.refresnel,
        "n_directions": cfg.n_directions, "n_terms": report.n_terms, "zero_margin": cfg.zero_margin,
        "grid": cfg.grid.n, "extent": cfg.grid.extent, "workers": cfg.workers,
    })
    manifest.record_input(raw_paths(source)[0] if args.hologram else source)

    metrics = None
    if report.rel_l2_error is not None:
        metrics = {
            "rel_l2": report.rel_l2_error,
            "max_abs": report.max_abs_error,
            "raster_rel_l2": report.raster_rel_l2,
            "imag_residue": report.imag_residue,
        }
    extra = {
        "f": f, "n_directions": cfg.n_directions, "n_terms": report.n_terms,
        "sampler": sampler.name, "grid": {"n": cfg.grid.n, "extent": cfg.grid.extent},
        "metrics": metrics,
    }
    for path in write_raw(out_path(out_dir, "recon"), recon, f"recon_{args.channel}", extra):
        manifest.record_output(path)

    reference = reference_field(truth, args.channel, cfg.grid) if truth is not None else None
    profile_path = write_profile_csv(out_path(out_dir, "profile.csv"), recon, reference)
    manifest.record_output(profile_path)
    pgm_path = out_path(out_dir, "recon.pgm")
    pgm_scale = write_pgm(pgm_path, recon)
    manifest.record_output(pgm_path)

    if metrics is not None:
        metrics_path = out_path(out_dir, "metrics.json")
        with open(metrics_path, "w") as f_out:
            json.dump({**metrics, "report": report.to_dict()}, f_out, indent=2)
        manifest.record_output(metrics_path)
    manifest.metrics = {**(metrics or {}), "pgm_scale": pgm_scale, "timing": report.timing}
    write_manifest(out_path(out_dir, "manifest.json"), manifest)

    summary = f"rel L2 {report.rel_l2_error:.4e}" if metrics else "no ground truth"
    print(f"Reconstructed {args.channel} channel at f={f} ({sampler.name} sampler): {summary}")
    return EXIT_OK


def register_reconstruct_command(subparsers) -> None:
    parser = subparsers.add_parser("reconstruct", help="reconstruct one channel")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--hologram", help="hologram stem written by simulate")
    source.add_argument("--analytic", help="phantom YAML/JSON for exact CTF data")
    parser.add_argument("--fresnel", type=float, help="Fresnel number (analytic data only)")
    parser.add_argument("--channel", choices=["sin", "cos"], default="sin")
    parser.add_argument("--directions", type=int)
    parser.add_argument("--zeros", type=int, help="zeros per ray (default: all within the margin)")
    parser.add_argument("--margin", type=float, help="table radius over grid radius")
    parser.add_argument("--grid", type=int)
    parser.add_argument("--extent", type=float)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--refresnel", action="store_true",
                        help="enlarge the support so the Fresnel number becomes odd")
    parser.add_argument("--out", help="output directory")
    parser.set_defaults(handler=cmd_reconstruct)
