"""wks-demo: truncation error of the cardinal series."""

import logging

from ..config import config
from ..interp import WKS_BANDS, wks_truncation_demo
from ..store import new_manifest, write_error_curve_csv, write_manifest
from .common import EXIT_OK, out_path

logger = logging.getLogger(__name__)


def cmd_wks_demo(args) -> int:
    out_dir = args.out or config.output_dir
    manifest = new_manifest("wks-demo", {"n": args.n, "band": args.band})

    results = {band: wks_truncation_demo(args.n, band=band) for band in WKS_BANDS}
    chosen = results[args.band]
    curve_path = write_error_curve_csv(out_path(out_dir, "error_curve.csv"), chosen)
    manifest.record_output(curve_path)
    manifest.metrics = {f"max_abs_error[{band}]": r.max_abs_error for band, r in results.items()}
    write_manifest(out_path(out_dir, "manifest.json"), manifest)

    print(f"N={args.n} band={args.band}: max |g - g_N| on |t| <= 6 = {chosen.max_abs_error:.6g}")
    return EXIT_OK


def register_wks_demo_command(subparsers) -> None:
    parser = subparsers.add_parser("wks-demo", help="cardinal-series truncation benchmark")
    parser.add_argument("--n", type=int, default=8)
    parser.add_argument("--band", choices=sorted(WKS_BANDS), default="paley-wiener")
    parser.add_argument("--out", help="output directory")
    parser.set_defaults(handler=cmd_wks_demo)
