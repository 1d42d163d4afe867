"""zeros: tabulate the zeros of a generating function."""

import json
import logging

from ..config import config
from ..genfn import build_genfn, check_zero_identities, verify_sine_type, zeros_up_to
from ..store import new_manifest, write_manifest, write_zero_table_csv
from .common import EXIT_FAILED, EXIT_OK, out_path

logger = logging.getLogger(__name__)


def cmd_zeros(args) -> int:
    genfn = build_genfn(args.kind, args.fresnel)
    table = zeros_up_to(genfn, args.max_radius, args.extra)
    identities = check_zero_identities(table, genfn)
    sine = verify_sine_type(genfn, args.strip)

    out_dir = args.out or config.output_dir
    manifest = new_manifest("zeros", {
        "kind": genfn.kind.value, "fresnel": genfn.f, "max_radius": args.max_radius,
        "extra": args.extra, "strip": args.strip,
    })
    csv_path = write_zero_table_csv(out_path(out_dir, "zeros.csv"), table)
    manifest.record_output(csv_path)

    report = {
        "function": genfn.name,
        "count": len(table),
        "c_est": table.c_est,
        "identities": {"checks": identities.checks, "failures": identities.failures},
        "sine_type": {
            "H": sine.H, "A_est": sine.A_est, "B_est": sine.B_est,
            "delta_est": sine.delta_est, "skipped": sine.skipped, "passed": sine.passed,
        },
    }
    report_path = out_path(out_dir, "report.json")
    with open(report_path, "w") as f:
        json.dump(report, f, indent=2)
    manifest.record_output(report_path)
    manifest.metrics = {"count": len(table), "c_est": table.c_est, "passed": identities.passed and sine.passed}
    write_manifest(out_path(out_dir, "manifest.json"), manifest)

    print(f"{genfn.name}: {len(table)} zeros up to λ={table.radius:.6g}; {identities.summary()}")
    if not (identities.passed and sine.passed):
        for failure in identities.failures:
            logger.error(failure)
        return EXIT_FAILED
    return EXIT_OK


def register_zeros_command(subparsers) -> None:
    parser = subparsers.add_parser("zeros", help="tabulate generating-function zeros")
    parser.add_argument("--kind", choices=["phase", "attenuation"], required=True)
    parser.add_argument("--fresnel", type=int, required=True)
    parser.add_argument("--max-radius", type=float, default=10.0)
    parser.add_argument("--extra", type=int, default=0, help="zeros beyond --max-radius")
    parser.add_argument("--strip", type=float, default=3.0, help="strip half-width for the sine-type check")
    parser.add_argument("--out", help="output directory")
    parser.set_defaults(handler=cmd_zeros)
