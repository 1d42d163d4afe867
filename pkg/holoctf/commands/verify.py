"""verify: run the generating-function validation suite."""

import json
import logging

from ..config import config
from ..genfn import GenFnKind, run_validation
from ..store import new_manifest, write_manifest
from .common import EXIT_FAILED, EXIT_OK, out_path

logger = logging.getLogger(__name__)


def _kinds(choice: str):
    if choice == "both":
        return [GenFnKind.PHASE, GenFnKind.ATTENUATION]
    return [GenFnKind(choice)]


def cmd_verify(args) -> int:
    results = {}
    failed = False
    for kind in _kinds(args.kinds):
        for f in args.fresnel:
            if f % 2 == 0 and (kind is GenFnKind.ATTENUATION or f not in (2, 4)):
                logger.warning(f"Skipping {kind.value} f={f}: no construction at even f")
                continue
            reports = run_validation(kind, f, n_zeros=args.zeros, H=args.strip, corrupt=args.corrupt)
            entry = {}
            for report in reports:
                print(report.summary())
                for failure in report.failures[:20]:
                    print(f"  {failure}")
                failed = failed or not report.passed
                entry[report.name] = {
                    "checks": report.checks,
                    "skipped": report.skipped,
                    "failures": report.failures,
                    "details": report.details,
                }
            results[f"{kind.value}/{f}"] = entry

    out_dir = args.out or config.output_dir
    manifest = new_manifest("verify", {
        "fresnel": args.fresnel, "kinds": args.kinds, "zeros": args.zeros,
        "strip": args.strip, "corrupt": args.corrupt,
    })
    report_path = args.report or out_path(out_dir, "verify_report.json")
    with open(report_path, "w") as f_out:
        json.dump(results, f_out, indent=2, default=float)
    manifest.record_output(report_path)
    manifest.metrics = {"passed": not failed, "cases": len(results)}
    write_manifest(out_path(out_dir, "manifest.json"), manifest)

    if failed:
        logger.error("Validation failed")
        return EXIT_FAILED
    return EXIT_OK


def register_verify_command(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="validate generating functions and zero tables")
    parser.add_argument("--fresnel", type=int, nargs="+", default=[1, 3, 5, 7, 9])
    parser.add_argument("--kinds", choices=["phase", "attenuation", "both"], default="both")
    parser.add_argument("--zeros", type=int, default=500)
    parser.add_argument("--strip", type=float, default=3.0)
    parser.add_argument("--report", help="JSON report path")
    parser.add_argument("--corrupt", action="store_true", help="shift one tabulated zero (negative control)")
    parser.add_argument("--out", help="output directory")
    parser.set_defaults(handler=cmd_verify)
