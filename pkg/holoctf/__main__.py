"""Command-line entry point."""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .commands import register_all_commands
from .commands.common import EXIT_USAGE
from .config import config
from .errors import HoloError

# Configure logging
logging.basicConfig(
    level=config.log_level,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoctf",
        description="Single-hologram CTF reconstruction via sine-type generating functions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_all_commands(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns 0 on success, 1 on failed verification, 2 on usage errors."""
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except HoloError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
