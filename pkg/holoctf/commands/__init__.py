"""Command-line subcommands."""

from .reconstruct import register_reconstruct_command
from .simulate import register_simulate_command
from .verify import register_verify_command
from .wks_demo import register_wks_demo_command
from .zeros import register_zeros_command


def register_all_commands(subparsers) -> None:
    """Register every subcommand; each sets `handler` on its parser."""
    register_zeros_command(subparsers)
    register_simulate_command(subparsers)
    register_reconstruct_command(subparsers)
    register_verify_command(subparsers)
    register_wks_demo_command(subparsers)
