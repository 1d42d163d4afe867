"""Single-hologram CTF reconstruction via sine-type generating functions."""

__version__ = "1.0.0"
