"""sagraph - essential self-adjointness criteria for magnetic Schrödinger operators on graphs."""

__version__ = "0.1.0"
