"""Numerics for the generalized isotonic oscillator and its squeezed coherent states."""

from . import radial, special_fn, states, stats, wigner

__version__ = "0.1.0"

__all__ = ["radial", "special_fn", "states", "stats", "wigner", "__version__"]
