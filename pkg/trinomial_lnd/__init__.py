"""Exact computations with locally nilpotent derivations of trinomial algebras."""

__version__ = "0.1.0"
