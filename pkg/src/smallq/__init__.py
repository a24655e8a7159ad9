"""Representations of the small quantum group of gl2 at an odd root of unity:
tensor powers of the natural module, their blocks and endomorphism algebras."""

__version__ = "0.1.0"
