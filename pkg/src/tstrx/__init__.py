"""Intermediate t-structures and their distance on D^b of type-A path algebras."""

__version__ = "0.1.0"
