"""Podleś-sphere spectral triple, q-zeta residues and the fundamental Hochschild cocycle."""

from .scalars import ScalarContext, default_context

__version__ = "0.1.0"
