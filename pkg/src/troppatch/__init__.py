"""Combinatorial real tropical geometry: phases, patchworks and cosheaf homology."""

__version__ = "0.1.0"
