"""lfbounds: local-friendliness polytope bounds, membership tests and
non-absoluteness measures for extended Wigner's-friend correlations."""

__version__ = "0.1.0"
