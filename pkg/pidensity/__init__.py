"""Exact pi-class densities, commuting probability and Hall subgroup checks for permutation groups."""

__version__ = "0.1.0"
