"""Exact equivariant Gromov-Witten, Hurwitz and Hodge series for ADE surface resolutions."""

from .algebra import Q, I, RatFunc, T1, T2, TruncatedSeries
from .geometry import SurfaceModel, build_surface, parse_surface
from .invariants import InvariantSpec, reduced_invariant
from .partitions import WeightedPartition, parse_partition, parse_weighted_partition

__version__ = "0.1.0"

__all__ = [
    "Q", "I", "RatFunc", "T1", "T2", "TruncatedSeries",
    "SurfaceModel", "build_surface", "parse_surface",
    "InvariantSpec", "reduced_invariant",
    "WeightedPartition", "parse_partition", "parse_weighted_partition",
]
