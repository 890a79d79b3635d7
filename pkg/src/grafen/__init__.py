"""Graph energy, star-partition upper bounds and preferential-attachment trees."""

from .graph import (
    DegreeStats,
    EdgePairStats,
    Graph,
    degree_stats,
    double_star,
    edge_pair_stats,
    from_edge_list,
    is_tree,
    path,
    star,
)
from .kernels import BACKEND
from .random_models import Seed, ba_tree, erdos_renyi, recursive_tree
from .spectral import Spectrum, adjacency_spectrum, energy

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DegreeStats",
    "EdgePairStats",
    "Graph",
    "Seed",
    "Spectrum",
    "adjacency_spectrum",
    "ba_tree",
    "degree_stats",
    "double_star",
    "edge_pair_stats",
    "energy",
    "erdos_renyi",
    "from_edge_list",
    "is_tree",
    "path",
    "recursive_tree",
    "star",
]
