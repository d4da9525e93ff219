"""Sparse (beta, eps)-hopsets built from a sampled vertex hierarchy with bunches and pivots."""
from .construct import Hopset, PivotTable, SizeStats, build_from_levels, build_hopset, compute_bunches, compute_pivots, size_stats
from .generators import WeightSpec, generate_graph
from .graph import DistanceVector, WeightedGraph, all_pairs_distances, dijkstra
from .hierarchy import LevelAssignment, assign_levels, auto_k, sampling_probability
from .io import load_graph, load_hopset, save_graph, save_hopset
from .params import HopsetParams, derive_params, hopset_budget
from .verify import PairSpec, bounded_hop_distances, min_hops_for_stretch, verify_emulator, verify_hopset

__all__ = [
    "DistanceVector", "Hopset", "HopsetParams", "LevelAssignment", "PairSpec", "PivotTable",
    "SizeStats", "WeightSpec", "WeightedGraph", "all_pairs_distances", "assign_levels", "auto_k",
    "bounded_hop_distances", "build_from_levels", "build_hopset", "compute_bunches",
    "compute_pivots", "derive_params", "dijkstra", "generate_graph", "hopset_budget",
    "load_graph", "load_hopset", "min_hops_for_stretch", "sampling_probability", "save_graph",
    "save_hopset", "size_stats", "verify_emulator", "verify_hopset",
]
