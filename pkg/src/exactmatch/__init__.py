"""Exact Matching on red/blue coloured graphs.

Local search over matching neighbourhoods, the chord-property / BCPM
pipeline, certified graph-class generators and a brute-force oracle.
"""

from .errors import DomainError, InstanceParseError, StructuralError
from .graph import (AlternatingStructure, ColoredGraph, PerfectMatching, SymmetricDifference,
                    alternating_cycle, alternating_path, decompose_symmetric_difference, distance,
                    induced_weight, invert_coloring, weight_of_set)
from .karzanov import (bcpm, check_chord_property, enumerate_chords, rank, rank_reduction_step,
                       solve_em_via_karzanov, verify_karzanov_property, verify_weak_karzanov)
from .local_search import local_search_em, neighborhood_profile
from .matching import find_perfect_matching, max_red_pm, min_red_pm
from .oracle import brute_force_em, em_landscape, enumerate_pms
from .options import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AlternatingStructure", "BACKEND", "ColoredGraph", "DomainError", "InstanceParseError",
    "PerfectMatching", "StructuralError", "SymmetricDifference", "alternating_cycle",
    "alternating_path", "bcpm", "brute_force_em", "check_chord_property",
    "decompose_symmetric_difference", "distance", "em_landscape", "enumerate_chords",
    "enumerate_pms", "find_perfect_matching", "induced_weight", "invert_coloring",
    "local_search_em", "max_red_pm", "min_red_pm", "neighborhood_profile", "rank",
    "rank_reduction_step", "solve_em_via_karzanov", "verify_karzanov_property",
    "verify_weak_karzanov", "weight_of_set",
]
