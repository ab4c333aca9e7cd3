"""Tropical (max-plus) polars, extremality tests and implication checking."""

from .cone import (
    GeneratorCone,
    Inequality,
    LevelChain,
    MinimalCover,
    build_level_chains,
    cone_membership,
    cover_to_vector,
    enumerate_minimal_covers,
    enumerate_polar_extreme,
    ith_polar_membership,
    minimal_elements,
    polar_membership,
)
from .farkas import (
    Implication,
    MaxCert,
    MinCert,
    check_minimality_certificates,
    find_max_certificate,
    find_min_certificate,
    holds,
    holds_finite,
    is_redundant,
    minimize_system,
    normalize,
    strict_separation,
    verify_max_certificate,
    verify_min_certificate,
)
from .game import ZERO_PLUS, GameGraph, ParamWeight, build_game, cycle_time, rho
from .hypergraph import DirectedHypergraph, is_extreme_general, smallest_scc, star_test, tangent_hypergraph
from .semiring import BOTTOM, TropMatrix, trop_dot, trop_matmul

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "DirectedHypergraph",
    "GameGraph",
    "GeneratorCone",
    "Implication",
    "Inequality",
    "LevelChain",
    "MaxCert",
    "MinCert",
    "MinimalCover",
    "ParamWeight",
    "TropMatrix",
    "ZERO_PLUS",
    "build_game",
    "build_level_chains",
    "check_minimality_certificates",
    "cone_membership",
    "cover_to_vector",
    "cycle_time",
    "enumerate_minimal_covers",
    "enumerate_polar_extreme",
    "find_max_certificate",
    "find_min_certificate",
    "holds",
    "holds_finite",
    "is_extreme_general",
    "is_redundant",
    "ith_polar_membership",
    "minimal_elements",
    "minimize_system",
    "normalize",
    "polar_membership",
    "rho",
    "smallest_scc",
    "star_test",
    "strict_separation",
    "tangent_hypergraph",
    "trop_dot",
    "trop_matmul",
    "verify_max_certificate",
    "verify_min_certificate",
]
