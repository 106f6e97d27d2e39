"""Computing with rooted locally finite graphs at finite scale.

Balls and the ball metric, end spaces and rank, reductions from closed subsets
of Cantor space to regular graphs, proper homotopy equivalence on certified
descriptors, genericity experiments and pants complexes.
"""

from .balls import Ball, DyadicDistance, ball, canonical_code, distance, in_basic_open, rooted_isomorphic
from .builtins import CombSequence, JoinOracle, LochNess, Ray, RegularTree
from .closedsets import ClosedSetSpec, parse_closed_set, validate_closed_set
from .descriptors import (INF, CantorPair, ConvergentSequence, FinitePair, StandardGraphDescriptor,
                          parse_descriptor)
from .ends import (component_tree, in_U_n, in_V_n, loop_accumulation_profile, rank_lower_bound,
                   v_n_witness_radius)
from .genericity import ExperimentConfig, delta_u, delta_v, run_experiment, sample_configuration
from .graph import (FiniteMultigraph, FunctionOracle, GraphError, GraphOracle, PatchedOracle, degree, rank,
                    split_degree6)
from .phe import (descriptor_of, phe_distinguish, phe_equivalent, realize, stone_structure,
                  structures_isomorphic)
from .reductions import GammaOracle, gamma, gamma_3, gamma_k, gamma_star
from .registry import builtin, resolve_graph
from .specfile import format_spec, parse_spec
from .surfaces import PantsComplex, SurfaceClass, parse_pants, surfaces_homeomorphic

__version__ = "0.1.0"

__all__ = [
    "Ball", "DyadicDistance", "ball", "canonical_code", "distance", "in_basic_open", "rooted_isomorphic",
    "CombSequence", "JoinOracle", "LochNess", "Ray", "RegularTree",
    "ClosedSetSpec", "parse_closed_set", "validate_closed_set",
    "INF", "CantorPair", "ConvergentSequence", "FinitePair", "StandardGraphDescriptor", "parse_descriptor",
    "component_tree", "in_U_n", "in_V_n", "loop_accumulation_profile", "rank_lower_bound",
    "v_n_witness_radius",
    "ExperimentConfig", "delta_u", "delta_v", "run_experiment", "sample_configuration",
    "FiniteMultigraph", "FunctionOracle", "GraphError", "GraphOracle", "PatchedOracle", "degree", "rank",
    "split_degree6",
    "descriptor_of", "phe_distinguish", "phe_equivalent", "realize", "stone_structure",
    "structures_isomorphic",
    "GammaOracle", "gamma", "gamma_3", "gamma_k", "gamma_star",
    "builtin", "resolve_graph", "format_spec", "parse_spec",
    "PantsComplex", "SurfaceClass", "parse_pants", "surfaces_homeomorphic",
]
