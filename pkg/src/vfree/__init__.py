"""V-free 2-matchings, extended hypergraph matchings and related tools."""

from .errors import *  # noqa: F401,F403
from .extended import (ExtendedMatching, QuasiDegreeProfile, clique_expansion,
                       extended_matching_covering_max_quasidegree, pad_to_quasi_regular,
                       perfect_extended_matching, quasi_degrees, verify_extended_matching)
from .graph import (BipartiteGraph, Component, Hypergraph, Multigraph, Node, SLink,
                    TwoMatching, bipartite_from_hypergraph, components,
                    hypergraph_from_bipartite)
from .liang import LiangSolution, links_to_vfree, solve_liang, verify_liang, vfree_to_links
from .matching import (GallaiEdmonds, dm_merge, gallai_edmonds, matching_covering_max_degree,
                       max_matching_bipartite, max_matching_general, saturating_matching)
from .oracle import (OracleBudget, oracle_extended_matching, oracle_ge_d_set, oracle_nu,
                     oracle_vfree_cover)
from .reduction import GadgetMap, ThreeDMInstance, forward_map, lift_solution, reduce_3dm

__version__ = "0.1.0"
