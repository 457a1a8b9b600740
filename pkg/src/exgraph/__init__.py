"""Exclusivity graphs and edge-coloured multigraphs: Bell-scenario structure,
classical and Lovász-number bounds via see-saw, and the reduction calculus on
coloured cycles.
"""
from ._kernels import available_backends, get_backend, kernels, set_backend
from .bell import (ACCEPT, REJECT, BellDecision, BellScenario, EventLabel,
                   bell_check, label_events, scenario_to_multigraph)
from .closed_forms import (ctheta_tpath, mb_cycle, p_n, theta_antihole7,
                           theta_closed_form_cycle)
from .errors import InvalidArgumentError, ResourceLimitError
from .experiments import (ExperimentReport, reproduce_theorem6,
                          reproduce_theorem8, selftest_cycles)
from .graphs import (ColouredMultigraph, ColouringClass, Graph,
                     assignment_to_multigraph, automorphisms,
                     canonical_colouring, coloured_cycle, colour_names,
                     complement, cycle, enumerate_colourings, factor,
                     graph_from_json, graph_to_json, graph_to_multigraph,
                     has_odd_hole_or_antihole, independence_number,
                     induced_subgraph, is_complete_multipartite,
                     maximum_independent_set,
                     multigraph_digest, multigraph_from_dict,
                     multigraph_from_json, multigraph_to_dict,
                     multigraph_to_json, shadow)
from .opr import (OPR, OPRCheck, swap_path_substitution, swapped_colouring,
                  umbrella_opr, verify_opr)
from .reductions import (PathProfile, break_edge, canonical_cycle_word,
                         cycle_word, merge_colours, path_profile,
                         plus_one_reduce, remove_edge)
from .seesaw import SeesawReport, ctheta_seesaw, max_product_dim, theta_seesaw

__version__ = "0.1.0"

__all__ = [
    "ACCEPT", "REJECT",
    "BellDecision", "BellScenario", "ColouredMultigraph", "ColouringClass",
    "EventLabel", "ExperimentReport", "Graph", "InvalidArgumentError", "OPR",
    "OPRCheck", "PathProfile", "ResourceLimitError", "SeesawReport",
    "assignment_to_multigraph", "automorphisms", "available_backends",
    "bell_check", "break_edge", "canonical_colouring", "canonical_cycle_word",
    "coloured_cycle", "colour_names", "complement", "ctheta_seesaw",
    "ctheta_tpath", "cycle", "cycle_word", "enumerate_colourings", "factor",
    "get_backend",
    "graph_from_json", "graph_to_json", "graph_to_multigraph",
    "has_odd_hole_or_antihole", "independence_number", "induced_subgraph",
    "is_complete_multipartite", "kernels", "label_events", "max_product_dim",
    "maximum_independent_set",
    "mb_cycle", "merge_colours", "multigraph_digest", "multigraph_from_dict",
    "multigraph_from_json", "multigraph_to_dict", "multigraph_to_json",
    "p_n", "path_profile", "plus_one_reduce", "remove_edge",
    "reproduce_theorem6", "reproduce_theorem8", "scenario_to_multigraph",
    "selftest_cycles", "set_backend", "shadow", "swap_path_substitution",
    "swapped_colouring", "theta_antihole7", "theta_closed_form_cycle",
    "theta_seesaw", "umbrella_opr", "verify_opr",
]
