"""Leader election with advice in anonymous port-numbered networks."""

from .advice_oracle import Advice, InfeasibleGraphError, compute_advice
from .graph_core import PortGraph, diameter, parse_graph, read_graph
from .local_sim import (
    run_elect,
    run_election_dphi,
    run_election_variant,
    run_generic,
    verify_outcome,
)
from .views import AugView, election_index, is_feasible

__all__ = [
    "Advice",
    "AugView",
    "InfeasibleGraphError",
    "PortGraph",
    "compute_advice",
    "diameter",
    "election_index",
    "is_feasible",
    "parse_graph",
    "read_graph",
    "run_elect",
    "run_election_dphi",
    "run_election_variant",
    "run_generic",
    "verify_outcome",
]
