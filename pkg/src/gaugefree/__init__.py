"""Freeness of gauge actions on graph and Cuntz-Pimsner algebras."""

from .correspondence import (
    CommutativeCorrespondence,
    Ideal,
    Verdict,
    from_graph,
    full_gauge_free,
    ideal_chain,
    is_faithful,
    is_fg,
    katsura_ideal,
    zk_gauge_free,
)
from .graph import (
    INF,
    DirectedMultigraph,
    Edge,
    GraphError,
    infinite_emitters,
    is_row_finite,
    receiver_chain,
    receivers_at_least,
    sinks,
    sources,
)
from .leavitt import LeavittAlgebra, PathMonomial, lpa_dimension_acyclic, strong_grading_check

__version__ = "0.1.0"
