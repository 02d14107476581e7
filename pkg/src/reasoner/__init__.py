"""Consumers of composition tables: networks, algebraic closure, INDU filter."""

from src.reasoner.closure import (
    ClosureResult,
    Composer,
    algebraic_closure,
    triangle_is_ct_consistent,
    weak_compose,
)
from src.reasoner.indu_filter import indu_candidate_filter, indu_table_from_filter
from src.reasoner.network import ConstraintNetwork, converse_mask, network_from_elements

__all__ = [
    "ClosureResult",
    "Composer",
    "ConstraintNetwork",
    "algebraic_closure",
    "converse_mask",
    "indu_candidate_filter",
    "indu_table_from_filter",
    "network_from_elements",
    "triangle_is_ct_consistent",
    "weak_compose",
]
