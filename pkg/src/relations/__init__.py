"""Relation algebra over calculus schemas: relation sets, triads, composition tables."""

from src.relations.schema import (
    WITNESS_ORDER,
    CalculusSchema,
    RelationSet,
    Triad,
    converse_set,
    seed_identity_triads,
    triad_permutations,
)
from src.relations.table import (
    CompositionTable,
    GenStats,
    cell,
    composition_probabilities,
    ct_insert,
    merge_cells,
    triad_count,
)

__all__ = [
    "WITNESS_ORDER",
    "CalculusSchema",
    "CompositionTable",
    "GenStats",
    "RelationSet",
    "Triad",
    "cell",
    "composition_probabilities",
    "converse_set",
    "ct_insert",
    "merge_cells",
    "seed_identity_triads",
    "triad_count",
    "triad_permutations",
]
