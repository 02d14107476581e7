"""
INDU triads predicted from the IA and PA tables.

A triple of INDU relations <a*1, g*2, b*3> is a triad iff <a, g, b> is an
IA triad and <*1, *2, *3> is a PA triad, provided all three refined
symbols exist in INDU.
"""

from typing import Set

from src import logger
from src.calculi.temporal import INDU_INDEX, ia_schema, indu_schema, pa_schema
from src.errors import IncompleteTableError
from src.relations.schema import Triad
from src.relations.table import CompositionTable

IA_TRIADS = 409
PA_TRIADS = 13


def _require_complete(table: CompositionTable, name: str, expected: int) -> None:
    if table.schema.name != name:
        raise IncompleteTableError(f"Expected a {name} table, got {table.schema.name!r}")
    count = table.triad_count()
    if count != expected:
        raise IncompleteTableError(
            f"The {name} table has {count} triads, a complete one has {expected}"
        )


def indu_candidate_filter(ia_table: CompositionTable, pa_table: CompositionTable) -> Set[Triad]:
    """
    All INDU triads obtained by combining complete IA and PA tables.

    Raises:
        IncompleteTableError: If either table is not complete
    """
    _require_complete(ia_table, "ia", IA_TRIADS)
    _require_complete(pa_table, "pa", PA_TRIADS)
    ia, pa = ia_schema(), pa_schema()

    pa_triads = [t.symbols(pa) for t in pa_table.triads()]
    result: Set[Triad] = set()
    for t in ia_table.triads():
        alpha, gamma, beta = t.symbols(ia)
        for d_alpha, d_gamma, d_beta in pa_triads:
            refined = (alpha + d_alpha, gamma + d_gamma, beta + d_beta)
            if all(symbol in INDU_INDEX for symbol in refined):
                result.add(Triad(*(INDU_INDEX[symbol] for symbol in refined)))
    logger.info(f"INDU filter kept {len(result)} candidate triads")
    return result


def indu_table_from_filter(ia_table: CompositionTable, pa_table: CompositionTable) -> CompositionTable:
    """The filter output as an INDU composition table."""
    table = CompositionTable(indu_schema())
    for t in sorted(indu_candidate_filter(ia_table, pa_table)):
        table.insert(t)
    table.provenance.update({"method": "indu_filter", "triads": str(table.triad_count())})
    return table
