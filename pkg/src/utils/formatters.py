"""
Utility module for rendering workbench results as text.

The command line prints everything through these helpers so that the
stats line, cells, diffs and survey rows look the same everywhere.
"""

from typing import Dict, List, Optional

from src.calculi.domains import DomainSpec
from src.generator.sharding import SurveyRow
from src.relations.schema import CalculusSchema, RelationSet, Triad
from src.relations.table import GenStats


def format_gen_stats(stats: GenStats) -> str:
    """
    Format generation statistics as a single line.

    Args:
        stats: Counters of a generation or enumeration run

    Returns:
        str: ``Loop=<n> Triad=<n> LastFound=<n|none>``
    """
    last_found = "none" if stats.last_found is None else str(stats.last_found)
    return f"Loop={stats.loop} Triad={stats.triad} LastFound={last_found}"


def format_cell(relations: RelationSet) -> str:
    """Member symbols separated by spaces, in schema order."""
    return " ".join(relations.symbols())


def format_triad(schema: CalculusSchema, t: Triad) -> str:
    alpha, gamma, beta = t.symbols(schema)
    return f"<{alpha}, {gamma}, {beta}>"


def format_diff(schema: CalculusSchema, missing: List[Triad], extra: List[Triad]) -> str:
    """
    Format the result of a table comparison.

    Args:
        schema: Calculus of both tables
        missing: Triads only in the reference table
        extra: Triads only in the compared table

    Returns:
        str: Summary line followed by one line per differing triad
    """
    if not missing and not extra:
        return "Tables are identical."

    formatted_parts = [f"missing={len(missing)} extra={len(extra)}"]
    formatted_parts.extend(f"- {format_triad(schema, t)}" for t in missing)
    formatted_parts.extend(f"+ {format_triad(schema, t)}" for t in extra)
    return "\n".join(formatted_parts)


def format_probabilities(schema: CalculusSchema, probabilities: Dict[int, float]) -> str:
    """
    Format empirical composition probabilities, most likely relation first.

    Ties keep schema order.
    """
    if not probabilities:
        return "Empty cell."

    ranked = sorted(probabilities.items(), key=lambda item: (-item[1], item[0]))
    return "\n".join(f"{schema.symbol(gamma)} {p:.6f}" for gamma, p in ranked)


def format_survey(rows: List[SurveyRow], plateau_from: Optional[DomainSpec] = None) -> str:
    """
    Format the rows of a subdomain survey as an aligned table.

    Args:
        rows: SurveyRow entries in survey order
        plateau_from: DomainSpec from which the count is stable, if any

    Returns:
        str: One header line, one line per row and the plateau verdict
    """
    if not rows:
        return "No subdomains surveyed."

    formatted_parts = [f"{'params':<16} {'method':<8} {'elements':>9} {'triads':>8} {'last_found':>11}"]
    for row in rows:
        last_found = "-" if row.last_found is None else str(row.last_found)
        formatted_parts.append(
            f"{row.spec.params_label():<16} {row.method:<8} {row.elements:>9}"
            f" {row.triads:>8} {last_found:>11}"
        )
    if plateau_from is None:
        formatted_parts.append("No plateau reached.")
    else:
        formatted_parts.append(f"Plateau from {plateau_from.params_label()}.")
    return "\n".join(formatted_parts)


def format_witnesses(schema: CalculusSchema, witnesses: Dict[Triad, tuple]) -> str:
    """
    One line per witnessed triad, row-major: ``<triad> : a | b | c``.

    The element triple (a, b, c) realises alpha = rho(a, b), beta = rho(b, c)
    and gamma = rho(a, c).
    """
    if not witnesses:
        return "No witnesses recorded."

    ordered = sorted(witnesses.items(), key=lambda item: (item[0].alpha, item[0].beta, item[0].gamma))
    return "\n".join(
        f"{format_triad(schema, t)} : {' | '.join(repr(e) for e in triple)}"
        for t, triple in ordered
    )
