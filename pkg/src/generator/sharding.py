"""Sharded generation, table merging and subdomain surveys."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src import logger, settings
from src.calculi.domains import DomainSpec, domain_size
from src.errors import SchemaMismatchError
from src.generator.generation import GenOptions, generate_ct
from src.generator.termination import TerminationCondition
from src.oracle import enumerate_ct, oracle_budget
from src.relations.table import CompositionTable, GenStats, merge_cells

# Provenance keys that must agree before tables can be merged
_DOMAIN_KEYS = ("domain", "params")


def merge_tables(tables: Sequence[CompositionTable]) -> CompositionTable:
    """
    Cell-wise union of tables generated over the same subdomain.

    Hit counts add up, the first table holding a witness keeps it. The
    merged provenance sums the loops and clears LastFound.

    Raises:
        SchemaMismatchError: If schemas or recorded subdomains differ
        ValueError: If no table is given
    """
    if not tables:
        raise ValueError("Nothing to merge")
    first = tables[0]
    for other in tables[1:]:
        first.check_compatible(other)
        for key in _DOMAIN_KEYS:
            mine, theirs = first.provenance.get(key), other.provenance.get(key)
            if mine is not None and theirs is not None and mine != theirs:
                raise SchemaMismatchError(
                    f"Cannot merge tables over different subdomains ({key}: {mine} vs {theirs})"
                )

    with_hits = all(t.hits is not None for t in tables)
    with_witnesses = all(t.witnesses is not None for t in tables)
    merged = CompositionTable(
        first.schema, record_hits=with_hits, record_witnesses=with_witnesses
    )
    for table in tables:
        merge_cells(merged, table)
    # Hits and witnesses survive only when every shard recorded them
    if not with_hits:
        merged.hits = None
    if not with_witnesses:
        merged.witnesses = None

    for key in _DOMAIN_KEYS:
        if key in first.provenance:
            merged.provenance[key] = first.provenance[key]
    if all("loops" in t.provenance for t in tables):
        merged.provenance["loops"] = str(sum(int(t.provenance["loops"]) for t in tables))
    merged.provenance["triads"] = str(merged.triad_count())
    merged.provenance["last_found"] = "none"
    return merged


def merge_stats(stats: Sequence[GenStats], merged: CompositionTable) -> GenStats:
    return GenStats(
        loop=sum(s.loop for s in stats), triad=merged.triad_count(), last_found=None
    )


def shard_seeds(seed: int, shards: int) -> List[int]:
    """Seeds of `shards` independent streams derived from a master seed."""
    children = np.random.SeedSequence(seed).spawn(shards)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def _run_shard(
    spec: DomainSpec,
    psi: TerminationCondition,
    seed: int,
    opts: GenOptions,
    block_size: Optional[int],
) -> Tuple[CompositionTable, GenStats]:
    return generate_ct(spec, psi, seed, opts, block_size)


def generate_sharded(
    spec: DomainSpec,
    psi: TerminationCondition,
    seed: int,
    opts: Optional[GenOptions] = None,
    shards: int = 1,
    workers: Optional[int] = None,
    block_size: Optional[int] = None,
) -> Tuple[CompositionTable, GenStats]:
    """
    Run `shards` independently seeded generations and merge them.

    Shards run on a process pool; results are merged in shard order, so the
    relation content does not depend on scheduling.
    """
    opts = opts or GenOptions()
    if shards < 1:
        raise ValueError(f"Shard count must be positive, got {shards}")
    if shards == 1:
        return generate_ct(spec, psi, seed, opts, block_size)

    seeds = shard_seeds(seed, shards)
    if workers is None:
        workers = int(settings.get("SHARD_WORKERS", 0)) or os.cpu_count() or 1
    workers = max(1, min(workers, shards))
    logger.info(f"Running {shards} shards of {spec.calculus} on {workers} workers")

    if workers == 1:
        results = [_run_shard(spec, psi, s, opts, block_size) for s in seeds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_shard, spec, psi, s, opts, block_size) for s in seeds
            ]
            results = [future.result() for future in futures]

    tables = [table for table, _ in results]
    merged = merge_tables(tables)
    stats = merge_stats([s for _, s in results], merged)
    merged.provenance = {
        **{k: v for k, v in tables[0].provenance.items() if k not in ("seed", "loops", "triads", "last_found")},
        "seed": str(seed),
        "shards": str(shards),
        "loops": str(stats.loop),
        "triads": str(stats.triad),
        "last_found": "none",
    }
    return merged, stats


@dataclass
class SurveyRow:
    """Result of one subdomain in a survey."""

    spec: DomainSpec
    method: str
    elements: int
    triads: int
    last_found: Optional[int]


@dataclass
class SurveyResult:
    rows: List[SurveyRow] = field(default_factory=list)
    plateau_from: Optional[DomainSpec] = None


def find_plateau(rows: Sequence[SurveyRow]) -> Optional[DomainSpec]:
    """
    First subdomain from which the triad count no longer changes.

    A plateau needs at least two rows with the final count.
    """
    if len(rows) < 2:
        return None
    final = rows[-1].triads
    start = len(rows) - 1
    while start > 0 and rows[start - 1].triads == final:
        start -= 1
    if start == len(rows) - 1:
        return None
    return rows[start].spec


def survey_domains(
    calculus: str,
    param_sets: Sequence[Dict[str, int]],
    psi: TerminationCondition,
    seed: int,
    opts: Optional[GenOptions] = None,
    budget: Optional[int] = None,
) -> SurveyResult:
    """
    Test 3-completeness empirically over increasing subdomains.

    Each subdomain goes to the oracle when its triple count fits the budget
    and to the sampler otherwise.
    """
    budget = oracle_budget(budget)
    result = SurveyResult()
    for params in param_sets:
        spec = DomainSpec(calculus=calculus, **params)
        size = domain_size(spec)
        if size ** 3 <= budget:
            table = enumerate_ct(spec, budget)
            row = SurveyRow(spec, "oracle", size, table.triad_count(), None)
        else:
            table, stats = generate_ct(spec, psi, seed, opts)
            row = SurveyRow(spec, "sampled", size, stats.triad, stats.last_found)
        logger.info(f"Survey {calculus} {spec.params_label()}: {row.triads} triads ({row.method})")
        result.rows.append(row)
    result.plateau_from = find_plateau(result.rows)
    return result
