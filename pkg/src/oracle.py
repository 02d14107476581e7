"""
Exhaustive composition tables over finite subdomains.

The oracle relates every ordered pair of elements once, then scans all
triples of the resulting relation matrix. Its output is the exact table of
the calculus restricted to the subdomain, and the true table whenever the
subdomain is 3-complete.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from src import logger, settings
from src.calculi.domains import DomainSpec, get_domain
from src.calculi.elements import Element
from src.calculi.matrix import relation_matrix
from src.errors import BudgetExceededError
from src.relations.table import CompositionTable


def oracle_budget(budget: Optional[int] = None) -> int:
    """The triple budget to use, falling back to settings.ORACLE_BUDGET."""
    if budget is None:
        budget = int(settings.get("ORACLE_BUDGET", 2_000_000_000))
    if budget <= 0:
        raise ValueError(f"Oracle budget must be positive, got {budget}")
    return budget


def enumerate_elements(spec: DomainSpec) -> List[Element]:
    """All distinct canonical elements of the subdomain, in encoding order."""
    return get_domain(spec).elements()


def _scan(relations: np.ndarray, n: int, rows: Sequence[int]) -> np.ndarray:
    """Membership cube of every triple whose first element is in `rows`."""
    present = np.zeros(n * n * n, dtype=bool)
    rel = relations.astype(np.int64)
    for a in rows:
        # alpha = rho(a, b) per b, gamma = rho(a, c) per c, beta = rho(b, c)
        alpha = rel[a][:, None]
        gamma = rel[a][None, :]
        present[(alpha * n + rel) * n + gamma] = True
    return present


def enumerate_ct(
    spec: DomainSpec, budget: Optional[int] = None, workers: int = 1
) -> CompositionTable:
    """
    Exact composition table of the calculus over the subdomain.

    Args:
        spec: Subdomain to enumerate
        budget: Largest admissible |D|^3, defaults to settings.ORACLE_BUDGET
        workers: Processes to split the scan over, by first element

    Returns:
        Table with domain, params, method and triads provenance

    Raises:
        BudgetExceededError: If |D|^3 exceeds the budget
    """
    budget = oracle_budget(budget)
    domain = get_domain(spec)
    size = domain.size
    triples = size ** 3
    if triples > budget:
        raise BudgetExceededError(
            f"{spec.calculus} ({spec.params_label()}) has {size} elements,"
            f" {triples} triples exceed the budget of {budget}"
        )

    matrix = relation_matrix(domain)
    n = domain.schema.n
    logger.info(
        f"Enumerating {spec.calculus} ({spec.params_label()}): {size} elements, {triples} triples"
    )

    rows = list(range(size))
    workers = max(1, min(int(workers), size))
    if workers == 1:
        flat = _scan(matrix.relations, n, rows)
    else:
        chunks = [rows[i::workers] for i in range(workers)]
        flat = np.zeros(n * n * n, dtype=bool)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan, [matrix.relations] * workers, [n] * workers, chunks):
                flat |= part

    table = CompositionTable(domain.schema)
    table.present = flat.reshape(n, n, n)
    table.provenance.update(
        {
            "domain": spec.calculus,
            "params": spec.params_label(),
            "method": "oracle",
            "triads": str(table.triad_count()),
        }
    )
    logger.info(f"Oracle {spec.calculus} ({spec.params_label()}): {table.triad_count()} triads")
    return table
