"""
Weak composition and algebraic closure.

Closure repeatedly applies g(i,j) <- g(i,j) & g(i,k) o g(k,j) until no label
changes or one becomes empty. It approximates consistency and is not a
decision procedure for every calculus.
"""

from collections import deque
from dataclasses import dataclass
from typing import Deque, List, Set, Tuple

import numpy as np

from src import logger
from src.reasoner.network import ConstraintNetwork
from src.relations.schema import RelationSet, Triad
from src.relations.table import CompositionTable


def weak_compose(table: CompositionTable, a: RelationSet, b: RelationSet) -> RelationSet:
    """
    Union of cell(alpha, beta) over alpha in a and beta in b.

    Raises:
        SchemaMismatchError: If a, b and the table belong to different calculi
    """
    table.schema.check_same(a.schema)
    table.schema.check_same(b.schema)
    left, right = list(a), list(b)
    if not left or not right:
        return RelationSet.empty(table.schema)
    gammas = table.present[np.ix_(left, right)].any(axis=(0, 1))
    return RelationSet.of(table.schema, np.flatnonzero(gammas).tolist())


def triangle_is_ct_consistent(table: CompositionTable, t: Triad) -> bool:
    """Whether the triangle {x alpha y, y beta z, x gamma z} is allowed by the table."""
    t.check(table.schema)
    return table.contains(t)


class Composer:
    """Weak composition on bit masks, with the table cells unpacked once."""

    def __init__(self, table: CompositionTable):
        self.schema = table.schema
        self._cells: List[List[int]] = table.cell_masks()

    def compose(self, a: int, b: int) -> int:
        result = 0
        cells = self._cells
        rights = []
        mask = b
        while mask:
            low = mask & -mask
            rights.append(low.bit_length() - 1)
            mask ^= low
        while a:
            low = a & -a
            row = cells[low.bit_length() - 1]
            for beta in rights:
                result |= row[beta]
            a ^= low
        return result


@dataclass
class ClosureResult:
    """
    Outcome of algebraic closure.

    Attributes:
        consistent: False iff some label became empty
        network: The refined network (a copy, the input is left untouched)
        revisions: Number of label changes made
    """

    consistent: bool
    network: ConstraintNetwork
    revisions: int = 0


def algebraic_closure(net: ConstraintNetwork, table: CompositionTable) -> ClosureResult:
    """
    Refine a network to the fixed point of the updating rule.

    Every unordered pair starts in the queue. Popping {i, j} revises, for
    each third variable k, the labels (i, k) and (k, j) through j and i,
    and (j, k) and (k, i) through i and j. A changed pair is queued again.

    Raises:
        SchemaMismatchError: If the network and the table use different calculi
    """
    net.schema.check_same(table.schema)
    work = net.copy()
    if work.inconsistent:
        return ClosureResult(False, work, 0)

    composer = Composer(table)
    compose = composer.compose
    n = work.n
    queue: Deque[Tuple[int, int]] = deque((i, j) for i in range(n) for j in range(i + 1, n))
    queued: Set[Tuple[int, int]] = set(queue)
    revisions = 0

    def revise(x: int, y: int, left: int, right: int) -> bool:
        nonlocal revisions
        current = work.mask(x, y)
        refined = current & compose(left, right)
        if refined == current:
            return True
        work.set_mask(x, y, refined)
        revisions += 1
        pair = (x, y) if x < y else (y, x)
        if pair not in queued:
            queued.add(pair)
            queue.append(pair)
        return refined != 0

    while queue:
        i, j = queue.popleft()
        queued.discard((i, j))
        for k in range(n):
            if k == i or k == j:
                continue
            ij, ji = work.mask(i, j), work.mask(j, i)
            if not (
                revise(i, k, ij, work.mask(j, k))
                and revise(k, j, work.mask(k, i), ij)
                and revise(j, k, ji, work.mask(i, k))
                and revise(k, i, work.mask(k, j), ji)
            ):
                logger.info(f"Network became inconsistent on pair ({i}, {j}) via {k}")
                return ClosureResult(False, work, revisions)

    logger.debug(f"Closure reached a fixed point after {revisions} revisions")
    return ClosureResult(True, work, revisions)
