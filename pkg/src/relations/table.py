"""
Composition tables and generation statistics.

A table stores membership as a boolean cube ``present[alpha, beta, gamma]``
so that a cell (alpha, beta) is one contiguous row and triads can be
recorded in bulk from flat indices. Hit counters live in a parallel uint64
cube and saturate instead of wrapping.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from src import logger
from src.errors import SchemaMismatchError
from src.relations.schema import CalculusSchema, RelationSet, Triad

HIT_MAX = np.iinfo(np.uint64).max


@dataclass
class GenStats:
    """
    Counters of one generation run.

    Attributes:
        loop: Number of loops executed
        triad: Number of distinct triads in the produced table
        last_found: Loop at which the last new triad was first recorded,
            None for merged results
    """

    loop: int = 0
    triad: int = 0
    last_found: Optional[int] = 0


class CompositionTable:
    """
    An n x n weak composition table over one calculus schema.

    Attributes:
        schema: The calculus the table belongs to
        present: Boolean cube, present[a, b, g] iff g is in cell (a, b)
        hits: Optional uint64 cube counting instantiations of each triad
        witnesses: Optional first element triple seen for each triad
        provenance: Ordered generation parameters, written into table files
    """

    def __init__(
        self,
        schema: CalculusSchema,
        record_hits: bool = False,
        record_witnesses: bool = False,
    ):
        n = schema.n
        self.schema = schema
        self.present = np.zeros((n, n, n), dtype=bool)
        self.hits: Optional[np.ndarray] = (
            np.zeros((n, n, n), dtype=np.uint64) if record_hits else None
        )
        self.witnesses: Optional[Dict[Triad, Tuple[Any, Any, Any]]] = (
            {} if record_witnesses else None
        )
        self.provenance: Dict[str, str] = {}

    @staticmethod
    def flat_index(n: int, t: Triad) -> int:
        """Position of a triad in the flattened membership cube."""
        return (t.alpha * n + t.beta) * n + t.gamma

    @staticmethod
    def triad_at(n: int, flat: int) -> Triad:
        ab, gamma = divmod(int(flat), n)
        alpha, beta = divmod(ab, n)
        return Triad(alpha, gamma, beta)

    def insert(self, t: Triad, count_hit: bool = True) -> bool:
        """
        Record a triad.

        Args:
            t: Triad to record
            count_hit: Whether the insertion is an instantiation to be
                counted in the hit cube (seeded triads are not)

        Returns:
            bool: True iff the triad was not present before
        """
        is_new = not self.present[t.alpha, t.beta, t.gamma]
        self.present[t.alpha, t.beta, t.gamma] = True
        if count_hit and self.hits is not None:
            if self.hits[t.alpha, t.beta, t.gamma] < HIT_MAX:
                self.hits[t.alpha, t.beta, t.gamma] += np.uint64(1)
        return is_new

    def add_hits(self, flat_indices: np.ndarray) -> None:
        """Count one instantiation per entry of flat_indices, saturating."""
        if self.hits is None or flat_indices.size == 0:
            return
        idx, counts = np.unique(flat_indices, return_counts=True)
        flat_hits = self.hits.reshape(-1)
        current = flat_hits[idx]
        flat_hits[idx] = current + np.minimum(counts.astype(np.uint64), HIT_MAX - current)

    def contains(self, t: Triad) -> bool:
        return bool(self.present[t.alpha, t.beta, t.gamma])

    def cell(self, alpha: int, beta: int) -> RelationSet:
        """The recorded gammas of cell (alpha, beta)."""
        return RelationSet.of(self.schema, np.flatnonzero(self.present[alpha, beta]).tolist())

    def cell_masks(self) -> List[List[int]]:
        """All cells as integer bit masks, indexed [alpha][beta]."""
        packed = np.packbits(self.present, axis=2, bitorder="little")
        return [
            [int.from_bytes(packed[alpha, beta].tobytes(), "little") for beta in range(self.schema.n)]
            for alpha in range(self.schema.n)
        ]

    def triad_count(self) -> int:
        return int(np.count_nonzero(self.present))

    def triads(self) -> Iterator[Triad]:
        """All recorded triads, row-major by (alpha, beta), gammas ascending."""
        for flat in np.flatnonzero(self.present):
            yield self.triad_at(self.schema.n, flat)

    def hit_count(self, t: Triad) -> int:
        if self.hits is None:
            return 0
        return int(self.hits[t.alpha, t.beta, t.gamma])

    def check_compatible(self, other: "CompositionTable") -> None:
        self.schema.check_same(other.schema)

    def copy(self) -> "CompositionTable":
        clone = CompositionTable(self.schema)
        clone.present = self.present.copy()
        clone.hits = None if self.hits is None else self.hits.copy()
        clone.witnesses = None if self.witnesses is None else dict(self.witnesses)
        clone.provenance = dict(self.provenance)
        return clone

    def __eq__(self, other: object) -> bool:
        """Tables are equal when they hold the same triads over the same calculus."""
        if not isinstance(other, CompositionTable):
            return NotImplemented
        return self.schema == other.schema and np.array_equal(self.present, other.present)

    def __repr__(self) -> str:
        return f"CompositionTable({self.schema.name!r}, triads={self.triad_count()})"


def ct_insert(table: CompositionTable, t: Triad) -> bool:
    """Record triad t in table; True iff it was newly recorded."""
    t.check(table.schema)
    return table.insert(t)


def triad_count(table: CompositionTable) -> int:
    return table.triad_count()


def cell(table: CompositionTable, alpha: int, beta: int) -> RelationSet:
    return table.cell(alpha, beta)


def composition_probabilities(
    table: CompositionTable, alpha: int, beta: int
) -> Dict[int, float]:
    """
    Empirical probability of each basic relation in the cell (alpha, beta).

    Probabilities are the hit counts of <alpha, gamma, beta> normalised over
    the cell. Recorded gammas that were never instantiated (seeded triads)
    get probability 0.

    Raises:
        ValueError: If the table carries no hit counts
    """
    if table.hits is None:
        raise ValueError("Table has no hit counts; generate it with hits enabled")
    row = table.hits[alpha, beta].astype(float)
    total = row.sum()
    members = table.cell(alpha, beta)
    if total == 0:
        return {g: 0.0 for g in members}
    return {g: float(row[g] / total) for g in members}


def merge_cells(target: CompositionTable, source: CompositionTable) -> None:
    """
    Union source into target in place; hits add, first witness wins.

    A target without hit counts or witnesses gets them allocated when the
    source carries them. Triads the target already held then start at zero
    hits and without witness.
    """
    if target.schema != source.schema:
        raise SchemaMismatchError(
            f"Cannot merge {source.schema.name!r} into {target.schema.name!r}"
        )
    held = target.triad_count()
    if target.hits is None and source.hits is not None:
        if held:
            logger.warning(
                f"Merging hit counts into a table without them; its {held} triads count from zero"
            )
        target.hits = np.zeros_like(source.hits)
    if target.witnesses is None and source.witnesses is not None:
        if held:
            logger.warning(f"Merging witnesses into a table without them; its {held} triads have none")
        target.witnesses = {}
    target.present |= source.present
    if target.hits is not None and source.hits is not None:
        room = HIT_MAX - target.hits
        target.hits += np.minimum(source.hits, room)
    if target.witnesses is not None and source.witnesses is not None:
        for t, witness in source.witnesses.items():
            target.witnesses.setdefault(t, witness)
