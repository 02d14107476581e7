"""Qualitative constraint networks over a calculus schema."""

from typing import Callable, Iterator, List, Sequence, Tuple

from src import settings
from src.relations.schema import CalculusSchema, RelationSet


def converse_mask(schema: CalculusSchema, mask: int) -> int:
    """Bit mask of the converse of the relation set `mask`."""
    result = 0
    conv = schema.converse
    while mask:
        low = mask & -mask
        result |= 1 << conv[low.bit_length() - 1]
        mask ^= low
    return result


def max_network_variables() -> int:
    return int(settings.get("MAX_NETWORK_VARIABLES", 256))


class ConstraintNetwork:
    """
    n variables with a relation set on every ordered pair.

    Labels are stored as bit masks. Setting a label also sets its converse
    on the reversed pair, so label(j, i) is always the converse of
    label(i, j). The diagonal starts as {identity}, every other pair as the
    universal relation.

    Attributes:
        schema: Calculus of the labels
        n: Number of variables
        inconsistent: True once some label has become empty
    """

    def __init__(self, schema: CalculusSchema, n: int):
        cap = max_network_variables()
        if n < 1:
            raise ValueError(f"A network needs at least one variable, got {n}")
        if n > cap:
            raise ValueError(f"Network has {n} variables, the limit is {cap}")
        self.schema = schema
        self.n = n
        self.inconsistent = False
        universal = (1 << schema.n) - 1
        self._labels: List[List[int]] = [[universal] * n for _ in range(n)]
        for i in range(n):
            self._labels[i][i] = 1 << schema.identity

    def mask(self, i: int, j: int) -> int:
        return self._labels[i][j]

    def label(self, i: int, j: int) -> RelationSet:
        return RelationSet(self.schema, self._labels[i][j])

    def set_mask(self, i: int, j: int, mask: int) -> None:
        self._check_pair(i, j)
        converse = converse_mask(self.schema, mask)
        if i == j:
            # A diagonal label equals its own converse
            mask &= converse
            converse = mask
        self._labels[i][j] = mask
        self._labels[j][i] = converse
        if mask == 0:
            self.inconsistent = True

    def set_label(self, i: int, j: int, relations: RelationSet) -> None:
        """Replace the label of (i, j) and its converse on (j, i)."""
        self.schema.check_same(relations.schema)
        self.set_mask(i, j, relations.mask)

    def constrain(self, i: int, j: int, relations: RelationSet) -> bool:
        """
        Intersect the label of (i, j) with `relations`.

        Returns:
            bool: False iff the label became empty
        """
        self.schema.check_same(relations.schema)
        self.set_mask(i, j, self._labels[i][j] & relations.mask)
        return self._labels[i][j] != 0

    def _check_pair(self, i: int, j: int) -> None:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"Pair ({i}, {j}) is outside a network of {self.n} variables")

    def constraints(self) -> Iterator[Tuple[int, int, RelationSet]]:
        """Non-universal labels of pairs i < j, row-major."""
        universal = (1 << self.schema.n) - 1
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self._labels[i][j] != universal:
                    yield i, j, self.label(i, j)

    def copy(self) -> "ConstraintNetwork":
        clone = ConstraintNetwork.__new__(ConstraintNetwork)
        clone.schema = self.schema
        clone.n = self.n
        clone.inconsistent = self.inconsistent
        clone._labels = [list(row) for row in self._labels]
        return clone

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConstraintNetwork):
            return NotImplemented
        return self.schema == other.schema and self._labels == other._labels

    def __repr__(self) -> str:
        lines = [f"ConstraintNetwork({self.schema.name!r}, n={self.n})"]
        for i, j, relations in self.constraints():
            lines.append(f"  v{i} {relations} v{j}")
        return "\n".join(lines)


def network_from_elements(
    schema: CalculusSchema,
    relate: Callable[[object, object], int],
    elements: Sequence[object],
) -> ConstraintNetwork:
    """The network whose every label is the singleton true relation of an instantiation."""
    network = ConstraintNetwork(schema, len(elements))
    for i, a in enumerate(elements):
        for j in range(i + 1, len(elements)):
            network.set_mask(i, j, 1 << relate(a, elements[j]))
    return network
