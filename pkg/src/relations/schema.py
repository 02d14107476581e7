"""
Schema-level relation algebra.

A calculus is described by its ordered basic relations, the converse
permutation over them and its identity relation. Relation sets are
fixed-width bit vectors over a schema: bit ``i`` is set iff basic relation
``i`` is a member.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, NamedTuple, Tuple

from src.errors import SchemaMismatchError


@dataclass(frozen=True)
class CalculusSchema:
    """
    The basic relations of a qualitative calculus.

    Attributes:
        name: Calculus token, e.g. "ia" or "opra2"
        relation_symbols: Basic relation symbols in schema order
        converse: converse[i] is the index of the converse of relation i
        identity: Index of the identity relation
    """

    name: str
    relation_symbols: Tuple[str, ...]
    converse: Tuple[int, ...]
    identity: int
    _index: Dict[str, int] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self):
        n = len(self.relation_symbols)
        if n == 0:
            raise ValueError(f"Calculus {self.name!r} has no basic relations")
        if any(not symbol for symbol in self.relation_symbols):
            raise ValueError(f"Calculus {self.name!r} has an empty relation symbol")
        if len(set(self.relation_symbols)) != n:
            raise ValueError(f"Calculus {self.name!r} has duplicate relation symbols")
        if len(self.converse) != n:
            raise ValueError(f"Converse of {self.name!r} must have length {n}")
        if sorted(self.converse) != list(range(n)):
            raise ValueError(f"Converse of {self.name!r} is not a permutation")
        if any(self.converse[self.converse[i]] != i for i in range(n)):
            raise ValueError(f"Converse of {self.name!r} is not an involution")
        if not 0 <= self.identity < n:
            raise ValueError(f"Identity of {self.name!r} is out of range")
        if self.converse[self.identity] != self.identity:
            raise ValueError(f"Identity of {self.name!r} is not self-converse")
        self._index.update({symbol: i for i, symbol in enumerate(self.relation_symbols)})

    @property
    def n(self) -> int:
        """Number of basic relations."""
        return len(self.relation_symbols)

    def index(self, symbol: str) -> int:
        """Index of a relation symbol, KeyError if unknown."""
        try:
            return self._index[symbol]
        except KeyError:
            raise KeyError(
                f"Unknown relation symbol {symbol!r} for calculus {self.name!r}"
            ) from None

    def symbol(self, index: int) -> str:
        return self.relation_symbols[index]

    def has_symbol(self, symbol: str) -> bool:
        return symbol in self._index

    def check_same(self, other: "CalculusSchema") -> None:
        """Raise SchemaMismatchError unless both schemas describe the same calculus."""
        if self != other:
            raise SchemaMismatchError(
                f"Schema mismatch: {self.name!r} vs {other.name!r}"
            )


@dataclass(frozen=True)
class RelationSet:
    """
    A set of basic relations of one schema.

    The empty set is a valid value and signals inconsistency in the reasoner.
    """

    schema: CalculusSchema
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.schema.n:
            raise ValueError(
                f"Relation mask does not fit the {self.schema.n} relations of"
                f" {self.schema.name!r}"
            )

    @classmethod
    def empty(cls, schema: CalculusSchema) -> "RelationSet":
        return cls(schema, 0)

    @classmethod
    def universal(cls, schema: CalculusSchema) -> "RelationSet":
        return cls(schema, (1 << schema.n) - 1)

    @classmethod
    def of(cls, schema: CalculusSchema, indices: Iterable[int]) -> "RelationSet":
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(schema, mask)

    @classmethod
    def from_symbols(cls, schema: CalculusSchema, symbols: Iterable[str]) -> "RelationSet":
        return cls.of(schema, (schema.index(s) for s in symbols))

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _checked(self, other: "RelationSet") -> int:
        self.schema.check_same(other.schema)
        return other.mask

    def __and__(self, other: "RelationSet") -> "RelationSet":
        return RelationSet(self.schema, self.mask & self._checked(other))

    def __or__(self, other: "RelationSet") -> "RelationSet":
        return RelationSet(self.schema, self.mask | self._checked(other))

    def __le__(self, other: "RelationSet") -> bool:
        return self.mask & ~self._checked(other) == 0

    def is_empty(self) -> bool:
        return self.mask == 0

    def symbols(self) -> List[str]:
        """Member symbols in schema order."""
        return [self.schema.symbol(i) for i in self]

    def __str__(self) -> str:
        return "{" + ",".join(self.symbols()) + "}"


class Triad(NamedTuple):
    """
    A composition triad <alpha, gamma, beta>.

    gamma is a member of the cell (alpha, beta): the network
    {x alpha y, y beta z, x gamma z} has a solution.
    """

    alpha: int
    gamma: int
    beta: int

    def symbols(self, schema: CalculusSchema) -> Tuple[str, str, str]:
        return (
            schema.symbol(self.alpha),
            schema.symbol(self.gamma),
            schema.symbol(self.beta),
        )

    @classmethod
    def from_symbols(
        cls, schema: CalculusSchema, alpha: str, gamma: str, beta: str
    ) -> "Triad":
        return cls(schema.index(alpha), schema.index(gamma), schema.index(beta))

    def check(self, schema: CalculusSchema) -> None:
        if not all(0 <= i < schema.n for i in self):
            raise ValueError(f"Triad {tuple(self)} is not valid for {schema.name!r}")


def converse_set(schema: CalculusSchema, s: RelationSet) -> RelationSet:
    """
    Converse of a relation set: bit converse(i) is set iff bit i is set.

    Raises:
        SchemaMismatchError: If s belongs to a different schema
    """
    schema.check_same(s.schema)
    return RelationSet.of(schema, (schema.converse[i] for i in s))


def triad_permutations(schema: CalculusSchema, t: Triad) -> List[Triad]:
    """
    The six triads obtained by permuting the three elements of a witness.

    With a = x, b = y, c = z and alpha = rho(a,b), beta = rho(b,c),
    gamma = rho(a,c), the images are <alpha,gamma,beta>, <alpha~,beta,gamma>,
    <gamma,alpha,beta~>, <beta,alpha~,gamma~>, <beta~,gamma~,alpha~> and
    <gamma~,beta~,alpha>. Duplicates are kept.
    """
    conv = schema.converse
    a, g, b = t.alpha, t.gamma, t.beta
    return [
        Triad(a, g, b),
        Triad(conv[a], b, g),
        Triad(g, a, conv[b]),
        Triad(b, conv[a], conv[g]),
        Triad(conv[b], conv[g], conv[a]),
        Triad(conv[g], conv[b], a),
    ]


# For each permutation template, the order in which the witness (a, b, c)
# must be rearranged so that it realises the permuted triad.
WITNESS_ORDER: Tuple[Tuple[int, int, int], ...] = (
    (0, 1, 2),
    (1, 0, 2),
    (0, 2, 1),
    (1, 2, 0),
    (2, 1, 0),
    (2, 0, 1),
)


def seed_identity_triads(schema: CalculusSchema) -> set:
    """
    Triads implied by the identity relation alone.

    Returns {<id,b,b>} | {<a,a,id>} | {<a,id,a~>} over all basic relations.
    """
    ident = schema.identity
    seeds = set()
    for r in range(schema.n):
        seeds.add(Triad(ident, r, r))
        seeds.add(Triad(r, r, ident))
        seeds.add(Triad(r, ident, schema.converse[r]))
    return seeds
