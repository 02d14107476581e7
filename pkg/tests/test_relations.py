"""Tests for schemas, relation sets and composition tables."""

import numpy as np
import pytest

from src.calculi.opra import opra_schema
from src.calculi.rcc8 import rcc8_schema
from src.calculi.temporal import ia_schema, indu_schema, pa_schema
from src.errors import SchemaMismatchError
from src.relations.schema import (
    CalculusSchema,
    RelationSet,
    Triad,
    converse_set,
    seed_identity_triads,
    triad_permutations,
)
from src.relations.table import (
    HIT_MAX,
    CompositionTable,
    cell,
    composition_probabilities,
    ct_insert,
    merge_cells,
    triad_count,
)

ALL_SCHEMAS = [pa_schema(), ia_schema(), indu_schema(), rcc8_schema(), opra_schema(1), opra_schema(2)]


@pytest.mark.parametrize("schema", ALL_SCHEMAS, ids=lambda s: s.name)
def test_converse_is_an_involution(schema: CalculusSchema) -> None:
    """Test that converse(converse(r)) = r and the identity is self-converse."""
    for r in range(schema.n):
        assert schema.converse[schema.converse[r]] == r
    assert schema.converse[schema.identity] == schema.identity


def test_relation_counts() -> None:
    """Test the number of basic relations of each calculus."""
    assert [s.n for s in ALL_SCHEMAS] == [3, 13, 25, 8, 20, 72]


def test_schema_rejects_non_involutive_converse() -> None:
    """Test that a converse which is not an involution is refused."""
    with pytest.raises(ValueError):
        CalculusSchema("bad", ("a", "b", "c"), (1, 2, 0), 0)


def test_schema_index_and_symbol() -> None:
    """Test symbol lookup in both directions."""
    schema = ia_schema()
    assert schema.index("eq") == 6
    assert schema.symbol(0) == "b"
    assert schema.converse[schema.index("d")] == schema.index("di")
    with pytest.raises(KeyError):
        schema.index("zz")


def test_relation_set_operations() -> None:
    """Test membership, intersection, union and inclusion."""
    schema = pa_schema()
    lt_eq = RelationSet.from_symbols(schema, ["<", "="])
    eq_gt = RelationSet.from_symbols(schema, ["=", ">"])

    assert (lt_eq & eq_gt).symbols() == ["="]
    assert (lt_eq | eq_gt) == RelationSet.universal(schema)
    assert RelationSet.from_symbols(schema, ["<"]) <= lt_eq
    assert not lt_eq <= eq_gt
    assert len(lt_eq) == 2
    assert RelationSet.empty(schema).is_empty()
    assert str(lt_eq) == "{<,=}"


def test_relation_sets_of_different_schemas_do_not_mix() -> None:
    """Test that combining sets of two calculi raises a schema mismatch."""
    with pytest.raises(SchemaMismatchError):
        RelationSet.universal(pa_schema()) & RelationSet.universal(rcc8_schema())


def test_converse_set() -> None:
    """Test the converse of a relation set."""
    schema = rcc8_schema()
    s = RelationSet.from_symbols(schema, ["TPP", "NTPP", "EC"])
    assert converse_set(schema, s).symbols() == ["EC", "TPPi", "NTPPi"]
    assert converse_set(schema, converse_set(schema, s)) == s


def test_triad_permutations_are_closed() -> None:
    """Test that permuting any image of a triad stays inside the six images."""
    schema = ia_schema()
    t = Triad.from_symbols(schema, "b", "b", "m")
    images = set(triad_permutations(schema, t))
    for image in images:
        assert set(triad_permutations(schema, image)) == images


def test_triad_permutations_of_pa() -> None:
    """Test the six images of the triad (<, <, <) in the point algebra."""
    schema = pa_schema()
    t = Triad.from_symbols(schema, "<", "<", "<")
    symbols = {image.symbols(schema) for image in triad_permutations(schema, t)}
    assert symbols == {
        ("<", "<", "<"),
        (">", "<", "<"),
        ("<", "<", ">"),
        ("<", ">", ">"),
        (">", ">", ">"),
        (">", ">", "<"),
    }


@pytest.mark.parametrize("schema", ALL_SCHEMAS, ids=lambda s: s.name)
def test_seed_identity_triads(schema: CalculusSchema) -> None:
    """Test that identity seeding yields 3n - 2 distinct triads."""
    seeds = seed_identity_triads(schema)
    assert len(seeds) == 3 * schema.n - 2
    ident = schema.identity
    assert Triad(ident, ident, ident) in seeds


def test_rcc8_identity_seed_count() -> None:
    """Test the 22 identity triads of RCC-8."""
    assert len(seed_identity_triads(rcc8_schema())) == 22


def test_insert_and_cell() -> None:
    """Test that inserting reports novelty and fills the right cell."""
    schema = pa_schema()
    table = CompositionTable(schema)
    t = Triad.from_symbols(schema, "<", "<", "<")

    assert ct_insert(table, t)
    assert not ct_insert(table, t)
    assert table.triad_count() == 1
    assert table.cell(0, 0).symbols() == ["<"]
    assert cell(table, 0, 0) == table.cell(0, 0)
    assert triad_count(table) == 1
    assert table.contains(t)
    assert list(table.triads()) == [t]


def test_ct_insert_rejects_invalid_triad() -> None:
    """Test that a triad outside the schema is refused."""
    table = CompositionTable(pa_schema())
    with pytest.raises(ValueError):
        ct_insert(table, Triad(0, 3, 0))


def test_triads_are_row_major() -> None:
    """Test that triads come out ordered by (alpha, beta, gamma)."""
    schema = pa_schema()
    table = CompositionTable(schema)
    for alpha, gamma, beta in [(2, 0, 2), (0, 2, 1), (0, 0, 1), (0, 1, 0)]:
        table.insert(Triad(alpha, gamma, beta))
    ordered = [(t.alpha, t.beta, t.gamma) for t in table.triads()]
    assert ordered == sorted(ordered)


def test_cell_masks_match_cells(ia_table: CompositionTable) -> None:
    """Test that the packed cell masks agree with the membership cube."""
    masks = ia_table.cell_masks()
    for alpha in range(13):
        for beta in range(13):
            assert masks[alpha][beta] == ia_table.cell(alpha, beta).mask


def test_add_hits_counts_and_saturates() -> None:
    """Test bulk hit counting, including saturation at the uint64 maximum."""
    schema = pa_schema()
    table = CompositionTable(schema, record_hits=True)
    flat = np.array([0, 0, 5, 0], dtype=np.int64)
    table.add_hits(flat)
    assert table.hits.reshape(-1)[0] == 3
    assert table.hits.reshape(-1)[5] == 1

    table.hits.reshape(-1)[5] = HIT_MAX - np.uint64(1)
    table.add_hits(np.array([5, 5, 5], dtype=np.int64))
    assert table.hits.reshape(-1)[5] == HIT_MAX


def test_composition_probabilities() -> None:
    """Test that probabilities are hit counts normalised over the cell."""
    schema = pa_schema()
    table = CompositionTable(schema, record_hits=True)
    lt, eq, gt = range(3)
    for gamma, count in ((lt, 1), (eq, 1), (gt, 2)):
        for _ in range(count):
            table.insert(Triad(lt, gamma, gt))

    probabilities = composition_probabilities(table, lt, gt)
    assert probabilities == {lt: 0.25, eq: 0.25, gt: 0.5}
    assert sum(probabilities.values()) == pytest.approx(1.0)


def test_composition_probabilities_needs_hits(pa_table: CompositionTable) -> None:
    """Test that a table without hit counts is refused."""
    with pytest.raises(ValueError):
        composition_probabilities(pa_table, 0, 2)


def test_merge_cells_is_a_union() -> None:
    """Test merging two partial tables."""
    schema = pa_schema()
    a = CompositionTable(schema, record_hits=True)
    b = CompositionTable(schema, record_hits=True)
    a.insert(Triad(0, 0, 0))
    b.insert(Triad(0, 0, 0))
    b.insert(Triad(2, 2, 2))

    merge_cells(a, b)
    assert a.triad_count() == 2
    assert a.hit_count(Triad(0, 0, 0)) == 2
    assert a.hit_count(Triad(2, 2, 2)) == 1


def test_merge_cells_allocates_hits_for_the_target() -> None:
    """Test that the source's hits and witnesses reach a target that had none."""
    schema = pa_schema()
    target = CompositionTable(schema)
    source = CompositionTable(schema, record_hits=True, record_witnesses=True)
    source.insert(Triad(2, 2, 2))
    source.insert(Triad(2, 2, 2))
    source.witnesses[Triad(2, 2, 2)] = (3, 2, 1)

    merge_cells(target, source)
    assert target.hits is not None
    assert target.hit_count(Triad(2, 2, 2)) == 2
    assert target.witnesses == {Triad(2, 2, 2): (3, 2, 1)}


def test_merge_cells_into_a_filled_target_without_hits() -> None:
    """Test that triads the target held before the merge start at zero hits."""
    schema = pa_schema()
    target = CompositionTable(schema)
    target.insert(Triad(0, 0, 0))
    source = CompositionTable(schema, record_hits=True)
    source.insert(Triad(2, 2, 2))

    merge_cells(target, source)
    assert target.triad_count() == 2
    assert target.hit_count(Triad(0, 0, 0)) == 0
    assert target.hit_count(Triad(2, 2, 2)) == 1


def test_merge_cells_rejects_other_schema() -> None:
    """Test that tables of different calculi cannot be merged."""
    with pytest.raises(SchemaMismatchError):
        merge_cells(CompositionTable(pa_schema()), CompositionTable(ia_schema()))


def test_table_equality_ignores_provenance(pa_table: CompositionTable) -> None:
    """Test that equality compares triads and schema only."""
    clone = pa_table.copy()
    clone.provenance["note"] = "copy"
    assert clone == pa_table
    clone.present[0, 0, 2] = not clone.present[0, 0, 2]
    assert clone != pa_table
