"""Tests for the table and network file formats."""

import pytest

from src.calculi.domains import DomainSpec
from src.calculi.temporal import ia_schema, pa_schema
from src.data_manager import (
    FORMAT_HEADER,
    diff_ct,
    format_ct,
    format_network,
    load_network,
    load_table,
    parse_ct,
    read_network,
    save_network,
    save_table,
)
from src.errors import CtFormatError, NetworkFormatError, SchemaMismatchError
from src.oracle import enumerate_ct
from src.reasoner.network import ConstraintNetwork
from src.relations.schema import RelationSet, Triad
from src.relations.table import CompositionTable

PA_HEADER = "# qct v1\ncalculus: pa\nrelations: < = >\ntable:\n"


def test_pa_table_format(pa_table: CompositionTable) -> None:
    """Test the exact layout of the PA table."""
    lines = format_ct(pa_table).splitlines()
    assert lines[0] == FORMAT_HEADER
    assert lines[1] == "calculus: pa"
    assert lines[2] == "relations: < = >"
    assert lines[3] == "provenance: domain=pa params=M=3 method=oracle triads=13"
    assert lines[4] == "table:"
    cells = lines[5:]
    assert len(cells) == 9
    assert cells[0] == "< ; < ; <"
    assert cells[2] == "< ; > ; < = >"
    assert sum(len(line.split(";")[2].split()) for line in cells) == 13


@pytest.mark.parametrize("fixture", ["pa_table", "ia_table", "rcc8_disk_table"])
def test_format_is_stable(fixture: str, request) -> None:
    """Test that reading and writing again reproduces the same bytes."""
    table = request.getfixturevalue(fixture)
    text = format_ct(table)
    parsed = parse_ct(text)
    assert parsed == table
    assert parsed.provenance == table.provenance
    assert format_ct(parsed) == text


def test_hit_counts_survive_a_round_trip() -> None:
    """Test that γ@count members are read back as hit counts."""
    schema = pa_schema()
    table = CompositionTable(schema, record_hits=True)
    for _ in range(3):
        table.insert(Triad(0, 0, 0))
    table.insert(Triad(0, 2, 2))

    text = format_ct(table)
    assert "< ; < ; <@3" in text
    parsed = parse_ct(text)
    assert parsed.hits is not None
    assert parsed.hit_count(Triad(0, 0, 0)) == 3
    assert parsed.hit_count(Triad(0, 2, 2)) == 1


def test_unknown_symbol_names_the_line() -> None:
    """Test that an unknown relation symbol is reported with its line number."""
    with pytest.raises(CtFormatError) as excinfo:
        parse_ct(PA_HEADER + "< ; zz ; <\n")
    assert excinfo.value.line_number == 5
    assert "zz" in str(excinfo.value)


def test_duplicate_cell_is_refused() -> None:
    """Test that the same (alpha, beta) cell may appear only once."""
    with pytest.raises(CtFormatError) as excinfo:
        parse_ct(PA_HEADER + "< ; < ; <\n< ; < ; =\n")
    assert excinfo.value.line_number == 6


@pytest.mark.parametrize(
    "text, line_number",
    [
        ("# qct v2\ncalculus: pa\nrelations: < = >\ntable:\n", 1),
        ("calculus: pa\n", 1),
        ("", 1),
        ("# qct v1\ncalculus: nope\nrelations: < = >\ntable:\n", 2),
        ("# qct v1\ncalculus: pa\nrelations: < >\ntable:\n", 3),
        ("# qct v1\ncalculus: pa\nrelations: < = >\nprovenance: seed\ntable:\n", 4),
        ("# qct v1\ncalculus: pa\nrelations: < = >\n< ; < ; <\n", 4),
        (PA_HEADER + "< ; <\n", 5),
        (PA_HEADER + "< ; < ; <@x\n", 5),
        (PA_HEADER + "< ; < ; < <\n", 5),
    ],
    ids=[
        "version",
        "no-header",
        "empty",
        "calculus",
        "relations",
        "provenance",
        "no-table-line",
        "short-cell",
        "hit-count",
        "repeated-member",
    ],
)
def test_malformed_files(text: str, line_number: int) -> None:
    """Test the line reported for each kind of malformed file."""
    with pytest.raises(CtFormatError) as excinfo:
        parse_ct(text)
    assert excinfo.value.line_number == line_number


def test_provenance_with_whitespace_cannot_be_written() -> None:
    """Test that provenance values must be single tokens."""
    table = CompositionTable(pa_schema())
    table.provenance["note"] = "two words"
    with pytest.raises(ValueError):
        format_ct(table)


def test_save_and_load_table(tmp_path, ia_table: CompositionTable) -> None:
    """Test writing a table to disk and reading it back."""
    path = tmp_path / "nested" / "ia.qct"
    save_table(ia_table, path)
    assert path.read_text(encoding="utf-8").startswith(FORMAT_HEADER + "\n")
    assert load_table(path) == ia_table


def test_load_missing_table(tmp_path) -> None:
    """Test that a missing file is reported."""
    with pytest.raises(FileNotFoundError):
        load_table(tmp_path / "absent.qct")


def test_diff_between_ia_domains(ia_table: CompositionTable) -> None:
    """Test that five nodes miss 90 triads of the complete IA table."""
    smaller = enumerate_ct(DomainSpec(calculus="ia", M=5))
    result = diff_ct(smaller, ia_table)
    assert len(result.missing) == 90
    assert result.extra == []
    assert not result.identical

    reverse = diff_ct(ia_table, smaller)
    assert reverse.missing == []
    assert reverse.extra == result.missing


def test_diff_is_row_major(ia_table: CompositionTable) -> None:
    """Test the order of reported triads."""
    missing = diff_ct(CompositionTable(ia_schema()), ia_table).missing
    keys = [(t.alpha, t.beta, t.gamma) for t in missing]
    assert len(keys) == 409
    assert keys == sorted(keys)


def test_diff_of_identical_tables(pa_table: CompositionTable) -> None:
    """Test that a table agrees with itself."""
    assert diff_ct(pa_table, pa_table.copy()).identical


def test_diff_rejects_other_schema(pa_table: CompositionTable, ia_table: CompositionTable) -> None:
    """Test that tables of different calculi cannot be compared."""
    with pytest.raises(SchemaMismatchError):
        diff_ct(pa_table, ia_table)


def test_network_round_trip(tmp_path) -> None:
    """Test writing and reading a network."""
    schema = ia_schema()
    network = ConstraintNetwork(schema, 4)
    network.set_label(0, 1, RelationSet.from_symbols(schema, ["b", "m"]))
    network.set_label(2, 3, RelationSet.from_symbols(schema, ["d"]))

    assert format_network(network) == "vars: 4\n0 1 b,m\n2 3 d\n"
    path = tmp_path / "net.txt"
    save_network(network, path)
    assert load_network(path, schema) == network


def test_read_network_intersects_repeated_pairs() -> None:
    """Test that comments are skipped and repeated pairs are intersected."""
    schema = pa_schema()
    network = read_network(["# three points", "vars: 3", "", "0 1 <,=", "1 0 >", "1 2 ="], schema)
    assert network.label(0, 1).symbols() == ["<"]
    assert network.label(2, 1).symbols() == ["="]
    assert network.label(0, 2) == RelationSet.universal(schema)


@pytest.mark.parametrize(
    "lines, line_number",
    [
        (["0 1 <"], 1),
        (["vars: x"], 1),
        (["vars: 2", "0 <"], 2),
        (["vars: 2", "0 5 <"], 2),
        (["vars: 2", "0 1 <,?"], 2),
        ([], 1),
    ],
    ids=["no-header", "bad-count", "short", "out-of-range", "symbol", "empty"],
)
def test_malformed_networks(lines: list, line_number: int) -> None:
    """Test the line reported for each kind of malformed network file."""
    with pytest.raises(NetworkFormatError) as excinfo:
        read_network(lines, pa_schema())
    assert excinfo.value.line_number == line_number


def test_inconsistent_network_cannot_be_written() -> None:
    """Test that a network with an empty label is not serialised."""
    schema = pa_schema()
    network = ConstraintNetwork(schema, 2)
    network.constrain(0, 1, RelationSet.from_symbols(schema, ["<"]))
    network.constrain(0, 1, RelationSet.from_symbols(schema, [">"]))
    with pytest.raises(ValueError):
        format_network(network)
