"""Integration tests for the qct command line."""

from unittest.mock import patch

import pytest

from src.data_manager import load_table, save_network, save_table
from src.main import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK, main
from src.reasoner.network import ConstraintNetwork
from src.relations.schema import RelationSet
from src.relations.table import CompositionTable


@pytest.fixture
def pa_file(tmp_path, pa_table: CompositionTable):
    """The PA table written to a temporary file."""
    path = tmp_path / "pa.qct"
    save_table(pa_table, path)
    return path


@pytest.fixture
def ia_file(tmp_path, ia_table: CompositionTable):
    """The complete IA table written to a temporary file."""
    path = tmp_path / "ia.qct"
    save_table(ia_table, path)
    return path


def test_generate_ia(tmp_path, capsys) -> None:
    """Test that sampling intervals over 8 nodes writes the 409-triad table."""
    out = tmp_path / "ia8.qct"
    code = main(
        ["generate", "--calculus", "ia", "--param", "M=8", "--stall", "100000", "--seed", "1", "--out", str(out)]
    )
    assert code == EXIT_OK
    assert "Triad=409" in capsys.readouterr().err
    table = load_table(out)
    assert table.triad_count() == 409
    assert table.provenance["seed"] == "1"


def test_generate_with_hits_and_witnesses(tmp_path, capsys) -> None:
    """Test the optional hit counts and the witness file."""
    out = tmp_path / "pa.qct"
    code = main(
        [
            "generate", "--calculus", "pa", "--param", "M=3", "--max-loops", "500", "--stall", "0",
            "--hits", "--witnesses", "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    assert "Loop=500" in capsys.readouterr().err
    assert load_table(out).hits is not None
    witnesses = (tmp_path / "pa.qct.witnesses").read_text(encoding="utf-8")
    assert witnesses.startswith("<")

    assert main(["probabilities", str(out), "--left", "<", "--right", ">"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert sum(float(line.split()[1]) for line in lines) == pytest.approx(1.0)


def test_generate_requires_a_condition(tmp_path, capsys) -> None:
    """Test that disabling every termination condition is refused."""
    code = main(
        [
            "generate", "--calculus", "pa", "--param", "M=3", "--max-loops", "0", "--stall", "0",
            "--out", str(tmp_path / "x.qct"),
        ]
    )
    assert code == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_enumerate_and_verify(tmp_path, ia_file, capsys) -> None:
    """Test that the enumerated IA table verifies against the reference."""
    out = tmp_path / "enum.qct"
    assert main(["enumerate", "--calculus", "ia", "--param", "M=6", "--out", str(out)]) == EXIT_OK
    assert "Triad=409" in capsys.readouterr().err
    assert load_table(out).provenance["budget"] == "2000000000"

    assert main(["verify", str(out), "--against", str(ia_file)]) == EXIT_OK
    assert "OK" in capsys.readouterr().err


def test_verify_reports_a_mismatch(tmp_path, ia_file, capsys) -> None:
    """Test verification of an incomplete table."""
    out = tmp_path / "ia5.qct"
    assert main(["enumerate", "--calculus", "ia", "--param", "M=5", "--out", str(out)]) == EXIT_OK
    capsys.readouterr()

    assert main(["verify", str(out), "--against", str(ia_file)]) == EXIT_MISMATCH
    captured = capsys.readouterr()
    assert captured.out.startswith("missing=90 extra=0")
    assert "MISMATCH" in captured.err


def test_diff(pa_file, capsys) -> None:
    """Test that a table does not differ from itself."""
    assert main(["diff", str(pa_file), str(pa_file)]) == EXIT_OK
    assert "Tables are identical." in capsys.readouterr().out


def test_compose(pa_file, capsys) -> None:
    """Test printing a weak composition."""
    assert main(["compose", str(pa_file), "--left", "<", "--right", ">"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "< = >"

    assert main(["compose", str(pa_file), "--left", "<,=", "--right", "<"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "<"


def test_compose_unknown_symbol(pa_file, capsys) -> None:
    """Test that an unknown relation is a usage error."""
    assert main(["compose", str(pa_file), "--left", "b", "--right", "<"]) == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_closure_inconsistent(tmp_path, pa_file, pa_table: CompositionTable, capsys) -> None:
    """Test that x < y, y < z, x > z is reported inconsistent."""
    network = ConstraintNetwork(pa_table.schema, 3)
    for i, j, symbol in ((0, 1, "<"), (1, 2, "<"), (0, 2, ">")):
        network.set_label(i, j, RelationSet.from_symbols(pa_table.schema, [symbol]))
    path = tmp_path / "net.txt"
    save_network(network, path)

    assert main(["closure", "--table", str(pa_file), "--network", str(path)]) == EXIT_MISMATCH
    assert capsys.readouterr().out.strip() == "INCONSISTENT"


def test_closure_writes_the_refined_network(tmp_path, ia_file, capsys) -> None:
    """Test that a consistent network is closed and written out."""
    path = tmp_path / "net.txt"
    path.write_text("vars: 3\n0 1 b\n1 2 b\n", encoding="utf-8")
    out = tmp_path / "closed.txt"

    assert main(["closure", "--table", str(ia_file), "--network", str(path), "--out", str(out)]) == EXIT_OK
    assert "CLOSED" in capsys.readouterr().err
    assert "0 2 b" in out.read_text(encoding="utf-8").splitlines()


def test_indu_filter(tmp_path, ia_file, pa_file, capsys) -> None:
    """Test the INDU prediction from the IA and PA tables."""
    out = tmp_path / "indu.qct"
    assert main(["indu-filter", "--ia", str(ia_file), "--pa", str(pa_file), "--out", str(out)]) == EXIT_OK
    assert "Triad=2053" in capsys.readouterr().err
    assert load_table(out).triad_count() == 2053


def test_indu_filter_rejects_swapped_inputs(tmp_path, ia_file, pa_file, capsys) -> None:
    """Test that the inputs must be the complete tables of the right calculi."""
    out = tmp_path / "indu.qct"
    assert main(["indu-filter", "--ia", str(pa_file), "--pa", str(ia_file), "--out", str(out)]) == EXIT_ERROR
    assert not out.exists()


def test_survey(capsys) -> None:
    """Test the survey table over growing interval domains."""
    code = main(["survey", "--calculus", "ia", "--param", "M=4", "--param", "M=5", "--param", "M=6", "--param", "M=7"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "Plateau from M=6." in out
    assert "409" in out


def test_unknown_calculus(tmp_path, capsys) -> None:
    """Test that an unknown calculus token is reported."""
    code = main(["enumerate", "--calculus", "allen9", "--param", "M=4", "--out", str(tmp_path / "x.qct")])
    assert code == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_budget_exceeded(tmp_path, capsys) -> None:
    """Test that the oracle refuses a domain beyond the budget."""
    code = main(
        ["enumerate", "--calculus", "ia", "--param", "M=6", "--budget", "1000", "--out", str(tmp_path / "x.qct")]
    )
    assert code == EXIT_ERROR
    assert not (tmp_path / "x.qct").exists()


def test_missing_arguments() -> None:
    """Test that argparse usage errors map to exit code 2."""
    assert main(["generate", "--calculus", "ia"]) == EXIT_ERROR
    assert main([]) == EXIT_ERROR


def test_missing_file(tmp_path) -> None:
    """Test that an unreadable table is reported, not raised."""
    assert main(["diff", str(tmp_path / "a.qct"), str(tmp_path / "b.qct")]) == EXIT_ERROR


def test_help_exits_cleanly() -> None:
    """Test that --help is a successful exit."""
    assert main(["--help"]) == EXIT_OK


@pytest.fixture
def tiny_budget():
    """Fixture to lower the configured oracle budget."""
    with patch("src.oracle.settings") as mock:
        mock.get.return_value = 1000
        yield mock


def test_enumerate_uses_the_configured_budget(tmp_path, tiny_budget, capsys) -> None:
    """Test that enumerate falls back to the budget from the settings."""
    code = main(["enumerate", "--calculus", "ia", "--param", "M=6", "--out", str(tmp_path / "x.qct")])
    assert code == EXIT_ERROR
    assert "error:" in capsys.readouterr().err
    tiny_budget.get.assert_called_with("ORACLE_BUDGET", 2_000_000_000)
