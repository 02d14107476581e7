"""Reading, writing and diffing composition-table and constraint-network files."""

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, TextIO, Tuple, Union

import numpy as np

from src import logger
from src.calculi.domains import build_schema
from src.errors import CtFormatError, NetworkFormatError, UnknownCalculusError
from src.reasoner.network import ConstraintNetwork
from src.relations.schema import CalculusSchema, RelationSet, Triad
from src.relations.table import CompositionTable

FORMAT_HEADER = "# qct v1"
_VERSION_LINE = re.compile(r"^#\s*qct\s+v(?P<version>\S+)\s*$")

PathLike = Union[str, Path]


# Composition tables


def _format_gamma(table: CompositionTable, alpha: int, beta: int, gamma: int) -> str:
    symbol = table.schema.symbol(gamma)
    if table.hits is None:
        return symbol
    return f"{symbol}@{int(table.hits[alpha, beta, gamma])}"


def format_ct(table: CompositionTable) -> str:
    """
    Render a table in the qct v1 format.

    Cells are listed row-major by (alpha, beta) index, gammas in index order;
    empty cells are omitted. With hit counts every gamma is written as
    ``<symbol>@<count>``.

    Raises:
        ValueError: If a provenance key or value contains whitespace
    """
    schema = table.schema
    lines = [
        FORMAT_HEADER,
        f"calculus: {schema.name}",
        "relations: " + " ".join(schema.relation_symbols),
    ]
    if table.provenance:
        pairs = []
        for key, value in table.provenance.items():
            if not key or re.search(r"[\s=]", key) or re.search(r"\s", str(value)):
                raise ValueError(f"Provenance entry {key!r}={value!r} cannot be written")
            pairs.append(f"{key}={value}")
        lines.append("provenance: " + " ".join(pairs))
    lines.append("table:")

    n = schema.n
    for alpha in range(n):
        for beta in range(n):
            gammas = np.flatnonzero(table.present[alpha, beta]).tolist()
            if not gammas:
                continue
            members = " ".join(_format_gamma(table, alpha, beta, g) for g in gammas)
            lines.append(f"{schema.symbol(alpha)} ; {schema.symbol(beta)} ; {members}")
    return "\n".join(lines) + "\n"


def write_ct(table: CompositionTable, sink: TextIO) -> None:
    sink.write(format_ct(table))


def _header_value(line: str, key: str, line_number: int) -> str:
    prefix = f"{key}:"
    if not line.startswith(prefix):
        raise CtFormatError(f"Expected '{prefix}'", line_number)
    return line[len(prefix):].strip()


def _symbol_index(schema: CalculusSchema, symbol: str, line_number: int) -> int:
    if not schema.has_symbol(symbol):
        raise CtFormatError(
            f"Unknown relation symbol {symbol!r} for {schema.name!r}", line_number
        )
    return schema.index(symbol)


def read_ct(source: Union[TextIO, Iterable[str]]) -> CompositionTable:
    """
    Parse a qct v1 table.

    Args:
        source: Open text file or any iterable of lines

    Returns:
        CompositionTable: The table, with hit counts if the file carries any

    Raises:
        CtFormatError: On a version mismatch, an unknown symbol, a duplicate
            cell or any malformed line; the message names the line number
    """
    lines = [line.rstrip("\n").rstrip("\r") for line in source]
    if not lines:
        raise CtFormatError("Empty table file", 1)

    match = _VERSION_LINE.match(lines[0])
    if not match:
        raise CtFormatError(f"Missing '{FORMAT_HEADER}' header", 1)
    if match.group("version") != "1":
        raise CtFormatError(f"Unsupported format version v{match.group('version')}", 1)

    if len(lines) < 3:
        raise CtFormatError("Truncated header", len(lines) + 1)
    calculus = _header_value(lines[1], "calculus", 2)
    try:
        schema = build_schema(calculus)
    except UnknownCalculusError as e:
        raise CtFormatError(str(e), 2) from e

    symbols = _header_value(lines[2], "relations", 3).split()
    if tuple(symbols) != schema.relation_symbols:
        raise CtFormatError(f"Relations do not match the {schema.name!r} schema", 3)

    provenance: Dict[str, str] = {}
    position = 3
    if position < len(lines) and lines[position].startswith("provenance:"):
        for pair in _header_value(lines[position], "provenance", position + 1).split():
            key, sep, value = pair.partition("=")
            if not sep or not key:
                raise CtFormatError(f"Malformed provenance entry {pair!r}", position + 1)
            provenance[key] = value
        position += 1
    if position >= len(lines) or lines[position].strip() != "table:":
        raise CtFormatError("Expected 'table:'", position + 1)
    position += 1

    cells: List[Tuple[int, int, int, List[Tuple[int, Optional[int]]]]] = []
    seen = set()
    for offset, line in enumerate(lines[position:]):
        line_number = position + offset + 1
        if not line.strip():
            continue
        parts = [part.strip() for part in line.split(";")]
        if len(parts) != 3 or not parts[0] or not parts[1] or not parts[2]:
            raise CtFormatError("Expected '<alpha> ; <beta> ; <gamma> ...'", line_number)
        alpha = _symbol_index(schema, parts[0], line_number)
        beta = _symbol_index(schema, parts[1], line_number)
        if (alpha, beta) in seen:
            raise CtFormatError(f"Duplicate cell ({parts[0]}, {parts[1]})", line_number)
        seen.add((alpha, beta))

        members = []
        for token in parts[2].split():
            symbol, sep, count = token.partition("@")
            if sep and not count.isdigit():
                raise CtFormatError(f"Malformed hit count in {token!r}", line_number)
            members.append((_symbol_index(schema, symbol, line_number), int(count) if sep else None))
        cells.append((line_number, alpha, beta, members))

    with_hits = any(count is not None for *_, members in cells for _, count in members)
    table = CompositionTable(schema, record_hits=with_hits)
    table.provenance = provenance
    for line_number, alpha, beta, members in cells:
        for gamma, count in members:
            if table.present[alpha, beta, gamma]:
                raise CtFormatError(f"Repeated member {schema.symbol(gamma)!r}", line_number)
            table.present[alpha, beta, gamma] = True
            if with_hits:
                table.hits[alpha, beta, gamma] = np.uint64(count or 0)
    return table


def parse_ct(text: str) -> CompositionTable:
    return read_ct(text.splitlines())


def save_table(table: CompositionTable, path: PathLike) -> None:
    """
    Save a table to a qct v1 file.

    Args:
        table: Table to write
        path: Destination; parent directories are created
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        write_ct(table, f)
    logger.info(f"Wrote {table.schema.name} table with {table.triad_count()} triads to {path}")


def load_table(path: PathLike) -> CompositionTable:
    """
    Load a table from a qct v1 file.

    Raises:
        FileNotFoundError: If the file does not exist
        CtFormatError: If the file is malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Table file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        table = read_ct(f)
    logger.debug(f"Read {table.schema.name} table with {table.triad_count()} triads from {path}")
    return table


@dataclass
class DiffResult:
    """
    Triads on which two tables disagree, row-major by (alpha, beta, gamma).

    Attributes:
        missing: Triads of the second table absent from the first
        extra: Triads of the first table absent from the second
    """

    missing: List[Triad] = field(default_factory=list)
    extra: List[Triad] = field(default_factory=list)

    @property
    def identical(self) -> bool:
        return not self.missing and not self.extra


def _triads_of(cube: np.ndarray, n: int) -> List[Triad]:
    return [CompositionTable.triad_at(n, flat) for flat in np.flatnonzero(cube)]


def diff_ct(a: CompositionTable, b: CompositionTable) -> DiffResult:
    """
    Compare two tables over the same calculus.

    Raises:
        SchemaMismatchError: If the tables belong to different calculi
    """
    a.check_compatible(b)
    n = a.schema.n
    return DiffResult(
        missing=_triads_of(b.present & ~a.present, n),
        extra=_triads_of(a.present & ~b.present, n),
    )


# Constraint networks


def format_network(network: ConstraintNetwork) -> str:
    """
    Render a network: ``vars: <n>`` then ``<i> <j> <sym>,<sym>...`` per
    non-universal pair i < j.

    Raises:
        ValueError: If the network is inconsistent
    """
    if network.inconsistent:
        raise ValueError("An inconsistent network has an empty label and cannot be written")
    lines = [f"vars: {network.n}"]
    for i, j, relations in network.constraints():
        lines.append(f"{i} {j} {','.join(relations.symbols())}")
    return "\n".join(lines) + "\n"


def read_network(source: Union[TextIO, Iterable[str]], schema: CalculusSchema) -> ConstraintNetwork:
    """
    Parse a network over `schema`.

    Unlisted pairs keep the universal relation; a pair listed twice gets
    the intersection of its labels. Lines starting with '#' are ignored.

    Raises:
        NetworkFormatError: On a malformed line, an unknown symbol or a
            variable out of range
    """
    network: Optional[ConstraintNetwork] = None
    for line_number, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if network is None:
            key, sep, value = line.partition(":")
            if key.strip() != "vars" or not sep or not value.strip().isdigit():
                raise NetworkFormatError("Expected 'vars: <n>'", line_number)
            try:
                network = ConstraintNetwork(schema, int(value))
            except ValueError as e:
                raise NetworkFormatError(str(e), line_number) from e
            continue

        parts = line.split(None, 2)
        if len(parts) != 3 or not parts[0].isdigit() or not parts[1].isdigit():
            raise NetworkFormatError("Expected '<i> <j> <sym>[,<sym>...]'", line_number)
        i, j = int(parts[0]), int(parts[1])
        if i >= network.n or j >= network.n:
            raise NetworkFormatError(f"Variable out of range 0..{network.n - 1}", line_number)
        symbols = [s.strip() for s in parts[2].split(",")]
        unknown = [s for s in symbols if not schema.has_symbol(s)]
        if unknown:
            raise NetworkFormatError(
                f"Unknown relation symbol {unknown[0]!r} for {schema.name!r}", line_number
            )
        network.constrain(i, j, RelationSet.from_symbols(schema, symbols))

    if network is None:
        raise NetworkFormatError("Missing 'vars: <n>' header", 1)
    return network


def save_network(network: ConstraintNetwork, path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_network(network))
    logger.info(f"Wrote network with {network.n} variables to {path}")


def load_network(path: PathLike, schema: CalculusSchema) -> ConstraintNetwork:
    """
    Load a network file, reading labels over `schema`.

    Raises:
        FileNotFoundError: If the file does not exist
        NetworkFormatError: If the file is malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Network file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return read_network(f, schema)
