"""
Composition-table generation by random sampling of element triples.

Each loop draws (a, b, c) from the subdomain, relates the three pairs and
records the six triads obtained by permuting the triple. Triples are
drawn in blocks; the run is cut at the exact loop where the termination
condition fails, so Loop, Triad and LastFound are those of a
one-loop-at-a-time run with the same random stream.

The random stream is numpy's PCG64 (``numpy.random.default_rng(seed)``).
A run is reproducible for fixed (spec, condition, seed, options, block size).
"""

from typing import Any, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from src import logger, settings
from src.calculi.domains import Domain, DomainSpec, get_domain
from src.calculi.matrix import RelationMatrix, matrix_fits, relation_matrix
from src.errors import DegenerateDomainError
from src.generator.termination import TerminationCondition, is_bounded
from src.relations.schema import WITNESS_ORDER, seed_identity_triads
from src.relations.table import CompositionTable, GenStats

_LOG_EVERY_BLOCKS = 16


class GenOptions(BaseModel):
    """
    Switches of a generation run.

    Attributes:
        use_converse_shortcut: Derive the three reversed relations from the
            schema converse instead of relating the reversed pairs
        seed_identity: Pre-record the identity triads and sample pairwise
            distinct elements only
        record_hits: Count the instantiations of every triad
        record_witnesses: Keep the first element triple of every triad
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    use_converse_shortcut: bool = True
    seed_identity: bool = True
    record_hits: bool = False
    record_witnesses: bool = False


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _draw_block(
    domain: Domain, rng: np.random.Generator, block: int, distinct: bool
) -> np.ndarray:
    """Draw `block` triples of canonical encodings, rejecting collisions if asked."""
    codes = domain.canonical_codes(
        rng.integers(0, domain.encoding_count, size=(block, 3), dtype=np.int64)
    )
    if not distinct:
        return codes
    while True:
        clash = (codes[:, 0] == codes[:, 1]) | (codes[:, 1] == codes[:, 2]) | (codes[:, 0] == codes[:, 2])
        count = int(np.count_nonzero(clash))
        if count == 0:
            return codes
        codes[clash] = domain.canonical_codes(
            rng.integers(0, domain.encoding_count, size=(count, 3), dtype=np.int64)
        )


class _BlockRelater:
    """Relates blocks of encoded triples, through a matrix when one is available."""

    def __init__(self, domain: Domain, matrix: Optional[RelationMatrix], shortcut: bool):
        self.domain = domain
        self.matrix = matrix
        self.shortcut = shortcut
        self.converse = np.asarray(domain.schema.converse, dtype=np.int64)

    def relate(self, codes: np.ndarray) -> Tuple[np.ndarray, ...]:
        """Return alpha, beta, gamma and their reversed counterparts per row."""
        if self.matrix is not None:
            idx = self.matrix.element_of_code[codes]
            rel = self.matrix.relations
            a, b, c = idx[:, 0], idx[:, 1], idx[:, 2]
            alpha = rel[a, b].astype(np.int64)
            beta = rel[b, c].astype(np.int64)
            gamma = rel[a, c].astype(np.int64)
            if self.shortcut:
                return alpha, beta, gamma, *self._converses(alpha, beta, gamma)
            return (
                alpha, beta, gamma,
                rel[b, a].astype(np.int64),
                rel[c, b].astype(np.int64),
                rel[c, a].astype(np.int64),
            )

        relate = self.domain.relate
        rows = codes.shape[0]
        width = 3 if self.shortcut else 6
        out = np.empty((rows, width), dtype=np.int64)
        for i, triple in enumerate(self.elements(codes)):
            a, b, c = triple
            out[i, 0] = relate(a, b)
            out[i, 1] = relate(b, c)
            out[i, 2] = relate(a, c)
            if not self.shortcut:
                out[i, 3] = relate(b, a)
                out[i, 4] = relate(c, b)
                out[i, 5] = relate(c, a)
        alpha, beta, gamma = out[:, 0], out[:, 1], out[:, 2]
        if self.shortcut:
            return alpha, beta, gamma, *self._converses(alpha, beta, gamma)
        return alpha, beta, gamma, out[:, 3], out[:, 4], out[:, 5]

    def _converses(self, *relations: np.ndarray) -> Tuple[np.ndarray, ...]:
        return tuple(self.converse[r] for r in relations)

    def elements(self, codes: np.ndarray) -> List[Tuple[Any, Any, Any]]:
        if self.matrix is not None:
            elements = self.matrix.elements
            idx = self.matrix.element_of_code[codes]
            return [tuple(elements[j] for j in row) for row in idx.tolist()]
        decode = self.domain.decode
        return [tuple(decode(c) for c in row) for row in codes.tolist()]


def _permutation_codes(n: int, relations: Tuple[np.ndarray, ...]) -> np.ndarray:
    """Flat table positions of the six permutation triads, shape (rows, 6)."""
    alpha, beta, gamma, alpha_r, beta_r, gamma_r = relations
    # (row, member, column) for every template, see triad_permutations
    templates = (
        (alpha, gamma, beta),
        (alpha_r, beta, gamma),
        (gamma, alpha, beta_r),
        (beta, alpha_r, gamma_r),
        (beta_r, gamma_r, alpha_r),
        (gamma_r, beta_r, alpha),
    )
    return np.stack([(r * n + t) * n + s for r, s, t in templates], axis=1)


def generate_ct(
    spec: DomainSpec,
    psi: TerminationCondition,
    seed: int,
    opts: Optional[GenOptions] = None,
    block_size: Optional[int] = None,
) -> Tuple[CompositionTable, GenStats]:
    """
    Harvest composition triads by sampling random triples of elements.

    Args:
        spec: Subdomain to sample from
        psi: Termination condition, evaluated before every loop
        seed: Seed of the PCG64 stream
        opts: Generation switches
        block_size: Triples drawn per block, defaults to settings.BLOCK_SIZE

    Returns:
        Tuple of the generated table and the run statistics

    Raises:
        DegenerateDomainError: If pairwise distinct triples are required but
            the subdomain has fewer than three elements
    """
    opts = opts or GenOptions()
    block = int(block_size or settings.get("BLOCK_SIZE", 65536))
    domain = get_domain(spec)
    schema = domain.schema
    n = schema.n

    if domain.size == 0 or (opts.seed_identity and domain.size < 3):
        raise DegenerateDomainError(
            f"{spec.calculus} ({spec.params_label()}) has {domain.size} elements,"
            " too few for pairwise distinct triples"
        )
    if not is_bounded(psi):
        logger.warning(f"Termination condition {psi.describe()} may never fail")

    table = CompositionTable(
        schema, record_hits=opts.record_hits, record_witnesses=opts.record_witnesses
    )
    if opts.seed_identity:
        for t in sorted(seed_identity_triads(schema)):
            table.insert(t, count_hit=False)
    stats = GenStats(loop=0, triad=table.triad_count(), last_found=0)

    matrix = None
    if matrix_fits(domain):
        matrix = relation_matrix(domain)
    relater = _BlockRelater(domain, matrix, opts.use_converse_shortcut)
    rng = np.random.default_rng(seed)
    present = table.present.reshape(-1)

    logger.info(
        f"Generating {spec.calculus} ({spec.params_label()}) CT, seed={seed},"
        f" psi={psi.describe()}, {domain.size} elements"
    )

    blocks = 0
    running = bool(psi.holds(stats.loop, stats.triad, stats.last_found))
    while running:
        codes = _draw_block(domain, rng, block, distinct=opts.seed_identity)
        flat = _permutation_codes(n, relater.relate(codes)).reshape(-1)

        fresh = np.flatnonzero(~present[flat])
        new_codes, first = np.unique(flat[fresh], return_index=True)
        first_pos = fresh[first]
        first_loop = first_pos // 6

        loops = stats.loop + 1 + np.arange(block, dtype=np.int64)
        new_per_loop = np.bincount(first_loop, minlength=block)
        triads_after = stats.triad + np.cumsum(new_per_loop)
        found_at = np.where(new_per_loop > 0, loops, 0)
        last_found_after = np.maximum(np.maximum.accumulate(found_at), stats.last_found)

        failing = np.flatnonzero(~np.asarray(psi.holds(loops, triads_after, last_found_after)))
        executed = int(failing[0]) + 1 if failing.size else block

        keep = first_loop < executed
        present[new_codes[keep]] = True
        table.add_hits(flat[: executed * 6])
        if table.witnesses is not None and keep.any():
            _record_witnesses(table, relater, codes, new_codes[keep], first_pos[keep])

        stats.loop += executed
        stats.triad = int(triads_after[executed - 1])
        stats.last_found = int(last_found_after[executed - 1])
        running = failing.size == 0

        blocks += 1
        if blocks % _LOG_EVERY_BLOCKS == 0:
            logger.debug(
                f"Loop={stats.loop} Triad={stats.triad} LastFound={stats.last_found}"
            )

    table.provenance.update(
        {
            "domain": spec.calculus,
            "params": spec.params_label(),
            "seed": str(seed),
            "psi": psi.describe(),
            "block": str(block),
            "converse_shortcut": _flag(opts.use_converse_shortcut),
            "seed_identity": _flag(opts.seed_identity),
            "hits": _flag(opts.record_hits),
            "witnesses": _flag(opts.record_witnesses),
            "loops": str(stats.loop),
            "triads": str(stats.triad),
            "last_found": str(stats.last_found),
        }
    )
    logger.info(
        f"Finished {spec.calculus}: Loop={stats.loop} Triad={stats.triad}"
        f" LastFound={stats.last_found}"
    )
    return table, stats


def _record_witnesses(
    table: CompositionTable,
    relater: _BlockRelater,
    codes: np.ndarray,
    new_codes: np.ndarray,
    first_pos: np.ndarray,
) -> None:
    n = table.schema.n
    loop_offsets, templates = np.divmod(first_pos, 6)
    triples = relater.elements(codes[loop_offsets])
    for code, template, triple in zip(new_codes.tolist(), templates.tolist(), triples):
        order = WITNESS_ORDER[template]
        table.witnesses.setdefault(
            CompositionTable.triad_at(n, code), tuple(triple[k] for k in order)
        )
