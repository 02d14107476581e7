"""
Point Algebra, Interval Algebra and INDU.

IA relations are ordered so that the converse of relation i is 12 - i:

    b m o s d f eq fi di si oi mi bi

INDU refines each IA relation by comparing durations. Relations whose
endpoint order already fixes the duration keep a single refinement:
d, s, f carry only "<", eq only "=", di, si, fi only ">".
"""

from functools import lru_cache
from typing import Dict, Tuple

from src.calculi.elements import Interval, Point
from src.relations.schema import CalculusSchema

PA_SYMBOLS: Tuple[str, ...] = ("<", "=", ">")
PA_LT, PA_EQ, PA_GT = range(3)

IA_SYMBOLS: Tuple[str, ...] = (
    "b", "m", "o", "s", "d", "f", "eq", "fi", "di", "si", "oi", "mi", "bi",
)
IA_INDEX: Dict[str, int] = {symbol: i for i, symbol in enumerate(IA_SYMBOLS)}

# Duration comparisons each IA relation admits
INDU_DURATIONS: Dict[str, Tuple[str, ...]] = {
    "b": PA_SYMBOLS,
    "m": PA_SYMBOLS,
    "o": PA_SYMBOLS,
    "s": ("<",),
    "d": ("<",),
    "f": ("<",),
    "eq": ("=",),
    "fi": (">",),
    "di": (">",),
    "si": (">",),
    "oi": PA_SYMBOLS,
    "mi": PA_SYMBOLS,
    "bi": PA_SYMBOLS,
}

INDU_SYMBOLS: Tuple[str, ...] = tuple(
    ia + mark for ia in IA_SYMBOLS for mark in INDU_DURATIONS[ia]
)
INDU_INDEX: Dict[str, int] = {symbol: i for i, symbol in enumerate(INDU_SYMBOLS)}


def _cmp(x: int, y: int) -> int:
    if x < y:
        return PA_LT
    if x == y:
        return PA_EQ
    return PA_GT


@lru_cache(maxsize=None)
def pa_schema() -> CalculusSchema:
    return CalculusSchema(
        name="pa",
        relation_symbols=PA_SYMBOLS,
        converse=(PA_GT, PA_EQ, PA_LT),
        identity=PA_EQ,
    )


@lru_cache(maxsize=None)
def ia_schema() -> CalculusSchema:
    n = len(IA_SYMBOLS)
    return CalculusSchema(
        name="ia",
        relation_symbols=IA_SYMBOLS,
        converse=tuple(n - 1 - i for i in range(n)),
        identity=IA_INDEX["eq"],
    )


def split_indu_symbol(symbol: str) -> Tuple[str, str]:
    """Split an INDU symbol into its IA relation and duration comparison."""
    return symbol[:-1], symbol[-1]


@lru_cache(maxsize=None)
def indu_schema() -> CalculusSchema:
    flip = dict(zip(PA_SYMBOLS, reversed(PA_SYMBOLS)))
    converse = []
    for symbol in INDU_SYMBOLS:
        ia, mark = split_indu_symbol(symbol)
        ia_conv = IA_SYMBOLS[len(IA_SYMBOLS) - 1 - IA_INDEX[ia]]
        converse.append(INDU_INDEX[ia_conv + flip[mark]])
    return CalculusSchema(
        name="indu",
        relation_symbols=INDU_SYMBOLS,
        converse=tuple(converse),
        identity=INDU_INDEX["eq="],
    )


def pa_relate(a: Point, b: Point) -> int:
    """The PA relation of a to b: index of <, = or >."""
    return _cmp(a.value, b.value)


def ia_relate(a: Interval, b: Interval) -> int:
    """The IA relation of a to b from the order of the four endpoints."""
    if a.hi < b.lo:
        return IA_INDEX["b"]
    if b.hi < a.lo:
        return IA_INDEX["bi"]
    if a.hi == b.lo:
        return IA_INDEX["m"]
    if b.hi == a.lo:
        return IA_INDEX["mi"]
    lo = _cmp(a.lo, b.lo)
    hi = _cmp(a.hi, b.hi)
    # The intervals now share interior points
    if lo == PA_EQ:
        return IA_INDEX[("s", "eq", "si")[hi]]
    if hi == PA_EQ:
        return IA_INDEX["fi" if lo == PA_LT else "f"]
    if lo == PA_LT:
        return IA_INDEX["o" if hi == PA_LT else "di"]
    return IA_INDEX["d" if hi == PA_LT else "oi"]


def indu_relate(a: Interval, b: Interval) -> int:
    """The INDU relation of a to b: IA relation refined by duration comparison."""
    ia = IA_SYMBOLS[ia_relate(a, b)]
    mark = PA_SYMBOLS[_cmp(a.length, b.length)]
    return INDU_INDEX[ia + mark]
