"""
RCC-8 over axis-parallel rectangles and disks.

Both classifiers use exact integer arithmetic. Rectangles are compared
through their closed boxes and open interiors; disks through the squared
centre distance against (r1 + r2)^2 and (r2 - r1)^2.
"""

from functools import lru_cache
from typing import Dict, Tuple

from src.calculi.elements import Disk, Rect
from src.relations.schema import CalculusSchema

RCC8_SYMBOLS: Tuple[str, ...] = ("DC", "EC", "PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ")
RCC8_INDEX: Dict[str, int] = {symbol: i for i, symbol in enumerate(RCC8_SYMBOLS)}

DC, EC, PO, TPP, NTPP, TPPI, NTPPI, EQ = range(8)


@lru_cache(maxsize=None)
def rcc8_schema() -> CalculusSchema:
    return CalculusSchema(
        name="rcc8",
        relation_symbols=RCC8_SYMBOLS,
        converse=(DC, EC, PO, TPPI, NTPPI, TPP, NTPP, EQ),
        identity=EQ,
    )


def _within(a: Rect, b: Rect) -> bool:
    return b.x1 <= a.x1 and a.x2 <= b.x2 and b.y1 <= a.y1 and a.y2 <= b.y2


def _within_interior(a: Rect, b: Rect) -> bool:
    return b.x1 < a.x1 and a.x2 < b.x2 and b.y1 < a.y1 and a.y2 < b.y2


def rcc8_relate_rect(a: Rect, b: Rect) -> int:
    """The RCC-8 relation of rectangle a to rectangle b."""
    if a.x2 < b.x1 or b.x2 < a.x1 or a.y2 < b.y1 or b.y2 < a.y1:
        return DC
    if a.x2 == b.x1 or b.x2 == a.x1 or a.y2 == b.y1 or b.y2 == a.y1:
        return EC
    if a == b:
        return EQ
    if _within(a, b):
        return NTPP if _within_interior(a, b) else TPP
    if _within(b, a):
        return NTPPI if _within_interior(b, a) else TPPI
    return PO


def rcc8_relate_disk(a: Disk, b: Disk) -> int:
    """The RCC-8 relation of disk a to disk b."""
    d2 = (a.cx - b.cx) ** 2 + (a.cy - b.cy) ** 2
    outer = (a.r + b.r) ** 2
    if d2 > outer:
        return DC
    if d2 == outer:
        return EC
    if d2 == 0 and a.r == b.r:
        return EQ
    inner = (b.r - a.r) ** 2
    if a.r < b.r and d2 <= inner:
        return TPP if d2 == inner else NTPP
    if a.r > b.r and d2 <= inner:
        return TPPI if d2 == inner else NTPPI
    return PO
