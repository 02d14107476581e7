"""
Oriented point relation algebras OPRA_m.

Each o-point splits the plane around it into 2m rays at angles k*pi/m,
counted counterclockwise from its own orientation, and the 2m open sectors
between them. Ray k gets the even index 2k, the sector between ray k and
ray k+1 the odd index 2k+1.

Relation symbols:
    "s_t"  B lies in sector s of A and A in sector t of B (distinct positions)
    "ss"   same position, the orientation of B lies in sector s of A
           (written e.g. "s3")

Schema order is every (s, t) row-major followed by the same-position
relations s0 .. s(4m-1). The identity is s0.
"""

import math
from functools import lru_cache
from typing import Optional

from src.calculi.elements import OPoint
from src.relations.schema import CalculusSchema

TWO_PI = 2 * math.pi
DEFAULT_TOLERANCE = 1e-9


def pair_symbol(s: int, t: int) -> str:
    return f"{s}_{t}"


def same_symbol(s: int) -> str:
    return f"s{s}"


def pair_index(m: int, s: int, t: int) -> int:
    return s * 4 * m + t


def same_index(m: int, s: int) -> int:
    return 16 * m * m + s


def relation_count(m: int) -> int:
    return 4 * m * (4 * m + 1)


@lru_cache(maxsize=None)
def opra_schema(m: int) -> CalculusSchema:
    """Schema of OPRA_m with its 4m(4m+1) basic relations."""
    if m < 1:
        raise ValueError(f"OPRA granularity must be at least 1, got {m}")
    k = 4 * m
    symbols = [pair_symbol(s, t) for s in range(k) for t in range(k)]
    symbols += [same_symbol(s) for s in range(k)]
    converse = [pair_index(m, t, s) for s in range(k) for t in range(k)]
    converse += [same_index(m, (k - s) % k) for s in range(k)]
    return CalculusSchema(
        name=f"opra{m}",
        relation_symbols=tuple(symbols),
        converse=tuple(converse),
        identity=same_index(m, 0),
    )


def opra_sector(m: int, delta: float, tolerance: float = DEFAULT_TOLERANCE) -> int:
    """
    Ray or sector index of a direction relative to an orientation.

    Args:
        m: Granularity
        delta: Angle counterclockwise from the orientation; normalised here
        tolerance: Angles within this circular distance of a ray snap to it

    Returns:
        int: 2k for ray k, 2k+1 for the open sector after ray k
    """
    step = math.pi / m
    delta = delta % TWO_PI
    position = delta / step
    nearest = round(position)
    if abs(position - nearest) * step <= tolerance:
        return 2 * (nearest % (2 * m))
    return (2 * math.floor(position) + 1) % (4 * m)


def opra_relate(
    m: int, a: OPoint, b: OPoint, tolerance: Optional[float] = None
) -> int:
    """
    The OPRA_m relation of o-point a to o-point b.

    Both points must use the same coordinate convention and angle grid.
    """
    if tolerance is None:
        tolerance = DEFAULT_TOLERANCE
    if a.position == b.position:
        return same_index(m, opra_sector(m, b.phi - a.phi, tolerance))
    ax, ay = a.position.to_xy(a.m2)
    bx, by = b.position.to_xy(b.m2)
    s = opra_sector(m, math.atan2(by - ay, bx - ax) - a.phi, tolerance)
    t = opra_sector(m, math.atan2(ay - by, ax - bx) - b.phi, tolerance)
    return pair_index(m, s, t)
