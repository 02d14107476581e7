"""Concrete geometric elements of the sampled subdomains."""

import math
from dataclasses import dataclass
from typing import Tuple, Union


@dataclass(frozen=True, order=True)
class Point:
    """A point on the integer grid of the line."""

    value: int


@dataclass(frozen=True, order=True)
class Interval:
    """A closed interval [lo, hi] with integer endpoints, lo < hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"Interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> int:
        return self.hi - self.lo


@dataclass(frozen=True, order=True)
class Rect:
    """An axis-parallel closed rectangle [x1, x2] x [y1, y2]."""

    x1: int
    x2: int
    y1: int
    y2: int

    def __post_init__(self):
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise ValueError(f"Degenerate rectangle {self}")


@dataclass(frozen=True, order=True)
class Disk:
    """The closed disk B((cx, cy), r)."""

    cx: int
    cy: int
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"Disk radius must be at least 1, got {self.r}")


@dataclass(frozen=True, order=True)
class CartesianPosition:
    x: int
    y: int

    def to_xy(self, m2: int) -> Tuple[float, float]:
        return float(self.x), float(self.y)


@dataclass(frozen=True, order=True)
class PolarPosition:
    """
    A polar grid position: radius rho and angle index theta (theta * 2pi / M2).

    rho = 0 is canonicalised to theta = 0 so that the origin has one encoding.
    """

    rho: int
    theta: int

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError(f"Polar radius must be non-negative, got {self.rho}")
        if self.rho == 0 and self.theta != 0:
            object.__setattr__(self, "theta", 0)

    def to_xy(self, m2: int) -> Tuple[float, float]:
        angle = 2 * math.pi * self.theta / m2
        return self.rho * math.cos(angle), self.rho * math.sin(angle)


@dataclass(frozen=True, order=True)
class OPoint:
    """
    An oriented point.

    Attributes:
        position: Cartesian or polar grid position
        orientation: Angle index, the orientation is orientation * 2pi / m2
        m2: Number of grid angles
    """

    position: Union[CartesianPosition, PolarPosition]
    orientation: int
    m2: int

    def __post_init__(self):
        if not 0 <= self.orientation < self.m2:
            raise ValueError(
                f"Orientation index {self.orientation} outside [0, {self.m2})"
            )
        if isinstance(self.position, PolarPosition) and not 0 <= self.position.theta < self.m2:
            raise ValueError(f"Polar angle index {self.position.theta} outside [0, {self.m2})")

    @property
    def phi(self) -> float:
        return 2 * math.pi * self.orientation / self.m2


Element = Union[Point, Interval, Rect, Disk, OPoint]
