"""
Termination conditions of the sampling loop.

A condition is evaluated before every loop on (Loop, Triad, LastFound);
the loop body runs while it holds. Conditions accept numpy arrays so that
a whole block of candidate stopping points is tested at once.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

ArrayLike = Union[int, np.ndarray]


class TerminationCondition(ABC):
    """Boundary condition of the sampling loop."""

    @abstractmethod
    def holds(self, loop: ArrayLike, triad: ArrayLike, last_found: ArrayLike) -> ArrayLike:
        """True while sampling should continue."""

    @abstractmethod
    def describe(self) -> str:
        """Compact space-free form, recorded in table provenance."""

    def __and__(self, other: "TerminationCondition") -> "AllOf":
        return AllOf((self, other))

    def __or__(self, other: "TerminationCondition") -> "AnyOf":
        return AnyOf((self, other))


def _positive(name: str, value: int) -> None:
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class MaxLoops(TerminationCondition):
    """Run exactly `limit` loops."""

    limit: int

    def __post_init__(self):
        _positive("MaxLoops limit", self.limit)

    def holds(self, loop, triad, last_found):
        return loop < self.limit

    def describe(self) -> str:
        return f"max_loops({self.limit})"


@dataclass(frozen=True)
class StallWindow(TerminationCondition):
    """Continue while Loop <= LastFound + window."""

    window: int

    def __post_init__(self):
        _positive("StallWindow window", self.window)

    def holds(self, loop, triad, last_found):
        return loop <= last_found + self.window

    def describe(self) -> str:
        return f"stall({self.window})"


@dataclass(frozen=True)
class TargetTriads(TerminationCondition):
    """Continue while fewer than `target` triads are recorded."""

    target: int

    def __post_init__(self):
        _positive("TargetTriads target", self.target)

    def holds(self, loop, triad, last_found):
        return triad < self.target

    def describe(self) -> str:
        return f"target({self.target})"


@dataclass(frozen=True)
class AllOf(TerminationCondition):
    """Conjunction: continue while every part holds."""

    parts: Tuple[TerminationCondition, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("A conjunction needs at least one condition")

    def holds(self, loop, triad, last_found):
        result = self.parts[0].holds(loop, triad, last_found)
        for part in self.parts[1:]:
            result = np.logical_and(result, part.holds(loop, triad, last_found))
        return result

    def describe(self) -> str:
        return "&".join(part.describe() for part in self.parts)


@dataclass(frozen=True)
class AnyOf(TerminationCondition):
    """Disjunction: continue while some part holds."""

    parts: Tuple[TerminationCondition, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("A disjunction needs at least one condition")

    def holds(self, loop, triad, last_found):
        result = self.parts[0].holds(loop, triad, last_found)
        for part in self.parts[1:]:
            result = np.logical_or(result, part.holds(loop, triad, last_found))
        return result

    def describe(self) -> str:
        return "|".join(f"({part.describe()})" if isinstance(part, AllOf) else part.describe() for part in self.parts)


def default_condition(max_loops: int = 1_000_000, stall: int = 100_000) -> TerminationCondition:
    """Loop <= max_loops and Loop <= LastFound + stall."""
    return AllOf((MaxLoops(max_loops), StallWindow(stall)))


def is_bounded(psi: TerminationCondition) -> bool:
    """
    Whether psi is guaranteed to stop.

    StallWindow and MaxLoops always stop; TargetTriads may never be reached
    on a domain that is not 3-complete.
    """
    if isinstance(psi, (MaxLoops, StallWindow)):
        return True
    if isinstance(psi, AllOf):
        return any(is_bounded(part) for part in psi.parts)
    if isinstance(psi, AnyOf):
        return all(is_bounded(part) for part in psi.parts)
    return False
