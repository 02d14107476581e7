"""
Finite subdomains and their element encodings.

Every subdomain is addressed through integer *encodings* in
[0, encoding_count). Sampling is uniform over encodings; decoding an
encoding yields the canonical element. Encodings are mixed-radix:

    pa           value
    ia, indu     index into the pairs (p, q), 0 <= p < q < M, lexicographic
    rcc8-rect    x_pair * P + y_pair with P = M(M-1)/2
    rcc8-disk    ((cx * (M+1)) + cy) * M + (r - 1),  cx, cy in [0, M], r in [1, M]
    opra*-cart   ((x + M1) * (2*M1 + 1) + (y + M1)) * M2 + phi
    opra*-polar  (rho * M2 + theta) * M2 + phi

Only polar domains have several encodings per element: all encodings with
rho = 0 canonicalise to theta = 0.
"""

import re
from abc import ABC, abstractmethod
from functools import cached_property
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator

from src import settings
from src.calculi.elements import (
    CartesianPosition,
    Disk,
    Element,
    Interval,
    OPoint,
    PolarPosition,
    Point,
    Rect,
)
from src.calculi.opra import DEFAULT_TOLERANCE, opra_relate, opra_schema
from src.calculi.rcc8 import rcc8_relate_disk, rcc8_relate_rect, rcc8_schema
from src.calculi.temporal import (
    ia_relate,
    ia_schema,
    indu_relate,
    indu_schema,
    pa_relate,
    pa_schema,
)
from src.errors import DegenerateDomainError, UnknownCalculusError
from src.relations.schema import CalculusSchema

_OPRA_TOKEN = re.compile(r"^opra(?P<m>[1-9]\d*)(?:-(?P<kind>cart|polar))?$")

# Parameters each domain family takes
_FAMILY_PARAMS: Dict[str, Tuple[str, ...]] = {
    "pa": ("M",),
    "ia": ("M",),
    "indu": ("M",),
    "rcc8-rect": ("M",),
    "rcc8-disk": ("M",),
    "opra-cart": ("M1", "M2"),
    "opra-polar": ("M1", "M2"),
    "opra2-grid4": ("M1", "M2"),
}


def parse_calculus_token(token: str) -> Tuple[str, Optional[int]]:
    """
    Split a domain token into its family and OPRA granularity.

    Returns:
        Tuple of the family name and m (None outside OPRA)

    Raises:
        UnknownCalculusError: If the token is not a domain token
    """
    if token in ("pa", "ia", "indu", "rcc8-rect", "rcc8-disk"):
        return token, None
    if token == "opra2-grid4":
        return token, 2
    match = _OPRA_TOKEN.match(token)
    if match and match.group("kind"):
        return f"opra-{match.group('kind')}", int(match.group("m"))
    raise UnknownCalculusError(f"Unknown domain token {token!r}")


def build_schema(calculus: str) -> CalculusSchema:
    """
    Schema of a calculus, given either its own token or a domain token.

    Examples: "ia", "indu", "rcc8", "rcc8-disk", "opra1", "opra2-polar".
    """
    if calculus == "pa":
        return pa_schema()
    if calculus == "ia":
        return ia_schema()
    if calculus == "indu":
        return indu_schema()
    if calculus in ("rcc8", "rcc8-rect", "rcc8-disk"):
        return rcc8_schema()
    if calculus == "opra2-grid4":
        return opra_schema(2)
    match = _OPRA_TOKEN.match(calculus)
    if match:
        return opra_schema(int(match.group("m")))
    raise UnknownCalculusError(f"Unknown calculus token {calculus!r}")


class DomainSpec(BaseModel):
    """
    A finite subdomain of a calculus.

    Attributes:
        calculus: Domain token (pa, ia, indu, rcc8-rect, rcc8-disk,
            opra{m}-cart, opra{m}-polar, opra2-grid4)
        M: Size parameter of point, interval and region domains
        M1: Coordinate range of o-point domains
        M2: Number of grid angles of o-point domains
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    calculus: str
    M: Optional[PositiveInt] = None
    M1: Optional[PositiveInt] = None
    M2: Optional[PositiveInt] = None

    @model_validator(mode="before")
    @classmethod
    def _fix_grid4_orientations(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("calculus") == "opra2-grid4":
            if data.get("M2") not in (None, 4):
                raise ValueError("opra2-grid4 uses exactly four orientations (M2=4)")
            data = {**data, "M2": 4}
        return data

    @model_validator(mode="after")
    def _check_parameters(self) -> "DomainSpec":
        family, _ = parse_calculus_token(self.calculus)
        required = _FAMILY_PARAMS[family]
        for name in ("M", "M1", "M2"):
            value = getattr(self, name)
            if name in required and value is None:
                raise ValueError(f"{self.calculus} requires parameter {name}")
            if name not in required and value is not None:
                raise ValueError(f"{self.calculus} does not take parameter {name}")
        return self

    @property
    def family(self) -> str:
        return parse_calculus_token(self.calculus)[0]

    @property
    def opra_m(self) -> Optional[int]:
        return parse_calculus_token(self.calculus)[1]

    def params(self) -> Dict[str, int]:
        """The parameters that are set, in canonical order."""
        return {
            name: getattr(self, name)
            for name in ("M", "M1", "M2")
            if getattr(self, name) is not None
        }

    def params_label(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.params().items())

    @classmethod
    def parse(cls, calculus: str, params: Sequence[str]) -> "DomainSpec":
        """
        Build a spec from "K=V" strings, each possibly holding several
        comma-separated assignments ("M1=4,M2=16").
        """
        values: Dict[str, str] = {}
        for chunk in params:
            for assignment in chunk.split(","):
                if not assignment.strip():
                    continue
                key, sep, value = assignment.partition("=")
                if not sep:
                    raise ValueError(f"Malformed parameter {assignment!r}, expected K=V")
                values[key.strip()] = value.strip()
        return cls(calculus=calculus, **values)


class Domain(ABC):
    """
    A materialisable subdomain: encodings, canonical elements and the
    relate function of its calculus.
    """

    def __init__(self, spec: DomainSpec, schema: CalculusSchema):
        self.spec = spec
        self.schema = schema

    @property
    @abstractmethod
    def encoding_count(self) -> int:
        """Number of raw encodings."""

    @abstractmethod
    def decode(self, code: int) -> Element:
        """Canonical element of an encoding."""

    @abstractmethod
    def relate(self, a: Element, b: Element) -> int:
        """Index of the basic relation of a to b."""

    def canonical_codes(self, codes: np.ndarray) -> np.ndarray:
        """Map encodings to the smallest encoding of the same element."""
        return codes

    @cached_property
    def canonical_code_list(self) -> np.ndarray:
        """Distinct canonical encodings in ascending order."""
        return np.unique(self.canonical_codes(np.arange(self.encoding_count, dtype=np.int64)))

    @property
    def size(self) -> int:
        """Number of distinct elements."""
        return int(self.canonical_code_list.size)

    def elements(self) -> List[Element]:
        """All distinct canonical elements, ordered by canonical encoding."""
        return [self.decode(int(code)) for code in self.canonical_code_list]

    def sample(self, rng: np.random.Generator) -> Element:
        code = np.asarray([rng.integers(self.encoding_count)], dtype=np.int64)
        return self.decode(int(self.canonical_codes(code)[0]))


class PointDomain(Domain):
    """Grid points {0, ..., M-1}."""

    def __init__(self, spec: DomainSpec):
        super().__init__(spec, pa_schema())

    @property
    def encoding_count(self) -> int:
        return self.spec.M

    def decode(self, code: int) -> Point:
        return Point(code)

    def relate(self, a: Point, b: Point) -> int:
        return pa_relate(a, b)


def _grid_pairs(m: int) -> List[Tuple[int, int]]:
    return list(combinations(range(m), 2))


class IntervalDomain(Domain):
    """Intervals [p, q] with integer nodes, 0 <= p < q < M."""

    def __init__(self, spec: DomainSpec, duration: bool):
        super().__init__(spec, indu_schema() if duration else ia_schema())
        if spec.M < 2:
            raise DegenerateDomainError(f"{spec.calculus} needs M >= 2 to form an interval")
        self._pairs = _grid_pairs(spec.M)
        self._relate: Callable[[Interval, Interval], int] = (
            indu_relate if duration else ia_relate
        )

    @property
    def encoding_count(self) -> int:
        return len(self._pairs)

    def decode(self, code: int) -> Interval:
        return Interval(*self._pairs[code])

    def relate(self, a: Interval, b: Interval) -> int:
        return self._relate(a, b)


class RectDomain(Domain):
    """Axis-parallel rectangles with corners in [0, M) x [0, M)."""

    def __init__(self, spec: DomainSpec):
        super().__init__(spec, rcc8_schema())
        if spec.M < 2:
            raise DegenerateDomainError("rcc8-rect needs M >= 2 to form a rectangle")
        self._pairs = _grid_pairs(spec.M)

    @property
    def encoding_count(self) -> int:
        return len(self._pairs) ** 2

    def decode(self, code: int) -> Rect:
        xi, yi = divmod(code, len(self._pairs))
        (x1, x2), (y1, y2) = self._pairs[xi], self._pairs[yi]
        return Rect(x1, x2, y1, y2)

    def relate(self, a: Rect, b: Rect) -> int:
        return rcc8_relate_rect(a, b)


class DiskDomain(Domain):
    """Closed disks with centre in [0, M]^2 and radius in [1, M]."""

    def __init__(self, spec: DomainSpec):
        super().__init__(spec, rcc8_schema())

    @property
    def encoding_count(self) -> int:
        m = self.spec.M
        return (m + 1) ** 2 * m

    def decode(self, code: int) -> Disk:
        m = self.spec.M
        rest, r = divmod(code, m)
        cx, cy = divmod(rest, m + 1)
        return Disk(cx, cy, r + 1)

    def relate(self, a: Disk, b: Disk) -> int:
        return rcc8_relate_disk(a, b)


class OPointDomain(Domain):
    """Common part of the Cartesian and polar o-point domains."""

    def __init__(self, spec: DomainSpec):
        m = spec.opra_m
        super().__init__(spec, opra_schema(m))
        self.m = m
        self.tolerance = float(settings.get("RAY_TOLERANCE", DEFAULT_TOLERANCE))

    def relate(self, a: OPoint, b: OPoint) -> int:
        return opra_relate(self.m, a, b, self.tolerance)


class CartesianOPointDomain(OPointDomain):
    """O-points at (x, y) in [-M1, M1]^2 with M2 grid orientations."""

    @property
    def encoding_count(self) -> int:
        return (2 * self.spec.M1 + 1) ** 2 * self.spec.M2

    def decode(self, code: int) -> OPoint:
        m1, m2 = self.spec.M1, self.spec.M2
        rest, phi = divmod(code, m2)
        xi, yi = divmod(rest, 2 * m1 + 1)
        return OPoint(CartesianPosition(xi - m1, yi - m1), phi, m2)


class PolarOPointDomain(OPointDomain):
    """O-points at polar grid positions (rho, theta), rho in [0, M1]."""

    @property
    def encoding_count(self) -> int:
        return (self.spec.M1 + 1) * self.spec.M2 ** 2

    def decode(self, code: int) -> OPoint:
        m2 = self.spec.M2
        rest, phi = divmod(code, m2)
        rho, theta = divmod(rest, m2)
        return OPoint(PolarPosition(rho, theta), phi, m2)

    def canonical_codes(self, codes: np.ndarray) -> np.ndarray:
        # rho = 0 occupies the first M2 * M2 encodings
        origin = codes < self.spec.M2 ** 2
        return np.where(origin, codes % self.spec.M2, codes)


def get_domain(spec: DomainSpec) -> Domain:
    """Instantiate the subdomain described by spec."""
    family = spec.family
    if family == "pa":
        return PointDomain(spec)
    if family in ("ia", "indu"):
        return IntervalDomain(spec, duration=family == "indu")
    if family == "rcc8-rect":
        return RectDomain(spec)
    if family == "rcc8-disk":
        return DiskDomain(spec)
    if family in ("opra-cart", "opra2-grid4"):
        return CartesianOPointDomain(spec)
    if family == "opra-polar":
        return PolarOPointDomain(spec)
    raise UnknownCalculusError(f"Unknown domain family {family!r}")


def sample_element(spec: DomainSpec, rng: np.random.Generator) -> Element:
    """Draw one element uniformly over the encodings of the subdomain."""
    return get_domain(spec).sample(rng)


def domain_size(spec: DomainSpec) -> int:
    """Number of distinct elements of the subdomain."""
    return get_domain(spec).size


def encoding_count(spec: DomainSpec) -> int:
    return get_domain(spec).encoding_count
