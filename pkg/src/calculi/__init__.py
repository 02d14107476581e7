"""Concrete calculi: elements, relate functions, schemas and finite subdomains."""

from src.calculi.domains import (
    Domain,
    DomainSpec,
    build_schema,
    domain_size,
    encoding_count,
    get_domain,
    parse_calculus_token,
    sample_element,
)
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
from src.calculi.matrix import RelationMatrix, relation_matrix
from src.calculi.opra import opra_relate, opra_schema, opra_sector
from src.calculi.rcc8 import rcc8_relate_disk, rcc8_relate_rect, rcc8_schema
from src.calculi.temporal import (
    ia_relate,
    ia_schema,
    indu_relate,
    indu_schema,
    pa_relate,
    pa_schema,
)

__all__ = [
    "CartesianPosition",
    "Disk",
    "Domain",
    "DomainSpec",
    "Element",
    "Interval",
    "OPoint",
    "Point",
    "PolarPosition",
    "Rect",
    "RelationMatrix",
    "build_schema",
    "domain_size",
    "encoding_count",
    "get_domain",
    "ia_relate",
    "ia_schema",
    "indu_relate",
    "indu_schema",
    "opra_relate",
    "opra_schema",
    "opra_sector",
    "pa_relate",
    "pa_schema",
    "parse_calculus_token",
    "rcc8_relate_disk",
    "rcc8_relate_rect",
    "rcc8_schema",
    "relation_matrix",
    "sample_element",
]
