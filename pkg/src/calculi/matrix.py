"""Materialised basic-relation matrices over small subdomains."""

from dataclasses import dataclass
from typing import List, Union

import numpy as np

from src import logger, settings
from src.calculi.domains import Domain, DomainSpec, get_domain
from src.calculi.elements import Element


RELATION_DTYPE = np.int16


def matrix_bytes(size: int) -> int:
    """Memory taken by the relation matrix of a subdomain with `size` elements."""
    return size * size * np.dtype(RELATION_DTYPE).itemsize


def matrix_fits(domain: Domain) -> bool:
    """Whether the relation matrix of domain stays within MATRIX_MAX_BYTES."""
    return matrix_bytes(domain.size) <= int(settings.get("MATRIX_MAX_BYTES", 268_435_456))


@dataclass
class RelationMatrix:
    """
    The |D| x |D| matrix of basic relations over a subdomain.

    Attributes:
        domain: The subdomain
        elements: Canonical elements, matrix rows and columns follow this order
        relations: relations[i, j] is the relation index of elements[i] to elements[j]
        element_of_code: Maps each raw encoding to its element index
    """

    domain: Domain
    elements: List[Element]
    relations: np.ndarray
    element_of_code: np.ndarray

    @property
    def size(self) -> int:
        return len(self.elements)


def relation_matrix(spec_or_domain: Union[DomainSpec, Domain]) -> RelationMatrix:
    """Relate every ordered pair of elements of the subdomain once."""
    domain = (
        spec_or_domain
        if isinstance(spec_or_domain, Domain)
        else get_domain(spec_or_domain)
    )
    codes = domain.canonical_codes(np.arange(domain.encoding_count, dtype=np.int64))
    canonical, element_of_code = np.unique(codes, return_inverse=True)
    elements = [domain.decode(int(code)) for code in canonical]

    size = len(elements)
    logger.debug(f"Building {size}x{size} relation matrix for {domain.spec.calculus}")
    relations = np.empty((size, size), dtype=RELATION_DTYPE)
    relate = domain.relate
    for i, a in enumerate(elements):
        relations[i] = [relate(a, b) for b in elements]

    return RelationMatrix(
        domain=domain,
        elements=elements,
        relations=relations,
        element_of_code=element_of_code.astype(np.int64),
    )
