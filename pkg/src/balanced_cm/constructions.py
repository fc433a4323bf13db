"""Built-in complexes: the 14-facet 3-dimensional complex Q, its balanced
subdivision Q*, the gluing subcomplexes A and A*, and the glued complexes C_n."""

from __future__ import annotations

import re
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .complex import (
    ComplexError,
    RelativeComplex,
    SimplicialComplex,
    from_facets,
    relative,
)
from .transform import VertexMap, glue_copies, subdivide_edge

Q_FACETS = (
    (1, 2, 4, 9), (1, 2, 6, 9), (1, 5, 6, 9), (1, 5, 8, 9), (1, 4, 8, 9),
    (1, 4, 5, 8), (1, 4, 5, 7), (4, 5, 7, 8), (1, 2, 5, 6), (0, 1, 2, 5),
    (0, 2, 5, 6), (0, 1, 2, 3), (1, 2, 3, 4), (1, 3, 4, 7),
)
A_VERTICES = (0, 2, 3, 4, 6, 7, 8)

# (edge, new vertex), applied in this order
SUBDIVISIONS = (((2, 4), 10), ((5, 9), 11), ((0, 6), 12), ((7, 8), 13))
A_STAR_VERTICES = (0, 2, 3, 4, 6, 7, 8, 10, 12, 13)

TAU = VertexMap.from_cycles((0, 7), (2, 4), (6, 8))
TAU_PRIME = VertexMap.from_cycles((0, 7), (2, 4), (6, 8), (12, 13))

NAMES = ("Q", "A", "Q-star", "A-star", "X", "C<n>")


def subdivide_all(c: SimplicialComplex, steps=SUBDIVISIONS) -> SimplicialComplex:
    """Apply the listed edge subdivisions whose edge is present in ``c``."""
    for edge, w in steps:
        if edge in c:
            c = subdivide_edge(c, edge, w)
    return c


class Corpus:
    """The whole construction chain, starting from a list of Q facets.

    The default instance uses the facets above; passing a different list is
    how the verification report injects faults.
    """

    def __init__(self, q_facets: Iterable[Sequence[object]] = Q_FACETS):
        self.q_facets = tuple(tuple(f) for f in q_facets)
        self._glued: dict[int, SimplicialComplex] = {}

    @cached_property
    def Q(self) -> SimplicialComplex:
        return from_facets(self.q_facets)

    @cached_property
    def A(self) -> SimplicialComplex:
        return self.Q.induced(A_VERTICES)

    @cached_property
    def Q_star(self) -> SimplicialComplex:
        return subdivide_all(self.Q)

    @cached_property
    def A_star(self) -> SimplicialComplex:
        return self.Q_star.induced(A_STAR_VERTICES)

    @cached_property
    def X(self) -> RelativeComplex:
        return relative(self.Q_star, self.A_star)

    def C(self, n: int) -> SimplicialComplex:
        if n not in self._glued:
            self._glued[n] = glue_copies(self.Q_star, self.A_star, n)
        return self._glued[n]

    def build(self, name: str) -> SimplicialComplex | RelativeComplex:
        key = name.strip()
        fixed = {"Q": "Q", "A": "A", "Q-star": "Q_star", "Q*": "Q_star",
                 "A-star": "A_star", "A*": "A_star", "X": "X"}
        if key in fixed:
            return getattr(self, fixed[key])
        m = re.fullmatch(r"C_?(\d+)", key)
        if m and int(m.group(1)) >= 1:
            return self.C(int(m.group(1)))
        raise ComplexError(f"unknown construction {name!r}; expected one of {', '.join(NAMES)}")


@lru_cache(maxsize=None)
def default_corpus() -> Corpus:
    return Corpus()


def q_complex() -> SimplicialComplex:
    return default_corpus().Q


def a_complex() -> SimplicialComplex:
    return default_corpus().A


def q_star() -> SimplicialComplex:
    return default_corpus().Q_star


def a_star() -> SimplicialComplex:
    return default_corpus().A_star


def x_complex() -> RelativeComplex:
    return default_corpus().X


def glued(n: int) -> SimplicialComplex:
    return default_corpus().C(n)


def build(name: str) -> SimplicialComplex | RelativeComplex:
    return default_corpus().build(name)
