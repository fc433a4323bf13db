"""Constructions on complexes: subdivisions, gluing, relabeling."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping

from .complex import (
    ComplexError,
    Face,
    SimplicialComplex,
    VertexLabel,
    vertex,
)


@dataclass(frozen=True)
class VertexMap:
    """A bijection on finitely many vertices; unlisted vertices are fixed."""

    mapping: Mapping[VertexLabel, VertexLabel] = field(default_factory=dict)

    def __post_init__(self):
        m = {vertex(k): vertex(v) for k, v in dict(self.mapping).items()}
        if len(set(m.values())) != len(m):
            raise ComplexError("vertex map is not injective")
        if set(m.values()) != set(m):
            # a finite bijection must permute its own support
            raise ComplexError("vertex map does not permute its domain")
        object.__setattr__(self, "mapping", {k: v for k, v in m.items() if k != v})

    @classmethod
    def from_cycles(cls, *cycles: Iterable[object]) -> VertexMap:
        m: dict[VertexLabel, VertexLabel] = {}
        for cyc in cycles:
            cyc = [vertex(v) for v in cyc]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in m:
                    raise ComplexError(f"vertex {a} appears in two cycles")
                m[a] = b
        return cls(m)

    def __call__(self, v: object) -> VertexLabel:
        v = vertex(v)
        return self.mapping.get(v, v)

    def image(self, face: Iterable[object]) -> Face:
        return Face(self(v) for v in face)

    def inverse(self) -> VertexMap:
        return VertexMap({v: k for k, v in self.mapping.items()})

    def compose(self, other: VertexMap) -> VertexMap:
        """``self ∘ other``."""
        keys = set(self.mapping) | set(other.mapping)
        return VertexMap({k: self(other(k)) for k in keys})

    def restrict(self, vertices: Iterable[object]) -> VertexMap:
        vs = {vertex(v) for v in vertices}
        return VertexMap({k: v for k, v in self.mapping.items() if k in vs})

    @property
    def support(self) -> frozenset[VertexLabel]:
        return frozenset(self.mapping)

    def __str__(self) -> str:
        seen: set[VertexLabel] = set()
        parts = []
        for start in sorted(self.mapping):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.mapping[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.mapping[nxt]
            parts.append("(" + " ".join(str(v) for v in cyc) + ")")
        return "".join(parts) or "id"


def apply_map(c: SimplicialComplex, m: VertexMap) -> SimplicialComplex:
    return SimplicialComplex(m.image(f) for f in c.facets)


def is_automorphism(c: SimplicialComplex, m: VertexMap) -> bool:
    vs = set(c.vertices)
    if not m.support <= vs:
        return False
    return set(m.image(f) for f in c.facets) == set(c.facets)


def subdivide_edge(c: SimplicialComplex, edge: Iterable[object], new_vertex: object) -> SimplicialComplex:
    """Stellar subdivision of ``edge`` by a new vertex.

    Every face G containing the edge {u, v} is replaced by (G - u) + w and
    (G - v) + w; the rest of the face poset is kept.
    """
    e = Face(edge)
    w = vertex(new_vertex)
    if len(e) != 2:
        raise ComplexError(f"{e} is not an edge")
    if e not in c:
        raise ComplexError(f"{e} is not an edge of the complex")
    if w in c.vertices:
        raise ComplexError(f"vertex {w} already present")
    u, v = e
    out: list[Face] = []
    for g in c.faces():
        if u in g and v in g:
            rest = [x for x in g if x not in e]
            out.append(Face(rest + [u, w]))
            out.append(Face(rest + [v, w]))
        else:
            out.append(g)
    return SimplicialComplex(out)


def fresh_vertex(c: SimplicialComplex, prefix: str = "s") -> VertexLabel:
    """First label ``s1``, ``s2``, ... not already used in ``c``."""
    k = 1
    while vertex(f"{prefix}{k}") in c.vertices:
        k += 1
    return vertex(f"{prefix}{k}")


def glue_copies(q: SimplicialComplex, a: SimplicialComplex, n: int) -> SimplicialComplex:
    """Identify ``n`` disjoint copies of ``q`` along the induced subcomplex ``a``.

    Vertices of ``a`` keep their labels; every other vertex of ``q`` gets copy
    tags 1..n.
    """
    if n < 1:
        raise ComplexError("number of copies must be positive")
    if not a.is_induced_in(q):
        raise ComplexError("gluing complex is not an induced subcomplex")
    shared = set(a.vertices)
    private = [v for v in q.vertices if v not in shared]
    if any(v.copy_tag is not None for v in private):
        raise ComplexError("cannot glue a complex whose private vertices are already tagged")
    facets = []
    for k in range(1, n + 1):
        ren = {v: v.tagged(k) for v in private}
        facets += [Face(ren.get(x, x) for x in f) for f in q.facets]
    return SimplicialComplex(facets)


def codimension(q: SimplicialComplex, a: SimplicialComplex) -> int:
    return q.dim - a.dim


def cone(c: SimplicialComplex, apex: object | None = None) -> SimplicialComplex:
    w = vertex(apex) if apex is not None else fresh_vertex(c, "apex")
    if w in c.vertices:
        raise ComplexError(f"apex {w} already present")
    return SimplicialComplex(Face(list(f) + [w]) for f in c.facets)


def face_vertex(face: Face) -> VertexLabel:
    """Vertex of the barycentric subdivision standing for ``face``."""
    return vertex("_".join(str(v) for v in face))


def barycentric_subdivision(c: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the nonempty faces; facets are maximal chains."""
    chains = []
    for f in c.facets:
        if not f:
            continue
        for perm in permutations(f):
            chains.append(Face(face_vertex(Face(perm[: i + 1])) for i in range(len(perm))))
    if not chains:
        return SimplicialComplex([Face()])
    return SimplicialComplex(chains)


def dimension_coloring(c: SimplicialComplex) -> dict[VertexLabel, int]:
    """Coloring of ``barycentric_subdivision(c)`` by 1 + dim of each face."""
    return {face_vertex(f): len(f) for f in c.faces() if f}
