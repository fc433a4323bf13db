"""Finite simplicial and relative simplicial complexes.

Faces are exposed as :class:`Face` values (sorted tuples of
:class:`VertexLabel`); internally every complex indexes its vertex set densely
and keeps faces as Python ``int`` bit-sets, so subset tests are single
``&`` operations regardless of how many vertices there are.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, total_ordering
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class ComplexError(ValueError):
    """Malformed input to a complex operation."""


_TAGGED = re.compile(r"^(.+)\.(\d+)$")
_INT = re.compile(r"^-?\d+$")


@total_ordering
@dataclass(frozen=True)
class VertexLabel:
    base: int | str
    copy_tag: int | None = None

    def _key(self) -> tuple:
        b = self.base
        return ((0, b, "") if isinstance(b, int) else (1, 0, b),
                -1 if self.copy_tag is None else self.copy_tag)

    def __lt__(self, other: VertexLabel) -> bool:
        if not isinstance(other, VertexLabel):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self) -> str:
        if self.copy_tag is None:
            return str(self.base)
        return f"{self.base}.{self.copy_tag}"

    def __repr__(self) -> str:
        return f"V({self})"

    def tagged(self, tag: int) -> VertexLabel:
        return VertexLabel(self.base, tag)


def vertex(x: object) -> VertexLabel:
    """Normalize ``x`` to a :class:`VertexLabel`.

    Integer-looking strings become integers and ``"base.k"`` becomes a tagged
    label, so labels written by :func:`format_complex` parse back unchanged.
    """
    if isinstance(x, VertexLabel):
        return x
    if isinstance(x, bool):
        raise ComplexError(f"invalid vertex label {x!r}")
    if isinstance(x, int):
        return VertexLabel(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch.isspace() for ch in s):
            raise ComplexError(f"invalid vertex label {x!r}")
        if _INT.match(s):
            return VertexLabel(int(s))
        m = _TAGGED.match(s)
        if m:
            inner = vertex(m.group(1))
            if inner.copy_tag is None:
                return VertexLabel(inner.base, int(m.group(2)))
        return VertexLabel(s)
    raise ComplexError(f"invalid vertex label {x!r}")


class Face(tuple):
    """An immutable, canonically sorted set of vertex labels."""

    def __new__(cls, vertices: Iterable[object] = ()) -> Face:
        vs = [vertex(v) for v in vertices]
        if len(set(vs)) != len(vs):
            raise ComplexError(f"duplicate vertex in face {[str(v) for v in vs]}")
        return super().__new__(cls, sorted(vs))

    @property
    def dim(self) -> int:
        return len(self) - 1

    def issubset(self, other: Iterable[object]) -> bool:
        return set(self) <= set(Face(other) if not isinstance(other, Face) else other)

    def union(self, other: Iterable[object]) -> Face:
        return Face(set(self) | set(Face(other)))

    def difference(self, other: Iterable[object]) -> Face:
        return Face(set(self) - set(Face(other)))

    def __repr__(self) -> str:
        return "{" + ",".join(str(v) for v in self) + "}"

    __str__ = __repr__


EMPTY = Face()


def _maximal(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal members of a collection of bit-sets."""
    uniq = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class SimplicialComplex:
    """A finite simplicial complex given by its facets.

    The vertex set is the union of the facets. A complex whose only face is the
    empty face (``from_facets([()])``) is allowed and has dimension -1.
    """

    def __init__(self, facets: Iterable[Face]):
        facet_list = [f if isinstance(f, Face) else Face(f) for f in facets]
        if not facet_list:
            raise ComplexError("a complex needs at least one face (use [()] for {∅})")
        verts = sorted({v for f in facet_list for v in f})
        self.vertices: tuple[VertexLabel, ...] = tuple(verts)
        self._index = {v: i for i, v in enumerate(verts)}
        masks = _maximal(self._mask(f) for f in facet_list)
        self._facet_masks = sorted(masks, key=self._mask_key)

    # -- bit-set plumbing -------------------------------------------------

    def _mask(self, face: Iterable[object]) -> int:
        m = 0
        for v in face:
            try:
                m |= 1 << self._index[vertex(v)]
            except KeyError:
                raise ComplexError(f"vertex {v} not in complex") from None
        return m

    def _face(self, mask: int) -> Face:
        vs = self.vertices
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(vs[i])
            mask >>= 1
            i += 1
        return tuple.__new__(Face, out)

    def _mask_key(self, mask: int) -> tuple:
        return (mask.bit_count(), self._face(mask))

    # -- basic structure --------------------------------------------------

    @property
    def facets(self) -> list[Face]:
        return [self._face(m) for m in self._facet_masks]

    @property
    def facet_masks(self) -> list[int]:
        return list(self._facet_masks)

    @property
    def dim(self) -> int:
        return max(m.bit_count() for m in self._facet_masks) - 1

    def is_pure(self) -> bool:
        return len({m.bit_count() for m in self._facet_masks}) == 1

    @cached_property
    def face_masks(self) -> tuple[int, ...]:
        """All face bit-sets, in canonical order (by size, then labels)."""
        seen: set[int] = set()
        for fm in self._facet_masks:
            if fm in seen:
                continue
            seen.update(_submasks(fm))
        return tuple(sorted(seen, key=self._mask_key))

    def faces(self, k: int | None = None) -> list[Face]:
        if k is None:
            return [self._face(m) for m in self.face_masks]
        if not -1 <= k <= self.dim:
            raise ComplexError(f"dimension {k} out of range [-1, {self.dim}]")
        return [self._face(m) for m in self.face_masks if m.bit_count() == k + 1]

    def contains_mask(self, mask: int) -> bool:
        return any(mask & fm == mask for fm in self._facet_masks)

    def __contains__(self, face: object) -> bool:
        try:
            mask = self._mask(face if isinstance(face, Face) else Face(face))
        except ComplexError:
            return False
        return self.contains_mask(mask)

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 2)
        for m in self.face_masks:
            counts[m.bit_count()] += 1
        return tuple(counts)

    def edges(self) -> list[tuple[VertexLabel, VertexLabel]]:
        return [tuple(f) for f in self.faces(1)] if self.dim >= 1 else []

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.facets) == set(other.facets)

    def __hash__(self) -> int:
        return hash(frozenset(self.facets))

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, facets={len(self._facet_masks)}, vertices={len(self.vertices)})"

    # -- derived complexes ------------------------------------------------

    def link(self, face: Iterable[object]) -> SimplicialComplex:
        f = face if isinstance(face, Face) else Face(face)
        mask = self._mask(f)
        if not self.contains_mask(mask):
            raise ComplexError(f"{f} is not a face of the complex")
        return self._link_of_mask(mask)

    def _link_of_mask(self, mask: int) -> SimplicialComplex:
        parts = [fm & ~mask for fm in self._facet_masks if fm & mask == mask]
        return SimplicialComplex(self._face(m) for m in parts)

    def star_facets(self, face: Iterable[object]) -> list[Face]:
        mask = self._mask(face)
        return [self._face(fm) for fm in self._facet_masks if fm & mask == mask]

    def induced(self, w: Iterable[object]) -> SimplicialComplex:
        ws = {vertex(v) for v in w}
        unknown = ws - set(self.vertices)
        if unknown:
            raise ComplexError(f"unknown vertices {sorted(str(v) for v in unknown)}")
        wmask = self._mask(ws)
        return SimplicialComplex(self._face(fm & wmask) for fm in self._facet_masks)

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        return all(f in other for f in self.facets)

    def is_induced_in(self, other: SimplicialComplex) -> bool:
        if not self.is_subcomplex_of(other):
            return False
        return other.induced(self.vertices) == self if self.vertices else True


def from_facets(faces: Iterable[Iterable[object]]) -> SimplicialComplex:
    """Combinatorial closure of a list of faces."""
    return SimplicialComplex(Face(f) for f in faces)


def simplex(vertices: Iterable[object]) -> SimplicialComplex:
    return from_facets([list(vertices)])


def boundary_of_simplex(vertices: Sequence[object]) -> SimplicialComplex:
    return from_facets(combinations(vertices, len(vertices) - 1))


def void_complex() -> SimplicialComplex:
    """The complex {∅}."""
    return SimplicialComplex([EMPTY])


class RelativeComplex:
    """A pair (Δ, Γ), Γ ⊆ Δ, kept in its minimal representation.

    ``total`` is the closure of the relative face set Δ\\Γ and ``removed`` is
    ``total`` intersected with Γ.
    """

    def __init__(self, total: SimplicialComplex, removed: SimplicialComplex | None):
        if removed is not None and not removed.is_subcomplex_of(total):
            raise ComplexError("removed complex is not a subcomplex of total")
        gamma = set(removed.faces()) if removed is not None else set()
        rel = [f for f in total.faces() if f not in gamma]
        if not rel:
            raise ComplexError("relative complex has no faces")
        self.total = from_facets(rel)
        kept = [f for f in self.total.faces() if f in gamma]
        self._removed_faces = kept
        self.removed: SimplicialComplex | None = from_facets(kept) if kept else None

    @cached_property
    def face_masks(self) -> tuple[int, ...]:
        """Bit-sets (over ``total``'s vertex index) of the faces of Δ\\Γ."""
        gone = {self.total._mask(f) for f in self._removed_faces}
        return tuple(m for m in self.total.face_masks if m not in gone)

    def faces(self, k: int | None = None) -> list[Face]:
        out = [self.total._face(m) for m in self.face_masks]
        return out if k is None else [f for f in out if f.dim == k]

    @cached_property
    def _face_set(self) -> frozenset[int]:
        return frozenset(self.face_masks)

    def is_face_mask(self, mask: int) -> bool:
        return mask in self._face_set

    @property
    def facets(self) -> list[Face]:
        return self.total.facets

    @property
    def dim(self) -> int:
        return self.total.dim

    def is_pure(self) -> bool:
        return self.total.is_pure()

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 2)
        for m in self.face_masks:
            counts[m.bit_count()] += 1
        return tuple(counts)

    def __repr__(self) -> str:
        return f"RelativeComplex(f={self.f_vector()})"


def relative(total: SimplicialComplex, removed: SimplicialComplex | None) -> RelativeComplex:
    return RelativeComplex(total, removed)


def f_vector(c: SimplicialComplex | RelativeComplex) -> tuple[int, ...]:
    return c.f_vector()


def h_vector(f: Sequence[int]) -> tuple[int, ...]:
    """h-vector from an f-vector ``(f_{-1}, ..., f_{d-1})``.

    Coefficient matching in sum f_{i-1} (t-1)^{d-i} = sum h_i t^{d-i} gives
    h_k = sum_{i<=k} (-1)^{k-i} C(d-i, k-i) f_{i-1}.
    """
    from math import comb

    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def f_from_h(h: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`h_vector`: f_{k-1} = sum_{i<=k} C(d-i, k-i) h_i."""
    from math import comb

    d = len(h) - 1
    return tuple(sum(comb(d - i, k - i) * h[i] for i in range(k + 1)) for k in range(d + 1))


def euler_characteristic(f: Sequence[int]) -> int:
    """Reduced Euler characteristic -f_{-1} + f_0 - f_1 + ..."""
    return sum((-1) ** (i + 1) * x for i, x in enumerate(f))
