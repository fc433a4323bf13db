"""Proper vertex colorings of the 1-skeleton and balancedness."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping

from .complex import ComplexError, SimplicialComplex, VertexLabel

Coloring = dict[VertexLabel, int]


def _adjacency(c: SimplicialComplex) -> list[int]:
    n = len(c.vertices)
    adj = [0] * n
    for fm in c.facet_masks:
        rest = fm
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            adj[i] |= fm & ~low
            rest ^= low
    return adj


def _dsatur(adj: list[int], k: int) -> list[int] | None:
    """Exact k-coloring by DSATUR branching; colors are 0..k-1.

    A vertex may only open color ``used`` (one past the highest color in use),
    which removes color-permutation symmetry; in particular the first vertex
    colored always gets color 0.
    """
    n = len(adj)
    color = [-1] * n
    # bit c of forbidden[v] set <=> some neighbor of v has color c
    forbidden = [0] * n
    full = (1 << k) - 1
    degree = [a.bit_count() for a in adj]

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if color[v] < 0:
                kv = (forbidden[v].bit_count(), degree[v], -v)
                if key is None or kv > key:
                    best, key = v, kv
        return best

    def assign(v: int, col: int) -> list[int]:
        color[v] = col
        touched = []
        bit = 1 << col
        nb = adj[v]
        while nb:
            low = nb & -nb
            u = low.bit_length() - 1
            nb ^= low
            if color[u] < 0 and not forbidden[u] & bit:
                forbidden[u] |= bit
                touched.append(u)
        return touched

    def search(colored: int, used: int) -> bool:
        if colored == n:
            return True
        v = pick()
        free = full & ~forbidden[v]
        for col in range(min(used + 1, k)):
            if not free >> col & 1:
                continue
            touched = assign(v, col)
            if all(forbidden[u] != full for u in touched) and search(colored + 1, max(used, col + 1)):
                return True
            for u in touched:
                forbidden[u] &= ~(1 << col)
            color[v] = -1
        return False

    if n == 0:
        return []
    if k <= 0:
        return None
    return color if search(0, 0) else None


def canonical(coloring: Mapping[VertexLabel, int]) -> Coloring:
    """Rename colors 1, 2, ... in order of first appearance along sorted vertices."""
    rename: dict[int, int] = {}
    out: Coloring = {}
    for v in sorted(coloring):
        c = coloring[v]
        if c not in rename:
            rename[c] = len(rename) + 1
        out[v] = rename[c]
    return out


def proper_coloring(c: SimplicialComplex, k: int) -> Coloring | None:
    """A proper coloring with colors 1..k, or None if none exists."""
    colors = _dsatur(_adjacency(c), k)
    if colors is None:
        return None
    return canonical({v: colors[i] + 1 for i, v in enumerate(c.vertices)})


def is_proper(c: SimplicialComplex, coloring: Mapping[VertexLabel, int], k: int | None = None) -> bool:
    if set(coloring) != set(c.vertices):
        return False
    if k is not None and not all(1 <= col <= k for col in coloring.values()):
        return False
    return all(coloring[u] != coloring[v] for u, v in c.edges())


@dataclass
class Balance:
    balanced: bool
    coloring: Coloring | None = None
    warning: str | None = None

    def __bool__(self) -> bool:
        return self.balanced


def is_balanced(c: SimplicialComplex) -> Balance:
    """Whether the 1-skeleton is (dim + 1)-colorable."""
    note = None
    if not c.is_pure():
        note = "complex is not pure; balancedness evaluated against dim+1 colors"
        warnings.warn(note, stacklevel=2)
    col = proper_coloring(c, c.dim + 1)
    return Balance(col is not None, col, note)


def critical_vertices(c: SimplicialComplex) -> set[VertexLabel]:
    """Vertices whose links are not balanced (needs dim >= 2)."""
    if c.dim < 2:
        raise ComplexError("critical vertices are defined for complexes of dimension >= 2")
    out = set()
    for v in c.vertices:
        lk = c.link([v])
        if proper_coloring(lk, lk.dim + 1) is None:
            out.add(v)
    return out
