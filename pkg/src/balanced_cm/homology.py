"""Reduced simplicial homology over GF(p) and Reisner's Cohen-Macaulay test."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .complex import ComplexError, Face, SimplicialComplex, from_facets


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int = 2

    def __post_init__(self):
        p = self.characteristic
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ComplexError(f"{p} is not prime")


GF2 = FieldSpec(2)


def _field(f: FieldSpec | int | None) -> FieldSpec:
    if f is None:
        return GF2
    return f if isinstance(f, FieldSpec) else FieldSpec(int(f))


def _chain_columns(c: SimplicialComplex, k: int) -> tuple[list[int], list[dict[int, int]]]:
    """Sparse columns of the reduced boundary map from k-faces to (k-1)-faces.

    Returns the (k-1)-face masks (row order) and, per k-face, a dict
    ``row -> ±1``. The sign of deleting the i-th vertex is (-1)^i.
    """
    masks = c.face_masks
    rows = [m for m in masks if m.bit_count() == k]
    cols = [m for m in masks if m.bit_count() == k + 1]
    where = {m: i for i, m in enumerate(rows)}
    columns = []
    for m in cols:
        col = {}
        rest, i = m, 0
        while rest:
            low = rest & -rest
            col[where[m ^ low]] = -1 if i % 2 else 1
            rest ^= low
            i += 1
        columns.append(col)
    return rows, columns


def boundary_matrix(c: SimplicialComplex, k: int, f: FieldSpec | int | None = None) -> np.ndarray:
    """Dense reduced boundary matrix, entries reduced mod p into 0..p-1."""
    p = _field(f).characteristic
    if not 0 <= k <= c.dim:
        raise ComplexError(f"dimension {k} out of range [0, {c.dim}]")
    rows, columns = _chain_columns(c, k)
    mat = np.zeros((len(rows), len(columns)), dtype=np.int64)
    for j, col in enumerate(columns):
        for i, v in col.items():
            mat[i, j] = v % p
    return mat


def _rank_gf2(columns: list[dict[int, int]]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        v = 0
        for i in col:
            v |= 1 << i
        while v:
            top = v.bit_length() - 1
            piv = pivots.get(top)
            if piv is None:
                pivots[top] = v
                rank += 1
                break
            v ^= piv
    return rank


def _rank_gfp(columns: list[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for col in columns:
        v = {i: x % p for i, x in col.items() if x % p}
        while v:
            top = max(v)
            piv = pivots.get(top)
            if piv is None:
                inv = pow(v[top], -1, p)
                pivots[top] = {i: x * inv % p for i, x in v.items()}
                break
            s = v[top]
            for i, x in piv.items():
                y = (v.get(i, 0) - s * x) % p
                if y:
                    v[i] = y
                else:
                    v.pop(i, None)
    return len(pivots)


def rank_mod_p(columns: list[dict[int, int]], p: int) -> int:
    return _rank_gf2(columns) if p == 2 else _rank_gfp(columns, p)


def betti(c: SimplicialComplex, f: FieldSpec | int | None = None) -> tuple[int, ...]:
    """Reduced Betti numbers (b_{-1}, b_0, ..., b_dim) over GF(p)."""
    p = _field(f).characteristic
    fv = c.f_vector()
    d = c.dim
    ranks = [0] * (d + 3)  # ranks[k + 1] = rank of the map on k-chains
    for k in range(0, d + 1):
        ranks[k + 1] = rank_mod_p(_chain_columns(c, k)[1], p)
    return tuple(fv[i + 1] - ranks[i + 1] - ranks[i + 2] for i in range(-1, d + 1))


@dataclass(frozen=True)
class LinkRecord:
    face: Face
    link_dim: int
    betti: tuple[int, ...]
    expected_degree: int

    def ok(self) -> bool:
        return all(b == 0 for i, b in enumerate(self.betti, start=-1) if i != self.expected_degree)

    def __str__(self) -> str:
        bs = " ".join(f"b{i}={b}" for i, b in enumerate(self.betti, start=-1))
        return f"face={self.face} link_dim={self.link_dim} {bs} (allowed degree {self.expected_degree})"


@dataclass
class BettiTable:
    records: list[LinkRecord] = field(default_factory=list)


@dataclass
class CMResult:
    cohen_macaulay: bool
    field: FieldSpec
    refutation: LinkRecord | None = None
    table: BettiTable = field(default_factory=BettiTable)

    def __bool__(self) -> bool:
        return self.cohen_macaulay


def _link_betti(args: tuple[list[Face], int]) -> tuple[int, tuple[int, ...]]:
    facets, p = args
    lk = from_facets(facets)
    return lk.dim, betti(lk, p)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("BALANCED_CM_WORKERS", "1")))
    except ValueError:
        return 1


def is_cohen_macaulay(
    c: SimplicialComplex, f: FieldSpec | int | None = None, workers: int | None = None
) -> CMResult:
    """Reisner's criterion: every link lk(F), including lk(∅) = c, has reduced
    homology only in degree dim(c) - |F|.

    Faces are visited in decreasing dimension. Links that are a single simplex
    are settled without linear algebra.
    """
    fs = _field(f)
    d = c.dim + 1
    table = BettiTable()
    pending: list[tuple[int, Face, list[Face]]] = []
    for mask in sorted(c.face_masks, key=lambda m: -m.bit_count()):
        face = c._face(mask)
        expected = d - 1 - len(face)
        star = [fm & ~mask for fm in c.facet_masks if fm & mask == mask]
        if len(star) == 1:
            top = star[0].bit_count() - 1
            bs = tuple(1 if (i == -1 and top == -1) else 0 for i in range(-1, top + 1))
            rec = LinkRecord(face, top, bs, expected)
            table.records.append(rec)
            if not rec.ok():
                return CMResult(False, fs, rec, table)
            continue
        pending.append((len(table.records), face, [c._face(m) for m in star]))
        table.records.append(None)  # type: ignore[arg-type]

    n = workers or _workers()
    jobs = [(facets, fs.characteristic) for _, _, facets in pending]
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(n) as pool:
            results = list(pool.map(_link_betti, jobs, chunksize=16))
    else:
        results = map(_link_betti, jobs)
    refutation = None
    for (slot, face, _), (ldim, bs) in zip(pending, results):
        rec = LinkRecord(face, ldim, bs, d - 1 - len(face))
        table.records[slot] = rec
        if refutation is None and not rec.ok():
            refutation = rec
    return CMResult(refutation is None, fs, refutation, table)
