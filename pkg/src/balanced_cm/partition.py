"""Partitionability and shellability of pure (relative) complexes.

Partitionability is decided as an exact cover problem. There is one column
per face of the target and one per facet. There is one row per pair (facet F,
bottom R) whose Boolean interval [R, F] lies entirely in the target. A row
covers the faces of its interval and the column of F.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from .complex import (
    ComplexError,
    Face,
    RelativeComplex,
    SimplicialComplex,
    _submasks,
    f_vector,
    h_vector,
)
from .exact_cover import Budget, BudgetExceeded, ExactCover

PARTITIONABLE = "partitionable"
NOT_PARTITIONABLE = "not_partitionable"
SHELLABLE = "shellable"
NOT_SHELLABLE = "not_shellable"
INCONCLUSIVE = "inconclusive"

Target = SimplicialComplex | RelativeComplex


@dataclass
class IntervalPartition:
    intervals: list[tuple[Face, Face]]

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def to_text(self) -> str:
        def fmt(f: Face) -> str:
            return " ".join(str(v) for v in f) if f else "{}"

        return "".join(f"{fmt(r)} | {fmt(t)}\n" for r, t in self.intervals)

    @classmethod
    def from_text(cls, text: str) -> IntervalPartition:
        out = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "|" not in line:
                raise ComplexError(f"line {lineno}: expected 'R | F'")
            lo, hi = line.split("|", 1)
            parse = lambda s: Face([] if s.strip() in ("", "{}") else s.split())  # noqa: E731
            out.append((parse(lo), parse(hi)))
        return cls(out)


@dataclass
class PartitionVerdict:
    status: str
    certificate: IntervalPartition | None = None
    nodes: int = 0
    seconds: float = 0.0

    def __bool__(self) -> bool:
        return self.status == PARTITIONABLE


@dataclass
class Check:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _target_parts(x: Target) -> tuple[SimplicialComplex, set[int]]:
    """Ambient complex and the target face masks over its vertex index."""
    if isinstance(x, RelativeComplex):
        return x.total, set(x.face_masks)
    return x, set(x.face_masks)


def _interval_masks(bottom: int, top: int) -> Iterable[int]:
    for sub in _submasks(top & ~bottom):
        yield bottom | sub


def _require_pure(x: Target) -> None:
    if not x.is_pure():
        raise ComplexError("partitionability and shellability are defined for pure complexes")


@dataclass
class CoverEncoding:
    """Exact cover rows/columns for the partitionability of ``target``."""

    ambient: SimplicialComplex
    face_columns: list[int]
    facet_masks: list[int]
    row_pairs: list[tuple[int, int]]  # (bottom mask, facet mask)
    rows: list[int]

    @property
    def n_columns(self) -> int:
        return len(self.face_columns) + len(self.facet_masks)

    def column_label(self, c: int) -> str:
        n = len(self.face_columns)
        if c < n:
            return "face " + str(self.ambient._face(self.face_columns[c]))
        return "facet " + str(self.ambient._face(self.facet_masks[c - n]))

    def write(self, out: TextIO) -> None:
        """Plain 0/1 incidence matrix: one line per row, columns as listed."""
        out.write(f"# exact cover: {self.n_columns} columns, {len(self.rows)} rows\n")
        for c in range(self.n_columns):
            out.write(f"# column {c}: {self.column_label(c)}\n")
        for (bottom, top), mask in zip(self.row_pairs, self.rows):
            bits = "".join("1" if mask >> c & 1 else "0" for c in range(self.n_columns))
            r, f = self.ambient._face(bottom), self.ambient._face(top)
            out.write(f"{bits}  # {r} | {f}\n")


def encode(x: Target) -> CoverEncoding:
    ambient, target = _target_parts(x)
    face_columns = [m for m in ambient.face_masks if m in target]
    col = {m: i for i, m in enumerate(face_columns)}
    facets = ambient.facet_masks
    n_faces = len(face_columns)
    pairs, rows = [], []
    for j, top in enumerate(facets):
        for bottom in sorted(_submasks(top), key=ambient._mask_key):
            if bottom not in target:
                continue
            # target is closed upward inside the ambient complex
            mask = 1 << (n_faces + j)
            for g in _interval_masks(bottom, top):
                mask |= 1 << col[g]
            pairs.append((bottom, top))
            rows.append(mask)
    return CoverEncoding(ambient, face_columns, facets, pairs, rows)


def shared_vertices(x: Target) -> frozenset | None:
    """Untagged vertices of a complex whose other vertices carry copy tags.

    These are the vertices along which :func:`glue_copies` identified its
    copies; None when the labels do not follow that convention.
    """
    ambient = x.total if isinstance(x, RelativeComplex) else x
    tagged = [v for v in ambient.vertices if v.copy_tag is not None]
    if not tagged:
        return None
    return frozenset(v for v in ambient.vertices if v.copy_tag is None)


def _facet_blocks(ambient: SimplicialComplex, shared_mask: int) -> list[list[int]]:
    """Group facets that share a vertex outside ``shared_mask``."""
    facets = ambient.facet_masks
    parent = list(range(len(facets)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for j, fm in enumerate(facets):
        rest = fm & ~shared_mask
        while rest:
            low = rest & -rest
            rest ^= low
            if low in owner:
                parent[find(j)] = find(owner[low])
            else:
                owner[low] = j
    groups: dict[int, list[int]] = {}
    for j in range(len(facets)):
        groups.setdefault(find(j), []).append(j)
    return sorted(groups.values())


# block pattern families keyed by the block's exact cover rows; identical
# rows mean an identical family, so glued copies share one entry
_PATTERN_CACHE: dict[tuple, tuple] = {}
_PATTERN_CACHE_SIZE = 16


class _BlockSolver:
    """Exact cover split along separator columns.

    The separator columns are the target faces spanned by shared vertices.
    Every other column, and every row, belongs to one block of facets. A
    cover exists iff each block can pick a set of separator faces it
    absorbs, so that the picks are disjoint, their union is the separator,
    and each block exactly covers its own faces plus its pick.
    """

    def __init__(self, enc: CoverEncoding, blocks: list[list[int]], shared_mask: int, budget: Budget):
        self.enc = enc
        self.budget = budget
        self.sep = [c for c, m in enumerate(enc.face_columns) if m & ~shared_mask == 0]
        sep_local = {c: i for i, c in enumerate(self.sep)}
        self.full = (1 << len(self.sep)) - 1
        row_of_facet: dict[int, list[int]] = {}
        for r, (_, top) in enumerate(enc.row_pairs):
            row_of_facet.setdefault(top, []).append(r)
        self.blocks = []
        cache = _PATTERN_CACHE
        for facet_ids in blocks:
            rows = [r for j in facet_ids for r in row_of_facet[enc.facet_masks[j]]]
            private = sorted({c for r in rows for c in _bit_list(enc.rows[r]) if c not in sep_local})
            local = {c: i for i, c in enumerate(private)}
            base = len(private)
            local.update({c: base + i for c, i in sep_local.items()})
            local_rows = []
            for r in rows:
                m = 0
                for c in _bit_list(enc.rows[r]):
                    m |= 1 << local[c]
                local_rows.append(m)
            key = (base, len(self.sep), tuple(local_rows))
            if key not in cache:
                ec = ExactCover(base + len(self.sep), local_rows, secondary=self.full << base)
                if len(cache) >= _PATTERN_CACHE_SIZE:
                    cache.pop(next(iter(cache)))
                cache[key] = (key, frozenset(p >> base for p in ec.patterns(budget)))
            self.blocks.append((rows, base, local_rows, cache[key]))

    def _combine(self) -> list[int] | None:
        """One separator pattern per block, or None."""
        classes: dict[tuple, list[int]] = {}
        for b, (_, _, _, (key, _)) in enumerate(self.blocks):
            classes.setdefault(key, []).append(b)
        pats = {key: self.blocks[members[0]][3][1] for key, members in classes.items()}
        by_low = {
            key: _group_by_lowest_bit(ps) for key, ps in pats.items()
        }
        keys = list(classes)
        dead: set[tuple] = set()

        def search(used: int, left: tuple[int, ...]) -> list[tuple[tuple, int]] | None:
            if used == self.full:
                return [] if all(0 in pats[keys[i]] for i, n in enumerate(left) for _ in range(n)) else None
            state = (used, left)
            if state in dead:
                return None
            self.budget.tick()
            remaining = sum(left)
            if remaining == 0:
                return None
            if remaining == 1:
                k = next(i for i, n in enumerate(left) if n)
                rest = self.full & ~used
                return [(keys[k], rest)] if rest in pats[keys[k]] else None
            low = (self.full & ~used) & -(self.full & ~used)
            c = low.bit_length() - 1
            for k, n in enumerate(left):
                if not n:
                    continue
                nxt = left[:k] + (n - 1,) + left[k + 1:]
                for p in by_low[keys[k]].get(c, ()):
                    if p & used:
                        continue
                    sub = search(used | p, nxt)
                    if sub is not None:
                        return [(keys[k], p)] + sub
            dead.add(state)
            return None

        picked = search(0, tuple(len(classes[k]) for k in keys))
        if picked is None:
            return None
        # hand the chosen patterns to concrete blocks; blocks left over take ∅
        assignment: dict[int, int] = {}
        pool = {key: list(members) for key, members in classes.items()}
        for key, p in picked:
            assignment[pool[key].pop(0)] = p
        for key, members in pool.items():
            for b in members:
                assignment[b] = 0
        return [assignment[b] for b in range(len(self.blocks))]

    def solve(self) -> list[int] | None:
        choice = self._combine()
        if choice is None:
            return None
        solution = []
        for (rows, base, local_rows, _), pat in zip(self.blocks, choice):
            forbidden = (self.full & ~pat) << base
            keep = [i for i, m in enumerate(local_rows) if not m & forbidden]
            ec = ExactCover(base + len(self.sep), [local_rows[i] for i in keep], secondary=forbidden)
            sub = ec.solve(Budget())
            if sub is None:
                raise AssertionError("block pattern without a witness")
            solution += [rows[keep[i]] for i in sub]
        return solution


def _bit_list(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def _group_by_lowest_bit(patterns: Iterable[int]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for p in sorted(patterns):
        if p:
            out.setdefault((p & -p).bit_length() - 1, []).append(p)
    return out


def decide_partitionable(
    x: Target,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
    shared: Iterable[object] | None = None,
    decompose: bool = True,
) -> PartitionVerdict:
    """Exact decision of partitionability within an optional budget.

    If the facets fall into several blocks that meet only in faces spanned by
    the ``shared`` vertices, each block is solved separately. By default the
    shared vertices are the untagged ones of a glued complex. The search
    still covers every case; only the order of work changes.
    """
    _require_pure(x)
    start = time.perf_counter()
    enc = encode(x)
    budget = Budget(max_nodes=max_nodes, max_seconds=max_seconds)
    budget.start()
    solver = None
    if decompose:
        if shared is None:
            shared = shared_vertices(x)
        if shared is not None:
            shared_mask = enc.ambient._mask(shared)
            blocks = _facet_blocks(enc.ambient, shared_mask)
            if len(blocks) > 1:
                solver = lambda: _BlockSolver(enc, blocks, shared_mask, budget).solve()  # noqa: E731
    if solver is None:
        ec = ExactCover(enc.n_columns, enc.rows)
        solver = lambda: ec.solve(budget)  # noqa: E731
    try:
        sol = solver()
    except BudgetExceeded:
        return PartitionVerdict(INCONCLUSIVE, None, budget.nodes, time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    if sol is None:
        return PartitionVerdict(NOT_PARTITIONABLE, None, budget.nodes, elapsed)
    amb = enc.ambient
    intervals = sorted(
        ((amb._face(enc.row_pairs[r][0]), amb._face(enc.row_pairs[r][1])) for r in sol),
        key=lambda rf: (len(rf[1]), rf[1]),
    )
    cert = IntervalPartition(intervals)
    if not verify_partition(x, cert):
        raise AssertionError("solver produced an invalid partition")
    return PartitionVerdict(PARTITIONABLE, cert, budget.nodes, elapsed)


def verify_partition(x: Target, p: IntervalPartition) -> Check:
    """Check that ``p`` partitions the faces of ``x`` into facet-topped intervals."""
    ambient, target = _target_parts(x)
    removed = x.removed if isinstance(x, RelativeComplex) else None
    facets = set(ambient.facet_masks)
    seen_tops: set[int] = set()
    covered: dict[int, int] = {}
    for i, (bottom, top) in enumerate(p.intervals):
        try:
            b, t = ambient._mask(bottom), ambient._mask(top)
        except ComplexError as exc:
            return Check(False, f"interval {i}: {exc}")
        if b & t != b:
            return Check(False, f"interval {i}: bottom {bottom} not contained in top {top}")
        if t not in facets:
            return Check(False, f"interval {i}: top {top} is not a facet")
        if t in seen_tops:
            return Check(False, f"interval {i}: facet {top} is the top of two intervals")
        seen_tops.add(t)
        for g in _interval_masks(b, t):
            if g not in target:
                face = ambient._face(g)
                if removed is not None and face in removed:
                    return Check(False, f"interval {i}: face {face} in removed part")
                return Check(False, f"interval {i}: face {face} not in complex")
            if g in covered:
                return Check(False, f"intervals {covered[g]} and {i} share face {ambient._face(g)}")
            covered[g] = i
    if seen_tops != facets:
        missing = sorted(ambient._face(m) for m in facets - seen_tops)
        return Check(False, f"facets without an interval: {missing}")
    if len(covered) != len(target):
        missing = sorted((ambient._face(m) for m in target - covered.keys()), key=lambda f: (len(f), f))
        return Check(False, f"faces not covered: {missing[:5]}")
    return Check(True)


def h_from_partition(p: IntervalPartition, d: int) -> tuple[int, ...]:
    """h_i = number of intervals whose bottom has i vertices."""
    h = [0] * (d + 1)
    for bottom, _ in p.intervals:
        if len(bottom) > d:
            raise ComplexError(f"bottom {bottom} larger than d={d}")
        h[len(bottom)] += 1
    return tuple(h)


def verified_h(x: Target, p: IntervalPartition) -> tuple[int, ...]:
    chk = verify_partition(x, p)
    if not chk:
        raise ComplexError(f"partition does not verify: {chk.violation}")
    return h_from_partition(p, x.dim + 1)


def interval_face_count(p: IntervalPartition) -> int:
    return sum(2 ** (len(t) - len(r)) for r, t in p.intervals)


# -- shellability -----------------------------------------------------------


@dataclass
class ShellingCheck:
    ok: bool
    restrictions: list[Face] = field(default_factory=list)
    failed_step: int | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class ShellingVerdict:
    status: str
    order: list[Face] | None = None
    nodes: int = 0
    seconds: float = 0.0

    def __bool__(self) -> bool:
        return self.status == SHELLABLE


def _restriction(top: int, earlier: Sequence[int]) -> int | None:
    """Unique minimal new face of ``top`` after ``earlier``, or None."""
    if not earlier:
        return 0
    new = [g for g in _submasks(top) if not any(g & e == g for e in earlier)]
    r = top
    for g in new:
        r &= g
    if any(r & e == r for e in earlier):
        return None
    return r


def verify_shelling(c: SimplicialComplex, order: Sequence[Iterable[object]]) -> ShellingCheck:
    masks = [c._mask(Face(f)) for f in order]
    if sorted(masks) != sorted(c.facet_masks):
        raise ComplexError("shelling order is not a permutation of the facets")
    restrictions = []
    for i, top in enumerate(masks):
        r = _restriction(top, masks[:i])
        if r is None:
            return ShellingCheck(False, restrictions, i + 1)
        restrictions.append(c._face(r))
    return ShellingCheck(True, restrictions)


def _codim_one_ok(top: int, earlier: Sequence[int]) -> bool:
    """Every maximal intersection with an earlier facet is a ridge of ``top``."""
    k = top.bit_count() - 1
    inter = {top & e for e in earlier}
    for g in inter:
        if g.bit_count() == k:
            continue
        if not any(g & h == g and h.bit_count() == k for h in inter):
            return False
    return any(g.bit_count() == k for g in inter)


def shelling_search(
    c: SimplicialComplex, max_nodes: int | None = None, max_seconds: float | None = None
) -> ShellingVerdict:
    """Backtracking over facet orders; failed sets of placed facets are memoized."""
    _require_pure(c)
    start = time.perf_counter()
    facets = c.facet_masks
    n = len(facets)
    budget = Budget(max_nodes=max_nodes, max_seconds=max_seconds)
    budget.start()
    dead: set[int] = set()
    order: list[int] = []

    def extend(placed: int) -> bool:
        if len(order) == n:
            return True
        if placed in dead:
            return False
        budget.tick()
        earlier = [facets[i] for i in order]
        for j in range(n):
            if placed >> j & 1:
                continue
            if earlier and not _codim_one_ok(facets[j], earlier):
                continue
            if _restriction(facets[j], earlier) is None:
                continue
            order.append(j)
            if extend(placed | 1 << j):
                return True
            order.pop()
        dead.add(placed)
        return False

    try:
        found = extend(0)
    except BudgetExceeded:
        return ShellingVerdict(INCONCLUSIVE, None, budget.nodes, time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    if not found:
        return ShellingVerdict(NOT_SHELLABLE, None, budget.nodes, elapsed)
    shelling = [c._face(facets[j]) for j in order]
    if not verify_shelling(c, shelling):
        raise AssertionError("search produced an invalid shelling")
    return ShellingVerdict(SHELLABLE, shelling, budget.nodes, elapsed)


def partition_from_shelling(c: SimplicialComplex, order: Sequence[Iterable[object]]) -> IntervalPartition:
    chk = verify_shelling(c, order)
    if not chk:
        raise ComplexError(f"not a shelling (fails at step {chk.failed_step})")
    return IntervalPartition([(r, Face(f)) for r, f in zip(chk.restrictions, order)])


def h_vector_of(x: Target) -> tuple[int, ...]:
    return h_vector(f_vector(x))
