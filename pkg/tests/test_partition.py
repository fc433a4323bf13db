from __future__ import annotations

import io as _io
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import Bounds, LinearConstraint, milp

from balanced_cm.complex import ComplexError, Face, f_vector, from_facets, h_vector, relative
from balanced_cm.constructions import TAU_PRIME, a_star, glued, q_complex, q_star, x_complex
from balanced_cm.exact_cover import Budget, BudgetExceeded, ExactCover, brute_force_covers
from balanced_cm.partition import (
    INCONCLUSIVE,
    NOT_PARTITIONABLE,
    NOT_SHELLABLE,
    PARTITIONABLE,
    SHELLABLE,
    IntervalPartition,
    decide_partitionable,
    encode,
    h_from_partition,
    interval_face_count,
    partition_from_shelling,
    shelling_search,
    verified_h,
    verify_partition,
    verify_shelling,
)
from balanced_cm.transform import apply_map, glue_copies


def closure(facets):
    out = set()
    for f in facets:
        for k in range(len(f) + 1):
            out.update(frozenset(s) for s in combinations(f, k))
    return out


def labels(c):
    return [frozenset(str(v) for v in f) for f in c.facets]


def milp_partitionable(facets, removed=()):
    """ILP oracle: choose one interval [R, F] per facet covering each face once."""
    facets = [frozenset(f) for f in facets]
    gone = closure(removed) if removed else set()
    faces = sorted(closure(facets) - gone, key=lambda s: (len(s), sorted(s)))
    col = {f: i for i, f in enumerate(faces)}
    pairs = []
    for j, top in enumerate(facets):
        for k in range(len(top) + 1):
            for r in combinations(sorted(top), k):
                r = frozenset(r)
                if r not in gone:
                    pairs.append((r, j))
    a = np.zeros((len(faces) + len(facets), len(pairs)))
    for v, (r, j) in enumerate(pairs):
        a[len(faces) + j, v] = 1
        top = facets[j]
        for f in col:
            if r <= f <= top:
                a[col[f], v] = 1
    res = milp(
        np.zeros(len(pairs)),
        constraints=LinearConstraint(a, 1, 1),
        integrality=np.ones(len(pairs)),
        bounds=Bounds(0, 1),
    )
    return res.status == 0


def shellable_oracle(facets):
    """Brute force over orders using the pure codim-1 intersection definition."""
    facets = [frozenset(f) for f in facets]
    d = len(facets[0])
    for order in permutations(facets):
        ok = True
        for i in range(1, len(order)):
            inter = {order[i] & g for g in order[:i]}
            maximal = [g for g in inter if not any(g < h for h in inter)]
            if any(len(g) != d - 1 for g in maximal):
                ok = False
                break
        if ok:
            return True
    return False


# -- exact cover --------------------------------------------------------------

def test_exact_cover_small():
    rows = [0b0011, 0b1100, 0b0110, 0b1001, 0b1111]
    covers = brute_force_covers(4, rows)
    assert sorted(map(sorted, covers)) == [[0, 1], [2, 3], [4]]
    sol = ExactCover(4, rows).solve()
    assert sorted(sol) in [[0, 1], [2, 3], [4]]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, (1 << n) - 1), max_size=10))))
def test_exact_cover_matches_brute_force(inst):
    n, rows = inst
    oracle = brute_force_covers(n, rows)
    for split in (True, False):
        for backjump in (True, False):
            sol = ExactCover(n, rows).solve(split=split, backjump=backjump)
            assert (sol is not None) == bool(oracle)
            if sol is not None:
                acc = 0
                for r in sol:
                    assert not acc & rows[r]
                    acc |= rows[r]
                assert acc == (1 << n) - 1


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n - 1),
                        st.lists(st.integers(1, (1 << n) - 1), max_size=9))))
def test_secondary_patterns_match_brute_force(inst):
    n, n_sec, rows = inst
    sec = ((1 << n) - 1) ^ ((1 << (n - n_sec)) - 1)
    # as in Algorithm X, a row touching no primary column is never chosen
    prim = ((1 << n) - 1) & ~sec
    want = set()
    for pick in range(1 << len(rows)):
        if any(pick >> r & 1 and not rows[r] & prim for r in range(len(rows))):
            continue
        acc, ok = 0, True
        for r in range(len(rows)):
            if pick >> r & 1:
                if acc & rows[r]:
                    ok = False
                    break
                acc |= rows[r]
        if ok and acc & ~sec == ((1 << n) - 1) & ~sec:
            want.add(acc & sec)
    assert ExactCover(n, rows, secondary=sec).patterns() == want


def test_budget_exceeded():
    b = Budget(max_nodes=3)
    b.start()
    with pytest.raises(BudgetExceeded):
        for _ in range(10):
            b.tick()


# -- partitionability ---------------------------------------------------------

def test_x_not_partitionable():
    v = decide_partitionable(x_complex())
    assert v.status == NOT_PARTITIONABLE
    assert not milp_partitionable(labels(q_star()), labels(a_star()))


def test_x_verdict_is_invariant_under_tau_prime():
    qs = apply_map(q_star(), TAU_PRIME)
    ast = apply_map(a_star(), TAU_PRIME.restrict(a_star().vertices))
    assert qs == q_star() and ast == a_star()
    assert decide_partitionable(relative(qs, ast)).status == NOT_PARTITIONABLE


def test_q_star_partition_verifies_with_h():
    v = decide_partitionable(q_star())
    assert v.status == PARTITIONABLE
    assert verified_h(q_star(), v.certificate) == h_vector(f_vector(q_star()))
    assert interval_face_count(v.certificate) == sum(f_vector(q_star()))


def test_c2_partitionable_with_certificate():
    c2 = glued(2)
    v = decide_partitionable(c2)
    assert v.status == PARTITIONABLE
    assert verify_partition(c2, v.certificate)
    assert h_from_partition(v.certificate, 4) == h_vector(f_vector(c2))
    assert interval_face_count(v.certificate) == sum(f_vector(c2))
    assert milp_partitionable(labels(c2))


def test_c3_not_partitionable():
    assert decide_partitionable(glued(3)).status == NOT_PARTITIONABLE
    assert not milp_partitionable(labels(glued(3)))


def test_budget_gives_inconclusive():
    v = decide_partitionable(glued(3), max_nodes=50, decompose=False)
    assert v.status == INCONCLUSIVE and v.certificate is None


def test_partition_requires_pure():
    with pytest.raises(ComplexError):
        decide_partitionable(from_facets([[0, 1, 2], [2, 3]]))


small_pure = st.integers(2, 3).flatmap(
    lambda d: st.lists(st.sets(st.integers(0, 6), min_size=d, max_size=d), min_size=1, max_size=7)
)


@settings(max_examples=80, deadline=None)
@given(small_pure)
def test_random_partitionability_matches_milp(facets):
    c = from_facets([sorted(f) for f in facets])
    v = decide_partitionable(c)
    assert (v.status == PARTITIONABLE) == milp_partitionable(labels(c))
    if v:
        assert verify_partition(c, v.certificate)
        assert h_from_partition(v.certificate, c.dim + 1) == h_vector(f_vector(c))


@settings(max_examples=40, deadline=None)
@given(small_pure, st.integers(2, 3), st.integers(1, 4))
def test_block_decomposition_agrees_with_plain_search(facets, n, k):
    q = from_facets([sorted(f) for f in facets])
    shared = q.vertices[:k]
    a = q.induced(shared)
    c = glue_copies(q, a, n)
    for x in (c, relative(c, a)) if a.facets and len(a.face_masks) < len(c.face_masks) else (c,):
        try:
            plain = decide_partitionable(x, decompose=False).status
        except ComplexError:
            continue
        assert decide_partitionable(x).status == plain


# -- certificates -------------------------------------------------------------

def test_verify_partition_violations():
    tri = from_facets([[0, 1, 2]])
    ok = IntervalPartition([(Face([]), Face([0, 1, 2]))])
    assert verify_partition(tri, ok)
    cases = {
        "not in complex": [(Face([3]), Face([0, 1, 2]))],
        "not a facet": [(Face([]), Face([0, 1]))],
        "not covered": [(Face([0]), Face([0, 1, 2]))],
    }
    for word, iv in cases.items():
        chk = verify_partition(tri, IntervalPartition(iv))
        assert not chk and word in chk.violation

    sq = from_facets([[0, 1, 2], [1, 2, 3]])
    chk = verify_partition(sq, IntervalPartition([(Face([3]), Face([0, 1, 2]))]))
    assert "not contained" in chk.violation

    two = from_facets([[0, 1], [1, 2]])
    dup = IntervalPartition([(Face([]), Face([0, 1])), (Face([]), Face([1, 2]))])
    assert "share face" in verify_partition(two, dup).violation
    twice = IntervalPartition([(Face([]), Face([0, 1])), (Face([1]), Face([0, 1]))])
    assert "two intervals" in verify_partition(two, twice).violation
    missing = IntervalPartition([(Face([]), Face([0, 1]))])
    assert "facets without" in verify_partition(two, missing).violation

    x = relative(two, from_facets([[1]]))
    bad = IntervalPartition([(Face([1]), Face([0, 1])), (Face([2]), Face([1, 2]))])
    assert "removed part" in verify_partition(x, bad).violation
    good = IntervalPartition([(Face([0]), Face([0, 1])), (Face([2]), Face([1, 2]))])
    assert verify_partition(x, good)


def test_certificate_text_round_trip():
    v = decide_partitionable(q_star())
    text = v.certificate.to_text()
    assert "{} | " in text
    back = IntervalPartition.from_text(text)
    assert verify_partition(q_star(), back)
    with pytest.raises(ComplexError):
        IntervalPartition.from_text("1 2 3\n")


def test_exact_cover_dump_matches_rows():
    enc = encode(x_complex())
    buf = _io.StringIO()
    enc.write(buf)
    lines = [ln for ln in buf.getvalue().splitlines() if not ln.startswith("#")]
    assert len(lines) == len(enc.rows)
    assert all(len(ln.split()[0]) == enc.n_columns for ln in lines)
    # 96 faces of X plus 20 facet columns
    assert enc.n_columns == 116


# -- shellability -------------------------------------------------------------

@pytest.mark.parametrize("c, h", [(q_star(), (1, 10, 9, 0, 0)), (a_star(), (1, 7, 0, 0))], ids=["Q*", "A*"])
def test_shellings_induce_verified_partitions(c, h):
    v = shelling_search(c)
    assert v.status == SHELLABLE
    part = partition_from_shelling(c, v.order)
    assert verify_partition(c, part)
    assert h_from_partition(part, c.dim + 1) == h_vector(f_vector(c)) == h


def test_q_is_shellable():
    # computed finding; Q is only a subcomplex of a non-shellable ball
    v = shelling_search(q_complex())
    assert v.status == SHELLABLE and verify_shelling(q_complex(), v.order)


def test_disjoint_triangles_fail_at_step_two():
    c = from_facets([[0, 1, 2], [3, 4, 5]])
    chk = verify_shelling(c, [[0, 1, 2], [3, 4, 5]])
    assert not chk and chk.failed_step == 2
    assert shelling_search(c).status == NOT_SHELLABLE


def test_bowtie_not_shellable():
    c = from_facets([[0, 1, 2], [2, 3, 4]])
    assert shelling_search(c).status == NOT_SHELLABLE
    assert not shellable_oracle(labels(c))


def test_verify_shelling_rejects_non_permutation():
    with pytest.raises(ComplexError):
        verify_shelling(a_star(), [[0, 2, 3]])


def test_shelling_budget():
    assert shelling_search(glued(3), max_nodes=5).status in (INCONCLUSIVE, SHELLABLE)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 3).flatmap(
    lambda d: st.lists(st.sets(st.integers(0, 5), min_size=d, max_size=d), min_size=1, max_size=5)))
def test_random_shellability_matches_oracle(facets):
    c = from_facets([sorted(f) for f in facets])
    v = shelling_search(c)
    assert (v.status == SHELLABLE) == shellable_oracle(labels(c))
    if v:
        assert verify_partition(c, partition_from_shelling(c, v.order))
