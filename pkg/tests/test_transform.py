from __future__ import annotations

from itertools import combinations, permutations

import pytest

from balanced_cm.complex import ComplexError, euler_characteristic, f_vector, from_facets, simplex
from balanced_cm.constructions import (
    SUBDIVISIONS,
    TAU,
    TAU_PRIME,
    a_complex,
    a_star,
    glued,
    q_complex,
    q_star,
    subdivide_all,
    x_complex,
)
from balanced_cm.transform import (
    VertexMap,
    apply_map,
    barycentric_subdivision,
    codimension,
    cone,
    fresh_vertex,
    glue_copies,
    is_automorphism,
    subdivide_edge,
)

Q_STAR_FACETS = {
    (2, 5, 6, 12), (1, 5, 8, 11), (0, 1, 2, 5), (1, 4, 8, 9), (1, 2, 3, 10),
    (4, 5, 8, 13), (0, 1, 2, 3), (1, 4, 9, 10), (1, 2, 9, 10), (1, 2, 5, 6),
    (0, 2, 5, 12), (4, 5, 7, 13), (1, 4, 5, 8), (1, 2, 6, 9), (1, 3, 4, 7),
    (1, 3, 4, 10), (1, 5, 6, 11), (1, 4, 5, 7), (1, 6, 9, 11), (1, 8, 9, 11),
}


def bases(c):
    return {tuple(sorted(v.base for v in f)) for f in c.facets}


def test_q_star_facets():
    assert bases(q_star()) == Q_STAR_FACETS


def test_subdivide_path():
    path = from_facets([[0, 1], [1, 2]])
    out = subdivide_edge(path, [0, 1], 9)
    assert bases(out) == {(0, 9), (1, 9), (1, 2)}
    with pytest.raises(ComplexError):
        subdivide_edge(path, [0, 2], 9)
    with pytest.raises(ComplexError):
        subdivide_edge(path, [0, 1], 2)


def test_subdivision_splits_every_face_through_the_edge():
    # oracle: split each facet containing {u,v} into two, by definition
    u, v, w = 2, 4, 10
    want = set()
    for f in q_complex().facets:
        s = {x.base for x in f}
        if {u, v} <= s:
            want.add(tuple(sorted((s - {u}) | {w})))
            want.add(tuple(sorted((s - {v}) | {w})))
        else:
            want.add(tuple(sorted(s)))
    assert bases(subdivide_edge(q_complex(), [u, v], w)) == want


def test_a_via_subdivisions_equals_a_star():
    assert subdivide_all(a_complex()) == a_star()


@pytest.mark.parametrize("order", list(permutations(range(4)))[::5])
def test_subdivision_order_does_not_matter(order):
    steps = tuple(SUBDIVISIONS[i] for i in order)
    assert subdivide_all(q_complex(), steps) == q_star()


def test_fresh_vertex_names():
    c = from_facets([[0, 1]])
    w = fresh_vertex(c)
    assert str(w).startswith("s") and w not in c.vertices
    out = subdivide_edge(c, [0, 1], w)
    assert fresh_vertex(out) != w


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_glue_f_identity(n):
    fx, fa = f_vector(x_complex()), f_vector(a_star())
    fa = fa + (0,) * (len(fx) - len(fa))
    assert f_vector(glued(n)) == tuple(n * a + b for a, b in zip(fx, fa))


def test_glue_labels_and_codimension():
    c2 = glued(2)
    tags = {v.copy_tag for v in c2.vertices}
    assert tags == {None, 1, 2}
    assert {v.base for v in c2.vertices if v.copy_tag is None} == {0, 2, 3, 4, 6, 7, 8, 10, 12, 13}
    assert codimension(q_star(), a_star()) == 1
    assert c2.induced([v for v in c2.vertices if v.copy_tag is None]) == a_star()


def test_glue_rejects_non_induced():
    q = simplex([0, 1, 2])
    with pytest.raises(ComplexError):
        glue_copies(q, from_facets([[0, 1], [1, 2], [0, 2]]), 2)
    with pytest.raises(ComplexError):
        glue_copies(q, simplex([0]), 0)


def test_automorphisms():
    assert is_automorphism(q_complex(), TAU)
    assert is_automorphism(a_complex(), TAU)
    assert is_automorphism(q_star(), TAU_PRIME)
    assert is_automorphism(a_star(), TAU_PRIME.restrict(a_star().vertices))
    assert not is_automorphism(q_complex(), VertexMap.from_cycles((0, 1)))
    # tau alone does not fix Q*: 12 and 13 must be swapped too
    assert not is_automorphism(q_star(), TAU)


def test_vertex_map_algebra():
    m = TAU_PRIME
    assert m.compose(m.inverse()) == VertexMap({})
    assert str(TAU) == "(0 7)(2 4)(6 8)"
    with pytest.raises(ComplexError):
        VertexMap({1: 2, 3: 2})


def test_subdivision_commutes_with_tau():
    q = q_complex()
    left = apply_map(subdivide_edge(q, [2, 4], 10), TAU)
    right = subdivide_edge(apply_map(q, TAU), [TAU(2), TAU(4)], 10)
    assert left == right


@pytest.mark.parametrize("c", [q_complex(), q_star(), a_star()], ids=["Q", "Q*", "A*"])
def test_subdivision_preserves_euler(c):
    e = c.edges()[0]
    sub = subdivide_edge(c, e, fresh_vertex(c))
    assert euler_characteristic(f_vector(sub)) == euler_characteristic(f_vector(c))


def chain_oracle(c):
    # chains of nonempty faces, counted by length
    faces = set()
    for f in c.facets:
        for k in range(1, len(f) + 1):
            faces.update(frozenset(s) for s in combinations(f, k))
    counts = [1] + [0] * (c.dim + 1)

    def walk(top, length):
        counts[length] += 1
        for g in faces:
            if top < g:
                walk(g, length + 1)

    # each chain F_1 < ... < F_k is counted once, from its bottom
    for f in faces:
        walk(f, 1)
    return tuple(counts)


@pytest.mark.parametrize(
    "c, f",
    [(simplex([0, 1]), (1, 3, 2)), (simplex([0, 1, 2]), (1, 7, 12, 6))],
    ids=["edge", "triangle"],
)
def test_barycentric_subdivision_f_vectors(c, f):
    sd = barycentric_subdivision(c)
    assert f_vector(sd) == f == chain_oracle(c)


def test_barycentric_subdivision_of_q_star():
    sd = barycentric_subdivision(q_star())
    assert len(sd.vertices) == sum(f_vector(q_star())) - 1 == 131
    assert f_vector(sd) == chain_oracle(q_star())


def test_cone_adds_apex():
    c = cone(a_star())
    assert len(c.facets) == len(a_star().facets)
    assert c.dim == a_star().dim + 1
