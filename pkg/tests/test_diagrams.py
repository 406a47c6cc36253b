"""Unit tests for colored unitrivalent diagrams and signed canonicalization.

Core claims:
    - build() validates half-edge bookkeeping and rejects malformed input
    - canonical keys are invariant under vertex/edge relabeling
    - the canonical sign flips under a single rotation transposition
    - diagrams with an order-reversing automorphism canonicalize to sign 0
    - boring detection sees repeated leg colors and positive first Betti number
    - degree is additive under disjoint union
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from linkhom.diagrams import (
    Diagram,
    build,
    canonical_diagram,
    canonicalize,
    caterpillar,
    disjoint_union,
    empty,
    first_betti,
    inject,
    is_boring,
    mate,
    segment,
    tripod,
)
from linkhom.errors import DiagramError


# -- Helpers -----------------------------------------------------------------

def _tadpole(k=2):
    """One leg, one trivalent vertex, one self-loop."""
    return build(k, [1, None], [(0, 1), (1, 1)], {1: (0, 1, 1)})


def _h_tree(a, b, c, d, k):
    """Four-leaf tree with legs a,b grouped against c,d across one edge."""
    return build(
        k,
        [a, b, c, d, None, None],
        [(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)],
        {4: (0, 1, 2), 5: (2, 3, 4)},
    )


def _relabel(D, rng):
    """Rebuild D under a random vertex permutation and edge shuffle."""
    perm = list(range(D.n))
    rng.shuffle(perm)
    edges = [(perm[D.vertex_of(2 * e)], perm[D.vertex_of(2 * e + 1)])
             for e in range(D.n_edges)]
    eperm = list(range(D.n_edges))
    rng.shuffle(eperm)
    new_edges = [edges[e] for e in eperm]
    inv = {old: new for new, old in enumerate(eperm)}
    vertices = [None] * D.n
    for v in range(D.n):
        vertices[perm[v]] = D.colors[v]
    rotations = {}
    for v in range(D.n):
        if D.colors[v] is None:
            rotations[perm[v]] = tuple(inv[h // 2] for h in D.incidence[v])
    return build(D.k, vertices, new_edges, rotations)


# -- Construction and validation ----------------------------------------------

def test_mate_involution():
    for h in range(10):
        assert mate(mate(h)) == h
        assert mate(h) != h


def test_segment_shape():
    D = segment(1, 2, 3)
    assert D.n == 2
    assert D.n_edges == 1
    assert sorted(c for _, c in D.legs()) == [1, 2]
    assert D.degree() == 1


def test_tripod_shape():
    D = tripod(1, 2, 3, 3)
    assert D.n == 4
    assert D.n_edges == 3
    assert sorted(c for _, c in D.legs()) == [1, 2, 3]
    assert D.degree() == 2


def test_build_rejects_bad_color():
    with pytest.raises(DiagramError):
        build(2, [3, 1], [(0, 1)])


def test_build_rejects_wrong_valence():
    # univalent vertex with two edges
    with pytest.raises(DiagramError):
        build(2, [1, 2, None], [(0, 2), (0, 2), (1, 2)], {2: (0, 1, 2)})


def test_build_default_rotation_is_edge_order():
    D = build(3, [1, 2, 3, None], [(0, 3), (1, 3), (2, 3)])
    E = build(3, [1, 2, 3, None], [(0, 3), (1, 3), (2, 3)], {3: (0, 1, 2)})
    assert D.incidence == E.incidence


def test_build_rejects_bad_rotation_content():
    with pytest.raises(DiagramError):
        build(3, [1, 2, 3, None], [(0, 3), (1, 3), (2, 3)], {3: (0, 1, 1)})


def test_degree_additive():
    D = disjoint_union(segment(1, 2, 3), tripod(1, 2, 3, 3))
    assert D.degree() == segment(1, 2, 3).degree() + tripod(1, 2, 3, 3).degree()
    assert len(D.components()) == 2


# -- Canonicalization ----------------------------------------------------------

def test_canonical_key_invariant_under_relabeling():
    rng = random.Random(7)
    samples = [
        segment(1, 2, 4),
        tripod(1, 2, 3, 4),
        _h_tree(1, 2, 3, 4, 4),
        disjoint_union(tripod(1, 2, 3, 4), segment(1, 4, 4)),
    ]
    for D in samples:
        key = canonicalize(D)
        for _ in range(20):
            E = _relabel(D, rng)
            assert canonicalize(E).key == key.key
            assert canonicalize(E).sign == key.sign


def test_rotation_swap_flips_sign():
    base = tripod(1, 2, 3, 3)
    swapped = build(
        3, [1, 2, 3, None], [(0, 3), (1, 3), (2, 3)], {3: (1, 0, 2)}
    )
    a, b = canonicalize(base), canonicalize(swapped)
    assert a.key == b.key
    assert a.sign == -b.sign != 0


def test_h_tree_rotation_swap_flips_sign():
    base = _h_tree(1, 2, 3, 4, 4)
    swapped = build(
        4,
        [1, 2, 3, 4, None, None],
        [(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)],
        {4: (1, 0, 2), 5: (2, 3, 4)},
    )
    a, b = canonicalize(base), canonicalize(swapped)
    assert a.key == b.key
    assert a.sign == -b.sign != 0


def test_antisymmetric_diagram_has_sign_zero():
    # the tadpole admits an automorphism reversing one rotation
    assert canonicalize(_tadpole()).sign == 0
    assert inject(_tadpole(), homotopy=False).is_zero()


def test_canonical_diagram_round_trip():
    D = disjoint_union(tripod(1, 2, 3, 4), segment(2, 4, 4))
    key = canonicalize(D)
    C = canonical_diagram(key.key)
    assert canonicalize(C).key == key.key


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_relabeling_never_changes_class(seed):
    rng = random.Random(seed)
    D = _h_tree(1, 2, 3, 4, 4)
    E = _relabel(D, rng)
    ck_d, ck_e = canonicalize(D), canonicalize(E)
    assert ck_d.key == ck_e.key
    assert abs(ck_e.sign) == 1


# -- Homotopy grading ----------------------------------------------------------

def test_boring_repeated_leg_color():
    assert is_boring(segment(1, 1, 2))
    assert is_boring(tripod(1, 2, 1, 3))
    assert not is_boring(tripod(1, 2, 3, 3))


def test_boring_positive_betti():
    T = _tadpole()
    assert first_betti(T, T.components()[0]) == 1
    assert is_boring(T)
    P = tripod(1, 2, 3, 3)
    assert first_betti(P, P.components()[0]) == 0


def test_boring_is_per_component():
    # a good component does not rescue a bad one
    D = disjoint_union(segment(1, 2, 3), segment(3, 3, 3))
    assert is_boring(D)


def test_inject_drops_boring_in_homotopy_mode():
    D = segment(1, 1, 2)
    assert inject(D).is_zero()
    assert not inject(D, homotopy=False).is_zero()


def test_caterpillar_colors():
    D = caterpillar((1, 2, 3, 4), 4)
    assert sorted(c for _, c in D.legs()) == [1, 2, 3, 4]
    assert D.degree() == 3
