"""Unit tests for relator construction: graft, star, IHX, STU, link1, 1T, 4T.

Core claims:
    - grafting is antisymmetric in its two legs
    - the star relator from a split of tripod(1,2,3) + m copies of
      segment(1,2) is exactly +-(1+m) times the original diagram
    - IHX relators over the four-leaf trees have rank 1, leaving the
      two-dimensional space a Lyndon count predicts
    - 4T relators at degree 2 vanish identically and never exceed 4 terms
    - 1T relators are supported on diagrams with an isolated chord
    - STU and link1 relators stay inside their degree's bounded basis
"""

from fractions import Fraction
from math import factorial

import pytest

from linkhom.bases import enum_forests
from linkhom.bounded import enum_bounded
from linkhom.chords import chord_key, enum_chord, has_isolated_chord, chord_from_key
from linkhom.diagrams import (
    canonicalize,
    disjoint_union,
    empty,
    inject,
    segment,
    tripod,
)
from linkhom.errors import DiagramError
from linkhom.qlinalg import relator_matrix
from linkhom.relators import (
    count_segments,
    four_t_relators,
    graft,
    ihx_relators,
    link1_relators,
    one_t_relators,
    star_relator,
    stu_relators,
)


# -- Helpers -----------------------------------------------------------------

def _union(parts, k):
    out = empty(k)
    for p in parts:
        out = disjoint_union(out, p)
    return out


def _color1_leg_next_to(E, neighbor_color):
    """The color-1 leg whose component also carries neighbor_color."""
    for v, c in E.legs():
        if c != 1:
            continue
        comp = next(cmp_ for cmp_ in E.components() if v in cmp_)
        if any(E.colors[w] == neighbor_color for w in comp):
            return v
    raise AssertionError("no such leg")


def _lyndon_count(n):
    """Permutations of 0..n-1 strictly minimal among their rotations."""
    from itertools import permutations

    count = 0
    for p in permutations(range(n)):
        rots = [p[i:] + p[:i] for i in range(n)]
        if all(p < r for r in rots[1:]):
            count += 1
    return count


# -- Graft ---------------------------------------------------------------------

def test_graft_antisymmetric():
    E = _union([segment(1, 3, 3), segment(1, 2, 3)], 3)
    u, w = [v for v, c in E.legs() if c == 1]
    assert inject(graft(E, u, w)) == -inject(graft(E, w, u))


def test_graft_of_two_segments_is_tripod():
    E = _union([segment(1, 3, 3), segment(1, 2, 3)], 3)
    u, w = [v for v, c in E.legs() if c == 1]
    G = graft(E, u, w)
    assert canonicalize(G).key == canonicalize(tripod(1, 2, 3, 3)).key


def test_graft_requires_matching_leg_colors():
    E = _union([segment(1, 3, 3), segment(1, 2, 3)], 3)
    u = next(v for v, c in E.legs() if c == 2)
    w = next(v for v, c in E.legs() if c == 3)
    with pytest.raises(DiagramError):
        graft(E, u, w)


def test_graft_preserves_degree():
    E = _union([segment(1, 3, 3), segment(1, 2, 3)], 3)
    u, w = [v for v, c in E.legs() if c == 1]
    assert graft(E, u, w).degree() == E.degree()


# -- Star relator -----------------------------------------------------------------

@pytest.mark.parametrize("m", [0, 1, 2])
def test_star_relator_coefficient_identity(m):
    # split tripod(1,2,3) |_| m seg(1,2) at the color-1 leaf and close it up:
    # every graft lands on the same class, so the relator is +-(1+m) times it
    E = _union([segment(1, 3, 3)] + [segment(1, 2, 3)] * (1 + m), 3)
    u = _color1_leg_next_to(E, 3)
    r = star_relator(E, u)
    D = _union([tripod(1, 2, 3, 3)] + [segment(1, 2, 3)] * m, 3)
    expected = canonicalize(D)
    terms = list(r.element.items())
    assert len(terms) == 1
    key, coeff = terms[0]
    assert key == expected.key
    assert abs(coeff) == 1 + m


def test_star_relator_needs_a_leg():
    E = tripod(1, 2, 3, 3)
    trivalent = next(v for v in range(E.n) if E.colors[v] is None)
    with pytest.raises(DiagramError):
        star_relator(E, trivalent)


def test_star_relator_drops_boring_grafts():
    # grafting two seg(1,2) copies yields a repeated-color component: zero
    E = _union([segment(1, 2, 3)] * 2, 3)
    u = next(v for v, c in E.legs() if c == 1)
    r = star_relator(E, u)
    assert r.element.is_zero()


# -- IHX ----------------------------------------------------------------------------

def test_ihx_rank_on_four_leaf_trees():
    basis = enum_forests(4, 3)
    relators = ihx_relators(basis)
    assert len(relators) == 3
    m = relator_matrix([key.key for key in basis], relators)
    assert m.rank() == 1
    # trees types (2m-5)!! = 3 minus rank 1 leaves the Lyndon count (n-1)!
    assert 3 - m.rank() == _lyndon_count(3) == factorial(2)


def test_ihx_vacuous_without_internal_edges():
    assert ihx_relators(enum_forests(3, 3)) == []
    assert ihx_relators(enum_forests(2, 2)) == []


# -- Chord relators ---------------------------------------------------------------------

def test_4t_relators_at_degree_2_vanish():
    for r in four_t_relators(enum_chord(2)):
        assert r.element.is_zero()


@pytest.mark.parametrize("d", [3, 4])
def test_4t_relators_have_at_most_four_unit_terms(d):
    basis_keys = {chord_key(c) for c in enum_chord(d)}
    for r in four_t_relators(enum_chord(d)):
        terms = list(r.element.items())
        assert len(terms) <= 4
        for key, coeff in terms:
            assert key in basis_keys
            assert abs(coeff) <= 2   # merged same-class hops can double up


def test_1t_relators_mark_isolated_chords():
    basis = enum_chord(3)
    marked = {chord_key(c) for c in basis if has_isolated_chord(c)}
    relators = one_t_relators(basis)
    assert {next(iter(r.element.keys())) for r in relators} == marked
    for r in relators:
        terms = list(r.element.items())
        assert len(terms) == 1
        assert terms[0][1] == Fraction(1)


# -- Bounded relators -----------------------------------------------------------------------

@pytest.mark.parametrize("k,d", [(2, 2), (3, 2)])
def test_stu_and_link1_stay_in_basis(k, d):
    basis = enum_bounded(k, d)
    keys = {key.key for key in basis}
    for r in stu_relators(basis) + link1_relators(basis):
        for key, _ in r.element.items():
            assert key in keys


def test_stu_relators_nonempty():
    assert len(stu_relators(enum_bounded(2, 2))) > 0
    assert len(link1_relators(enum_bounded(2, 2))) > 0


# -- Segment counting ---------------------------------------------------------------------------

def test_count_segments():
    D = _union([segment(1, 2, 3)] * 2 + [segment(1, 3, 3)], 3)
    assert count_segments(D, 1, 2) == 2
    assert count_segments(D, 2, 1) == 2
    assert count_segments(D, 1, 3) == 1
    assert count_segments(D, 2, 3) == 0
    T = _union([tripod(1, 2, 3, 3), segment(1, 2, 3)], 3)
    # the tripod is not a segment
    assert count_segments(T, 1, 2) == 1
