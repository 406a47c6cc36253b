"""Diagrams bounded by k ordered segments.

A bounded diagram is a unitrivalent graph whose legs are attached to k
vertical segments at ordered positions (top to bottom).  The graph is stored
as a diagram whose leg colors are the segment numbers; the attachment orders
live alongside it.  Canonical keys recolor every leg with its (segment,
position) slot, which pins all legs and leaves only internal symmetry to the
usual signed canonicalization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import diagrams
from .diagrams import Diagram, SignedCanonicalKey, canonicalize, canonical_diagram
from .errors import DiagramError
from .lincomb import LinComb

_TAG_BOUNDED = 0x42


@dataclass(frozen=True)
class BoundedDiagram:
    k: int
    graph: Diagram      # legs colored by segment number
    order: tuple        # order[s-1] = leg vertex ids on segment s, top to bottom

    def __post_init__(self):
        if self.graph.k != self.k or len(self.order) != self.k:
            raise DiagramError("segment count mismatch")
        placed = [v for seg in self.order for v in seg]
        expected = sorted(v for v, _ in self.graph.legs())
        if sorted(placed) != expected:
            raise DiagramError("every leg must be placed exactly once")
        for s, seg in enumerate(self.order, start=1):
            for v in seg:
                if self.graph.colors[v] != s:
                    raise DiagramError(f"leg {v} is placed on segment {s}, not its own")

    def degree(self) -> int:
        return self.graph.degree()


def _slot_colored(B: BoundedDiagram) -> Diagram:
    total = sum(len(seg) for seg in B.order)
    kk = B.k * (total + 1)
    colors = list(B.graph.colors)
    for s, seg in enumerate(B.order, start=1):
        for p, v in enumerate(seg):
            colors[v] = p * B.k + s
    return Diagram(kk, tuple(colors), B.graph.incidence)


def canonicalize_bounded(B: BoundedDiagram) -> SignedCanonicalKey:
    inner = canonicalize(_slot_colored(B))
    return SignedCanonicalKey(bytes([_TAG_BOUNDED, B.k]) + inner.key, inner.sign)


def bounded_from_key(key: bytes) -> BoundedDiagram:
    if len(key) < 2 or key[0] != _TAG_BOUNDED:
        raise DiagramError("not a bounded diagram key")
    k = key[1]
    inner = canonical_diagram(key[2:])
    colors, slots = [], {}
    for v, c in enumerate(inner.colors):
        if c is None:
            colors.append(None)
        else:
            s, p = (c - 1) % k + 1, (c - 1) // k
            colors.append(s)
            slots[(s, p)] = v
    order = []
    for s in range(1, k + 1):
        seg, p = [], 0
        while (s, p) in slots:
            seg.append(slots[(s, p)])
            p += 1
        order.append(tuple(seg))
    if len(slots) != sum(len(seg) for seg in order):
        raise DiagramError("gapped leg positions in bounded key")
    graph = Diagram(k, tuple(colors), inner.incidence)
    return BoundedDiagram(k, graph, tuple(order))


def is_boring_bounded(B: BoundedDiagram) -> bool:
    """Two legs of one component on one segment, or a cycle."""
    return diagrams.is_boring(B.graph)


def inject_bounded(B: BoundedDiagram, coeff=1, *, homotopy=True) -> LinComb:
    if homotopy and is_boring_bounded(B):
        return LinComb.zero()
    sk = canonicalize_bounded(B)
    if sk.sign == 0:
        return LinComb.zero()
    return LinComb.term(sk.key, Fraction(coeff) * sk.sign)


def enum_bounded(k: int, d: int) -> list:
    """Sorted canonical keys of degree-d homotopy-legal bounded diagrams."""
    from .bases import enum_forests

    found = set()
    for sk in enum_forests(k, d):
        F = canonical_diagram(sk.key)
        by_color = {s: [] for s in range(1, k + 1)}
        for v, c in F.legs():
            by_color[c].append(v)
        pools = [itertools.permutations(by_color[s]) for s in range(1, k + 1)]
        for order in itertools.product(*pools):
            bk = canonicalize_bounded(BoundedDiagram(k, F, tuple(order)))
            if bk.sign != 0:
                found.add(bk.key)
    return [SignedCanonicalKey(key, 1) for key in sorted(found)]


# -- surgeries ---------------------------------------------------------------


def _replace_segment(B: BoundedDiagram, s: int, seg) -> BoundedDiagram:
    order = list(B.order)
    order[s - 1] = tuple(seg)
    return BoundedDiagram(B.k, B.graph, tuple(order))


def swap_adjacent_legs(B: BoundedDiagram, s: int, p: int) -> BoundedDiagram:
    seg = list(B.order[s - 1])
    seg[p], seg[p + 1] = seg[p + 1], seg[p]
    return _replace_segment(B, s, seg)


def cycle_segment(B: BoundedDiagram, s: int) -> BoundedDiagram:
    seg = B.order[s - 1]
    if not seg:
        raise DiagramError(f"segment {s} has no legs")
    return _replace_segment(B, s, seg[1:] + seg[:1])


def graft_adjacent_legs(B: BoundedDiagram, s: int, p: int) -> BoundedDiagram:
    """The grafted STU term at positions p, p+1 of segment s."""
    seg = B.order[s - 1]
    u, w = seg[p], seg[p + 1]
    graph, idmap, leaf = diagrams.graft_with_map(B.graph, u, w)
    order = []
    for si, old in enumerate(B.order, start=1):
        seg2 = [idmap[v] for v in old if v not in (u, w)]
        if si == s:
            seg2.insert(p, leaf)
        order.append(tuple(seg2))
    return BoundedDiagram(B.k, graph, tuple(order))
