"""Colored unitrivalent diagrams and their signed canonical forms.

A diagram is a graph whose vertices are either univalent legs carrying a color
in 1..k or internal trivalent vertices carrying a cyclic order (a rotation) of
their three incident half-edges.  Reversing a rotation negates the diagram, so
a diagram's canonical form is a byte key naming its isomorphism class together
with a sign: +1 or -1 relating the input orientation to the canonical one, or
0 when some automorphism reverses an odd number of rotations (the diagram is
then killed by antisymmetry).

Half-edge convention: edge e owns half-edges 2e and 2e+1, mate(h) = h ^ 1, and
every half-edge is incident to exactly one vertex.  All values are immutable;
operations build new diagrams.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import DiagramError
from .lincomb import LinComb


def mate(h: int) -> int:
    return h ^ 1


@dataclass(frozen=True)
class Diagram:
    k: int
    colors: tuple        # per vertex: leg color in 1..k, or None for internal
    incidence: tuple     # per vertex: tuple of half-edge ids; 1 for legs, 3 cyclic for internal

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise DiagramError("k must be a positive integer")
        if len(self.colors) != len(self.incidence):
            raise DiagramError("colors and incidence lengths differ")
        owner = {}
        for v, (c, inc) in enumerate(zip(self.colors, self.incidence)):
            if c is None:
                if len(inc) != 3:
                    raise DiagramError(f"internal vertex {v} must carry exactly 3 half-edges")
            else:
                if not isinstance(c, int) or not 1 <= c <= self.k:
                    raise DiagramError(f"leg {v} has color {c!r} outside 1..{self.k}")
                if len(inc) != 1:
                    raise DiagramError(f"leg {v} must carry exactly 1 half-edge")
            for h in inc:
                if h in owner:
                    raise DiagramError(f"half-edge {h} attached to two vertices")
                owner[h] = v
        if sorted(owner) != list(range(len(owner))):
            raise DiagramError("half-edge ids must be exactly 0..2E-1")
        for comp in self.components():
            if not any(self.colors[v] is not None for v in comp):
                raise DiagramError("every component needs at least one leg")

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def n_edges(self) -> int:
        return sum(len(inc) for inc in self.incidence) // 2

    @cached_property
    def _owner(self) -> tuple:
        own = [0] * (2 * self.n_edges)
        for v, inc in enumerate(self.incidence):
            for h in inc:
                own[h] = v
        return tuple(own)

    def vertex_of(self, h: int) -> int:
        return self._owner[h]

    def edge_ends(self, e: int) -> tuple:
        return self._owner[2 * e], self._owner[2 * e + 1]

    def is_leg(self, v: int) -> bool:
        return self.colors[v] is not None

    def legs(self):
        """(vertex, color) pairs in vertex order."""
        return [(v, c) for v, c in enumerate(self.colors) if c is not None]

    def components(self) -> tuple:
        """Vertex sets of connected components, each sorted, ordered by minimum."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(self.n_edges):
            u, v = self._owner[2 * e], self._owner[2 * e + 1]
            parent[find(u)] = find(v)
        groups = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))

    def degree(self) -> int:
        return self.n // 2


# -- constructors ---------------------------------------------------------


def build(k, vertices, edges, rotations=None) -> Diagram:
    """Assemble a diagram from vertex colors and edges given as vertex pairs.

    vertices: sequence of colors, None marking internal vertices.
    edges: sequence of (u, v) vertex indices; edge i owns half-edges 2i, 2i+1
    with 2i at u.  rotations, when given, maps an internal vertex to a cyclic
    triple of edge indices; a self-loop lists its edge twice and its two
    half-edges are taken in first/second occurrence order.  Without rotations
    the incident half-edges are taken in ascending order.
    """
    n = len(vertices)
    incident = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise DiagramError(f"edge {i} references a missing vertex")
        incident[u].append(2 * i)
        incident[v].append(2 * i + 1)
    if rotations:
        for v, rot in rotations.items():
            if vertices[v] is not None:
                raise DiagramError(f"rotation given for leg {v}")
            have = sorted(h // 2 for h in incident[v])
            if sorted(rot) != have:
                raise DiagramError(f"rotation at vertex {v} does not match its incident edges")
            halves, used = [], set()
            for e in rot:
                a, b = edges[e]
                if a == b:      # self-loop: halves in occurrence order
                    h = 2 * e if 2 * e not in used else 2 * e + 1
                else:
                    h = 2 * e if a == v else 2 * e + 1
                used.add(h)
                halves.append(h)
            incident[v] = halves
    return Diagram(k, tuple(vertices), tuple(tuple(inc) for inc in incident))


def empty(k) -> Diagram:
    return Diagram(k, (), ())


def segment(a, b, k) -> Diagram:
    """A single edge with legs colored a and b."""
    return build(k, [a, b], [(0, 1)])


def tripod(a, b, c, k) -> Diagram:
    """One internal vertex with legs a, b, c in rotation order."""
    return build(k, [a, b, c, None], [(3, 0), (3, 1), (3, 2)], {3: (0, 1, 2)})


def caterpillar(colors, k) -> Diagram:
    """A spine of internal vertices with the given leaf colors hung in order."""
    m = len(colors)
    if m < 2:
        raise DiagramError("a tree needs at least two leaves")
    if m == 2:
        return segment(colors[0], colors[1], k)
    verts = list(colors) + [None] * (m - 2)
    spine = list(range(m, 2 * m - 2))
    edges = [(spine[0], 0), (spine[0], 1)]
    for i, t in enumerate(spine[1:], start=1):
        edges.append((spine[i - 1], t))
        edges.append((t, i + 1))
    edges.append((spine[-1], m - 1))
    return build(k, verts, edges)


def disjoint_union(a: Diagram, b: Diagram) -> Diagram:
    if a.k != b.k:
        raise DiagramError("disjoint union needs equal k")
    shift = 2 * a.n_edges
    inc = a.incidence + tuple(tuple(h + shift for h in t) for t in b.incidence)
    return Diagram(a.k, a.colors + b.colors, inc)


def graft_with_map(E: Diagram, u: int, w: int):
    """Graft two same-colored legs at a new internal vertex with a fresh leg.

    Legs u and w are deleted, their stems meet a new trivalent vertex whose
    rotation is (stem of u, stem of w, new leg), and the third edge ends in a
    new leg of the same color.  Returns the new diagram, the old-to-new vertex
    map for the surviving vertices, and the new leaf's id.
    """
    if u == w or E.colors[u] is None or E.colors[w] is None:
        raise DiagramError("graft needs two distinct legs")
    color = E.colors[u]
    if color != E.colors[w]:
        raise DiagramError("graft needs legs of one color")
    idmap = {}
    colors, incidence = [], []
    for v in range(E.n):
        if v in (u, w):
            continue
        idmap[v] = len(colors)
        colors.append(E.colors[v])
        incidence.append(E.incidence[v])
    stem_u, stem_w = E.incidence[u][0], E.incidence[w][0]
    fresh = 2 * E.n_edges
    leaf = len(colors) + 1
    colors += [None, color]
    incidence += [(stem_u, stem_w, fresh), (fresh + 1,)]
    return Diagram(E.k, tuple(colors), tuple(incidence)), idmap, leaf


# -- predicates -----------------------------------------------------------


def first_betti(D: Diagram, component) -> int:
    """Rank of the first homology of one component, E - V + 1."""
    comp = tuple(sorted(component))
    if comp not in D.components():
        raise DiagramError("not a component of this diagram")
    cset = set(comp)
    e = sum(1 for i in range(D.n_edges) if D.edge_ends(i)[0] in cset)
    return e - len(comp) + 1


def is_boring(D: Diagram) -> bool:
    """True when some component repeats a leg color or has a cycle."""
    for comp in D.components():
        cols = [D.colors[v] for v in comp if D.colors[v] is not None]
        if len(cols) != len(set(cols)):
            return True
        if first_betti(D, comp) > 0:
            return True
    return False


# -- canonical form --------------------------------------------------------


@dataclass(frozen=True)
class SignedCanonicalKey:
    key: bytes
    sign: int

    @property
    def hex(self) -> str:
        return self.key.hex()


_TAG_UNITRI = 0x55


def _refined_cells(D: Diagram):
    """Ordered partition of vertices by iterated neighborhood refinement.

    Cell order is isomorphism invariant: ranks are assigned by sorting the
    signature values themselves, never by first encounter.
    """
    n = D.n
    if n == 0:
        return []
    labels = [0 if c is None else c for c in D.colors]
    order = sorted(set(labels))
    rank = [order.index(l) for l in labels]
    while True:
        sigs = [
            (rank[v], tuple(sorted(rank[D.vertex_of(mate(h))] for h in D.incidence[v])))
            for v in range(n)
        ]
        order = sorted(set(sigs))
        pos = {s: i for i, s in enumerate(order)}
        new_rank = [pos[sigs[v]] for v in range(n)]
        stable = len(order) == len(set(rank))
        rank = new_rank
        if stable:
            break
    cells = {}
    for v in range(n):
        cells.setdefault(rank[v], []).append(v)
    return [cells[r] for r in sorted(cells)]


def _edge_tuple(D: Diagram, pi):
    pairs = []
    for e in range(D.n_edges):
        u, v = D.edge_ends(e)
        a, b = pi[u], pi[v]
        pairs.append((a, b) if a <= b else (b, a))
    pairs.sort()
    return tuple(pairs)


def _rotation_parity(a, b, c) -> int:
    """+1 when the cyclic order (a, b, c) is the ascending class."""
    x, y, z = sorted((a, b, c))
    return 1 if (a, b, c) in ((x, y, z), (y, z, x), (z, x, y)) else -1


def _signs_for_labeling(D: Diagram, pi, slot_groups):
    """Yield orientation parities over all edge tie-orders and loop sides."""
    base_ids = {}
    tie_choices = []
    loop_edges = []
    for slots, edges in slot_groups:
        if len(edges) == 1:
            e, s = edges[0], slots[0]
            u, v = D.edge_ends(e)
            if u == v:
                loop_edges.append((e, s))
            elif pi[u] < pi[v]:
                base_ids[2 * e], base_ids[2 * e + 1] = 2 * s, 2 * s + 1
            else:
                base_ids[2 * e], base_ids[2 * e + 1] = 2 * s + 1, 2 * s
        else:
            tie_choices.append((slots, edges))

    internal = [v for v in range(D.n) if D.colors[v] is None]

    def emit(ids):
        sign = 1
        for v in internal:
            a, b, c = (ids[h] for h in D.incidence[v])
            sign *= _rotation_parity(a, b, c)
        return sign

    def assign(idx, ids):
        if idx < len(tie_choices):
            slots, edges = tie_choices[idx]
            for perm in itertools.permutations(edges):
                nxt = dict(ids)
                more_loops = []
                for e, s in zip(perm, slots):
                    u, v = D.edge_ends(e)
                    if u == v:
                        more_loops.append((e, s))
                    elif pi[u] < pi[v]:
                        nxt[2 * e], nxt[2 * e + 1] = 2 * s, 2 * s + 1
                    else:
                        nxt[2 * e], nxt[2 * e + 1] = 2 * s + 1, 2 * s
                yield from assign_loops(more_loops, nxt, idx + 1)
        else:
            yield emit(ids)

    def assign_loops(pending, ids, idx):
        if not pending:
            yield from assign(idx, ids)
            return
        (e, s), rest = pending[0], pending[1:]
        for flip in (False, True):
            nxt = dict(ids)
            if flip:
                nxt[2 * e], nxt[2 * e + 1] = 2 * s + 1, 2 * s
            else:
                nxt[2 * e], nxt[2 * e + 1] = 2 * s, 2 * s + 1
            yield from assign_loops(rest, nxt, idx)

    yield from assign_loops(loop_edges, base_ids, 0)


def _slot_groups(D: Diagram, pi, pairs):
    """Group edges by their canonical endpoint pair, with their slot ranges."""
    by_pair = {}
    for e in range(D.n_edges):
        u, v = D.edge_ends(e)
        a, b = pi[u], pi[v]
        by_pair.setdefault((a, b) if a <= b else (b, a), []).append(e)
    groups = []
    slot = 0
    seen = set()
    for pair in pairs:
        if pair in seen:
            continue
        seen.add(pair)
        edges = by_pair[pair]
        groups.append((list(range(slot, slot + len(edges))), edges))
        slot += len(edges)
    return groups


@lru_cache(maxsize=None)
def canonicalize(D: Diagram) -> SignedCanonicalKey:
    """Canonical byte key and orientation sign of a diagram."""
    cells = _refined_cells(D)
    best = None
    best_pis = []
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        pi = [0] * D.n
        pos = 0
        for cell in choice:
            for v in cell:
                pi[v] = pos
                pos += 1
        pairs = _edge_tuple(D, pi)
        if best is None or pairs < best:
            best, best_pis = pairs, [pi]
        elif pairs == best:
            best_pis.append(pi)

    desc = [0] * D.n
    if best_pis:
        pi0 = best_pis[0]
        for v in range(D.n):
            desc[pi0[v]] = D.colors[v] or 0

    values = [_TAG_UNITRI, D.k, D.n, D.n_edges or 0] + desc
    for a, b in best or ():
        values.extend((a, b))
    if any(x < 0 or x > 255 for x in values):
        raise DiagramError("diagram too large to encode")
    key = bytes(values)

    signs = set()
    for pi in best_pis:
        for s in _signs_for_labeling(D, pi, _slot_groups(D, pi, best)):
            signs.add(s)
            if len(signs) == 2:
                return SignedCanonicalKey(key, 0)
    return SignedCanonicalKey(key, signs.pop() if signs else 1)


def canonical_diagram(key: bytes) -> Diagram:
    """Rebuild the canonical representative encoded by a key."""
    if len(key) < 4 or key[0] != _TAG_UNITRI:
        raise DiagramError("not a unitrivalent diagram key")
    k, n, m = key[1], key[2], key[3]
    if len(key) != 4 + n + 2 * m:
        raise DiagramError("truncated diagram key")
    colors = tuple(c if c else None for c in key[4:4 + n])
    edges = [(key[4 + n + 2 * i], key[5 + n + 2 * i]) for i in range(m)]
    return build(k, colors, edges)


def inject(D: Diagram, coeff=1, *, homotopy=True) -> LinComb:
    """Canonical image of a diagram: 0 when antisymmetry-null or, in homotopy
    mode, boring; otherwise its signed canonical term."""
    if homotopy and is_boring(D):
        return LinComb.zero()
    sk = canonicalize(D)
    if sk.sign == 0:
        return LinComb.zero()
    return LinComb.term(sk.key, Fraction(coeff) * sk.sign)
