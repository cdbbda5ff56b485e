"""Immutable small graphs and the combinatorial primitives built on them.

Vertices are the labels ``0..order-1``; adjacency is stored as one bitmask per
vertex. Every operation returns a new graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

ENUMERATION_CAP = 8


class CapExceeded(ValueError):
    """Raised when an exhaustive routine is asked to go beyond its size cap."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    order: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.order:
            raise ValueError("adjacency length does not match order")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in _bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"edge {v}-{w} is not symmetric")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(order, tuple(adj))

    def __repr__(self):
        return f"Graph({self.order}, {self.edges()})"

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges as normalized ``(low, high)`` pairs in lexicographic order."""
        return [(u, v) for u in range(self.order) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(_popcount(row) for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [_popcount(row) for row in self.adj]

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Subgraph induced by ``vertices``, relabeled to ``0..k-1`` in ascending label order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        return Graph.from_edges(
            len(vs), [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        )

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = list(self.adj)
        for u, v in edges:
            if not self.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge")
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.order, tuple(adj))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph whose vertex ``i`` is the old vertex ``perm[i]``."""
        where = {old: new for new, old in enumerate(perm)}
        if sorted(where) != list(range(self.order)):
            raise ValueError("perm is not a permutation of the vertex labels")
        return Graph.from_edges(self.order, [(where[u], where[v]) for u, v in self.edges()])


# -- constructors -----------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# -- operators --------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """``g1`` keeps its labels, ``g2`` is shifted by ``|g1|``."""
    shift = g1.order
    return Graph(g1.order + g2.order, g1.adj + tuple(row << shift for row in g2.adj))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    n1, n2 = g1.order, g2.order
    left = ((1 << n2) - 1) << n1
    right = (1 << n1) - 1
    return Graph(
        n1 + n2,
        tuple(row | left for row in g1.adj) + tuple(row << n1 | right for row in g2.adj),
    )


def glue(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Identify ``v1`` of ``g1`` with ``v2`` of ``g2``.

    The merged vertex keeps label ``v1``; the other vertices of ``g2`` follow
    ``g1`` in ascending order of their labels in ``g2``.
    """
    if not 0 <= v1 < g1.order:
        raise ValueError(f"glue vertex {v1} out of range for order {g1.order}")
    if not 0 <= v2 < g2.order:
        raise ValueError(f"glue vertex {v2} out of range for order {g2.order}")
    where = {v2: v1}
    for i, w in enumerate(w for w in range(g2.order) if w != v2):
        where[w] = g1.order + i
    edges = g1.edges() + [(where[u], where[v]) for u, v in g2.edges()]
    return Graph.from_edges(g1.order + g2.order - 1, edges)


# -- induced subgraph isomorphism --------------------------------------------

@dataclass(frozen=True)
class IsoMapping:
    """Induced embedding: pattern vertex ``i`` maps to host vertex ``image[i]``."""

    pattern_order: int
    image: tuple[int, ...]

    @property
    def vertex_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.image))


def _match(p_adj: Sequence[int], combo: Sequence[int], host_adj: Sequence[int]) -> tuple[int, ...] | None:
    """Lexicographically smallest bijection pattern -> combo preserving (non-)adjacency."""
    k = len(combo)
    image = [0] * k
    used = [False] * k

    def extend(i: int) -> bool:
        if i == k:
            return True
        prow = p_adj[i]
        for j, c in enumerate(combo):
            if used[j]:
                continue
            crow = host_adj[c]
            if all((prow >> q & 1) == (crow >> image[q] & 1) for q in range(i)):
                used[j] = True
                image[i] = c
                if extend(i + 1):
                    return True
                used[j] = False
        return False

    return tuple(image) if extend(0) else None


def find_embedding(pattern: Graph, host_adj: Sequence[int], alive: int) -> tuple[int, ...] | None:
    """Canonical induced embedding of ``pattern`` among the ``alive`` host vertices.

    ``host_adj`` are neighbour bitmasks (they may still mention dead vertices).
    The image vertex set is the lexicographically smallest one, and among
    embeddings onto that set the mapping is lexicographically smallest.
    """
    k = pattern.order
    if k == 0:
        return ()
    verts = list(_bits(alive))
    if k > len(verts):
        return None
    p_adj = pattern.adj
    p_edges = pattern.edge_count
    p_degrees = sorted(pattern.degrees())
    for combo in itertools.combinations(verts, k):
        mask = 0
        for c in combo:
            mask |= 1 << c
        degs = [_popcount(host_adj[c] & mask) for c in combo]
        if sum(degs) != 2 * p_edges or sorted(degs) != p_degrees:
            continue
        image = _match(p_adj, combo, host_adj)
        if image is not None:
            return image
    return None


def find_induced(h: Graph, g: Graph) -> IsoMapping | None:
    image = find_embedding(h, g.adj, g.vertex_mask)
    return None if image is None else IsoMapping(h.order, image)


def contains_induced(g: Graph, h: Graph) -> bool:
    return find_embedding(h, g.adj, g.vertex_mask) is not None


def is_free(g: Graph, family: Iterable[Graph]) -> bool:
    """True iff ``g`` has no induced copy of any member of ``family``."""
    return not any(contains_induced(g, h) for h in family)


# -- components -------------------------------------------------------------

def _components(adj: Sequence[int], alive: int) -> list[list[int]]:
    parts = []
    rest = alive
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= adj[v]
            grow &= alive & ~comp
            comp |= grow
            frontier = grow
        parts.append(list(_bits(comp)))
        rest &= ~comp
    return parts


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by smallest label."""
    return _components(g.adj, g.vertex_mask)


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def join_decomposition(g: Graph) -> list[list[int]]:
    """Vertex sets of the join components: the components of the complement."""
    return connected_components(complement(g))


def is_join_graph(g: Graph) -> bool:
    return len(join_decomposition(g)) > 1


def isolated_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.order) if not g.adj[v]]


def universal_vertices(g: Graph) -> list[int]:
    full = g.vertex_mask
    return [v for v in range(g.order) if g.adj[v] | 1 << v == full]


def clique_number(g: Graph) -> int:
    best = 0

    def grow(size: int, candidates: int):
        nonlocal best
        if size > best:
            best = size
        if size + _popcount(candidates) <= best:
            return
        while candidates:
            v = (candidates & -candidates).bit_length() - 1
            candidates &= ~(1 << v)
            grow(size + 1, candidates & g.adj[v])

    grow(0, g.vertex_mask)
    return best


def max_cliques_lex(g: Graph) -> tuple[int, ...]:
    """Lexicographically smallest maximum clique."""
    omega = clique_number(g)
    for combo in itertools.combinations(range(g.order), omega):
        if all(g.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
            return combo
    raise AssertionError("unreachable")


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


# -- canonical form and enumeration ------------------------------------------

def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    """Colour refinement to a stable partition with isomorphism-invariant colour names."""
    n = len(colors)
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in _bits(adj[v]))))
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == len(set(colors)):
            return new
        colors = new


def _matrix_key(adj: Sequence[int], perm: Sequence[int]) -> int:
    # column-major upper triangle, earliest pair most significant
    key = 0
    for i in range(1, len(perm)):
        row = adj[perm[i]]
        for j in range(i):
            key = key << 1 | (row >> perm[j] & 1)
    return key


def canonical_labeling(g: Graph, cap: int = ENUMERATION_CAP) -> tuple[tuple[int, int], tuple[int, ...]]:
    """Return ``(key, perm)`` where ``g.relabel(perm)`` is the canonical representative.

    The key is the minimum adjacency bit-matrix over the leaves of an
    individualisation-refinement search (degree partition, then colour
    refinement); twin vertices are branched on only once.
    """
    if g.order > cap:
        raise CapExceeded(f"order {g.order} exceeds canonical-form cap {cap}")
    n = g.order
    adj = g.adj
    if n == 0:
        return (0, 0), ()
    best: list = [None, None]

    def is_twin(u: int, v: int) -> bool:
        return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)

    def search(colors: list[int]):
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            perm = sorted(range(n), key=colors.__getitem__)
            key = _matrix_key(adj, perm)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, tuple(perm)
            return
        tried: list[int] = []
        for v in target:
            if any(is_twin(v, t) for t in tried):
                continue
            tried.append(v)
            split = [2 * c + (0 if w == v else 1) for w, c in enumerate(colors)]
            search(_refine(adj, split))

    search(_refine(adj, g.degrees()))
    return (n, best[0]), best[1]


def canonical_form(g: Graph, cap: int = ENUMERATION_CAP) -> tuple[int, int]:
    return canonical_labeling(g, cap)[0]


def canonical_graph(g: Graph, cap: int = ENUMERATION_CAP) -> Graph:
    return g.relabel(canonical_labeling(g, cap)[1])


def is_isomorphic(g1: Graph, g2: Graph, cap: int = ENUMERATION_CAP) -> bool:
    if g1.order != g2.order or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1, cap) == canonical_form(g2, cap)


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (empty(0),)
    found: dict[tuple[int, int], Graph] = {}
    for base in _all_graphs(n - 1):
        for nbrs in range(1 << (n - 1)):
            adj = [row | (nbrs >> v & 1) << (n - 1) for v, row in enumerate(base.adj)]
            g = Graph(n, tuple(adj) + (nbrs,))
            key, perm = canonical_labeling(g, cap=n)
            if key not in found:
                found[key] = g.relabel(perm)
    return tuple(found[k] for k in sorted(found))


def enumerate_graphs(n: int, connected_only: bool = False, cap: int = ENUMERATION_CAP) -> list[Graph]:
    """One canonical representative per isomorphism class of order ``n``, by ascending key."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > cap:
        raise CapExceeded(f"order {n} exceeds enumeration cap {cap}")
    graphs = _all_graphs(n)
    if connected_only:
        return [g for g in graphs if g.order > 0 and is_connected(g)]
    return list(graphs)
