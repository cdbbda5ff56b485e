"""Generators for the lower-bound instance families and reductions.

Every family member's graph is labeled in reveal order. Members of one family
share their reveal prefix up to the first point where the adversary's choice
matters.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import reduce as fold

from .engine import EDGE, NODE, OnlineInstance, edge
from .graph import (
    Graph,
    canonical_graph,
    clique_number,
    complement,
    disjoint_union,
    empty,
    glue,
    is_connected,
    isolated_vertices,
    join,
    max_cliques_lex,
    universal_vertices,
)
from .obstruction import ObstructionSet, RemainderGraph


class GadgetError(ValueError):
    pass


def _shift(solution, k: int) -> frozenset:
    return frozenset(x + k if isinstance(x, int) else (x[0] + k, x[1] + k) for x in solution)


# -- node deletion, single forbidden graph -------------------------------------

def glue_gadget(h: Graph, v: int) -> Graph:
    """Two copies of ``h`` sharing vertex ``v``; the first copy is revealed first."""
    return glue(h, v, h, v)


def join_gadget(h: Graph, v: int) -> Graph:
    """Two copies of ``h`` sharing vertex ``v`` and joined everywhere else."""
    n = h.order
    g = glue(h, v, h, v)
    first = [w for w in range(n) if w != v]
    second = range(n, 2 * n - 1)
    return Graph.from_edges(g.order, g.edges() + [(a, b) for a in first for b in second])


def connected_lb_family(h: Graph, m: int) -> list[OnlineInstance]:
    """``|h|^m`` disjoint unions of glue gadgets, one glue vertex choice per gadget."""
    if h.order < 2 or not is_connected(h):
        raise GadgetError("connected_lb_family needs a connected graph on at least 2 vertices")
    family = []
    size = 2 * h.order - 1
    for choice in itertools.product(range(h.order), repeat=m):
        g = fold(disjoint_union, (glue_gadget(h, v) for v in choice), empty(0))
        opt = frozenset(j * size + v for j, v in enumerate(choice))
        family.append(OnlineInstance(g, NODE, "connected", choice, opt))
    return family


def disconnected_lb_family(h: Graph, m: int) -> list[OnlineInstance]:
    """``|h|^m`` joins of join gadgets; the complement-dual of the connected family."""
    if h.order < 2 or is_connected(h):
        raise GadgetError("disconnected_lb_family needs a disconnected graph")
    family = []
    size = 2 * h.order - 1
    for choice in itertools.product(range(h.order), repeat=m):
        g = fold(join, (join_gadget(h, v) for v in choice), empty(0))
        opt = frozenset(j * size + v for j, v in enumerate(choice))
        family.append(OnlineInstance(g, NODE, "disconnected", choice, opt))
    return family


def duality_transform(instance: OnlineInstance, f: ObstructionSet) -> tuple[OnlineInstance, ObstructionSet]:
    """Complement the instance (same labels and reveal order) and the family."""
    if instance.mode != NODE:
        raise GadgetError("complement duality only holds for node deletion")
    dual = OnlineInstance(complement(instance.graph), NODE, instance.name, instance.choice,
                          instance.expected_optimum)
    return dual, f.complemented()


# -- edge deletion ---------------------------------------------------------------

@dataclass(frozen=True)
class EExtension:
    U: Graph
    e: tuple[int, int]
    embedding: tuple[int, ...]


def e_extension(h: Graph, e: tuple[int, int], check: bool = True) -> EExtension:
    """Two copies of ``h`` sharing the endpoints of ``e``, joined everywhere else.

    The first copy keeps the labels of ``h``; the second copy's other vertices
    follow in ascending order.
    """
    from .verifier import verify_e_extension

    if is_connected(h):
        raise GadgetError("e_extension needs a disconnected graph")
    if isolated_vertices(h):
        raise GadgetError("e_extension needs a graph without isolated vertices")
    x, y = edge(*e)
    if not h.has_edge(x, y):
        raise GadgetError(f"{(x, y)} is not an edge of h")
    n = h.order
    where = {x: x, y: y}
    rest = [w for w in range(n) if w not in (x, y)]
    for i, w in enumerate(rest):
        where[w] = n + i
    edges = set(h.edges())
    edges |= {edge(where[a], where[b]) for a, b in h.edges()}
    edges |= {(a, n + i) for a in rest for i in range(len(rest))}
    ext = EExtension(Graph.from_edges(2 * n - 2, sorted(edges)), (x, y), tuple(range(n)))
    if check and not verify_e_extension(ext, h):
        raise AssertionError(f"e-extension of {h!r} at {(x, y)} violates E.1-E.3")
    return ext


def edge_lb_family(h: Graph, m: int) -> list[OnlineInstance]:
    """``||h||^m`` joins of e-extensions, phase ``i`` revealing a copy of ``h`` first."""
    edges = h.edges()
    exts = {e: e_extension(h, e) for e in edges}
    size = 2 * h.order - 2
    family = []
    for choice in itertools.product(edges, repeat=m):
        g = fold(join, (exts[e].U for e in choice), empty(0))
        opt = frozenset((j * size + x, j * size + y) for j, (x, y) in enumerate(choice))
        family.append(OnlineInstance(g, EDGE, "edge", choice, opt))
    return family


def strip_isolated(h: Graph) -> Graph:
    return h.induced(v for v in range(h.order) if h.adj[v])


def isolated_prefix(h: Graph, inner: OnlineInstance) -> OnlineInstance:
    """Reveal the isolated vertices of ``h`` first, then ``inner`` shifted by their count."""
    k = len(isolated_vertices(h))
    if k == 0:
        raise GadgetError("h has no isolated vertices")
    expected = None if inner.expected_optimum is None else _shift(inner.expected_optimum, k)
    return OnlineInstance(disjoint_union(empty(k), inner.graph), inner.mode,
                          "isolated-" + (inner.name or "prefix"), inner.choice, expected)


def isolated_prefix_family(h: Graph, m: int) -> list[OnlineInstance]:
    return [isolated_prefix(h, inst) for inst in edge_lb_family(strip_isolated(h), m)]


# -- logarithmic lower bounds ----------------------------------------------------

def _largest_clique_member(f: ObstructionSet) -> int:
    sizes = [h.order for h in f if h.edge_count == h.order * (h.order - 1) // 2]
    if not sizes:
        raise GadgetError("F contains no clique")
    return max(sizes)


def clique_join_instance(f: ObstructionSet, D: RemainderGraph, opt: int, u_set) -> OnlineInstance:
    """Reveal ``K_{opt+c}``, then complete the labels ``u_set`` to a copy of ``D``.

    The final graph is ``K_opt`` joined with ``D``. ``u_set`` holds ``c``
    0-based labels of the clique.
    """
    u_set = sorted(u_set)
    c = D.c
    if len(u_set) != c:
        raise GadgetError(f"u_set must have {c} labels, got {len(u_set)}")
    if opt <= _largest_clique_member(f):
        raise GadgetError("opt must exceed the largest clique in F")
    N = opt + c
    if len(set(u_set)) != c or not all(0 <= u < N for u in u_set):
        raise GadgetError(f"u_set must be {c} distinct labels in 0..{N - 1}")
    d = canonical_graph(D.D)
    clique = max_cliques_lex(d)
    rest = [w for w in range(d.order) if w not in clique]
    where = {w: u for w, u in zip(clique, u_set)}
    where.update({w: N + j for j, w in enumerate(rest)})
    keep = [u for u in range(N) if u not in u_set]
    edges = {(a, b) for a, b in itertools.combinations(range(N), 2)}
    edges |= {(a, N + j) for a in keep for j in range(len(rest))}
    edges |= {edge(where[a], where[b]) for a, b in d.edges()}
    g = Graph.from_edges(N + len(rest), sorted(edges))
    return OnlineInstance(g, NODE, "clique-join", tuple(u_set), frozenset(keep))


def clique_join_family(f: ObstructionSet, D: RemainderGraph, opt: int) -> list[OnlineInstance]:
    return [clique_join_instance(f, D, opt, u) for u in itertools.combinations(range(opt + D.c), D.c)]


def _dual_remainder(D: RemainderGraph) -> RemainderGraph:
    d = complement(D.D)
    return RemainderGraph(d, "max" if D.mode == "min" else "min", clique_number(d),
                          bool(universal_vertices(d)), bool(isolated_vertices(d)))


def independent_join_instance(f: ObstructionSet, D: RemainderGraph, opt: int, u_set) -> OnlineInstance:
    """Reveal an independent set of ``opt + c'`` vertices, then complete ``u_set`` to ``D``.

    ``D`` is the min-edge remainder and ``c'`` its independence number; built
    as the complement of the clique version for the complemented family.
    """
    inst = clique_join_instance(f.complemented(), _dual_remainder(D), opt, u_set)
    dual, _ = duality_transform(inst, f.complemented())
    return OnlineInstance(dual.graph, NODE, "independent-join", dual.choice, dual.expected_optimum)


def independent_join_family(f: ObstructionSet, D: RemainderGraph, opt: int) -> list[OnlineInstance]:
    c = _dual_remainder(D).c
    return [independent_join_instance(f, D, opt, u) for u in itertools.combinations(range(opt + c), c)]


# -- random instances --------------------------------------------------------------

def random_graph(rng: random.Random, n: int, p: float = 0.5, max_edges: int | None = None) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    if max_edges is not None and len(pairs) > max_edges:
        pairs = sorted(rng.sample(pairs, max_edges))
    return Graph.from_edges(n, pairs)


def random_instance(rng: random.Random, n: int, mode: str = NODE, p: float = 0.5,
                    max_edges: int | None = None) -> OnlineInstance:
    return OnlineInstance(random_graph(rng, n, p, max_edges), mode, "random")


FAMILY_KINDS = ("connected", "disconnected", "edge", "isolated", "clique-join", "independent-join")
