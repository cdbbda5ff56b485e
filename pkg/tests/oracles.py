"""Reference checks that share no code path with the package's search routines."""

import itertools

import networkx as nx
from networkx.algorithms import isomorphism


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.order))
    G.add_edges_from(g.edges())
    return G


def nx_contains(host, pattern):
    """Induced subgraph test via networkx's VF2 matcher."""
    if pattern.order > host.order:
        return False
    return isomorphism.GraphMatcher(to_nx(host), to_nx(pattern)).subgraph_is_isomorphic()


def nx_free(host, family):
    return not any(nx_contains(host, h) for h in family)


def without(g, solution, mode):
    G = to_nx(g)
    if mode == "node":
        G.remove_nodes_from(solution)
    else:
        G.remove_edges_from(solution)
    return nx.convert_node_labels_to_integers(G)


def nx_graph_free(G, family):
    for h in family:
        if h.order <= G.number_of_nodes() and isomorphism.GraphMatcher(G, to_nx(h)).subgraph_is_isomorphic():
            return False
    return True


def brute_force_optimum(g, family, mode="node"):
    """Smallest deletion sets by plain ascending-cardinality subset enumeration."""
    universe = list(range(g.order)) if mode == "node" else g.edges()
    for k in range(len(universe) + 1):
        sols = [s for s in itertools.combinations(universe, k)
                if nx_graph_free(without(g, s, mode), family)]
        if sols:
            return k, sorted(sols)
    raise AssertionError("unreachable")


def canonical_embedding_brute(pattern, host):
    """Smallest (sorted image set, image tuple) over every induced embedding."""
    best = None
    for image in itertools.permutations(range(host.order), pattern.order):
        ok = all(pattern.has_edge(i, j) == host.has_edge(image[i], image[j])
                 for i, j in itertools.combinations(range(pattern.order), 2))
        if ok:
            key = (tuple(sorted(image)), image)
            best = key if best is None or key < best else best
    return best


def explicit_isomorphism(g1, g2):
    if g1.order != g2.order:
        return None
    for perm in itertools.permutations(range(g1.order)):
        if all(g1.has_edge(u, v) == g2.has_edge(perm[u], perm[v])
               for u, v in itertools.combinations(range(g1.order), 2)):
            return perm
    return None
