"""Obstruction sets and family-level computations over them."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import (
    ENUMERATION_CAP,
    CapExceeded,
    Graph,
    canonical_form,
    clique_number,
    complement,
    contains_induced,
    enumerate_graphs,
    is_free,
    isolated_vertices,
    join_decomposition,
    connected_components,
    universal_vertices,
)


class RedundantMemberWarning(UserWarning):
    pass


def _is_edgeless(g: Graph) -> bool:
    return g.edge_count == 0


def _is_clique(g: Graph) -> bool:
    return g.edge_count == g.order * (g.order - 1) // 2


@dataclass(frozen=True)
class ObstructionSet:
    members: tuple[Graph, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("obstruction set must be nonempty")
        for i, a in enumerate(self.members):
            for j, b in enumerate(self.members):
                if i != j and a.order <= b.order and contains_induced(b, a):
                    raise ValueError(f"member {j} contains member {i}; use reduce()")

    def __iter__(self) -> Iterator[Graph]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> Graph:
        return self.members[i]

    @property
    def max_order(self) -> int:
        return max(h.order for h in self.members)

    @property
    def max_edges(self) -> int:
        return max(h.edge_count for h in self.members)

    @property
    def has_clique(self) -> bool:
        return any(_is_clique(h) for h in self.members)

    @property
    def has_independent_set(self) -> bool:
        return any(_is_edgeless(h) for h in self.members)

    @property
    def valid_for_edge_mode(self) -> bool:
        return not self.has_independent_set

    def complemented(self) -> ObstructionSet:
        return ObstructionSet(tuple(complement(h) for h in self.members))


def reduce(family: Iterable[Graph], warn: bool = True) -> ObstructionSet:
    """Drop every member that contains another member as an induced subgraph.

    Isomorphic duplicates keep their first occurrence.
    """
    family = list(family)
    if not family:
        raise ValueError("cannot reduce an empty family")
    kept: list[Graph] = []
    for i, g in enumerate(family):
        redundant = False
        for j, h in enumerate(family):
            if i == j or h.order > g.order or not contains_induced(g, h):
                continue
            # mutual containment means isomorphic; keep the earlier one
            if h.order < g.order or j < i:
                redundant = True
                break
        if redundant:
            if warn:
                warnings.warn(f"member {i} ({g!r}) is redundant", RedundantMemberWarning, stacklevel=2)
        else:
            kept.append(g)
    return ObstructionSet(tuple(kept))


@dataclass(frozen=True)
class RamseyCertificate:
    R: int
    witness: Graph


def ramsey_bound(f: ObstructionSet, cap: int = ENUMERATION_CAP) -> RamseyCertificate | None:
    """Smallest order ``R`` at which no graph is F-free, searched up to ``cap``.

    Returns ``None`` when ``R > cap`` or when ``f`` lacks a clique or an
    independent set, in which case ``R`` does not exist.
    """
    if not (f.has_clique and f.has_independent_set):
        return None
    witness = enumerate_graphs(0)[0]
    for n in range(1, cap + 1):
        free = [g for g in enumerate_graphs(n, cap=cap) if is_free(g, f)]
        if not free:
            return RamseyCertificate(n, witness)
        witness = free[0]
    return None


@dataclass(frozen=True)
class RemainderGraph:
    D: Graph
    mode: str
    c: int
    has_universal: bool
    has_isolated: bool

    @property
    def usable(self) -> bool:
        """Whether ``D`` meets the side condition of its lower-bound construction."""
        return not self.has_universal if self.mode == "max" else not self.has_isolated


def extremal_remainder(f: ObstructionSet, cert: RamseyCertificate, mode: str = "max",
                       cap: int = ENUMERATION_CAP) -> RemainderGraph:
    """F-free graph of order ``R-1`` with the most (``max``) or fewest (``min``) edges.

    Ties go to the lowest canonical form.
    """
    if mode not in ("max", "min"):
        raise ValueError(f"mode must be 'max' or 'min', not {mode!r}")
    if cert.R - 1 > cap:
        raise CapExceeded(f"order {cert.R - 1} exceeds cap {cap}")
    candidates = [g for g in enumerate_graphs(cert.R - 1, cap=cap) if is_free(g, f)]
    if not candidates:
        raise ValueError("certificate inconsistent: no F-free graph of order R-1")
    sign = -1 if mode == "max" else 1
    d = min(candidates, key=lambda g: (sign * g.edge_count, canonical_form(g, cap)))
    return RemainderGraph(
        D=d,
        mode=mode,
        c=clique_number(d),
        has_universal=bool(universal_vertices(d)),
        has_isolated=bool(isolated_vertices(d)),
    )


def _proper_induced(g: Graph, h: Graph) -> bool:
    return g.order < h.order and contains_induced(h, g)


def not_sub_h_union_family(h: Graph, cap: int = ENUMERATION_CAP) -> list[Graph]:
    """Minimal graphs whose up-closure is exactly the set of non-sub-``h``-unions."""
    if h.order > cap:
        raise CapExceeded(f"order {h.order} exceeds cap {cap}")
    pool = []
    for n in range(1, h.order):
        pool += [g for g in enumerate_graphs(n, connected_only=True, cap=cap) if not contains_induced(h, g)]
    pool += enumerate_graphs(h.order, connected_only=True, cap=cap)
    return list(reduce(pool, warn=False).members)


def not_sub_h_join_family(h: Graph, cap: int = ENUMERATION_CAP) -> list[Graph]:
    return [complement(g) for g in not_sub_h_union_family(complement(h), cap)]


def is_sub_h_union(g: Graph, h: Graph) -> bool:
    return all(_proper_induced(g.induced(part), h) for part in connected_components(g))


def is_sub_h_join(g: Graph, h: Graph) -> bool:
    return all(_proper_induced(g.induced(part), h) for part in join_decomposition(g))
