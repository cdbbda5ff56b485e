"""Machine checks for e-extensions, unique optima, family distinguishability and bit budgets."""

from __future__ import annotations

import hashlib
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .advice import ceil_log2
from .engine import OnlineInstance, Trace, edge, offline_optimum, run
from .graph import Graph, contains_induced
from .obstruction import ObstructionSet


class FamilyCertificationError(AssertionError):
    pass


def verify_e_extension(ext, h: Graph) -> bool:
    """(E.1) ``h`` is induced in ``U``; (E.2) not after removing ``e``; (E.3) still after removing any other edge."""
    U, e = ext.U, edge(*ext.e)
    if not U.has_edge(*e):
        return False
    if not contains_induced(U, h):
        return False
    if contains_induced(U.remove_edges([e]), h):
        return False
    return all(contains_induced(U.remove_edges([f]), h) for f in U.edges() if f != e)


def verify_unique_optimum(instance: OnlineInstance, f: ObstructionSet, expected: Iterable) -> bool:
    opt = offline_optimum(instance.graph, f, instance.mode)
    return opt.solutions == (tuple(sorted(expected)),)


def audit_bits(trace: Trace, expected_budget: int) -> bool:
    return trace.total_bits == expected_budget


# -- distinguishability ----------------------------------------------------------

def prefix_digest(g: Graph, t: int) -> str:
    """Label-exact digest of the graph revealed after ``t`` steps."""
    low = (1 << t) - 1
    text = ",".join(format(g.adj[v] & low, "x") for v in range(t))
    return hashlib.blake2b(text.encode(), digest_size=8).hexdigest()


@dataclass(frozen=True)
class MemberAnalysis:
    optimum_size: int
    solutions: tuple
    sequence: tuple  # ((step, prefix digest, deletions), ...)


def analyse_member(instance: OnlineInstance, f: ObstructionSet) -> MemberAnalysis:
    """Forced action sequence of the lazy strategy following the smallest optimum."""
    from .algorithms import LazyOptimal

    opt = offline_optimum(instance.graph, f, instance.mode)
    trace = run(instance, f, LazyOptimal(opt.first))
    seq = tuple(
        (s.step, prefix_digest(instance.graph, s.step), tuple(e.deleted for e in s.events))
        for s in trace.steps
    )
    return MemberAnalysis(opt.size, opt.solutions, seq)


@dataclass
class DistinguishabilityReport:
    family_size: int
    leaves: int
    advice_leaves: int
    lower_bound_bits: int
    advice_lower_bound_bits: int
    unique_optima: bool
    distinct_optima: int
    optimum_sizes: list[int]
    divergence_steps: list[int] = field(default_factory=list)

    @property
    def divergence_depth(self) -> tuple[int, int] | None:
        if not self.divergence_steps:
            return None
        return min(self.divergence_steps), max(self.divergence_steps)

    def as_dict(self) -> dict:
        return asdict(self)


def _trie(sequences: Sequence[tuple]) -> dict:
    root: dict = {}
    for seq in sequences:
        node = root
        for key in seq:
            node = node.setdefault(key, {})
    return root


def _count_leaves(node: dict) -> int:
    return 1 if not node else sum(_count_leaves(c) for c in node.values())


def _advice_leaves(node: dict, divergences: list[int]) -> int:
    """Members that must get different advice below ``node``.

    Children seeing the same next reveal but acting differently need distinct
    advice (sum); children that already see different input can share it (max).
    """
    if not node:
        return 1
    groups: dict = defaultdict(list)
    for (step, digest, action), child in node.items():
        groups[(step, digest)].append(child)
    best = 0
    for (step, _), children in groups.items():
        if len(children) > 1:
            divergences.append(step)
        best = max(best, sum(_advice_leaves(c, divergences) for c in children))
    return best


def verify_family(family: Sequence[OnlineInstance], f: ObstructionSet,
                  require_unique: bool = True, jobs: int = 1) -> DistinguishabilityReport:
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            analyses = list(pool.map(analyse_member, family, [f] * len(family)))
    else:
        analyses = [analyse_member(inst, f) for inst in family]

    unique = all(len(a.solutions) == 1 for a in analyses)
    for inst, a in zip(family, analyses):
        if require_unique and len(a.solutions) != 1:
            raise FamilyCertificationError(
                f"member {inst.choice} has {len(a.solutions)} optimal solutions")
        if inst.expected_optimum is not None and tuple(sorted(inst.expected_optimum)) not in a.solutions:
            raise FamilyCertificationError(
                f"member {inst.choice}: expected optimum {sorted(inst.expected_optimum)} is not optimal")

    trie = _trie([a.sequence for a in analyses])
    leaves = _count_leaves(trie)
    divergences: list[int] = []
    advice = _advice_leaves(trie, divergences)
    return DistinguishabilityReport(
        family_size=len(family),
        leaves=leaves,
        advice_leaves=advice,
        lower_bound_bits=ceil_log2(leaves),
        advice_lower_bound_bits=ceil_log2(advice),
        unique_optima=unique,
        distinct_optima=len({a.solutions[0] for a in analyses}),
        optimum_sizes=sorted({a.optimum_size for a in analyses}),
        divergence_steps=sorted(divergences),
    )
