"""Delayed online deletion: reveal, detect, settle, record.

Vertex ``i`` of an instance graph is revealed at step ``i + 1``. After each
reveal the engine repeatedly detects the canonical forbidden induced subgraph
and asks the strategy for one deletion, until the current graph is F-free.
Deletions are irrevocable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .advice import AdviceTape
from .graph import CapExceeded, Graph, _bits, find_embedding
from .obstruction import ObstructionSet

NODE = "node"
EDGE = "edge"
MODES = (NODE, EDGE)

Element = Union[int, tuple[int, int]]


class EngineError(RuntimeError):
    """The strategy broke the online protocol."""


def check_mode(f: ObstructionSet, mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == EDGE and not f.valid_for_edge_mode:
        raise ValueError("edge mode needs an obstruction set without edgeless members")


def edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class OnlineInstance:
    graph: Graph
    mode: str = NODE
    name: str = ""
    choice: tuple = ()
    expected_optimum: frozenset | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def length(self) -> int:
        return self.graph.order


@dataclass(frozen=True)
class Violation:
    member: int
    W: tuple[int, ...]
    mapping: tuple[int, ...]


def detect(adj: Sequence[int], alive: int, f: ObstructionSet) -> Violation | None:
    """First member (in member order) with an induced copy, at its canonical embedding."""
    for i, h in enumerate(f):
        image = find_embedding(h, adj, alive)
        if image is not None:
            return Violation(i, tuple(sorted(image)), image)
    return None


def edges_within(adj: Sequence[int], vertices: Iterable[int]) -> list[tuple[int, int]]:
    vs = sorted(vertices)
    mask = 0
    for v in vs:
        mask |= 1 << v
    return [(u, w) for u in vs for w in _bits(adj[u] & mask) if w > u]


class EngineState:
    """What an online strategy may see: the revealed prefix and its own deletions."""

    def __init__(self, mode: str):
        self.mode = mode
        self.step = 0
        self.revealed_adj: list[int] = []
        self.adj: list[int] = []
        self.alive = 0
        self.deleted: list[Element] = []
        self._deleted_set: set = set()

    def reveal(self, row: int) -> int:
        v = self.step
        self.step += 1
        self.revealed_adj.append(row)
        for w in _bits(row):
            self.revealed_adj[w] |= 1 << v
        live_row = row if self.mode == EDGE else row & self.alive
        self.adj.append(live_row)
        for w in _bits(live_row):
            self.adj[w] |= 1 << v
        self.alive |= 1 << v
        return v

    def is_deletable(self, x) -> bool:
        if self.mode == NODE:
            return isinstance(x, int) and 0 <= x < self.step and bool(self.alive >> x & 1)
        if not (isinstance(x, tuple) and len(x) == 2):
            return False
        u, v = x
        return 0 <= u < v < self.step and bool(self.adj[u] >> v & 1)

    def delete(self, x: Element) -> None:
        if x in self._deleted_set:
            raise EngineError(f"{x!r} was already deleted")
        if not self.is_deletable(x):
            raise EngineError(f"{x!r} is not a deletable {self.mode} of the revealed graph")
        if self.mode == NODE:
            self.alive &= ~(1 << x)
            for w in _bits(self.adj[x]):
                self.adj[w] &= ~(1 << x)
            self.adj[x] = 0
        else:
            u, v = x
            self.adj[u] &= ~(1 << v)
            self.adj[v] &= ~(1 << u)
        self.deleted.append(x)
        self._deleted_set.add(x)

    def elements(self, W: Iterable[int]) -> list[Element]:
        """Deletable elements inside ``W``: its vertices, or its current edges."""
        if self.mode == NODE:
            return sorted(W)
        return edges_within(self.adj, W)

    def current_graph(self) -> Graph:
        """Revealed graph minus deletions (deleted vertices stay as isolated labels)."""
        return Graph(self.step, tuple(self.adj))


class Strategy:
    """Online deletion strategy. One object per run."""

    name = "strategy"

    def start(self, tape: AdviceTape | None, f: ObstructionSet, mode: str) -> None:
        self.tape = tape
        self.f = f
        self.mode = mode

    def choose(self, state: EngineState, violation: Violation) -> Element:
        raise NotImplementedError


@dataclass
class Event:
    member: int
    W: tuple[int, ...]
    deleted: Element


@dataclass
class StepRecord:
    step: int
    revealed: int
    events: list[Event] = field(default_factory=list)
    bits: int = 0


@dataclass
class Trace:
    mode: str
    strategy: str
    setup_bits: int = 0
    steps: list[StepRecord] = field(default_factory=list)

    @property
    def deleted(self) -> list[Element]:
        return [e.deleted for s in self.steps for e in s.events]

    @property
    def size(self) -> int:
        return sum(len(s.events) for s in self.steps)

    @property
    def total_bits(self) -> int:
        return self.setup_bits + sum(s.bits for s in self.steps)

    def deletions_by_step(self) -> list[tuple[int, tuple]]:
        return [(s.step, tuple(e.deleted for e in s.events)) for s in self.steps if s.events]

    def to_records(self) -> list[dict]:
        records = [{"type": "start", "mode": self.mode, "strategy": self.strategy, "bits": self.setup_bits}]
        for s in self.steps:
            records.append({
                "type": "step",
                "step": s.step,
                "revealed": s.revealed,
                "events": [
                    {"member": e.member, "W": list(e.W),
                     "deleted": list(e.deleted) if isinstance(e.deleted, tuple) else e.deleted}
                    for e in s.events
                ],
                "bits": s.bits,
            })
        records.append({"type": "summary", "deletions": self.size, "total_bits": self.total_bits})
        return records

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.to_records())

    @classmethod
    def from_jsonl(cls, text: str) -> Trace:
        trace = None
        for line in text.splitlines():
            if not line.strip():
                continue
            r = json.loads(line)
            if r["type"] == "start":
                trace = cls(r["mode"], r["strategy"], r["bits"])
            elif r["type"] == "step":
                events = [
                    Event(e["member"], tuple(e["W"]),
                          tuple(e["deleted"]) if isinstance(e["deleted"], list) else e["deleted"])
                    for e in r["events"]
                ]
                trace.steps.append(StepRecord(r["step"], r["revealed"], events, r["bits"]))
        if trace is None:
            raise ValueError("trace has no start record")
        return trace


def run(instance: OnlineInstance, f: ObstructionSet, strategy: Strategy,
        tape: AdviceTape | None = None) -> Trace:
    mode = instance.mode
    check_mode(f, mode)
    g = instance.graph
    state = EngineState(mode)

    def position() -> int:
        return tape.position if tape is not None else 0

    before = position()
    strategy.start(tape, f, mode)
    trace = Trace(mode, strategy.name, setup_bits=position() - before)
    revealed_elements = 0

    for v in range(g.order):
        before = position()
        row = g.adj[v] & ((1 << v) - 1)
        state.reveal(row)
        revealed_elements += 1 if mode == NODE else bin(row).count("1")
        record = StepRecord(step=v + 1, revealed=v)
        while (violation := detect(state.adj, state.alive, f)) is not None:
            if len(record.events) >= revealed_elements:
                raise EngineError(f"step {v + 1}: F-freeness not restored within {revealed_elements} deletions")
            x = strategy.choose(state, violation)
            if mode == EDGE and isinstance(x, (tuple, list)):
                x = edge(*x)
            state.delete(x)
            record.events.append(Event(violation.member, violation.W, x))
        assert detect(state.adj, state.alive, f) is None
        record.bits = position() - before
        trace.steps.append(record)
    return trace


class Scripted(Strategy):
    """Replays a fixed deletion sequence, checking each matches a live violation."""

    name = "scripted"

    def __init__(self, deletions: Iterable[Element]):
        self._queue = list(deletions)

    def choose(self, state, violation):
        if not self._queue:
            raise EngineError("script exhausted while a violation exists")
        return self._queue.pop(0)


def replay(instance: OnlineInstance, f: ObstructionSet, trace: Trace) -> Trace:
    """Re-run ``trace``'s deletions; the result must equal the original event log."""
    again = run(instance, f, Scripted(trace.deleted))
    for a, b in zip(trace.steps, again.steps):
        if [(e.member, e.W, e.deleted) for e in a.events] != [(e.member, e.W, e.deleted) for e in b.events]:
            raise EngineError(f"replay diverged at step {a.step}")
    return again


# -- offline optimum -----------------------------------------------------------

@dataclass(frozen=True)
class Optimum:
    size: int
    solutions: tuple[tuple, ...]

    @property
    def unique(self) -> bool:
        return len(self.solutions) == 1

    @property
    def first(self) -> tuple:
        return self.solutions[0]


DEFAULT_SEARCH_BUDGET = 500_000


def offline_optimum(g: Graph, f: ObstructionSet, mode: str = NODE,
                    budget: int = DEFAULT_SEARCH_BUDGET) -> Optimum:
    """All minimum-cardinality deletion sets making ``g`` F-free.

    Iterative deepening over branchings on a detected violation: every
    solution must delete one of the violation's elements, so each deepening
    round enumerates every solution of that size. ``budget`` bounds the number
    of explored deletion sets.
    """
    check_mode(f, mode)
    full_adj = list(g.adj)
    all_alive = g.vertex_mask
    explored = 0

    def apply(adj: list[int], alive: int, x) -> tuple[list[int], int]:
        adj = adj[:]
        if mode == NODE:
            alive &= ~(1 << x)
            for w in _bits(adj[x]):
                adj[w] &= ~(1 << x)
            adj[x] = 0
        else:
            u, v = x
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return adj, alive

    depth_limit = g.order if mode == NODE else g.edge_count
    for k in range(depth_limit + 1):
        found: set[frozenset] = set()
        seen: set[frozenset] = set()

        def branch(adj, alive, chosen: frozenset):
            nonlocal explored
            if chosen in seen:
                return
            seen.add(chosen)
            explored += 1
            if explored > budget:
                raise CapExceeded(f"offline search exceeded budget of {budget} deletion sets")
            violation = detect(adj, alive, f)
            if violation is None:
                found.add(chosen)
                return
            if len(chosen) == k:
                return
            if mode == NODE:
                options = violation.W
            else:
                options = edges_within(adj, violation.W)
            for x in options:
                if x not in chosen:
                    branch(*apply(adj, alive, x), chosen | {x})

        branch(full_adj, all_alive, frozenset())
        if found:
            return Optimum(k, tuple(sorted(tuple(sorted(s)) for s in found)))
    raise AssertionError("deleting everything always yields an F-free graph")
