"""Advisor/algorithm pairs and the no-advice greedy baseline."""

from __future__ import annotations

from dataclasses import dataclass, field

from .advice import AdviceTape, ceil_log2, self_delimiting_length
from .engine import (
    EDGE,
    NODE,
    EngineError,
    EngineState,
    OnlineInstance,
    Optimum,
    Strategy,
    Violation,
    offline_optimum,
    run,
)
from .obstruction import ObstructionSet, RamseyCertificate


class Greedy(Strategy):
    """Deletes the smallest element of each detected violation."""

    name = "greedy"

    def choose(self, state, violation):
        return state.elements(violation.W)[0]


class LazyOptimal(Strategy):
    """Follows a fixed offline solution, deleting only when forced."""

    name = "lazy-optimal"

    def __init__(self, solution):
        self.solution = set(solution)

    def choose(self, state, violation):
        options = [x for x in state.elements(violation.W) if x in self.solution]
        if not options:
            raise EngineError(f"no element of the fixed solution inside W={violation.W}")
        return options[0]


# -- naive: one index per forced deletion ------------------------------------

def naive_budget(opt: int, alphabet: int) -> int:
    return self_delimiting_length(opt) + opt * ceil_log2(alphabet)


def _naive_alphabet(f: ObstructionSet, mode: str) -> int:
    return f.max_order if mode == NODE else f.max_edges


@dataclass
class AdvisorOutput:
    tape: AdviceTape
    opt: int
    solution: tuple
    pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def u(self) -> int:
        return len(self.pairs)


class _Recorder(LazyOptimal):
    def __init__(self, solution):
        super().__init__(solution)
        self.picks: list[int] = []

    def choose(self, state, violation):
        x = super().choose(state, violation)
        self.picks.append(state.elements(violation.W).index(x) + 1)
        return x


def naive_advisor(instance: OnlineInstance, f: ObstructionSet, optimum: Optimum | None = None,
                  seed: int = 0) -> AdvisorOutput:
    """Tape: ``opt`` self-delimited, then one fixed-width index per forced deletion.

    Each index is the 1-based position, inside the detected violation's element
    list, of the element the lexicographically smallest optimum deletes there.
    """
    mode = instance.mode
    optimum = optimum or offline_optimum(instance.graph, f, mode)
    recorder = _Recorder(optimum.first)
    trace = run(instance, f, recorder)
    assert trace.size == optimum.size, "lazy execution of an optimum must be optimal"
    width = ceil_log2(_naive_alphabet(f, mode))
    tape = AdviceTape(seed=seed)
    tape.write_self_delimiting(optimum.size)
    for d in recorder.picks:
        tape.write_fixed(d - 1, width)
    return AdvisorOutput(tape, optimum.size, optimum.first)


def naive_node_advisor(instance, f, optimum=None, seed=0) -> AdvisorOutput:
    if instance.mode != NODE:
        raise ValueError("naive_node_advisor needs a node-mode instance")
    return naive_advisor(instance, f, optimum, seed)


def naive_edge_advisor(instance, f, optimum=None, seed=0) -> AdvisorOutput:
    if instance.mode != EDGE:
        raise ValueError("naive_edge_advisor needs an edge-mode instance")
    return naive_advisor(instance, f, optimum, seed)


class NaiveAlgorithm(Strategy):
    name = "naive"

    def start(self, tape, f, mode):
        super().start(tape, f, mode)
        if tape is None:
            raise EngineError("naive algorithm needs an advice tape")
        self.remaining = tape.read_self_delimiting()
        self.width = ceil_log2(_naive_alphabet(f, mode))

    def choose(self, state, violation):
        if self.remaining == 0:
            raise EngineError("more forced deletions than the advised optimum")
        self.remaining -= 1
        d = self.tape.read_fixed(self.width) + 1
        options = state.elements(violation.W)
        if d > len(options):
            raise EngineError(f"advised index {d} outside W of size {len(options)}")
        return options[d - 1]


class NaiveNodeAlgorithm(NaiveAlgorithm):
    name = "naive-node"


class NaiveEdgeAlgorithm(NaiveAlgorithm):
    name = "naive-edge"


# -- logarithmic advice: remember which considered vertices survive ----------

def log_widths(opt: int, R: int, k: int) -> tuple[int, int, int]:
    """Bit widths of ``u - 1``, of ``r_i - 1`` and of ``a_i - 1``."""
    return ceil_log2(R - 1), ceil_log2(opt), ceil_log2(k)


LOG_LAYOUTS = ("padded", "compact")


def _pair_slots(u: int, R: int, layout: str) -> int:
    if layout not in LOG_LAYOUTS:
        raise ValueError(f"unknown log layout {layout!r}")
    return R - 1 if layout == "padded" else u


def log_budget(opt: int, R: int, k: int, u: int, layout: str = "padded") -> int:
    if opt == 0:
        return self_delimiting_length(0)
    wu, wr, wa = log_widths(opt, R, k)
    return self_delimiting_length(opt) + wu + _pair_slots(u, R, layout) * (wr + wa)


def _check_log_family(f: ObstructionSet) -> None:
    if not (f.has_clique and f.has_independent_set):
        raise ValueError("logarithmic advice needs a clique and an independent set in F")


class _LogRecorder(Strategy):
    def __init__(self, solution):
        self.solution = set(solution)
        self.fixed: set[int] = set()
        self.pairs: list[tuple[int, int]] = []
        self.round = 1

    def choose(self, state, violation):
        for a, w in enumerate(violation.W, start=1):
            if w not in self.solution and w not in self.fixed:
                self.fixed.add(w)
                self.pairs.append((self.round, a))
        self.round += 1
        rest = [w for w in violation.W if w not in self.fixed]
        assert rest and set(rest) <= self.solution
        return rest[0]


def log_advisor(instance: OnlineInstance, f: ObstructionSet, cert: RamseyCertificate,
                optimum: Optimum | None = None, seed: int = 0, layout: str = "padded") -> AdvisorOutput:
    """Tape: ``opt`` self-delimited, ``u - 1`` in ``ceil(log2(R-1))`` bits, then the pairs.

    Pair ``(r, a)`` says: in settlement round ``r`` the ``a``-th vertex of the
    detected set (by reveal label, 1-based) is seen for the first time and
    must survive. Pairs are stored in round order. The ``padded`` layout
    always spends ``R - 1`` pair slots (zero-filled past ``u``), so the tape
    length depends only on ``opt``; ``compact`` writes exactly ``u`` pairs.
    """
    _check_log_family(f)
    if instance.mode != NODE:
        raise ValueError("log advice is defined for node deletion")
    optimum = optimum or offline_optimum(instance.graph, f, NODE)
    recorder = _LogRecorder(optimum.first)
    trace = run(instance, f, recorder)
    assert trace.size == optimum.size
    opt, R, k = optimum.size, cert.R, f.max_order
    u = len(recorder.pairs)
    if u > R - 1:
        raise AssertionError(f"{u} surviving considered vertices but R-1 = {R - 1}")
    tape = AdviceTape(seed=seed)
    tape.write_self_delimiting(opt)
    if opt:
        wu, wr, wa = log_widths(opt, R, k)
        tape.write_fixed(u - 1, wu)
        for r, a in recorder.pairs:
            tape.write_fixed(r - 1, wr)
            tape.write_fixed(a - 1, wa)
        tape.write_fixed(0, (_pair_slots(u, R, layout) - u) * (wr + wa))
    return AdvisorOutput(tape, opt, optimum.first, recorder.pairs)


class LogAlgorithm(Strategy):
    name = "log"

    def __init__(self, R: int, layout: str = "padded"):
        self.R = R
        self.layout = layout

    def start(self, tape, f, mode):
        super().start(tape, f, mode)
        _check_log_family(f)
        if tape is None:
            raise EngineError("log algorithm needs an advice tape")
        self.opt = tape.read_self_delimiting()
        self.pairs: list[tuple[int, int]] = []
        if self.opt:
            wu, wr, wa = log_widths(self.opt, self.R, f.max_order)
            u = tape.read_fixed(wu) + 1
            for _ in range(u):
                r = tape.read_fixed(wr) + 1
                a = tape.read_fixed(wa) + 1
                self.pairs.append((r, a))
            tape.read_fixed((_pair_slots(u, self.R, self.layout) - u) * (wr + wa))
        self.round = 1
        self.fixed: set[int] = set()

    def choose(self, state: EngineState, violation: Violation):
        assert self.round == len(state.deleted) + 1
        for r, a in self.pairs:
            if r == self.round:
                if a > len(violation.W):
                    raise EngineError(f"advised position {a} outside W of size {len(violation.W)}")
                self.fixed.add(violation.W[a - 1])
        rest = [w for w in violation.W if w not in self.fixed]
        if not rest:
            raise EngineError(f"round {self.round}: every vertex of W={violation.W} is fixed")
        self.round += 1
        return rest[0]


STRATEGY_NAMES = ("naive-node", "naive-edge", "log", "greedy")


def prepare(name: str, instance: OnlineInstance, f: ObstructionSet,
            cert: RamseyCertificate | None = None, seed: int = 0, layout: str = "padded"):
    """Build ``(strategy, tape, advisor output, expected bit budget)`` for a named strategy."""
    if name == "greedy":
        return Greedy(), None, None, 0
    if name in ("naive-node", "naive-edge"):
        advisor = naive_node_advisor if name == "naive-node" else naive_edge_advisor
        out = advisor(instance, f, seed=seed)
        algo = NaiveNodeAlgorithm() if name == "naive-node" else NaiveEdgeAlgorithm()
        return algo, out.tape.rewind(), out, naive_budget(out.opt, _naive_alphabet(f, instance.mode))
    if name == "log":
        if cert is None:
            raise ValueError("the log strategy needs a Ramsey certificate")
        out = log_advisor(instance, f, cert, seed=seed, layout=layout)
        budget = log_budget(out.opt, cert.R, f.max_order, out.u, layout)
        return LogAlgorithm(cert.R, layout), out.tape.rewind(), out, budget
    raise ValueError(f"unknown strategy {name!r}; choose from {', '.join(STRATEGY_NAMES)}")
