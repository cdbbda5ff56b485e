import random

import pytest

from advdel.advice import AdviceTape, ceil_log2, self_delimiting_length
from advdel.algorithms import (
    Greedy,
    LogAlgorithm,
    NaiveAlgorithm,
    NaiveEdgeAlgorithm,
    NaiveNodeAlgorithm,
    log_advisor,
    log_budget,
    naive_budget,
    naive_edge_advisor,
    naive_node_advisor,
    prepare,
)
from advdel.engine import EDGE, NODE, EngineError, OnlineInstance, offline_optimum, run
from advdel.formats import named
from advdel.gadgets import clique_join_family, connected_lb_family, edge_lb_family, glue_gadget, random_instance
from advdel.graph import complete, cycle, empty, join, path
from advdel.obstruction import ObstructionSet, extremal_remainder, ramsey_bound

K3 = ObstructionSet((complete(3),))
RAMSEY_F = ObstructionSet((complete(3), empty(3)))


@pytest.fixture(scope="module")
def ramsey():
    cert = ramsey_bound(RAMSEY_F)
    return cert, extremal_remainder(RAMSEY_F, cert, "max")


def _run_naive(inst, f, seed=0):
    out = (naive_node_advisor if inst.mode == NODE else naive_edge_advisor)(inst, f, seed=seed)
    algo = NaiveNodeAlgorithm() if inst.mode == NODE else NaiveEdgeAlgorithm()
    tape = out.tape.rewind()
    return out, run(inst, f, algo, tape), tape


class TestGreedy:
    def test_high_glue_vertex_costs_two(self):
        inst = OnlineInstance(glue_gadget(complete(3), 2))
        assert run(inst, K3, Greedy()).deleted == [0, 2]
        assert offline_optimum(inst.graph, K3).solutions == ((2,),)

    def test_free_and_triangle(self):
        assert run(OnlineInstance(cycle(5)), K3, Greedy()).size == 0
        assert run(OnlineInstance(complete(3)), K3, Greedy()).size == 1


class TestNaive:
    def test_k3_gadget_family_nine_bits(self):
        for inst in connected_lb_family(complete(3), 2):
            out, t, tape = _run_naive(inst, K3)
            assert out.opt == 2
            assert len(out.tape) == t.total_bits == 9 == 5 + 2 * 2
            assert t.size == 2 and set(t.deleted) == inst.expected_optimum
            assert tape.overread == 0

    def test_k2_single_index(self):
        out, t, _ = _run_naive(OnlineInstance(complete(2)), ObstructionSet((complete(2),)))
        assert out.tape.bits in ("1010", "1011") and t.total_bits == 4

    def test_p3_edge_width_one(self):
        out, t, _ = _run_naive(OnlineInstance(path(3), EDGE), ObstructionSet((path(3),)))
        assert t.total_bits == self_delimiting_length(1) + 1 == 4 and t.size == 1

    def test_edge_extension_member(self):
        f = ObstructionSet((named("2K2"),))
        for inst in edge_lb_family(named("2K2"), 1):
            out, t, _ = _run_naive(inst, f)
            assert set(t.deleted) == inst.expected_optimum

    def test_random_instances_optimal_with_exact_bits(self):
        rng = random.Random(7)
        for f in (K3, ObstructionSet((path(3),)), ObstructionSet((named("2K2"),))):
            for _ in range(15):
                inst = random_instance(rng, rng.randint(1, 8))
                out, t, tape = _run_naive(inst, f)
                opt = offline_optimum(inst.graph, f)
                assert t.size == opt.size
                assert t.total_bits == naive_budget(opt.size, f.max_order) == len(out.tape)
                assert tape.position == len(out.tape)

    def test_needs_tape_and_bounds(self):
        with pytest.raises(EngineError):
            run(OnlineInstance(complete(3)), K3, NaiveAlgorithm())
        # advice claims zero deletions
        with pytest.raises(EngineError):
            run(OnlineInstance(complete(3)), K3, NaiveAlgorithm(), AdviceTape("0"))
        # index 4 in a triangle
        with pytest.raises(EngineError):
            run(OnlineInstance(complete(3)), K3, NaiveAlgorithm(), AdviceTape("10111"))

    def test_mode_checks(self):
        with pytest.raises(ValueError):
            naive_node_advisor(OnlineInstance(path(3), EDGE), ObstructionSet((path(3),)))
        with pytest.raises(ValueError):
            naive_edge_advisor(OnlineInstance(path(3)), ObstructionSet((path(3),)))


class TestLog:
    def test_k4_join_c5_is_thirty_bits(self, ramsey):
        cert, _ = ramsey
        inst = OnlineInstance(join(complete(4), cycle(5)))
        out = log_advisor(inst, RAMSEY_F, cert)
        assert out.opt == 4
        assert len(out.tape) == 7 + 3 + 5 * (2 + 2) == 30
        t = run(inst, RAMSEY_F, LogAlgorithm(cert.R), out.tape.rewind())
        assert t.total_bits == 30 and t.size == 4 and set(t.deleted) == {0, 1, 2, 3}

    def test_compact_layout(self, ramsey):
        cert, _ = ramsey
        inst = OnlineInstance(join(complete(4), cycle(5)))
        out = log_advisor(inst, RAMSEY_F, cert, layout="compact")
        assert len(out.tape) == 7 + 3 + out.u * 4 == log_budget(4, 6, 3, out.u, "compact")
        t = run(inst, RAMSEY_F, LogAlgorithm(cert.R, "compact"), out.tape.rewind())
        assert t.size == 4 and t.total_bits == len(out.tape)

    @pytest.mark.parametrize("opt", [4, 5])
    def test_clique_join_family_optimal(self, ramsey, opt):
        cert, D = ramsey
        for inst in clique_join_family(RAMSEY_F, D, opt):
            out = log_advisor(inst, RAMSEY_F, cert)
            assert out.u <= cert.R - 1
            assert all(r1 <= r2 for (r1, _), (r2, _) in zip(out.pairs, out.pairs[1:]))
            t = run(inst, RAMSEY_F, LogAlgorithm(cert.R), out.tape.rewind())
            assert set(t.deleted) == inst.expected_optimum
            expected = (cert.R - 1) * (ceil_log2(opt) + 2) + ceil_log2(5) + self_delimiting_length(opt)
            assert t.total_bits == len(out.tape) == expected

    def test_filler_seeds_do_not_matter(self, ramsey):
        cert, D = ramsey
        inst = clique_join_family(RAMSEY_F, D, 4)[3]
        out = log_advisor(inst, RAMSEY_F, cert)
        traces = [run(inst, RAMSEY_F, LogAlgorithm(cert.R), out.tape.rewind(seed)) for seed in (0, 1, 2)]
        assert all(t == traces[0] for t in traces)
        assert all(t.total_bits == 30 for t in traces)

    def test_zero_opt(self, ramsey):
        cert, _ = ramsey
        out = log_advisor(OnlineInstance(cycle(5)), RAMSEY_F, cert)
        assert out.tape.bits == "0" and log_budget(0, 6, 3, 0) == 1

    def test_requires_clique_and_independent_set(self, ramsey):
        cert, _ = ramsey
        with pytest.raises(ValueError):
            log_advisor(OnlineInstance(complete(3)), K3, cert)

    def test_inconsistent_advice(self, ramsey):
        cert, _ = ramsey
        # opt=1, u=1, pairs claim all three triangle vertices are fixed in round 1
        tape = AdviceTape()
        tape.write_self_delimiting(1)
        tape.write_fixed(2, 3)
        for a in range(3):
            tape.write_fixed(a, 2)
        with pytest.raises(EngineError):
            run(OnlineInstance(complete(3)), RAMSEY_F, LogAlgorithm(cert.R), tape)


class TestPrepare:
    def test_determinism(self, ramsey):
        cert, D = ramsey
        inst = clique_join_family(RAMSEY_F, D, 4)[0]
        for name in ("naive-node", "log", "greedy"):
            results = []
            for _ in range(2):
                strat, tape, _, budget = prepare(name, inst, RAMSEY_F, cert)
                results.append(run(inst, RAMSEY_F, strat, tape).to_jsonl())
            assert results[0] == results[1]

    def test_unknown(self):
        with pytest.raises(ValueError):
            prepare("oracle", OnlineInstance(path(2)), K3)
        with pytest.raises(ValueError):
            prepare("log", OnlineInstance(path(2)), RAMSEY_F)
