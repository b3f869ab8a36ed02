import pytest

from advicelab.codec import AdviceError
from advicelab.generate import random_graph
from advicelab.graph import ball_view, build_ring, eccentricities
from advicelab.lowerbounds import nested_ring_family
from advicelab.schemes import ELECT_STALL, local_max_within
from advicelab.sim import (
    EMPTY_ORACLE,
    Algorithm,
    NodeResult,
    RunReport,
    Wait,
    check_election,
    check_selection,
    execute_node,
    run,
)


def own_label(advice, r, view):
    return view.root_label


def report_with(outputs):
    nodes = {lab: NodeResult(0, out) for lab, out in outputs.items()}
    return RunReport("t", "selection", "", nodes, 0, 1)


def test_halt_immediately():
    g = build_ring([1, 2, 3])
    rep = run(g, EMPTY_ORACLE, Algorithm("own", own_label, "election"))
    assert {lab: r.halt_round for lab, r in rep.nodes.items()} == {1: 0, 2: 0, 3: 0}
    assert rep.outputs() == {1: 1, 2: 2, 3: 3}
    assert not rep.election


def test_stall_on_five_cycle():
    g = build_ring([1, 2, 3, 5, 4])
    rep = run(g, EMPTY_ORACLE, ELECT_STALL)
    assert all(r.halt_round == 3 and r.output == 5 for r in rep.nodes.values())
    assert rep.election and rep.selection and rep.time == 3


def test_check_selection_cases():
    g = build_ring([1, 2, 3, 5, 4])
    assert check_selection(report_with({1: 0, 2: 0, 3: 0, 4: 0, 5: 1}), g)
    assert not check_selection(report_with({1: 0, 2: 0, 3: 1, 4: 0, 5: 1}), g)
    assert not check_selection(report_with({1: 0, 2: 0, 3: 0, 4: 0, 5: 0}), g)


def test_check_election_cases():
    g = build_ring([1, 2, 3, 5, 4])
    assert check_election(report_with(dict.fromkeys(g.labels, 5)), g)
    assert not check_election(report_with({1: 5, 2: 5, 3: 4, 4: 5, 5: 5}), g)


def test_nested_member_defeats_early_election():
    # elect whatever is in sight after i rounds: right on R_i, wrong on R_j for j > i
    D = 6
    fam = nested_ring_family(D)
    for i in range(1, D):
        alg = Algorithm("peek", lambda a, r, v, i=i: Wait(i) if r < i else v.max_label, "election")
        assert run(fam.member(i), EMPTY_ORACLE, alg).election
        for j in range(i + 1, D + 1):
            rep = run(fam.member(j), EMPTY_ORACLE, alg)
            assert rep.nodes[1].output == D + i + 1
            assert not rep.election


def test_round_cap_aborts():
    g = build_ring([1, 2, 3, 4, 5])
    rep = run(g, EMPTY_ORACLE, Algorithm("never", lambda a, r, v: None), round_cap=4)
    assert rep.aborted == [1, 2, 3, 4, 5]
    assert rep.time == 4 and not rep.selection and not rep.within_time
    assert "halt=abort out=-" in rep.format()


def test_bad_advice_aborts_node():
    def picky(advice, r, view):
        if view.root_label == 2:
            raise AdviceError("nope")
        return int(view.root_label == 3)

    rep = run(build_ring([1, 2, 3]), EMPTY_ORACLE, Algorithm("picky", picky))
    assert rep.aborted == [2]
    assert not rep.selection


def test_wait_skips_rounds():
    calls = []

    def alg(advice, r, view):
        calls.append(r)
        return Wait(4) if r < 4 else 0

    run(build_ring([1, 2, 3, 4, 5, 6, 7, 8, 9]), EMPTY_ORACLE, Algorithm("w", alg))
    assert sorted(set(calls)) == [0, 4]


def test_node_view_matches_ball_view():
    g = random_graph(30, 1)
    ecc = eccentricities(g).tolist()
    seen = []

    def probe(advice, r, view):
        ref = ball_view(g, g.node(view.root_label), r)
        assert view.max_label == ref.max_label
        assert view.has_boundary == ref.has_boundary == (r <= ecc[g.node(view.root_label)])
        assert view.labels == ref.labels
        assert view.materialize().encode() == ref.encode()
        seen.append(r)
        return None if r < 5 else 0

    run(g, EMPTY_ORACLE, Algorithm("probe", probe), round_cap=10)
    assert len(seen) == 6 * g.n


def test_determinism():
    g = random_graph(60, 9)
    alg = local_max_within(2)
    assert run(g, EMPTY_ORACLE, alg).format() == run(g, EMPTY_ORACLE, alg).format()


def test_execute_node_replay():
    g = build_ring([1, 2, 3, 5, 4])
    halt, out, trace = execute_node(ELECT_STALL, "", lambda r: ball_view(g, g.node(3), r), 6)
    assert (halt, out) == (3, 5)
    assert [r for r, _ in trace] == [0, 1, 2, 3]


def test_advice_override_and_bad_cap():
    g = build_ring([1, 2, 3])
    rep = run(g, None, Algorithm("a", lambda a, r, v: len(a)), advice="0101")
    assert rep.advice_bits == 4
    with pytest.raises(ValueError):
        run(g, EMPTY_ORACLE, ELECT_STALL, round_cap=0)
