from __future__ import annotations

import pytest

from anonelect.advice_oracle import compute_advice
from anonelect.encoding import bin_int
from anonelect.families import HairyRingSpec, NecklaceSpec, gen_hairy_ring, gen_necklace, gen_ring_cliques
from anonelect.graph_core import complete_graph, cycle_graph, diameter, path_graph
from anonelect.local_sim import (
    ElectionOutcome,
    com_round,
    dphi_advice,
    log_star,
    run_elect,
    run_election_dphi,
    run_election_variant,
    run_generic,
    simulate,
    variant_advice,
    variant_parameter,
    variant_time_bound,
    verify_outcome,
)
from anonelect.corpus import random_feasible_graph
from anonelect.views import AugView, aug_view, election_index
from oracles import brute_argmin


def test_com_rounds_build_views():
    g = random_feasible_graph(9, "com")
    layer = [AugView(len(a)) for a in g.adj]
    for t in range(1, 5):
        layer = com_round(g, layer)
        assert layer == [aug_view(g, v, t) for v in range(g.n)]


def test_first_round_shows_neighbor_degrees():
    g = path_graph(3)
    layer = com_round(g, [AugView(len(a)) for a in g.adj])
    assert [(q, c.degree) for q, c in layer[1].children] == [(0, 1), (0, 1)]


def test_views_past_diameter_separate_p3():
    g = path_graph(3)
    layer = [AugView(len(a)) for a in g.adj]
    for _ in range(diameter(g) + 1):
        layer = com_round(g, layer)
    assert len(set(layer)) == 3


def test_elect_p3():
    g = path_graph(3)
    adv = compute_advice(g)
    o = run_elect(g, adv.bits)
    v = verify_outcome(g, o)
    assert o.rounds == 1 and v.ok
    assert v.leader == adv.bfs.root
    assert o.outputs[v.leader] == ()


def test_elect_necklace_takes_phi_rounds():
    g = gen_necklace(NecklaceSpec(4, 3, 3, (0, 1, 2, 0))).graph
    o = run_elect(g, compute_advice(g).bits)
    assert o.rounds == 3 and all(t == 3 for t in o.finish)
    assert verify_outcome(g, o).ok


def test_elect_ring_cliques_one_round():
    g = gen_ring_cliques(8, 4)
    o = run_elect(g, compute_advice(g).bits)
    assert o.rounds == 1 and verify_outcome(g, o).ok


def test_elect_with_foreign_advice_fails_cleanly():
    g = gen_ring_cliques(4, 3)
    o = run_elect(g, compute_advice(path_graph(3)).bits)
    assert not verify_outcome(g, o).ok


def test_elect_with_garbage_advice_fails_cleanly():
    g = path_graph(4)
    o = run_elect(g, "10")
    v = verify_outcome(g, o)
    assert not v.ok and "failed" in v.reason


def test_generic_p3():
    g = path_graph(3)
    o = run_generic(g, 1)
    v = verify_outcome(g, o)
    assert v.ok and v.leader == brute_argmin(g, 1)
    assert o.last_round_index <= diameter(g) + 1


def test_generic_random_graph_argmin():
    g = random_feasible_graph(10, "gen")
    phi = election_index(g)
    o = run_generic(g, phi)
    v = verify_outcome(g, o)
    assert v.ok and v.leader == brute_argmin(g, phi)


def test_generic_on_symmetric_cycle_fails():
    g = cycle_graph(4)
    v = verify_outcome(g, run_generic(g, 3))
    assert not v.ok and v.reason == "no common endpoint"


def test_variant_parameters_for_phi_5():
    assert [variant_parameter(i, variant_advice(5, i)) for i in (1, 2, 3, 4)] == [5, 7, 15, 15]


def test_variant_parameters_for_phi_1():
    assert variant_parameter(2, variant_advice(1, 2)) == 1
    assert variant_advice(1, 3) == ""
    assert variant_parameter(3, "") == 1


def test_log_star_thresholds():
    assert [log_star(p) for p in (1, 2, 3, 4, 15, 16, 65535, 65536)] == [0, 1, 1, 2, 2, 3, 3, 4]


@pytest.mark.parametrize("phi", range(1, 70))
def test_parameters_cover_phi_and_fit_bounds(phi):
    for i in (1, 2, 3, 4):
        p = variant_parameter(i, variant_advice(phi, i))
        assert p >= phi
        for c in (2, 3):
            assert p <= variant_time_bound(i, 0, phi, c)


def test_variant_one_on_necklace():
    g = gen_necklace(NecklaceSpec(6, 3, 3, (0, 1, 0, 2, 3, 0))).graph
    o = run_election_variant(g, 1, variant_advice(3, 1))
    assert verify_outcome(g, o).ok
    assert o.last_round_index <= diameter(g) + 3 + 2


def test_variant_rejects_bad_index():
    with pytest.raises(ValueError):
        run_election_variant(path_graph(3), 5, "1")
    with pytest.raises(ValueError):
        variant_time_bound(1, 2, 2, 1)


def test_dphi_p3():
    g = path_graph(3)
    o = run_election_dphi(g, dphi_advice(2, 1))
    assert o.rounds == 3 and verify_outcome(g, o).ok


def test_dphi_hairy_ring():
    g = gen_hairy_ring(HairyRingSpec((0, 1, 0, 0, 0, 2, 0)))
    phi = election_index(g)
    o = run_election_dphi(g)
    assert o.rounds == diameter(g) + phi and verify_outcome(g, o).ok


def test_dphi_and_generic_agree(small_corpus):
    for s in small_corpus[:25]:
        g = s.graph
        phi = election_index(g)
        a = verify_outcome(g, run_election_dphi(g)).leader
        assert a == verify_outcome(g, run_generic(g, phi)).leader == verify_outcome(g, run_generic(g, phi + 2)).leader


def test_verify_all_empty_outputs():
    g = complete_graph(4)
    o = ElectionOutcome(((),) * 4, (0,) * 4, {})
    v = verify_outcome(g, o)
    assert not v.ok and v.reason == "no common endpoint"


def test_verify_detects_non_simple_path():
    g = path_graph(3)
    o = run_elect(g, compute_advice(g).bits)
    leader = verify_outcome(g, o).leader
    bad = list(o.outputs)
    start = next(v for v in range(3) if v != leader)
    p, (w, q) = 0, g.adj[start][0]
    bad[start] = (0, q, q, 0) + o.outputs[start]
    v = verify_outcome(g, ElectionOutcome(tuple(bad), o.finish, {}))
    assert not v.ok and v.reason == "path not simple"


def test_runs_are_deterministic():
    g = random_feasible_graph(12, "det")
    phi = election_index(g)
    bits = compute_advice(g).bits
    assert run_elect(g, bits) == run_elect(g, bits)
    assert run_generic(g, phi + 1) == run_generic(g, phi + 1)


def test_audit_sees_only_views_and_advice():
    g = random_feasible_graph(8, "audit")
    for o in (run_elect(g, compute_advice(g).bits), run_generic(g, 2), run_election_variant(g, 4, "1")):
        assert o.audit.clean, o.audit.seen


def test_audit_flags_other_types():
    def factory(advice):
        return lambda view: ()

    o = simulate(path_graph(3), factory, bin_int(3), 2)
    assert o.audit.clean
    o.audit.record(7)
    assert not o.audit.clean


def test_node_that_never_stops_is_reported():
    o = simulate(path_graph(3), lambda adv: (lambda view: None), "", 3)
    assert len(o.failures) == 3
    assert not verify_outcome(path_graph(3), o).ok
