import random
import statistics

import pytest

from robustgame.generators import GeneratorConfig, UswParams, generate
from robustgame.graph import Graph
from robustgame.repair import (
    MissingUswParams,
    RepairPolicy,
    locality_audit,
    repair_turn,
    repair_turn_standard,
    repair_turn_usw,
)

from .graphs import complete, star


def test_nothing_to_restore():
    r = repair_turn_standard(complete(4), RepairPolicy(), random.Random(0))
    assert r.row() == [0, 0, 0]


def test_ten_percent_of_ledger():
    g = complete(20)
    for v in range(10):
        g.remove_vertex(v)
    r = repair_turn_standard(g, RepairPolicy(), random.Random(0))
    assert r.vertices_restored == 1
    assert len(g.removed) == 9


def test_fraction_rounds_up():
    g = complete(5)
    g.remove_vertex(0)
    assert repair_turn_standard(g, RepairPolicy(), random.Random(0)).vertices_restored == 1


def test_restored_edges_are_binomial():
    restored = []
    for seed in range(1000):
        g = star(11)
        g.remove_vertex(0)
        r = repair_turn_standard(g, RepairPolicy(reactivation_fraction=1.0), random.Random(seed))
        assert r.edges_attempted == 10
        restored.append(r.edges_restored)
    # Binomial(10, 0.9): mean 9, sd of the sample mean sqrt(0.9) / sqrt(1000)
    assert abs(statistics.mean(restored) - 9) < 3 * (0.9**0.5) / 1000**0.5


def test_standard_repair_restores_only_original_edges():
    rng = random.Random(2)
    for seed in range(20):
        g = generate(GeneratorConfig("er", 60, p=0.15, seed=seed))
        original = set(g.edges())
        for v in rng.sample(g.vertices(), 15):
            g.remove_vertex(v)
        for _ in range(8):
            repair_turn_standard(g, RepairPolicy(), rng)
            g.check_invariants()
            assert set(g.edges()) <= original


def test_convergence_without_attack():
    # restore everything repeatedly; each original edge of a reactivated
    # vertex comes back with probability >= 0.9
    hits = total = 0
    for seed in range(500):
        g = complete(6)
        original = set(g.edges())
        g.remove_vertex(0)
        rng = random.Random(seed)
        repair_turn_standard(g, RepairPolicy(), rng)
        hits += sum(1 for e in original if e[0] == 0 and g.has_edge(*e))
        total += 5
        assert set(g.edges()) <= original
    assert hits / total >= 0.9 - 3 * (0.09 / total) ** 0.5


def test_fresh_links_option():
    g = complete(8)
    g.remove_vertex(0)
    r = repair_turn_standard(g, RepairPolicy(fresh_links=True, attempt_success_prob=1.0), random.Random(1))
    assert r.vertices_restored == 1 and r.edges_restored == 7


def test_usw_noop_when_l_is_zero():
    g = generate(GeneratorConfig("usw", 50, seed=1))
    before = g.copy()
    r = repair_turn_usw(g, RepairPolicy("usw", usw=UswParams(l_repair=0)), random.Random(0))
    assert r.row() == [0, 0, 0] and g == before


def test_usw_beta_zero_always_links():
    g = generate(GeneratorConfig("usw", 80, seed=2))
    params = UswParams(beta=0.0, t=1.0, l_repair=5)
    rng = random.Random(3)
    before = {v: set(g.adj[v]) for v in g}
    r = repair_turn_usw(g, RepairPolicy("usw", usw=params), rng)
    actors = {ev[1] for ev in r.trace if ev[0] == "edge"}
    assert len(actors) == 5
    for v in actors:
        assert g.adj[v] > before[v]
    g.check_invariants()


def test_usw_missing_params():
    with pytest.raises(MissingUswParams):
        repair_turn(complete(4), RepairPolicy("usw"), random.Random(0))


def test_usw_repair_densifies():
    g = generate(GeneratorConfig("usw", 200, seed=3))
    m0 = g.m
    repair_turn_usw(g, RepairPolicy("usw", usw=UswParams(l_repair=20, t=0.3)), random.Random(0))
    assert g.m >= m0
    g.check_invariants()


def test_locality_audit():
    g = complete(10)
    for v in (1, 2, 3):
        g.remove_vertex(v)
    std = repair_turn_standard(g, RepairPolicy(reactivation_fraction=1.0), random.Random(0))
    assert locality_audit(std.trace)

    u = generate(GeneratorConfig("usw", 100, seed=4))
    usw = repair_turn_usw(u, RepairPolicy("usw", usw=UswParams(l_repair=10, t=0.2)), random.Random(0))
    assert locality_audit(usw.trace)

    assert not locality_audit([*usw.trace, ("centrality", "betweenness_vertex")])
    assert not locality_audit([("scope", frozenset({1, 2})), ("visit", 5)])


def test_policy_validation():
    with pytest.raises(ValueError):
        RepairPolicy(kind="magic")
    with pytest.raises(ValueError):
        RepairPolicy(attempt_success_prob=2.0)
