import random
from collections import Counter
from importlib import resources

import pytest
from scipy.stats import chisquare

from robustgame.attack import (
    ALL_PROFILES,
    AttackProfile,
    InvalidCombination,
    ProfileError,
    ShotLimitExceeded,
    attack_shot,
    attack_until_disconnected,
    attacker_reach,
    candidate_set,
    parse_profile,
    parse_profiles,
    recursive_efficacy,
)
from robustgame.generators import generate_power_law
from robustgame.graph import ComponentRef, is_connected, read_edge_list

from .graphs import complete, cycle, path, random_tree, star


def sample10():
    return read_edge_list(resources.files("robustgame") / "data" / "sample10.edges")


def test_parse_profile():
    assert parse_profile("B-V-H") == AttackProfile("B", "V", "H")
    assert parse_profile("C-V-L") == AttackProfile("C", "V", "L")
    with pytest.raises(InvalidCombination):
        parse_profile("D-E-L")
    with pytest.raises(InvalidCombination):
        parse_profile("C-E-H")
    with pytest.raises(ProfileError):
        parse_profile("BVH")
    assert [p.token for p in parse_profiles("all")] == list(ALL_PROFILES)
    assert len(parse_profiles("B-V-H,D-V-L")) == 2


def test_candidate_sets():
    assert candidate_set(star(4), parse_profile("D-V-H")) == [ComponentRef.vertex(0)]
    assert len(candidate_set(cycle(5), parse_profile("C-V-L"))) == 5
    assert len(candidate_set(cycle(5), parse_profile("B-V-H"))) == 5
    assert candidate_set(path(3), parse_profile("B-E-H")) == [
        ComponentRef.edge(0, 1),
        ComponentRef.edge(1, 2),
    ]


def test_shot_on_star_removes_center():
    g = star(4)
    ref = attack_shot(g, parse_profile("D-V-H"), random.Random(0))
    assert ref == ComponentRef.vertex(0)
    assert g.m == 0 and not is_connected(g)
    assert g.removed[0] == frozenset({1, 2, 3})


def test_single_edge():
    g = path(2)
    assert attack_until_disconnected(g, parse_profile("B-E-H"), random.Random(0)) == 1


def test_power_law_tree_dies_on_first_edge():
    g = generate_power_law(100, 1, random.Random(0))
    assert attack_until_disconnected(g, parse_profile("B-E-H"), random.Random(0)) == 1


def test_any_tree_dies_on_first_bridge():
    rng = random.Random(21)
    for _ in range(30):
        g = random_tree(rng, rng.randrange(2, 51))
        assert attack_until_disconnected(g, parse_profile("B-E-H"), rng) == 1


def test_complete_graph_never_disconnects():
    g = complete(4)
    with pytest.raises(ShotLimitExceeded) as err:
        attack_until_disconnected(g, parse_profile("D-V-L"), random.Random(0))
    assert err.value.shots == 3
    with pytest.raises(ShotLimitExceeded) as err:
        attack_until_disconnected(complete(6), parse_profile("B-V-H"), random.Random(0), shot_limit=2)
    assert err.value.shots == 2


def test_uniform_choice_among_ties():
    counts = Counter()
    for seed in range(1000):
        g = cycle(10)
        counts[attack_shot(g, parse_profile("B-V-H"), random.Random(seed)).id] += 1
    assert set(counts) == set(range(10))
    assert chisquare([counts[v] for v in range(10)]).pvalue > 0.001


def test_same_seed_same_sequence():
    def run(seed):
        g = generate_power_law(200, 2, random.Random(1))
        rng = random.Random(seed)
        return [attack_shot(g, parse_profile("C-V-L"), rng) for _ in range(10)]

    assert run(5) == run(5)


def test_efficacy_trivial_cases():
    s = recursive_efficacy(path(2), parse_profile("B-E-H"))
    assert s.unique_graphs >= 1 and s.max_depth == s.min_depth == 1 and s.stddev_depth == 0
    s = recursive_efficacy(star(4), parse_profile("D-V-H"))
    assert (s.paths, s.max_depth, s.min_depth) == (1, 1, 1)


def test_efficacy_counts_paths_through_shared_states():
    # C4 under B-V-H: 4 choices, then P3 whose center goes -> disconnected
    s = recursive_efficacy(cycle(4), parse_profile("B-V-H"))
    assert s.paths == 4 and s.max_depth == 2 and s.min_depth == 2
    # root + 4 P3s + 2 leaves: removing {0, 2} in either order meets at {1, 3}
    assert s.unique_graphs == 7


def test_efficacy_truncation_is_reported():
    s = recursive_efficacy(complete(6), parse_profile("D-V-L"), max_unique_graphs=5)
    assert s.truncated


def test_sample_graph_high_profiles_beat_low_profiles():
    g = sample10()
    stats = {t: recursive_efficacy(g, parse_profile(t)) for t in ALL_PROFILES}
    for measure in ("D-V", "B-E", "B-V", "C-V"):
        hi, lo = stats[f"{measure}-H"], stats[f"{measure}-L"]
        assert not hi.truncated and not lo.truncated
        assert hi.mean_depth < lo.mean_depth
        assert hi.max_depth <= lo.min_depth


def test_attacker_reach():
    assert attacker_reach(2, 0) == 1
    assert attacker_reach(3, 2) == 10
    assert attacker_reach(3, 2) == 1 + 3 + 3 * 2
    assert attacker_reach(10, 6, n=1000) == 1000
