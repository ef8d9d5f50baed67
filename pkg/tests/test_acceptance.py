"""Acceptance checks. Each test prints one PASS/FAIL line with the measured values.

Run alone with ``pytest -v tests/test_acceptance.py``; the robustness-ordering
check plays 40 games on 1000-vertex graphs and takes several minutes.
"""

import math
import random
import statistics
import time
from importlib import resources

import numpy as np
import pytest

from robustgame.attack import parse_profile, parse_profiles, recursive_efficacy
from robustgame.centrality import betweenness_edge, betweenness_vertex
from robustgame.cli import main as cli_main
from robustgame.game import GameConfig, default_repair, play, run_match
from robustgame.generators import (
    GeneratorConfig,
    UswParams,
    derive_seed,
    generate,
    generate_power_law,
    generate_random,
    generate_small_world,
)
from robustgame.graph import parse_edge_list
from robustgame.metrics import avg_path_length, clustering_coefficient
from robustgame.repair import RepairPolicy

from .graphs import random_connected
from .oracles import brute_betweenness, ws_clustering

N = 1000


@pytest.fixture
def report(capsys):
    def emit(num, name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {name}: {detail}")
    return emit


def _sample_graph():
    text = (resources.files("robustgame") / "data" / "sample10.edges").read_text()
    return parse_edge_list(text)


def test_1_power_law_single_edge_kill(report):
    # load the compiled kernels once so the timing covers the games only
    run_match(GeneratorConfig("pl", 20), GameConfig(parse_profile("B-E-H")), 1)
    results = {}
    ok = True
    for n in (100, 1000):
        t0 = time.perf_counter()
        s = run_match(GeneratorConfig("pl", n, m_attach=1), GameConfig(parse_profile("B-E-H"), seed=11), 10)
        dt = time.perf_counter() - t0
        results[n] = (s.shots, round(dt, 2))
        ok &= s.shots == [1] * 10 and dt < 1.0
    report(1, "BA m=1 falls to one B-E-H shot", ok, f"shots and seconds per n {results}")
    assert ok


def test_2_robustness_ordering(report):
    fams = {
        "pl": GeneratorConfig("pl", N, m_attach=1),
        "er": GeneratorConfig("er", N, p=0.01),
        "ws": GeneratorConfig("ws", N, k=10, p=0.1),
        "usw": GeneratorConfig("usw", N, usw=UswParams(beta=0.95, gamma=0.95)),
    }
    med = {}
    shots = {}
    t0 = time.perf_counter()
    for name, gen in fams.items():
        cfg = GameConfig(parse_profile("B-V-H"), shots_per_turn=100, max_turns=10,
                         repair_policy=default_repair(gen), seed=2024)
        s = run_match(gen, cfg, 10)
        med[name], shots[name] = s.median, s.shots
    dt = time.perf_counter() - t0
    ok = med["pl"] < med["er"] <= med["ws"] < med["usw"]
    report(2, "median shots pl < er <= ws < usw under B-V-H", ok,
           f"medians {med}, per-rep {shots}, {dt:.0f} s")
    assert ok


def test_3_high_vs_low_efficacy(report):
    g = _sample_graph()
    t0 = time.perf_counter()
    stats = {p.token: recursive_efficacy(g, p, max_unique_graphs=500_000) for p in parse_profiles("all")}
    dt = time.perf_counter() - t0
    ok = dt < 60 and not any(s.truncated for s in stats.values())
    for m in ("D-V", "B-E", "B-V", "C-V"):
        hi, lo = stats[f"{m}-H"], stats[f"{m}-L"]
        ok &= hi.mean_depth < lo.mean_depth and hi.max_depth <= 3 and lo.min_depth >= 6
    detail = ", ".join(f"{k} mean {s.mean_depth:.2f} [{s.min_depth},{s.max_depth}]" for k, s in stats.items())
    report(3, "H profiles shallow, L profiles deep on the sample graph", ok, f"{detail}; {dt:.1f} s")
    assert ok


def test_4_brandes_matches_brute_force(report):
    rng = random.Random(4)
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(200):
        n = rng.randint(2, 8)
        g = random_connected(rng, n, rng.uniform(0.2, 0.8))
        vb_ref, eb_ref = brute_betweenness({v: set(g.adj[v]) for v in g.adj})
        vb, eb = betweenness_vertex(g), betweenness_edge(g)
        for v, x in vb_ref.items():
            worst = max(worst, abs(vb[v] - float(x)))
        for e, x in eb_ref.items():
            worst = max(worst, abs(eb[e] - float(x)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 10
    report(4, "Brandes equals all-geodesic enumeration on 200 graphs", ok,
           f"max abs error {worst:.2e}, {dt:.1f} s")
    assert ok


def _ccdf_slope(degrees, kmin=2):
    degrees = np.asarray(degrees)
    ks = np.unique(degrees[degrees >= kmin])
    ccdf = np.array([(degrees >= k).mean() for k in ks])
    slope, _ = np.polyfit(np.log(ks), np.log(ccdf), 1)
    return float(slope)


def test_5_generator_statistics(report):
    t0 = time.perf_counter()
    p = 0.01
    means = []
    for seed in range(20):
        g = generate_random(N, p, random.Random(derive_seed(5, "er", seed)))
        means.append(2 * g.m / g.n)
    er_mean = statistics.mean(means)
    er_ok = abs(er_mean - p * (N - 1)) <= 0.05 * p * (N - 1)

    ws = generate_small_world(N, 10, 0.01, random.Random(derive_seed(5, "ws")))
    ws_cc = clustering_coefficient(ws)
    oracle = ws_clustering(10, 0.01)
    ws_ok = abs(ws_cc - oracle) <= 0.05

    ba = generate_power_law(2000, 1, random.Random(derive_seed(5, "ba")))
    slope = _ccdf_slope([len(ba.adj[v]) for v in ba.adj])
    ba_ok = -3.5 <= slope <= -1.5
    dt = time.perf_counter() - t0

    ok = er_ok and ws_ok and ba_ok and dt < 30
    report(5, "generator statistics", ok,
           f"ER mean degree {er_mean:.3f} vs {p * (N - 1):.2f}; WS CC {ws_cc:.4f} vs {oracle:.4f}; "
           f"BA CCDF slope {slope:.2f}; {dt:.1f} s")
    assert ok


def test_6_usw_small_world_character(report):
    t0 = time.perf_counter()
    ratios, apl_ok, rows = [], True, []
    strictly = True
    for seed in range(10):
        g = generate(GeneratorConfig("usw", N, usw=UswParams(beta=0.95, gamma=0.95), seed=seed))
        k = 2 * g.m / g.n
        er = generate_random(N, k / (N - 1), random.Random(derive_seed(seed, "matched-er")))
        cc, cc_er = clustering_coefficient(g), clustering_coefficient(er)
        apl, bound = avg_path_length(g), 2 * math.log(N) / math.log(k)
        strictly &= cc > cc_er
        apl_ok &= apl < bound
        ratios.append(cc / cc_er)
        rows.append(f"{cc:.3f}/{cc_er:.3f} apl {apl:.2f}<{bound:.2f}")
    dt = time.perf_counter() - t0
    mean_ratio = statistics.mean(ratios)
    ok = strictly and mean_ratio > 2 and apl_ok and dt < 60
    report(6, "USW clustering above matched ER, short paths", ok,
           f"mean CC ratio {mean_ratio:.2f}; {'; '.join(rows)}; {dt:.1f} s")
    assert ok


def test_7_game_shape(report):
    t0 = time.perf_counter()
    early, rising, traces = 0, 0, []
    for seed in range(10):
        g = generate(GeneratorConfig("pl", N, m_attach=1, seed=derive_seed(7, "graph", seed)))
        log = play(g, GameConfig(parse_profile("D-V-H"), shots_per_turn=100, max_turns=10,
                                 repair_policy=RepairPolicy("standard"), seed=seed))
        ends = [t.end_attack.damage_ratio for t in log.per_turn]
        lo = ends.index(min(ends))
        early += lo + 1 <= 4
        rising += all(a <= b for a, b in zip(ends[lo:], ends[lo + 1:]))
        traces.append(f"{log.outcome.winner[0]}{log.outcome.turns_played}:{[round(x, 3) for x in ends]}")
    dt = time.perf_counter() - t0
    ok = early >= 7 and rising >= 7 and dt < 120
    report(7, "worst end-of-turn damage by turn 4, recovering after", ok,
           f"min by turn 4 in {early}/10, non-decreasing after min in {rising}/10; "
           f"{' '.join(traces)}; {dt:.1f} s")
    assert ok


def test_8_repair_direction(report):
    t0 = time.perf_counter()
    fams = {
        "er": GeneratorConfig("er", N, p=0.01),
        "pl": GeneratorConfig("pl", N, m_attach=1),
        "ws": GeneratorConfig("ws", N, k=10, p=0.1),
        "usw": GeneratorConfig("usw", N),
    }
    failures = []
    for name, gen in fams.items():
        for seed in range(5):
            g = generate(GeneratorConfig(**{**gen.__dict__, "seed": seed}))
            log = play(g, GameConfig(None, max_turns=10, repair_policy=default_repair(gen), seed=seed))
            seq = [log.per_turn[0].start] + [t.end_repair for t in log.per_turn if t.end_repair]
            for a, b in zip(seq, seq[1:]):
                for metric, up in (("cc", True), ("density", True), ("apl", False), ("diameter", False)):
                    x, y = getattr(a, metric), getattr(b, metric)
                    if (y < x) if up else (y > x):
                        failures.append((name, seed, metric, x, y))
    dt = time.perf_counter() - t0
    ok = not failures and dt < 60
    by_kind = sorted({(f[0], f[2]) for f in failures})
    example = failures[0] if failures else None
    report(8, "repair-only turns raise CC and density, shrink APL and diameter", ok,
           f"{len(failures)} violating turn pairs {by_kind}; first {example}; {dt:.1f} s")
    assert ok


def _run_all(out, sample):
    args = [
        ["generate", "--family", "usw", "--n", "120", "--seed", "5"],
        ["generate", "--family", "er", "--n", "120", "--p", "0.1", "--seed", "5"],
        ["metrics", "--graph", str(out / "usw-n120-s5.edges")],
        ["attack", "--graph", str(out / "usw-n120-s5.edges"), "--profile", "B-V-H", "--seed", "1"],
        ["attack", "--graph", str(out / "er-n120-s5.edges"), "--profile", "B-E-H", "--scores-only"],
        ["efficacy", "--graph", str(sample), "--profiles", "all"],
        ["game", "--graph", str(out / "usw-n120-s5.edges"), "--profile", "D-V-H", "--turns", "5",
         "--shots", "8", "--seed", "3"],
        ["match", "--families", "er,pl,ws,usw", "--profiles", "D-V-H,B-E-H", "--reps", "2", "--n", "80",
         "--p", "0.15", "--k", "4", "--turns", "3", "--shots", "5", "--seed", "9"],
        ["plotdata", "--run-dir", str(out)],
    ]
    codes = [cli_main([*a, "--output-dir", str(out), "--force"]) for a in args]
    assert codes == [0] * len(codes), codes
    return {p.name: p.read_bytes() for p in sorted(out.iterdir()) if p.name != "manifest.json"}


def _strip_timestamps(data: bytes) -> bytes:
    return b"".join(l for l in data.splitlines(True) if not l.lower().startswith(b"# time"))


def test_9_determinism(report, tmp_path):
    sample = tmp_path / "sample10.edges"
    sample.write_text((resources.files("robustgame") / "data" / "sample10.edges").read_text())
    first = _run_all(tmp_path / "a", sample)
    again = _run_all(tmp_path / "a", sample)
    other = _run_all(tmp_path / "b", sample)
    same = all(_strip_timestamps(first[k]) == _strip_timestamps(v) for k, v in again.items())
    same &= first.keys() == other.keys() and all(first[k] == other[k] for k in first)
    csvs = sorted(k for k in first if k.endswith(".csv"))
    report(9, "byte-identical reruns of every subcommand", same, f"{len(first)} files compared ({', '.join(csvs)})")
    assert same
