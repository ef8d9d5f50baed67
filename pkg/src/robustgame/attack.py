"""Profile-driven attacker: extremal component selection and removal."""

from __future__ import annotations

import math
import random
import re
import sys
from collections import Counter
from dataclasses import dataclass

from .centrality import MEASURES
from .graph import ComponentRef, Graph, is_connected

TIE_EPS = 1e-9

MEASURE_NAMES = {"D": "Degreeness", "B": "Betweenness", "C": "Closeness"}
ALL_PROFILES = ("D-V-L", "D-V-H", "B-E-L", "B-E-H", "B-V-L", "B-V-H", "C-V-L", "C-V-H")
_TOKEN = re.compile(r"^([DBC])-([EV])-([LH])$")


class ProfileError(ValueError):
    pass


class InvalidCombination(ProfileError):
    pass


class ShotLimitExceeded(RuntimeError):
    def __init__(self, shots: int):
        super().__init__(f"graph still connected after {shots} shots")
        self.shots = shots


@dataclass(frozen=True)
class AttackProfile:
    measure: str  # D, B or C
    component: str  # V or E
    extremal: str  # L or H

    @property
    def token(self) -> str:
        return f"{self.measure}-{self.component}-{self.extremal}"

    def __str__(self) -> str:
        return self.token


def parse_profile(token: str) -> AttackProfile:
    m = _TOKEN.match(token.strip().upper())
    if not m:
        raise ProfileError(f"malformed profile {token!r}; expected e.g. B-V-H")
    measure, component, extremal = m.groups()
    if component == "E" and measure != "B":
        raise InvalidCombination(f"{MEASURE_NAMES[measure]} has no edge variant ({token})")
    return AttackProfile(measure, component, extremal)


def parse_profiles(spec: str) -> list[AttackProfile]:
    if spec.strip().lower() == "all":
        return [parse_profile(t) for t in ALL_PROFILES]
    return [parse_profile(t) for t in spec.split(",") if t.strip()]


def attackable(g: Graph, profile: AttackProfile) -> bool:
    """False once nothing left to shoot can matter: one vertex, or no edges."""
    if profile.component == "V":
        return g.n >= 2
    return g.m >= 1


def candidate_set(g: Graph, profile: AttackProfile) -> list[ComponentRef]:
    """Components whose score ties the extremal value, in sorted order."""
    if g.n == 0:
        raise ValueError("cannot attack an empty graph")
    scores = MEASURES[profile.measure, profile.component](g).scores
    if not scores:
        raise ValueError(f"no {profile.component} components to attack")
    best = max(scores.values()) if profile.extremal == "H" else min(scores.values())
    return sorted(ref for ref, s in scores.items() if abs(s - best) <= TIE_EPS)


def attack_shot(g: Graph, profile: AttackProfile, rng: random.Random) -> ComponentRef:
    cands = candidate_set(g, profile)
    ref = cands[rng.randrange(len(cands))] if len(cands) > 1 else cands[0]
    g.remove(ref)
    return ref


def attack_until_disconnected(
    g: Graph, profile: AttackProfile, rng: random.Random, shot_limit: int | None = None
) -> int:
    """Shots fired until ``g`` disconnects.

    Raises ShotLimitExceeded when the limit is hit or the graph runs out of
    components while still connected.
    """
    shots = 0
    while is_connected(g):
        if (shot_limit is not None and shots >= shot_limit) or not attackable(g, profile):
            raise ShotLimitExceeded(shots)
        attack_shot(g, profile, rng)
        shots += 1
    return shots


@dataclass
class EfficacyStats:
    profile: str
    unique_graphs: int
    max_depth: int
    min_depth: int
    mean_depth: float
    stddev_depth: float
    paths: int
    truncated: bool

    COLUMNS = ("profile", "unique_graphs", "max_depth", "min_depth", "mean_depth",
               "stddev_depth", "paths", "truncated")

    def row(self) -> list:
        return [getattr(self, c) for c in self.COLUMNS]


def recursive_efficacy(
    g: Graph,
    profile: AttackProfile,
    max_unique_graphs: int = 500_000,
    max_depth: int | None = None,
) -> EfficacyStats:
    """Branch over every tied candidate until disconnection.

    States are keyed by their labeled edge set, so a graph reached along two
    different removal orders is expanded once. Depth statistics run over
    every root-to-leaf path; the per-state distribution of remaining depths
    is memoized so path counts never have to be enumerated one by one.
    Leaves are disconnected graphs and graphs that can no longer be
    attacked (a single vertex left).
    """
    if max_depth is None:
        max_depth = g.n if profile.component == "V" else g.m
    memo: dict[tuple, Counter] = {}
    truncated = False

    def explore(state: Graph, depth: int) -> Counter:
        nonlocal truncated
        key = state.canonical_key()
        hit = memo.get(key)
        if hit is not None:
            return hit
        if len(memo) >= max_unique_graphs:
            truncated = True
            return Counter()
        if not is_connected(state) or not attackable(state, profile):
            dist = Counter({0: 1})
        elif depth >= max_depth:
            truncated = True
            dist = Counter()
        else:
            dist = Counter()
            for ref in candidate_set(state, profile):
                child = state.copy()
                child.remove(ref)
                for d, count in explore(child, depth + 1).items():
                    dist[d + 1] += count
        memo[key] = dist
        return dist

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * (g.n + g.m) + 100))
    try:
        dist = explore(g.copy(), 0)
    finally:
        sys.setrecursionlimit(limit)

    total = sum(dist.values())
    if total == 0:
        return EfficacyStats(profile.token, len(memo), 0, 0, 0.0, 0.0, 0, True)
    mean = sum(d * c for d, c in dist.items()) / total
    var = sum(c * (d - mean) ** 2 for d, c in dist.items()) / total
    return EfficacyStats(
        profile=profile.token,
        unique_graphs=len(memo),
        max_depth=max(dist),
        min_depth=min(dist),
        mean_depth=mean,
        stddev_depth=math.sqrt(var),
        paths=total,
        truncated=truncated,
    )


def attacker_reach(avg_degree: float, pl: int, n: int | None = None) -> float:
    """Expected size of the radius-``pl`` ball around a vertex (tree-like estimate).

    1 + d + d(d-1) + ... + d(d-1)^(pl-1), capped at ``n`` when given.
    """
    if pl < 0:
        raise ValueError("pl must be >= 0")
    if avg_degree <= 1:
        raise ValueError("avg_degree must be > 1")
    total = 1.0 + sum(avg_degree * (avg_degree - 1) ** (i - 1) for i in range(1, pl + 1))
    return min(total, n) if n is not None else total
