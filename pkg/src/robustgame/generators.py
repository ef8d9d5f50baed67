"""Random, power-law, small-world and USW graph generators.

All generators take a ``random.Random`` and are deterministic given its
seed. ``generate`` wraps them with the simple+connected check, redrawing
with derived seeds until the result is connected.
"""

from __future__ import annotations

import hashlib
import math
import random
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .graph import Graph, is_connected

FAMILIES = ("er", "pl", "ws", "usw")
FAMILY_ALIASES = {
    "random": "er",
    "erdos_renyi": "er",
    "powerlaw": "pl",
    "power_law": "pl",
    "ba": "pl",
    "smallworld": "ws",
    "small_world": "ws",
    "usw": "usw",
}


class ConnectivityRetryExhausted(RuntimeError):
    pass


def derive_seed(master: int, *parts) -> int:
    """Stable 64-bit child seed for ``(master, *parts)``."""
    text = ":".join(str(x) for x in (master, *parts))
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


# -- USW policies -----------------------------------------------------------
# Each policy table is an extension point; the build ships one entry each.


def _entry_uniform(rng: random.Random, candidates: list[int]) -> int:
    return candidates[rng.randrange(len(candidates))]


ATTACHMENT_POLICIES: dict[str, Callable[[random.Random, list[int]], int]] = {
    "uniform_random": _entry_uniform,
}


def _neighbors_shuffled(rng: random.Random, nbrs: Iterable[int]) -> list[int]:
    order = sorted(nbrs)
    rng.shuffle(order)
    return order


# visitation: candidates are visited in queue order; a visited node's
# neighbors are offered to the queue in random order so label order
# (node age) does not bias the walk toward the oldest nodes.
VISITATION_POLICIES: dict[str, Callable[[random.Random, Iterable[int]], list[int]]] = {
    "queue_order": _neighbors_shuffled,
}
QUEUE_POLICIES: dict[str, Callable[[deque], int]] = {
    "fifo": deque.popleft,
}


@dataclass
class UswParams:
    beta: float = 0.95
    gamma: float = 0.95
    t: float = 0.10
    l_repair: int = 10
    alpha: float | None = None  # carried through to sidecars, not used
    attachment_policy: str = "uniform_random"
    visitation_policy: str = "queue_order"
    queue_policy: str = "fifo"

    def __post_init__(self):
        for name in ("beta", "gamma", "t"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {val}")
        if self.l_repair < 0:
            raise ValueError("l_repair must be >= 0")
        if self.attachment_policy not in ATTACHMENT_POLICIES:
            raise ValueError(f"unknown attachment policy {self.attachment_policy!r}")
        if self.visitation_policy not in VISITATION_POLICIES:
            raise ValueError(f"unknown visitation policy {self.visitation_policy!r}")
        if self.queue_policy not in QUEUE_POLICIES:
            raise ValueError(f"unknown queue policy {self.queue_policy!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class GeneratorConfig:
    family: str
    n: int
    p: float = 0.01
    k: int = 10
    m_attach: int = 1
    usw: UswParams = field(default_factory=UswParams)
    seed: int = 0
    max_retries: int = 100

    def __post_init__(self):
        self.family = FAMILY_ALIASES.get(self.family, self.family)
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be in [0, 1]")
        if self.family == "ws" and (self.k % 2 or not 2 <= self.k < self.n):
            raise ValueError("k must be even with 2 <= k < n")
        if self.family == "pl" and not 1 <= self.m_attach < self.n:
            raise ValueError("m_attach must satisfy 1 <= m_attach < n")

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.family != "usw":
            del d["usw"]
        return d


def generate_random(n: int, p: float, rng: random.Random) -> Graph:
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def generate_power_law(n: int, m_attach: int, rng: random.Random) -> Graph:
    """Barabasi-Albert growth from a clique on ``m_attach + 1`` vertices."""
    if not 1 <= m_attach < n:
        raise ValueError("need 1 <= m_attach < n")
    g = Graph(n)
    seed_size = m_attach + 1
    # each endpoint appears once per incident edge -> degree-proportional draws
    endpoints: list[int] = []
    for u in range(seed_size):
        for v in range(u + 1, seed_size):
            g.add_edge(u, v)
            endpoints += (u, v)
    for v in range(seed_size, n):
        targets: set[int] = set()
        while len(targets) < m_attach:
            targets.add(endpoints[rng.randrange(len(endpoints))])
        for u in sorted(targets):
            g.add_edge(v, u)
            endpoints += (v, u)
    return g


def generate_small_world(n: int, k: int, p: float, rng: random.Random) -> Graph:
    """Ring lattice with k/2 neighbors per side, each edge rewired with prob p."""
    if k % 2 or not 2 <= k < n:
        raise ValueError("k must be even with 2 <= k < n")
    g = Graph(n)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            g.add_edge(u, (u + j) % n)
    if p == 0:
        return g
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() >= p or not g.has_edge(u, v):
                continue
            if g.degree(u) >= n - 1:
                continue
            w = rng.randrange(n)
            while w == u or g.has_edge(u, w):
                w = rng.randrange(n)
            g.remove_edge(u, v)
            g.add_edge(u, w)
    return g


def usw_walk(
    g: Graph,
    v: int,
    params: UswParams,
    rng: random.Random,
    candidates: list[int],
    max_visits: int,
    trace: list | None = None,
) -> int:
    """One local attachment walk for vertex ``v``; returns the number of new edges.

    The walk starts at an entry point drawn from ``candidates`` and only
    moves to neighbors that are themselves in ``candidates``. At each
    visited node a draw above ``beta`` creates an edge to it, plus edges to
    a ``gamma`` share of the nodes that failed the draw earlier in the walk.
    """
    if not candidates:
        return 0
    allowed = set(candidates)
    allowed.discard(v)
    if not allowed:
        return 0
    pick_entry = ATTACHMENT_POLICIES[params.attachment_policy]
    order_nbrs = VISITATION_POLICIES[params.visitation_policy]
    pop = QUEUE_POLICIES[params.queue_policy]

    entry = pick_entry(rng, sorted(allowed))
    queue = deque([entry])
    seen = {entry}
    failed: list[int] = []
    added = 0
    visits = 0
    while queue and visits < max_visits:
        u = pop(queue)
        visits += 1
        if trace is not None:
            trace.append(("visit", u))
        for w in order_nbrs(rng, g.adj[u]):
            if w in allowed and w not in seen:
                seen.add(w)
                queue.append(w)
        if u in g.adj[v]:
            # already linked: traversed, never a connection candidate
            continue
        if rng.random() > params.beta:
            share = rng.sample(failed, round(params.gamma * len(failed))) if failed else []
            for w in [u, *share]:
                if g.add_edge(v, w):
                    added += 1
                    if trace is not None:
                        trace.append(("edge", v, w))
            if share:
                reused = set(share)
                failed = [w for w in failed if w not in reused]
        else:
            failed.append(u)
    return added


def usw_max_visits(n: int) -> int:
    return math.ceil(math.sqrt(n)) + 5


def generate_usw(n: int, params: UswParams, rng: random.Random) -> Graph:
    """Grow a graph one node at a time, each node attaching by a local walk."""
    if n < 2:
        raise ValueError("n must be >= 2")
    g = Graph(1)
    cap = usw_max_visits(n)
    for _ in range(1, n):
        existing = g.vertices()
        v = g.add_vertex()
        while g.degree(v) == 0:
            usw_walk(g, v, params, rng, existing, cap)
    return g


def _build(config: GeneratorConfig, rng: random.Random) -> Graph:
    if config.family == "er":
        return generate_random(config.n, config.p, rng)
    if config.family == "pl":
        return generate_power_law(config.n, config.m_attach, rng)
    if config.family == "ws":
        return generate_small_world(config.n, config.k, config.p, rng)
    return generate_usw(config.n, config.usw, rng)


def generate(config: GeneratorConfig) -> Graph:
    """Simple connected graph for ``config``; retries with derived seeds."""
    for attempt in range(config.max_retries):
        seed = config.seed if attempt == 0 else derive_seed(config.seed, "retry", attempt)
        g = _build(config, random.Random(seed))
        if is_connected(g):
            return g
    raise ConnectivityRetryExhausted(
        f"{config.family} graph (n={config.n}) still disconnected after "
        f"{config.max_retries} attempts; parameters are too sparse"
    )
