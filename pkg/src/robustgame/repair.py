"""Alice's per-turn repair: ledger restoration for standard graphs, USW
reattachment walks for USW graphs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .generators import UswParams, usw_max_visits, usw_walk
from .graph import Graph

REPAIR_KINDS = ("standard", "usw", "none")


class MissingUswParams(ValueError):
    pass


@dataclass(frozen=True)
class RepairPolicy:
    kind: str = "standard"
    reactivation_fraction: float = 0.10
    attempt_success_prob: float = 0.90
    fresh_links: bool = False  # standard only: link to random alive vertices instead of the ledger
    usw: UswParams | None = None

    def __post_init__(self):
        if self.kind not in REPAIR_KINDS:
            raise ValueError(f"unknown repair kind {self.kind!r}")
        for name in ("reactivation_fraction", "attempt_success_prob"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {val}")

    def __hash__(self):
        usw = tuple(sorted(self.usw.to_dict().items())) if self.usw else None
        return hash((self.kind, self.reactivation_fraction, self.attempt_success_prob,
                     self.fresh_links, usw))


@dataclass
class RepairReport:
    vertices_restored: int = 0
    edges_attempted: int = 0
    edges_restored: int = 0
    trace: list = field(default_factory=list, repr=False, compare=False)

    COLUMNS = ("vertices_restored", "edges_attempted", "edges_restored")

    def row(self) -> list:
        return [self.vertices_restored, self.edges_attempted, self.edges_restored]


def repair_turn_standard(g: Graph, policy: RepairPolicy, rng: random.Random) -> RepairReport:
    """Reactivate a fraction of the removed vertices and relink them.

    ceil(fraction * |ledger|) vertices come back; each ledgered edge whose
    other end is alive is re-created with ``attempt_success_prob``.
    """
    report = RepairReport()
    ledger = sorted(g.removed)
    report.trace.append(
        ("scope", frozenset(ledger).union(*(g.removed[v] for v in ledger)))
    )
    if not ledger:
        return report
    count = min(len(ledger), math.ceil(policy.reactivation_fraction * len(ledger)))
    chosen = sorted(rng.sample(ledger, count))
    targets = {v: g.restore_vertex(v) for v in chosen}
    for v in chosen:
        report.trace.append(("restore", v))
    report.vertices_restored = count
    for v in chosen:
        nbrs = sorted(u for u in targets[v] if u in g.adj)
        if policy.fresh_links:
            pool = sorted(u for u in g.adj if u != v)
            nbrs = sorted(rng.sample(pool, min(len(targets[v]), len(pool))))
            report.trace.append(("scope", frozenset(pool)))
        for u in nbrs:
            report.edges_attempted += 1
            if rng.random() < policy.attempt_success_prob and g.add_edge(v, u):
                report.edges_restored += 1
                report.trace.append(("edge", v, u))
    return report


def repair_turn_usw(g: Graph, policy: RepairPolicy, rng: random.Random) -> RepairReport:
    """Run the USW attachment walk from L randomly chosen alive nodes.

    Each chosen node walks a fresh uniform t-fraction sample of the alive
    graph, using the construction-time beta and gamma. Only edges are added.
    """
    params = policy.usw
    if params is None:
        raise MissingUswParams("USW repair needs the graph's construction parameters")
    report = RepairReport()
    alive = g.vertices()
    if not alive or params.l_repair == 0:
        return report
    actors = sorted(rng.sample(alive, min(params.l_repair, len(alive))))
    cap = usw_max_visits(len(alive))
    for v in actors:
        pool_size = min(len(alive), math.ceil(params.t * len(alive)))
        pool = sorted(rng.sample(alive, pool_size))
        report.trace.append(("scope", frozenset(pool) | {v}))
        before = len(report.trace)
        added = usw_walk(g, v, params, rng, pool, cap, trace=report.trace)
        report.edges_attempted += sum(1 for ev in report.trace[before:] if ev[0] == "visit")
        report.edges_restored += added
    report.vertices_restored = 0
    return report


def repair_turn(g: Graph, policy: RepairPolicy, rng: random.Random) -> RepairReport:
    if policy.kind == "standard":
        return repair_turn_standard(g, policy, rng)
    if policy.kind == "usw":
        return repair_turn_usw(g, policy, rng)
    return RepairReport()


def locality_audit(trace) -> bool:
    """True iff every repair action stayed inside its declared local scope.

    A trace is a sequence of events: ``("scope", vertices)`` opens the set
    the repairer may touch, ``("visit", u)``, ``("restore", v)`` and
    ``("edge", v, u)`` are actions, and any ``("centrality", ...)`` event is
    a read of global knowledge and fails the audit outright.
    """
    scope: frozenset = frozenset()
    for event in trace:
        tag = event[0]
        if tag == "scope":
            scope = event[1]
        elif tag == "centrality":
            return False
        elif tag in ("visit", "restore"):
            if event[1] not in scope:
                return False
        elif tag == "edge":
            # the acting vertex itself plus whatever it may reach
            if event[2] not in scope:
                return False
        else:
            return False
    return True
