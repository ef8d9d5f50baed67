"""Attack-progress metrics, evaluated on possibly disconnected graphs.

Path-based quantities (average path length, diameter, density) are taken
over the largest connected component. The inverse-path and efficiency
metrics run over all alive pairs, where a disconnected pair contributes 0.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from ._kernels import CSR, all_sources_bfs, triangles_and_triples
from .graph import Graph, largest_component


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class MetricsSnapshot:
    n: int
    m: int
    aipl: float
    apl: float
    cc: float
    density: float
    damage_ratio: float
    diameter: int
    efficiency: float

    def row(self) -> list:
        return list(astuple(self))


SNAPSHOT_FIELDS = tuple(f.name for f in fields(MetricsSnapshot))


class _Sweep:
    """One all-sources BFS, with the largest component picked out of it."""

    def __init__(self, g: Graph):
        self.n = g.n
        csr = CSR(g)
        self.csr = csr
        self.reach, self.dsum, self.invsum, self.ecc = all_sources_bfs(csr.indptr, csr.indices)
        lcc = largest_component(g)
        self.k = len(lcc)
        pos = {v: i for i, v in enumerate(csr.order)}
        self.lcc_idx = np.array(sorted(pos[v] for v in lcc), dtype=np.int64)

    def inverse_mean(self) -> float:
        n = self.n
        # every unordered pair is counted from both ends
        return float(self.invsum.sum()) / (n * (n - 1))

    def apl(self) -> float:
        k = self.k
        return float(self.dsum[self.lcc_idx].sum()) / (k * (k - 1))

    def diameter(self) -> int:
        return int(self.ecc[self.lcc_idx].max())

    def density(self) -> float:
        k = self.k
        if k < 2:
            return 0.0
        deg = np.diff(self.csr.indptr)
        m_lcc = int(deg[self.lcc_idx].sum()) // 2
        return 2.0 * m_lcc / (k * (k - 1))


def avg_inverse_path_length(g: Graph) -> float:
    """Mean of 1/d over unordered distinct pairs, with 1/inf = 0."""
    if g.n < 2:
        raise MetricError("average inverse path length needs at least 2 vertices")
    return _Sweep(g).inverse_mean()


def global_efficiency(g: Graph) -> float:
    """Sum of 1/d over ordered pairs divided by n(n-1)."""
    if g.n < 2:
        raise MetricError("global efficiency needs at least 2 vertices")
    return _Sweep(g).inverse_mean()


def avg_path_length(g: Graph) -> float:
    sweep = _Sweep(g)
    if sweep.k < 2:
        raise MetricError("largest component has fewer than 2 vertices")
    return sweep.apl()


def diameter(g: Graph) -> int:
    if g.n == 0:
        raise MetricError("empty graph has no diameter")
    return _Sweep(g).diameter()


def clustering_coefficient(g: Graph) -> float:
    """Global transitivity: 3 * triangles / connected triples (0 without triples)."""
    csr = CSR(g)
    tri3, triples = triangles_and_triples(csr.indptr, csr.indices)
    return tri3 / triples if triples else 0.0


def density(g: Graph) -> float:
    return _Sweep(g).density()


def damage_ratio(g: Graph) -> float:
    if g.n == 0:
        raise MetricError("damage ratio of an empty graph")
    return len(largest_component(g)) / g.n


def snapshot(g: Graph) -> MetricsSnapshot:
    """All metrics from a single BFS sweep. Undefined values (too few vertices) are 0."""
    n = g.n
    if n == 0:
        return MetricsSnapshot(0, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 0, 0.0)
    sweep = _Sweep(g)
    eff = sweep.inverse_mean() if n >= 2 else 0.0
    k = sweep.k
    tri3, triples = triangles_and_triples(sweep.csr.indptr, sweep.csr.indices)
    return MetricsSnapshot(
        n=n,
        m=g.m,
        aipl=eff,
        apl=sweep.apl() if k >= 2 else 0.0,
        cc=tri3 / triples if triples else 0.0,
        density=sweep.density(),
        damage_ratio=k / n,
        diameter=sweep.diameter(),
        efficiency=eff,
    )
