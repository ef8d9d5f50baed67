"""Degree, betweenness (vertex and edge) and closeness centrality."""

from __future__ import annotations

from dataclasses import dataclass

from ._kernels import CSR, all_sources_bfs, brandes
from .graph import ComponentRef, Graph


class DisconnectedInput(ValueError):
    pass


@dataclass
class CentralityScores:
    kind: str
    scores: dict[ComponentRef, float]

    def __getitem__(self, key):
        if not isinstance(key, ComponentRef):
            key = ComponentRef.edge(*key) if isinstance(key, tuple) else ComponentRef.vertex(key)
        return self.scores[key]

    def rows(self):
        for ref in sorted(self.scores):
            yield self.kind, str(ref), self.scores[ref]


def degree_centrality(g: Graph) -> CentralityScores:
    return CentralityScores(
        "degree", {ComponentRef.vertex(v): float(len(nb)) for v, nb in g.adj.items()}
    )


def _brandes(g: Graph, with_edges: bool):
    csr = CSR(g)
    if with_edges:
        vb, eb = brandes(csr.indptr, csr.indices, csr.edge_of, csr.n_edges, True)
    else:
        vb, eb = brandes(csr.indptr, csr.indices, csr.indices, 0, False)
    return csr, vb / 2.0, eb / 2.0


def betweenness_vertex(g: Graph) -> CentralityScores:
    """Sum over unordered pairs {s, t} (v not an endpoint) of sigma_st(v) / sigma_st."""
    csr, vb, _ = _brandes(g, False)
    return CentralityScores(
        "betweenness_vertex",
        {ComponentRef.vertex(v): float(vb[i]) for i, v in enumerate(csr.order)},
    )


def betweenness_edge(g: Graph) -> CentralityScores:
    """Edge betweenness over unordered pairs; an edge counts its own endpoint pair."""
    csr, _, eb = _brandes(g, True)
    return CentralityScores(
        "betweenness_edge",
        {ComponentRef.edge(u, v): float(x) for (u, v), x in zip(csr.edge_list(), eb.tolist())},
    )


def closeness(g: Graph) -> CentralityScores:
    """(n - 1) / sum of distances. Requires a connected graph."""
    csr = CSR(g)
    n = len(csr.order)
    reach, dsum, _, _ = all_sources_bfs(csr.indptr, csr.indices)
    if n > 1 and (reach < n - 1).any():
        raise DisconnectedInput("closeness is undefined on a disconnected graph")
    scores = {}
    for i, v in enumerate(csr.order):
        scores[ComponentRef.vertex(v)] = (n - 1) / float(dsum[i]) if n > 1 else 0.0
    return CentralityScores("closeness", scores)


MEASURES = {
    ("D", "V"): degree_centrality,
    ("B", "V"): betweenness_vertex,
    ("B", "E"): betweenness_edge,
    ("C", "V"): closeness,
}
