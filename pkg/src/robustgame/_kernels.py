"""Compiled BFS / Brandes kernels over a CSR view of a Graph.

Every kernel walks sources and neighbors in a fixed order, so results are
bit-reproducible run to run.
"""

from __future__ import annotations

import numpy as np
from numba import njit


class CSR:
    """Dense 0..n-1 relabeling of a Graph's alive vertices.

    ``order[i]`` is the original label of dense index ``i``. Adjacency rows
    are sorted. ``edge_of`` (edge index of each adjacency slot) is built on
    first use; only Brandes needs it.
    """

    def __init__(self, g):
        order = sorted(g.adj)
        self.order = order
        n = len(order)
        dense = n == 0 or order[-1] == n - 1
        index = None if dense else {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            nbrs = g.adj[v]
            rows.append(sorted(nbrs) if dense else sorted(index[w] for w in nbrs))
        lengths = np.fromiter((len(r) for r in rows), dtype=np.int64, count=n)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(lengths, out=self.indptr[1:])
        self.indices = np.fromiter(
            (w for r in rows for w in r), dtype=np.int64, count=int(self.indptr[-1])
        )
        self._edge_of = None

    @property
    def edge_of(self):
        if self._edge_of is None:
            self._edge_of = edge_slots(self.indptr, self.indices)
        return self._edge_of

    @property
    def n_edges(self) -> int:
        return int(self.indptr[-1]) // 2

    def edge_list(self) -> list[tuple[int, int]]:
        """Original-label endpoints of every edge, indexed like ``edge_of``."""
        src = np.repeat(np.arange(len(self.order)), np.diff(self.indptr))
        mask = src < self.indices
        order = self.order
        return [(order[i], order[j]) for i, j in zip(src[mask].tolist(), self.indices[mask].tolist())]


@njit(cache=True)
def edge_slots(indptr, indices):
    """Edge id of every adjacency slot; ids follow (u < v) row-major order."""
    n = indptr.shape[0] - 1
    edge_of = np.empty(indices.shape[0], dtype=np.int64)
    nxt = 0
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if u < v:
                edge_of[k] = nxt
                nxt += 1
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if u > v:
                # find slot of u in row v (rows sorted)
                lo = indptr[v]
                hi = indptr[v + 1]
                while lo < hi:
                    mid = (lo + hi) // 2
                    if indices[mid] < u:
                        lo = mid + 1
                    else:
                        hi = mid
                edge_of[k] = edge_of[lo]
    return edge_of


@njit(cache=True)
def triangles_and_triples(indptr, indices):
    """Return (3 * triangles, connected triples) for a CSR graph with sorted rows."""
    n = indptr.shape[0] - 1
    mark = np.zeros(n, dtype=np.bool_)
    tri6 = 0
    triples = 0
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        triples += d * (d - 1) // 2
        for k in range(indptr[v], indptr[v + 1]):
            mark[indices[k]] = True
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            for j in range(indptr[u], indptr[u + 1]):
                if mark[indices[j]]:
                    tri6 += 1
        for k in range(indptr[v], indptr[v + 1]):
            mark[indices[k]] = False
    # each triangle is counted twice at each of its three corners
    return tri6 // 2, triples


@njit(cache=True)
def all_sources_bfs(indptr, indices):
    """Per-source reach count, distance sum, inverse-distance sum, eccentricity."""
    n = indptr.shape[0] - 1
    reach = np.zeros(n, dtype=np.int64)
    dsum = np.zeros(n, dtype=np.int64)
    invsum = np.zeros(n, dtype=np.float64)
    ecc = np.zeros(n, dtype=np.int64)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du > 0:
                dsum[s] += du
                invsum[s] += 1.0 / du
                if du > ecc[s]:
                    ecc[s] = du
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        reach[s] = tail - 1
    return reach, dsum, invsum, ecc


@njit(cache=True)
def brandes(indptr, indices, edge_of, n_edges, with_edges=True):
    """Unnormalized vertex and edge betweenness over ordered pairs.

    Callers halve both arrays to get the unordered-pair convention. With
    ``with_edges`` false the edge array stays zero and ``edge_of`` is unused.
    """
    n = indptr.shape[0] - 1
    vb = np.zeros(n, dtype=np.float64)
    eb = np.zeros(n_edges, dtype=np.float64)
    sigma = np.zeros(n, dtype=np.float64)
    delta = np.zeros(n, dtype=np.float64)
    dist = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    for s in range(n):
        for i in range(n):
            sigma[i] = 0.0
            delta[i] = 0.0
            dist[i] = -1
        sigma[s] = 1.0
        dist[s] = 0
        # BFS order doubles as the stack; predecessors are recovered from dist.
        head = 0
        tail = 1
        stack[0] = s
        while head < tail:
            u = stack[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    stack[tail] = w
                    tail += 1
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
        for j in range(tail - 1, -1, -1):
            w = stack[j]
            coef = (1.0 + delta[w]) / sigma[w]
            dprev = dist[w] - 1
            for k in range(indptr[w], indptr[w + 1]):
                v = indices[k]
                if dist[v] == dprev:
                    c = sigma[v] * coef
                    if with_edges:
                        eb[edge_of[k]] += c
                    delta[v] += c
            if w != s:
                vb[w] += delta[w]
    return vb, eb
