"""Independent reference computations used as test oracles.

Nothing here touches the compiled kernels; everything is enumerated by brute
force on small graphs.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction


def distances(adj, s):
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def all_geodesics(adj, s, t):
    """Every shortest s-t path, as a vertex tuple, by bounded DFS."""
    d = distances(adj, s).get(t)
    if d is None:
        return []
    out = []

    def walk(path):
        u = path[-1]
        if len(path) - 1 == d:
            if u == t:
                out.append(tuple(path))
            return
        for w in sorted(adj[u]):
            if w not in path:
                walk(path + [w])

    walk([s])
    return out


def brute_betweenness(adj):
    """Exact (Fraction) vertex and edge betweenness over unordered pairs."""
    vb = {v: Fraction(0) for v in adj}
    eb = {}
    for u in adj:
        for w in adj[u]:
            if u < w:
                eb[(u, w)] = Fraction(0)
    for s, t in itertools.combinations(sorted(adj), 2):
        paths = all_geodesics(adj, s, t)
        if not paths:
            continue
        share = Fraction(1, len(paths))
        for p in paths:
            for v in p[1:-1]:
                vb[v] += share
            for a, b in zip(p, p[1:]):
                eb[(min(a, b), max(a, b))] += share
    return vb, eb


def brute_pair_distances(adj):
    """Distances for every unordered pair; None when disconnected."""
    out = {}
    for s, t in itertools.combinations(sorted(adj), 2):
        out[(s, t)] = distances(adj, s).get(t)
    return out


def brute_transitivity(adj):
    tri = 0
    for a, b, c in itertools.combinations(sorted(adj), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            tri += 1
    triples = sum(len(adj[v]) * (len(adj[v]) - 1) // 2 for v in adj)
    return Fraction(3 * tri, triples) if triples else Fraction(0)


def ws_clustering(k, p):
    """Closed-form clustering of a Watts-Strogatz ring lattice after rewiring."""
    return 3 * (k - 2) / (4 * (k - 1)) * (1 - p) ** 3
