"""Brute-force oracles. None of these call into the construction or verifier code."""
import math

import numpy as np


def pivots_from_matrix(dist, level, k):
    """pivot_dist[i][v], pivot[i][v] for i in 0..k+1 straight from a distance matrix."""
    n = len(level)
    pd, pv = [], []
    for i in range(k + 2):
        members = [u for u in range(n) if level[u] >= i] if i <= k else []
        row_d, row_p = [], []
        for v in range(n):
            best, arg = math.inf, -1
            if v in members:  # members pivot to themselves, even across zero-weight edges
                best, arg = 0.0, v
            for u in members:  # ascending ids, so strict < keeps the smallest minimizer
                if dist[v][u] < best:
                    best, arg = dist[v][u], u
            row_d.append(best)
            row_p.append(arg)
        pd.append(row_d)
        pv.append(row_p)
    return pd, pv


def bunches_from_matrix(dist, level, k, i):
    pd, _ = pivots_from_matrix(dist, level, k)
    n = len(level)
    out = {}
    for v in range(n):
        if level[v] != i:
            continue
        thr = pd[i + 1][v]
        out[v] = {u: float(dist[v][u]) for u in range(n) if level[u] >= i and dist[v][u] < thr}
    return out


def hopset_from_matrix(dist, level, k):
    """Edge set {(a, b, level): weight} from the definitions alone."""
    pd, pv = pivots_from_matrix(dist, level, k)
    edges = {}
    for i in range(k + 1):
        for v, bunch in bunches_from_matrix(dist, level, k, i).items():
            targets = [u for u in bunch if u != v]
            if pv[i + 1][v] >= 0:
                targets.append(pv[i + 1][v])
            for u in targets:
                key = (min(u, v), max(u, v), i)
                edges[key] = min(edges.get(key, math.inf), float(dist[v][u]))
    return edges


def bellman_ford_hops(n, edges, source, beta):
    """Textbook hop-limited Bellman-Ford over an undirected edge list; returns all rounds."""
    d = [math.inf] * n
    d[source] = 0.0
    rounds = [list(d)]
    for _ in range(beta):
        nd = list(d)
        for u, v, w in edges:
            if d[u] + w < nd[v]:
                nd[v] = d[u] + w
            if d[v] + w < nd[u]:
                nd[u] = d[v] + w
        d = nd
        rounds.append(list(d))
    return rounds


def bfs(n, edges, source):
    adj = [[] for _ in range(n)]
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    d = [math.inf] * n
    d[source] = 0
    frontier = [source]
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if d[y] == math.inf:
                    d[y] = d[x] + 1
                    nxt.append(y)
        frontier = nxt
    return np.array(d, dtype=float)
