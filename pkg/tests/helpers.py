"""Shared instance builders for the test suite."""

import numpy as np

from ebmax.graph import NodeEconomics, SocialGraph


def make_graph(n, arcs, directed=True):
    return SocialGraph(n, arcs, directed)


def make_economics(n, targets, benefits=None, costs=None):
    """Economics with unit costs and unit target benefits unless overridden.

    `benefits` maps target id -> value; `costs` maps node id -> value.
    """
    cost = np.ones(n, dtype=float)
    if costs:
        for v, c in costs.items():
            cost[v] = c
    benefit = np.zeros(n, dtype=float)
    for t in targets:
        benefit[t] = 1.0
    if benefits:
        for t, b in benefits.items():
            benefit[t] = b
    return NodeEconomics(cost=cost, benefit=benefit, targets=np.asarray(sorted(targets), dtype=np.int64))


def random_instance(rng, max_nodes=8, max_arcs=12, p_lo=0.05, p_hi=0.95):
    """Small random directed graph with random probabilities, costs, benefits."""
    n = int(rng.integers(2, max_nodes + 1))
    possible = [(u, v) for u in range(n) for v in range(n) if u != v]
    m = int(rng.integers(1, min(max_arcs, len(possible)) + 1))
    picks = rng.choice(len(possible), size=m, replace=False)
    arcs = [
        (possible[i][0], possible[i][1], float(rng.uniform(p_lo, p_hi)))
        for i in sorted(picks.tolist())
    ]
    graph = SocialGraph(n, arcs, True)
    k = max(1, n // 2)
    targets = np.sort(rng.choice(n, size=k, replace=False))
    benefit = np.zeros(n)
    benefit[targets] = rng.uniform(1.0, 10.0, size=k)
    cost = rng.uniform(0.5, 5.0, size=n)
    economics = NodeEconomics(cost=cost, benefit=benefit, targets=targets)
    return graph, economics


def isolated_vs_clique_instance(clique_size=4, eps=0.5):
    """One isolated cheap target plus an expensive all-certain clique.

    Node 0 is isolated with cost 1 - eps; nodes 1..clique_size form a clique
    with every arc probability 1 and per-node cost equal to clique_size.
    Every node is a target with benefit 1. The natural budget is clique_size:
    the ratio greedy grabs node 0 and strands the rest of the budget, while
    any single clique node earns the whole clique.
    """
    p = clique_size
    n = p + 1
    arcs = []
    for u in range(1, n):
        for v in range(1, n):
            if u != v:
                arcs.append((u, v, 1.0))
    graph = SocialGraph(n, arcs, True)
    cost = np.full(n, float(p))
    cost[0] = 1.0 - eps
    benefit = np.ones(n)
    economics = NodeEconomics(cost=cost, benefit=benefit, targets=np.arange(n))
    return graph, economics, float(p)


def random_subset_triple(rng, n):
    """Random S ⊆ T ⊂ nodes and u ∉ T."""
    size_t = int(rng.integers(0, n))  # keep at least one node outside T
    T = sorted(rng.choice(n, size=size_t, replace=False).tolist()) if size_t else []
    size_s = int(rng.integers(0, len(T) + 1))
    S = sorted(rng.choice(T, size=size_s, replace=False).tolist()) if size_s else []
    outside = [v for v in range(n) if v not in set(T)]
    u = int(outside[int(rng.integers(0, len(outside)))])
    return S, T, u
