"""Perfect matchings, Hamiltonian cycles and 1-factorisations of K6."""

from __future__ import annotations

import itertools
import time
from math import comb

from .report import ReportEntry

VERTICES = tuple(range(6))
EDGES = tuple(itertools.combinations(VERTICES, 2))

Matching = tuple  # three sorted edges, sorted
Factorisation = tuple  # five matchings, sorted


def is_perfect_matching(m) -> bool:
    return len(m) == 3 and sorted(v for e in m for v in e) == list(VERTICES)


def perfect_matchings() -> list[Matching]:
    out = []

    def rec(free, acc):
        if not free:
            out.append(tuple(sorted(acc)))
            return
        a = free[0]
        for b in free[1:]:
            rec([v for v in free if v not in (a, b)], acc + [(a, b)])

    rec(list(VERTICES), [])
    return sorted(out)


def canonical_cycle(cycle) -> tuple[int, ...]:
    """Rotate to the least vertex and orient towards its smaller neighbour."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if c[-1] < c[1]:
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


def cycle_edges(cycle) -> frozenset:
    n = len(cycle)
    return frozenset(tuple(sorted((cycle[i], cycle[(i + 1) % n]))) for i in range(n))


def six_cycles() -> list[tuple[int, ...]]:
    """Hamiltonian cycles of K6, each once."""
    return sorted({canonical_cycle((0,) + rest) for rest in itertools.permutations(VERTICES[1:])})


def split_cycle(cycle) -> tuple[Matching, Matching]:
    """The two alternating perfect matchings of a 6-cycle."""
    edges = [tuple(sorted((cycle[i], cycle[(i + 1) % 6]))) for i in range(6)]
    return tuple(sorted(edges[0::2])), tuple(sorted(edges[1::2]))


def factorisations() -> list[Factorisation]:
    """Exact covers of the 15 edges by 5 perfect matchings."""
    matchings = [(m, frozenset(m)) for m in perfect_matchings()]
    out = []

    def rec(uncovered, chosen, start):
        if not uncovered:
            out.append(tuple(sorted(chosen)))
            return
        edge = min(uncovered)
        for idx in range(len(matchings)):
            m, es = matchings[idx]
            if edge in es and es <= uncovered:
                rec(uncovered - es, chosen + [m], idx + 1)

    rec(frozenset(EDGES), [], 0)
    return sorted(set(out))


def class_pair_cycles(facts=None) -> dict:
    """Map (factorisation index, class pair) to the 6-cycle formed by their union."""
    facts = factorisations() if facts is None else facts
    result = {}
    for fi, F in enumerate(facts):
        for a, b in itertools.combinations(range(5), 2):
            edges = set(F[a]) | set(F[b])
            adj = {v: [] for v in VERTICES}
            for x, y in edges:
                adj[x].append(y)
                adj[y].append(x)
            if any(len(nb) != 2 for nb in adj.values()):
                raise AssertionError("union of two classes is not 2-regular")
            walk, prev = [0], None
            while len(walk) < 7:
                cur = walk[-1]
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                prev = cur
                walk.append(nxt)
            if walk[-1] != 0 or len(set(walk[:-1])) != 6:
                raise AssertionError("union of two classes is not a single 6-cycle")
            result[fi, a, b] = canonical_cycle(walk[:-1])
    return result


def verify_lemma4() -> ReportEntry:
    start = time.perf_counter()
    facts = factorisations()
    sizes = [len(set(F) & set(G)) for F, G in itertools.combinations(facts, 2)]
    observed = {
        "factorisations": len(facts),
        "pairs_checked": len(sizes),
        "all_pairs_intersect": all(s >= 1 for s in sizes),
        "min_common": min(sizes),
        "self_common": sorted({len(set(F)) for F in facts}),
    }
    expected = {"factorisations": 6, "pairs_checked": comb(6, 2), "all_pairs_intersect": True,
                "min_common": 1, "self_common": [5]}
    return ReportEntry("k6-factorisations-intersect", "Lemma 4", expected, observed,
                       observed == expected, time.perf_counter() - start)
