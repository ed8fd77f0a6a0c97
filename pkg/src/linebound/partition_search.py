"""Nonexistence search for five partitions of a 12-set covering each pair once.

The ground set is A = {0, ..., 11} with the fixed base pairing
L0 = {0,1}, {2,3}, ..., {10,11}.  We look for partitions L1, ..., L5 of A,
each with at most five blocks of size at most four (and a singleton
whenever there are five blocks), such that every pair of A lies in a block
of exactly one of L0, ..., L5.

Partitions compatible with L0 never contain an L0 pair, so inside the
search a partition is the bitmask of the 60 remaining ("cross") pairs its
blocks cover.  A partition is determined by that mask.  The mask arrays are
numpy ``uint64`` and the inner levels of the search are vectorised.

The same machinery works for any base partition (see :class:`PartitionProblem`),
which the tests use for positive controls.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from math import comb, prod

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

GROUND_SIZE = 12
NUM_BLOCKS = 5
MAX_BLOCK = 4
TARGET_WEIGHT = comb(GROUND_SIZE, 2) - GROUND_SIZE // 2  # 60


# -- plain combinatorial types ---------------------------------------------

@dataclass(frozen=True)
class SetPartition:
    """Nonempty blocks, ordered by size descending then smallest element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks if b), key=lambda b: (-len(b), b)))
        object.__setattr__(self, "blocks", blocks)
        flat = [x for b in blocks for x in b]
        if len(flat) != len(set(flat)):
            raise ValueError("blocks are not disjoint")

    @property
    def ground(self) -> frozenset:
        return frozenset(x for b in self.blocks for x in b)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def pairs(self):
        for b in self.blocks:
            yield from itertools.combinations(b, 2)


def compatible(P: SetPartition, Q: SetPartition) -> bool:
    """Each block of P meets each block of Q in at most one element."""
    return all(len(set(a) & set(b)) <= 1 for a in P.blocks for b in Q.blocks)


@dataclass(frozen=True)
class Profile:
    parts: tuple[int, ...]

    @property
    def pair_weight(self) -> int:
        return sum(comb(n, 2) for n in self.parts)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(n for n in self.parts if n)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def admissible_profiles() -> list[Profile]:
    """Block-size signatures allowed for L1..L5, in lexicographic order.

    Five parts (zeros allowed), 4 >= n1 >= ... >= n5 >= 0, sum 12, n5 <= 1.
    """
    out = []
    for parts in itertools.product(range(MAX_BLOCK, -1, -1), repeat=NUM_BLOCKS):
        if list(parts) == sorted(parts, reverse=True) and sum(parts) == GROUND_SIZE and parts[-1] <= 1:
            out.append(Profile(parts))
    return sorted(out, key=lambda p: p.parts)


def profile_tuples() -> list[tuple[Profile, ...]]:
    """Multisets of five admissible profiles whose pair weights sum to 60."""
    profs = admissible_profiles()
    return [t for t in itertools.combinations_with_replacement(profs, NUM_BLOCKS)
            if sum(p.pair_weight for p in t) == TARGET_WEIGHT]


# -- pair indexing ----------------------------------------------------------

@lru_cache(maxsize=None)
def _pair_rank(n: int) -> dict:
    return {pr: k for k, pr in enumerate(itertools.combinations(range(n), 2))}


class PairMask(int):
    """Coverage indicator over all C(n, 2) pairs, bit = lexicographic pair rank."""

    @classmethod
    def of(cls, pairs, n: int = GROUND_SIZE) -> "PairMask":
        rank = _pair_rank(n)
        m = 0
        for a, b in pairs:
            bit = 1 << rank[min(a, b), max(a, b)]
            if m & bit:
                raise ValueError(f"pair {(a, b)} covered twice")
            m |= bit
        return cls(m)

    @classmethod
    def of_partitions(cls, partitions, n: int = GROUND_SIZE) -> "PairMask":
        return cls.of([pr for P in partitions for pr in P.pairs()], n)

    def covered(self) -> int:
        return bin(self).count("1")


# -- the generic problem ----------------------------------------------------

class PartitionProblem:
    """Partitions of {0..n-1} compatible with a fixed base partition."""

    def __init__(self, n: int, base_blocks):
        self.n = n
        self.base = SetPartition(tuple(tuple(b) for b in base_blocks))
        if self.base.ground != frozenset(range(n)):
            raise ValueError("base blocks must partition the ground set")
        self.block_of = {x: i for i, b in enumerate(self.base.blocks) for x in b}
        self.cross = [pr for pr in itertools.combinations(range(n), 2)
                      if self.block_of[pr[0]] != self.block_of[pr[1]]]
        if len(self.cross) > 64:
            raise ValueError("too many cross pairs for 64-bit masks")
        self.cross_index = {pr: k for k, pr in enumerate(self.cross)}
        self.full = (1 << len(self.cross)) - 1

    # masks <-> partitions
    def mask(self, P: SetPartition) -> int:
        m = 0
        for pr in P.pairs():
            m |= 1 << self.cross_index[pr]
        return m

    def partition(self, mask: int) -> SetPartition:
        mask = int(mask)
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, (a, b) in enumerate(self.cross):
            if mask >> k & 1:
                parent[find(a)] = find(b)
        groups = {}
        for x in range(self.n):
            groups.setdefault(find(x), []).append(x)
        P = SetPartition(tuple(groups.values()))
        assert self.mask(P) == mask, "mask is not a union of disjoint cliques"
        return P

    # C(p)
    def enumerate_masks(self, sizes) -> list[int]:
        """Masks of all base-compatible partitions with the given block sizes."""
        sizes = sorted((s for s in sizes if s), reverse=True)
        if sum(sizes) != self.n:
            return []
        bo, idx = self.block_of, self.cross_index
        out = []

        def rec(unused, rem, mask):
            if not unused:
                out.append(mask)
                return
            a, rest = unused[0], unused[1:]
            cands = [x for x in rest if bo[x] != bo[a]]
            for s in sorted(set(rem)):
                r2 = list(rem)
                r2.remove(s)
                for others in itertools.combinations(cands, s - 1):
                    if len({bo[x] for x in others}) < len(others):
                        continue
                    blk = (a,) + others
                    m = mask
                    for pr in itertools.combinations(blk, 2):
                        m |= 1 << idx[pr]
                    taken = set(others)
                    rec([u for u in rest if u not in taken], r2, m)

        rec(list(range(self.n)), sizes, 0)
        return sorted(out)

    def enumerate(self, sizes):
        for m in self.enumerate_masks(sizes):
            yield self.partition(m)

    # the stabiliser of the base partition
    def generators(self) -> list[tuple[int, ...]]:
        """Adjacent transpositions inside blocks and swaps of adjacent equal-size blocks."""
        gens = []
        ident = list(range(self.n))
        for b in self.base.blocks:
            for x, y in zip(b, b[1:]):
                g = ident.copy()
                g[x], g[y] = y, x
                gens.append(tuple(g))
        for b, c in zip(self.base.blocks, self.base.blocks[1:]):
            if len(b) == len(c):
                g = ident.copy()
                for x, y in zip(b, c):
                    g[x], g[y] = y, x
                gens.append(tuple(g))
        return gens

    def group_elements(self) -> list[tuple[int, ...]]:
        """Closure of the generators, by breadth-first search."""
        gens = self.generators()
        ident = tuple(range(self.n))
        seen = {ident}
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = tuple(s[x] for x in g)
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        return sorted(seen)

    def fixes_base(self, g) -> bool:
        image = SetPartition(tuple(tuple(g[x] for x in b) for b in self.base.blocks))
        return image == self.base

    def _cross_perm(self, g) -> np.ndarray:
        return np.array([self.cross_index[tuple(sorted((g[a], g[b])))] for a, b in self.cross])

    def _byte_tables(self, g):
        perm = self._cross_perm(g)
        chunks = (len(self.cross) + 7) // 8
        tabs = np.zeros((chunks, 256), dtype=np.uint64)
        for c in range(chunks):
            for byte in range(256):
                v = 0
                for bit in range(8):
                    k = 8 * c + bit
                    if byte >> bit & 1 and k < len(self.cross):
                        v |= 1 << int(perm[k])
                tabs[c, byte] = v
        return tabs

    def act(self, g, masks: np.ndarray) -> np.ndarray:
        """Image of every mask in ``masks`` under the point permutation g."""
        tabs = self._byte_tables(g)
        out = np.zeros_like(masks)
        for c in range(tabs.shape[0]):
            out |= tabs[c][(masks >> np.uint64(8 * c)) & np.uint64(255)]
        return out

    def orbits(self, masks: np.ndarray) -> tuple[int, np.ndarray]:
        """Orbit labels of a sorted, group-closed mask array.

        Each generator sends index i to the index of its image; orbits are the
        connected components of the resulting graph.
        """
        n = len(masks)
        rows, cols = [], []
        for g in self.generators():
            img = self.act(g, masks)
            j = np.searchsorted(masks, img)
            if np.any(j >= n) or np.any(masks[np.minimum(j, n - 1)] != img):
                raise AssertionError("mask set is not closed under the group")
            rows.append(np.arange(n))
            cols.append(j)
        graph = coo_matrix((np.ones(n * len(rows), dtype=np.int8),
                            (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
        return connected_components(graph, directed=True, connection="weak")

    def all_cross_perms(self) -> np.ndarray:
        return np.array([self._cross_perm(g) for g in self.group_elements()], dtype=np.uint64)

    def canonical_form(self, mask: int, perms: np.ndarray | None = None) -> int:
        """Least image of ``mask`` over every group element (brute force)."""
        perms = self.all_cross_perms() if perms is None else perms
        bits = [k for k in range(len(self.cross)) if int(mask) >> k & 1]
        if not bits:
            return 0
        images = np.bitwise_or.reduce(np.left_shift(np.uint64(1), perms[:, bits]), axis=1)
        return int(images.min())


# -- search kernel ----------------------------------------------------------

def _extend(used, slots, arrays, prev, full, lookup):
    """Count nodes and collect solution tails completing ``used``.

    ``slots`` are candidate-class keys, equal keys adjacent; within a run of
    equal keys the masks must increase, which removes relabelings of
    same-profile partitions.  ``arrays[i]`` holds the masks of class
    ``slots[i]`` disjoint from ``used``; ``lookup[key]`` is that class's full
    mask array, sorted.  The last partition is forced (it must cover exactly
    the remaining pairs), so the final two levels are vectorised.
    """
    if len(slots) == 1:
        comp = full ^ used
        table = lookup[slots[0]]
        pos = int(np.searchsorted(table, np.uint64(comp)))
        ok = pos < len(table) and int(table[pos]) == comp and (prev is None or comp > prev)
        return 1, ([[comp]] if ok else [])
    if len(slots) == 2:
        a = arrays[0]
        if prev is not None:
            a = a[a > np.uint64(prev)]
        if not len(a):
            return 0, []
        comp = np.uint64(full) ^ np.uint64(used) ^ a
        table = lookup[slots[1]]
        pos = np.searchsorted(table, comp)
        hit = pos < len(table)
        hit[hit] = table[pos[hit]] == comp[hit]
        if slots[1] == slots[0]:
            hit &= comp > a
        return len(a), [[int(x), int(y)] for x, y in zip(a[hit], comp[hit])]
    nodes, sols = 0, []
    head = arrays[0]
    if prev is not None:
        head = head[head > np.uint64(prev)]
    for m in head:
        nodes += 1
        u = used | int(m)
        um = np.uint64(u)
        rest = [arr[(arr & um) == 0] for arr in arrays[1:]]
        if any(not len(r) for r in rest[:-1]):
            continue
        nxt = int(m) if slots[1] == slots[0] else None
        n2, s2 = _extend(u, slots[1:], rest, nxt, full, lookup)
        nodes += n2
        sols.extend([[int(m)] + s for s in s2])
    return nodes, sols


def search(problem: PartitionProblem, lead_masks, slots, classes: dict):
    """Depth-first search for pairwise-disjoint masks covering every cross pair.

    ``lead_masks`` are the candidate first partitions (one per orbit, or all
    of them); ``slots`` lists, for each remaining partition, a key into
    ``classes`` (key -> mask array).  Equal keys must be adjacent.  Returns
    (nodes, solutions) with each solution a list of masks.
    """
    lookup = {k: np.sort(np.asarray(v, dtype=np.uint64)) for k, v in classes.items()}
    slots = tuple(slots)
    nodes, sols = 0, []
    for lead in lead_masks:
        lead = int(lead)
        nodes += 1
        um = np.uint64(lead)
        arrays = [lookup[k][(lookup[k] & um) == 0] for k in slots]
        if any(not len(r) for r in arrays[:-1]):
            continue
        n2, s2 = _extend(lead, slots, arrays, None, problem.full, lookup)
        nodes += n2
        sols.extend([[lead] + s for s in s2])
    return nodes, sols


# -- the twelve-point instance ----------------------------------------------

BASE_PAIRING = SetPartition(tuple((2 * i, 2 * i + 1) for i in range(GROUND_SIZE // 2)))


@lru_cache(maxsize=1)
def base_problem() -> PartitionProblem:
    return PartitionProblem(GROUND_SIZE, BASE_PAIRING.blocks)


@lru_cache(maxsize=None)
def _masks(parts: tuple[int, ...]) -> np.ndarray:
    return np.array(base_problem().enumerate_masks(parts), dtype=np.uint64)


def enumerate_C(p: Profile):
    """Partitions of A compatible with L0 having block sizes p."""
    return base_problem().enumerate(p.parts)


def count_C(p: Profile) -> int:
    return len(_masks(p.parts))


@dataclass(frozen=True)
class StabilizerInfo:
    generators: tuple[tuple[int, ...], ...]
    order: int


def stabilizer_group() -> StabilizerInfo:
    bp = base_problem()
    return StabilizerInfo(tuple(bp.generators()), len(bp.group_elements()))


@lru_cache(maxsize=None)
def _orbit_data(parts):
    masks = _masks(parts)
    n_orbits, labels = base_problem().orbits(masks)
    reps = np.full(n_orbits, np.iinfo(np.uint64).max, dtype=np.uint64)
    np.minimum.at(reps, labels, masks)  # least mask in each orbit
    sizes = np.bincount(labels, minlength=n_orbits)
    order = np.argsort(reps)
    return n_orbits, reps[order], sizes[order]


def orbit_count(p: Profile) -> int:
    return _orbit_data(p.parts)[0]


def orbit_representatives(p: Profile) -> np.ndarray:
    return _orbit_data(p.parts)[1]


def orbit_sizes(p: Profile) -> list[int]:
    return [int(s) for s in _orbit_data(p.parts)[2]]


@dataclass
class TupleResult:
    index: int
    profiles: list[str]
    lead: str
    representatives_tried: int
    nodes: int
    solutions: list
    elapsed: float = 0.0


@dataclass
class SearchOutcome:
    tuples: list[TupleResult] = field(default_factory=list)
    total_solutions: int = 0
    elapsed: float = 0.0

    def to_dict(self, with_elapsed: bool = True) -> dict:
        d = {"tuples": [asdict(t) for t in self.tuples],
             "total_solutions": self.total_solutions}
        if with_elapsed:
            d["elapsed"] = self.elapsed
        else:
            for t in d["tuples"]:
                t.pop("elapsed")
        return d


def lead_profile(tup, prefer: Profile | None = None) -> Profile:
    """Profile whose partition is fixed up to symmetry.

    Defaults to the largest class in the tuple, where orbit reduction saves
    the most; ``prefer`` overrides this when the tuple contains it.
    """
    if prefer is not None and prefer in tup:
        return prefer
    return max(tup, key=lambda p: (count_C(p), p.parts))


def _task(index: int, reduce_orbits: bool, prefer: Profile | None = None):
    tup = profile_tuples()[index]
    lead = lead_profile(tup, prefer)
    rest = list(tup)
    rest.remove(lead)
    rest.sort(key=lambda p: (count_C(p), p.parts))
    leads = orbit_representatives(lead) if reduce_orbits else _masks(lead.parts)
    slots = [p.parts for p in rest]
    nodes, sols = search(base_problem(), leads, slots, {k: _masks(k) for k in slots})
    bp = base_problem()
    shown = [[[list(b) for b in bp.partition(m).blocks] for m in s] for s in sols]
    return len(leads), nodes, shown


def search_order() -> list[int]:
    """Tuple indices, cheapest (smallest product of class sizes) first."""
    tuples = profile_tuples()
    return sorted(range(len(tuples)), key=lambda i: (prod(count_C(p) for p in tuples[i]), i))


def search_lemma5(threads: int = 1, indices=None, reduce_orbits: bool = True,
                  lead: Profile | None = None, progress=None) -> SearchOutcome:
    """Run the backtracking search over the selected profile tuples.

    ``indices`` refer to positions in :func:`profile_tuples`; by default all 68
    are searched in :func:`search_order`.  With ``reduce_orbits=False`` the
    first partition ranges over its whole class instead of one partition per
    orbit; ``lead`` picks which profile plays the first partition.  Results are reported in index order
    and do not depend on ``threads``.
    """
    start = time.perf_counter()
    tuples = profile_tuples()
    order = search_order()
    if indices is not None:
        wanted = set(indices)
        bad = wanted - set(range(len(tuples)))
        if bad:
            raise IndexError(f"no profile tuple with index {sorted(bad)}")
        order = [i for i in order if i in wanted]
    results = {}

    def record(i, res, elapsed):
        tried, nodes, sols = res
        tup = tuples[i]
        results[i] = TupleResult(i, [str(p) for p in tup], str(lead_profile(tup, lead)), tried, nodes, sols, elapsed)
        if progress:
            progress(results[i])

    if threads <= 1:
        for i in order:
            t0 = time.perf_counter()
            record(i, _task(i, reduce_orbits, lead), time.perf_counter() - t0)
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            t0 = time.perf_counter()
            futures = {i: pool.submit(_task, i, reduce_orbits, lead) for i in order}
            for i in order:
                record(i, futures[i].result(), time.perf_counter() - t0)
    out = SearchOutcome([results[i] for i in sorted(results)])
    out.total_solutions = sum(len(r.solutions) for r in out.tuples)
    out.elapsed = time.perf_counter() - start
    return out


# -- small arithmetic side-checks -------------------------------------------

def integer_feasibility_lemma11(q: int) -> list[tuple[int, ...]]:
    """Tuples n_1..n_q in {0..q-1} with sum 2(q+1) and sum C(n_i, 2) >= 2(q+1)."""
    if q not in (2, 3, 4):
        raise ValueError("q must be 2, 3 or 4")
    target = 2 * (q + 1)
    return [ns for ns in itertools.product(range(q), repeat=q)
            if sum(ns) == target and sum(comb(n, 2) for n in ns) >= target]


def profile_extremal_check() -> tuple[int, list[tuple[int, ...]]]:
    """Max of sum C(n_i, 2) over 4 >= n1 >= ... >= n5 = 1, sum 11, some n_i = 3."""
    best, arg = -1, []
    for ns in itertools.product(range(4, 0, -1), repeat=5):
        if list(ns) != sorted(ns, reverse=True) or ns[-1] != 1 or sum(ns) != 11 or 3 not in ns:
            continue
        w = sum(comb(n, 2) for n in ns)
        if w > best:
            best, arg = w, [ns]
        elif w == best:
            arg.append(ns)
    return best, arg
