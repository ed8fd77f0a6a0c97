"""The matroids M(q, t) and the line-count witnesses built from them.

M(q, t) lives inside PG(2, q).  Fix an apex point e and three lines L1, L2,
L3 avoiding e with no common point.  On each line L through e choose a
t-subset T(L) of L - e that contains the points of L on L1 u L2 u L3, and
let X be the union of the T(L).  The lines of M(q, t) are the traces on X of
the q^2 lines avoiding e, together with every pair inside a single T(L).
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from math import comb

from .geometry import build_pg
from .gf import is_prime_power
from .linear_space import LinearSpace, in_U, stats

SMALL_ELL_FIELDS = (5, 7, 9, 13, 19, 32, 59, 113)
DEFAULT_MATERIALIZE_THRESHOLD = 13


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionParams:
    q: int
    t: int
    e: int
    frame: tuple[int, int, int]       # indices of L1, L2, L3 in the PG(2, q) line list
    T: dict[int, tuple[int, ...]]     # line index through e -> chosen t-subset (PG point indices)
    X: tuple[int, ...]                # PG point index of each matroid element, in order


def line_count(q: int, t: int) -> int:
    return q * q + (q + 1) * comb(t, 2)


def build_m_q_t(q: int, t: int) -> tuple[LinearSpace, ConstructionParams]:
    if not is_prime_power(q):
        raise ConstructionError(f"q = {q} is not a prime power")
    if not 3 <= t <= q:
        raise ConstructionError(f"need 3 <= t <= q, got t = {t}, q = {q}")
    pg = build_pg(3, q)
    lines = pg.lines
    e = 0
    avoiding = [i for i, L in enumerate(lines) if e not in L]
    through = [i for i, L in enumerate(lines) if e in L]
    assert len(avoiding) == q * q and len(through) == q + 1

    frame = None
    for a, b, c in itertools.combinations(avoiding, 3):
        if not set(lines[a]) & set(lines[b]) & set(lines[c]):
            frame = (a, b, c)
            break
    assert frame is not None, "three lines in general position always exist"
    frame_pts = set().union(*(lines[i] for i in frame))

    # every line of PG(2, q) other than the frame meets the frame in 2 or 3 points
    for i, L in enumerate(lines):
        if i not in frame:
            assert 2 <= len(frame_pts.intersection(L)) <= 3

    T = {}
    for i in through:
        rest = [x for x in lines[i] if x != e]
        forced = [x for x in rest if x in frame_pts]
        if len(forced) > t:
            raise ConstructionError(f"line {lines[i]} meets the frame in {len(forced)} > t points")
        pad = [x for x in rest if x not in frame_pts][: t - len(forced)]
        T[i] = tuple(sorted(forced + pad))
    chosen = [set(s) for s in T.values()]
    assert all(a.isdisjoint(b) for a, b in itertools.combinations(chosen, 2))

    X = tuple(sorted(set().union(*chosen)))
    assert len(X) == t * (q + 1) and frame_pts <= set(X)
    relabel = {x: k for k, x in enumerate(X)}

    traces = []
    for i in avoiding:
        tr = tuple(relabel[x] for x in lines[i] if x in relabel)
        assert len(tr) >= 2, "every line avoiding e meets X twice"
        traces.append(tr)
    pairs = [tuple(relabel[x] for x in pr) for s in T.values() for pr in itertools.combinations(s, 2)]
    assert set(traces).isdisjoint(pairs)

    ls = LinearSpace(len(X), tuple(traces) + tuple(pairs))
    return ls, ConstructionParams(q, t, e, frame, T, X)


def check_m_q_t(ls: LinearSpace, q: int, t: int) -> dict:
    """Structural facts about a built M(q, t), for reports and tests."""
    st = stats(ls)
    return {
        "points": st.w1,
        "w2": st.w2,
        "degrees": sorted(set(st.delta.values())),
        "max_line": st.max_line,
        "in_U": in_U(ls, q + t - 2),
    }


def f(q: int, x: int) -> int:
    """q^2 + (q+1) C(x+2-q, 2) - (x^2 + x + 1)."""
    if x + 2 - q < 0:
        raise ValueError("need x + 2 - q >= 0")
    return q * q + (q + 1) * comb(x + 2 - q, 2) - (x * x + x + 1)


@dataclass(frozen=True)
class RefutationWitness:
    ell: int
    q: int
    t: int
    w2: int
    bound: int
    margin: int
    explicit: bool

    def to_dict(self) -> dict:
        return asdict(self)


def find_counterexample(ell: int, materialize_threshold: int = DEFAULT_MATERIALIZE_THRESHOLD) -> RefutationWitness:
    """A rank-3 matroid in U(ell) with more than ell^2 + ell + 1 lines, for ell >= 7."""
    if ell < 7:
        raise ConstructionError("witnesses exist only for ell >= 7")
    if ell < 127:
        q = next((q for q in SMALL_ELL_FIELDS if ell + 2 <= 2 * q <= 2 * ell - 4), None)
        if q is None:
            raise ConstructionError(f"no field in {SMALL_ELL_FIELDS} fits ell = {ell}")
        t = ell + 2 - q
        if not 3 < t <= q:
            raise ConstructionError(f"t = {t} out of range for q = {q}")
    else:
        # the power of 2 in ((ell+2)/4, (ell+2)/2]
        q = 1 << ((ell + 2).bit_length() - 2)
        assert ell + 2 < 4 * q <= 2 * (ell + 2)
        t = q
    w2 = line_count(q, t)
    bound = ell * ell + ell + 1
    explicit = q <= materialize_threshold
    if explicit:
        ls, _ = build_m_q_t(q, t)
        if len(ls.lines) != w2 or not in_U(ls, ell):
            raise ConstructionError(f"built M({q},{t}) disagrees with the formula")
    return RefutationWitness(ell, q, t, w2, bound, w2 - bound, explicit)


def conjecture_value(ell: int) -> tuple[int, int]:
    """Largest prime power q >= 3 with 2q <= ell + 2, and W2(M(q, q))."""
    q = next((q for q in range((ell + 2) // 2, 2, -1) if is_prime_power(q)), None)
    if q is None:
        raise ConstructionError(f"no prime power q >= 3 with 2q <= {ell + 2}")
    return q, q * q + comb(q, 2) * (q + 1)
