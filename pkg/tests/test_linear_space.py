import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from linebound.construction import build_m_q_t
from linebound.geometry import build_pg
from linebound.linear_space import (
    LinearSpace,
    LinearSpaceError,
    enumerate_linear_spaces,
    from_json,
    from_long_lines,
    has_restriction,
    in_U,
    lines_disjoint_from,
    stats,
    to_json,
)

FANO = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def pg_space(q):
    S = build_pg(3, q)
    return LinearSpace(len(S.points), S.lines)


@st.composite
def linear_spaces(draw):
    n = draw(st.integers(3, 10))
    cands = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=3, max_size=5), max_size=12))
    covered, lines = set(), []
    for c in cands:
        prs = set(itertools.combinations(sorted(c), 2))
        if not prs & covered:
            covered |= prs
            lines.append(c)
    return from_long_lines(n, lines)


def test_from_long_lines_examples():
    tri = from_long_lines(3, [])
    assert tri.lines == ((0, 1), (0, 2), (1, 2))
    fano = from_long_lines(7, FANO)
    assert len(fano.lines) == 7 and all(len(L) == 3 for L in fano.lines)
    ls = from_long_lines(4, [{0, 1, 2}])
    assert ls.lines == ((0, 1, 2), (0, 3), (1, 3), (2, 3))


def test_from_long_lines_rejects_overlaps():
    with pytest.raises(LinearSpaceError):
        from_long_lines(5, [(0, 1, 2), (0, 1, 3)])
    with pytest.raises(LinearSpaceError):
        from_long_lines(5, [(0, 1)])
    with pytest.raises(LinearSpaceError):
        LinearSpace(3, ((0, 1), (1, 2)))


def test_stats_examples():
    st_ = stats(from_long_lines(7, FANO))
    assert (st_.w1, st_.w2) == (7, 7)
    assert set(st_.delta.values()) == {3} and set(st_.w2_excl.values()) == {4}
    st5 = stats(pg_space(5))
    assert st5.w2 == 31 and set(st5.delta.values()) == {6} and set(st5.w2_excl.values()) == {25}
    tri = stats(from_long_lines(3, []))
    assert tri.w2 == 3 and set(tri.delta.values()) == {2} and set(tri.w2_excl.values()) == {1}


def test_in_U_examples():
    assert in_U(from_long_lines(7, FANO), 2)
    assert not in_U(pg_space(5), 4)
    m54, _ = build_m_q_t(5, 4)
    assert in_U(m54, 7)
    assert not in_U(m54, 6)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_in_U_projective_plane_threshold(q):
    ls = pg_space(q)
    for ell in range(2, q + 4):
        assert in_U(ls, ell) == (ell >= q)


def test_has_restriction():
    assert has_restriction(pg_space(5), 6)
    assert not has_restriction(from_long_lines(7, FANO), 4)
    m54, _ = build_m_q_t(5, 4)
    # the frame lines of PG(2,5) survive whole, so M(5,4) has 6-point lines
    assert stats(m54).max_line == 6
    assert has_restriction(m54, 6) and not has_restriction(m54, 7)


def test_lines_disjoint_from():
    ls = pg_space(4)
    assert all(lines_disjoint_from(ls, L) == 0 for L in ls.lines)
    u34 = from_long_lines(4, [])
    assert lines_disjoint_from(u34, (0, 1)) == 1
    m53, params = build_m_q_t(5, 3)
    pair = next(L for L in m53.lines if len(L) == 2)
    assert lines_disjoint_from(m53, pair) >= 1
    with pytest.raises(LinearSpaceError):
        lines_disjoint_from(u34, (0, 1, 2))


def test_json_round_trip():
    tri = from_long_lines(3, [])
    assert tri.to_dict() == {"n": 3, "lines": [[0, 1], [0, 2], [1, 2]]}
    assert from_json(to_json(tri)) == tri
    fano = from_long_lines(7, FANO)
    assert from_json(to_json(fano)) == fano
    with pytest.raises(LinearSpaceError):
        from_json('{"n": 3, "lines": [[0, 1], [0, 1], [0, 2], [1, 2]]}')
    with pytest.raises(LinearSpaceError):
        from_json('{"n": 3}')
    with pytest.raises(LinearSpaceError):
        from_json("not json")


def test_degenerate_ranks():
    assert LinearSpace(0, ()).rank == 0
    assert LinearSpace(1, ()).rank == 1
    two = LinearSpace(2, ((0, 1),))
    assert two.rank == 2 and stats(two).w2 == 1
    assert LinearSpace(4, ((0, 1, 2, 3),)).rank == 2
    assert from_long_lines(3, []).rank == 3


# -- enumeration against a brute-force oracle ------------------------------------

def _brute_count(n, sizes):
    """Families of blocks (sizes given) pairwise sharing <= 1 point, excluding one full line."""
    blocks = [b for s in sizes for b in itertools.combinations(range(n), s)]
    count = 0

    def rec(start, used):
        nonlocal count
        count += 1
        for i in range(start, len(blocks)):
            prs = set(itertools.combinations(blocks[i], 2))
            if not prs & used:
                rec(i + 1, used | prs)

    rec(0, frozenset())
    return count - (1 if n in sizes else 0)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_enumeration_count_triples(n):
    s = enumerate_linear_spaces(n, 3)
    assert s.by_n[n] == _brute_count(n, [3])


def test_enumeration_count_up_to_four():
    assert enumerate_linear_spaces(5, 4).by_n[5] == _brute_count(5, [3, 4])
    assert enumerate_linear_spaces(6, 5).by_n[6] == _brute_count(6, [3, 4, 5])


def test_enumeration_examples():
    s = enumerate_linear_spaces(7, 3, 3)
    assert (s.max_w2, s.max_w2_excl) == (7, 4)
    assert s.by_n[7] == 30  # labelled Fano planes: 7!/168
    assert enumerate_linear_spaces(3, 3, 3).max_w2 == 3
    s = enumerate_linear_spaces(5, 2)
    assert s.by_n == {3: 1, 4: 1, 5: 1} and s.max_w2 == 10


def test_enumeration_visitor_and_guard():
    seen = []
    enumerate_linear_spaces(4, 3, visitor=seen.append)
    assert all(isinstance(ls, LinearSpace) and ls.rank == 3 for ls in seen)
    assert len(seen) == 1 + 5
    with pytest.raises(LinearSpaceError):
        enumerate_linear_spaces(12, 3)


def test_enumeration_beyond_kung_bound_is_empty():
    s = enumerate_linear_spaces(9, 3, 3)
    assert s.by_n[8] == s.by_n[9] == 0


# -- invariants ------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(linear_spaces())
def test_counting_identities(ls):
    st_ = stats(ls)
    assert sum(comb(len(L), 2) for L in ls.lines) == comb(ls.n, 2)
    assert sum(st_.delta.values()) == sum(len(L) for L in ls.lines)
    assert all(st_.delta[e] + st_.w2_excl[e] == st_.w2 for e in range(ls.n))
    for L, M in itertools.combinations(ls.lines, 2):
        assert len(set(L) & set(M)) <= 1


@settings(max_examples=100, deadline=None)
@given(linear_spaces(), st.integers(2, 10))
def test_in_U_monotone(ls, ell):
    if in_U(ls, ell):
        assert in_U(ls, ell + 1)


@settings(max_examples=100, deadline=None)
@given(linear_spaces())
def test_json_round_trip_property(ls):
    assert from_json(to_json(ls)) == ls
