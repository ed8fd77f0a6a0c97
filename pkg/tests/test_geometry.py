import itertools

import pytest
from hypothesis import given, strategies as st

from linebound.geometry import (
    GeometryError,
    QBinomial,
    build_pg,
    contraction_terms,
    gaussian_binomial,
    qbinom1,
    qbinom2,
    verify_contraction_identity,
    verify_recurrence,
)
from linebound.gf import is_prime_power, tables

PLANES = [2, 3, 4, 5, 7, 8, 9]


def _det3(T, u, v, w):
    a, m = T.add, T.mul

    def sub(x, y):
        return a[x][T.neg[y]]

    def m3(x, y, z):
        return m[m[x][y]][z]

    pos = a[a[m3(u[0], v[1], w[2])][m3(u[1], v[2], w[0])]][m3(u[2], v[0], w[1])]
    neg = a[a[m3(u[2], v[1], w[0])][m3(u[0], v[2], w[1])]][m3(u[1], v[0], w[2])]
    return sub(pos, neg)


def _dot(T, u, x):
    s = 0
    for a, b in zip(u, x):
        s = T.add[s][T.mul[a][b]]
    return s


def test_qbinom_examples():
    assert qbinom1(3, 5) == 31 and qbinom1(1, 7) == 1 and qbinom1(3, 2) == 7
    assert qbinom2(2, 9) == 1 and qbinom2(4, 2) == 35
    for q in PLANES:
        assert qbinom2(3, q) == q * q + q + 1


@given(st.integers(2, 10), st.integers(2, 120))
def test_qbinom_matches_product_formula(r, q):
    assert qbinom1(r, q) == gaussian_binomial(r, 1, q)
    assert qbinom2(r, q) == gaussian_binomial(r, 2, q)
    assert QBinomial.of(r, 2, q).value == qbinom2(r, q) >= 0


def test_lines_avoiding_point_of_plane():
    for q in range(2, 114):
        if is_prime_power(q):
            # q + 1 = [2 1]_q lines pass through a point
            assert qbinom2(3, q) - qbinom1(2, q) == q * q


def test_recurrence():
    assert verify_recurrence(3, 5) and verify_recurrence(4, 2) and verify_recurrence(3, 2)
    assert qbinom2(3, 5) == 6 + 25 * 1
    assert qbinom2(4, 2) == 7 + 4 * 7
    for r in range(3, 9):
        for q in PLANES:
            assert verify_recurrence(r, q)


@pytest.mark.parametrize("r,q,points,lines", [(3, 2, 7, 7), (3, 5, 31, 31), (4, 2, 15, 35), (4, 3, 40, 130)])
def test_build_pg_counts(r, q, points, lines):
    S = build_pg(r, q)
    assert len(S.points) == points == qbinom1(r, q)
    assert len(S.lines) == lines == qbinom2(r, q)
    assert {len(L) for L in S.lines} == {q + 1}


@pytest.mark.parametrize("q", PLANES)
def test_projective_plane_axioms(q):
    S = build_pg(3, q)
    one = tables(S.spec).one
    assert all(next(c for c in v if c) == one for v in S.points)
    assert all(len(S.lines_through(e)) == q + 1 for e in range(len(S.points)))
    for L, M in itertools.combinations(S.lines, 2):
        assert len(set(L) & set(M)) == 1
    pairs = [pr for L in S.lines for pr in itertools.combinations(L, 2)]
    assert len(pairs) == len(set(pairs)) == len(S.points) * (len(S.points) - 1) // 2


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_lines_are_collinear_by_determinant(q):
    S = build_pg(3, q)
    T = tables(S.spec)
    on_line = set()
    for L in S.lines:
        for a, b, c in itertools.combinations(L, 3):
            assert _det3(T, S.points[a], S.points[b], S.points[c]) == 0
            on_line.add((a, b, c))
    for a, b, c in itertools.combinations(range(len(S.points)), 3):
        if (a, b, c) not in on_line:
            assert _det3(T, S.points[a], S.points[b], S.points[c]) != 0


@pytest.mark.parametrize("q", [2, 3])
def test_planes_are_hyperplanes(q):
    S = build_pg(4, q)
    T = tables(S.spec)
    dual = sorted(tuple(i for i, x in enumerate(S.points) if _dot(T, u, x) == 0) for u in S.points)
    assert list(S.planes) == dual
    assert len(S.planes) == qbinom1(4, q)


def test_contraction_identity_examples():
    r2 = verify_contraction_identity(build_pg(4, 2), 3)
    assert r2.passed and r2.observed["w1_contraction"] == 7 and r2.observed["planes"] == 7
    assert r2.observed["plane_terms"] == [4]
    r3 = verify_contraction_identity(build_pg(4, 3), 0)
    assert r3.passed and r3.observed["w2"] == 130 and r3.observed["w1_contraction"] == 13
    S = build_pg(3, 4)
    w1c, terms, w2 = contraction_terms(S, 0)
    assert terms == [16] and w1c + terms[0] == w2


def test_errors():
    with pytest.raises(GeometryError):
        build_pg(1, 2)
    with pytest.raises(Exception):
        build_pg(3, 6)
    with pytest.raises(GeometryError):
        build_pg(3, 113, max_points=1000)
    with pytest.raises(GeometryError):
        build_pg(5, 2).planes_through(0)
    with pytest.raises(ValueError):
        verify_recurrence(2, 3)
