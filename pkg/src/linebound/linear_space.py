"""Simple rank-3 matroids stored as linear spaces.

Every line is stored explicitly, 2-point lines included, so the line count
is just ``len(lines)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable

DEFAULT_MAX_ENUM_POINTS = 9


class LinearSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class LinearSpace:
    n: int
    lines: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        lines = tuple(sorted(tuple(sorted(set(L))) for L in self.lines))
        object.__setattr__(self, "lines", lines)
        seen = {}
        for L in lines:
            if len(L) < 2:
                raise LinearSpaceError(f"line {L} has fewer than two points")
            if L[0] < 0 or L[-1] >= self.n:
                raise LinearSpaceError(f"line {L} has a point outside 0..{self.n - 1}")
            for pair in itertools.combinations(L, 2):
                if pair in seen:
                    raise LinearSpaceError(f"pair {pair} lies on both {seen[pair]} and {L}")
                seen[pair] = L
        if len(seen) != comb(self.n, 2):
            missing = next(p for p in itertools.combinations(range(self.n), 2) if p not in seen)
            raise LinearSpaceError(f"pair {missing} is on no line")

    @property
    def rank(self) -> int:
        if self.n <= 2:
            return self.n
        return 2 if len(self.lines) == 1 else 3

    def line_through(self, a: int, b: int) -> tuple[int, ...]:
        for L in self.lines:
            if a in L and b in L:
                return L
        raise LinearSpaceError(f"no line through {a}, {b}")

    def to_dict(self) -> dict:
        return {"n": self.n, "lines": [list(L) for L in self.lines]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc) -> "LinearSpace":
        if not isinstance(doc, dict) or set(doc) != {"n", "lines"}:
            raise LinearSpaceError("expected an object with keys 'n' and 'lines'")
        n, lines = doc["n"], doc["lines"]
        if not isinstance(n, int) or n < 0 or not isinstance(lines, list):
            raise LinearSpaceError("malformed linear space document")
        if not all(isinstance(L, list) and all(isinstance(x, int) for x in L) for L in lines):
            raise LinearSpaceError("lines must be lists of integers")
        if any(len(set(L)) != len(L) for L in lines):
            raise LinearSpaceError("a line repeats a point")
        return cls(n, tuple(tuple(L) for L in lines))

    @classmethod
    def from_json(cls, text: str) -> "LinearSpace":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LinearSpaceError(f"not JSON: {exc}") from exc
        return cls.from_dict(doc)


def to_json(ls: LinearSpace) -> str:
    return ls.to_json()


def from_json(text: str) -> LinearSpace:
    return LinearSpace.from_json(text)


def from_long_lines(n: int, long_lines: Iterable[Iterable[int]]) -> LinearSpace:
    """Complete a family of lines of size >= 3 with the missing 2-point lines."""
    long_lines = [tuple(sorted(set(L))) for L in long_lines]
    covered = set()
    for L in long_lines:
        if len(L) < 3:
            raise LinearSpaceError(f"{L} is not a long line")
        for pair in itertools.combinations(L, 2):
            if pair in covered:
                raise LinearSpaceError(f"pair {pair} is covered twice")
            covered.add(pair)
    short = [p for p in itertools.combinations(range(n), 2) if p not in covered]
    return LinearSpace(n, tuple(long_lines) + tuple(short))


@dataclass(frozen=True)
class LineStats:
    w1: int
    w2: int
    w2_excl: dict[int, int]
    delta: dict[int, int]
    max_line: int
    max_degree: int


def stats(ls: LinearSpace) -> LineStats:
    delta = {e: 0 for e in range(ls.n)}
    for L in ls.lines:
        for x in L:
            delta[x] += 1
    w2 = len(ls.lines)
    return LineStats(
        w1=ls.n,
        w2=w2,
        w2_excl={e: w2 - d for e, d in delta.items()},
        delta=delta,
        max_line=max((len(L) for L in ls.lines), default=0),
        max_degree=max(delta.values(), default=0),
    )


def in_U(ls: LinearSpace, ell: int) -> bool:
    """True iff ls has no U_{2,ell+2}-minor.

    In rank 3 such a minor is either a line with ell+2 points or a point on
    ell+2 lines (contract it), so both are capped at ell+1.
    """
    st = stats(ls)
    return st.max_degree <= ell + 1 and st.max_line <= ell + 1


def has_restriction(ls: LinearSpace, k: int) -> bool:
    """True iff some line has at least k points (a U_{2,k}-restriction)."""
    return any(len(L) >= k for L in ls.lines)


def lines_disjoint_from(ls: LinearSpace, line) -> int:
    line = tuple(sorted(line))
    if line not in set(ls.lines):
        raise LinearSpaceError(f"{line} is not a line")
    s = set(line)
    return sum(1 for L in ls.lines if s.isdisjoint(L))


# -- exhaustive enumeration -------------------------------------------------

@dataclass
class EnumerationSummary:
    visited: int = 0
    max_w2: int | None = None
    max_w2_excl: int | None = None
    by_n: dict[int, int] = field(default_factory=dict)

    def merge(self, other: "EnumerationSummary") -> "EnumerationSummary":
        def mx(a, b):
            return b if a is None else a if b is None else max(a, b)
        by_n = dict(self.by_n)
        for k, v in other.by_n.items():
            by_n[k] = by_n.get(k, 0) + v
        return EnumerationSummary(self.visited + other.visited, mx(self.max_w2, other.max_w2),
                                  mx(self.max_w2_excl, other.max_w2_excl), by_n)


def _spaces_on(n: int, max_line: int, max_degree: float):
    """Yield the line lists of all labelled linear spaces on n points.

    The line through the lexicographically first uncovered pair is chosen at
    each step, so every space is produced exactly once.
    """
    full = (1 << n) - 1
    uncovered = [full & ~(1 << i) for i in range(n)]
    degree = [0] * n
    lines: list[tuple[int, ...]] = []
    room = max_line - 1

    def feasible(pts):
        for x in pts:
            u = bin(uncovered[x]).count("1")
            if degree[x] + -(-u // room) > max_degree:
                return False
        return True

    def extensions(line, cands, start):
        yield line
        if len(line) >= max_line:
            return
        for k in range(start, n):
            if cands >> k & 1:
                yield from extensions(line + (k,), cands & uncovered[k], k + 1)

    def rec():
        i = next((x for x in range(n) if uncovered[x]), None)
        if i is None:
            yield list(lines)
            return
        j = (uncovered[i] & -uncovered[i]).bit_length() - 1
        cands = uncovered[i] & uncovered[j]
        for line in extensions((i, j), cands, j + 1):
            mask = sum(1 << x for x in line)
            for x in line:
                uncovered[x] &= ~mask
                degree[x] += 1
            lines.append(line)
            if feasible(line):
                yield from rec()
            lines.pop()
            for x in line:
                uncovered[x] |= mask & ~(1 << x)
                degree[x] -= 1

    if n == 0:
        yield []
        return
    yield from rec()


def enumerate_linear_spaces(n_max: int, max_line: int, max_degree: float | None = None,
                            visitor: Callable[[LinearSpace], None] | None = None,
                            guard: int = DEFAULT_MAX_ENUM_POINTS) -> EnumerationSummary:
    """Visit every labelled rank-3 linear space on 3..n_max points within the caps.

    Lines have at most ``max_line`` points and every point lies on at most
    ``max_degree`` lines.  Rank-2 configurations (a single line) are skipped.
    """
    if n_max > guard:
        raise LinearSpaceError(f"n_max = {n_max} exceeds the enumeration guard {guard}")
    if max_line < 2:
        raise LinearSpaceError("max_line must be at least 2")
    max_degree = float("inf") if max_degree is None else max_degree
    summary = EnumerationSummary()
    for n in range(3, n_max + 1):
        count = 0
        for lines in _spaces_on(n, max_line, max_degree):
            if len(lines) == 1:
                continue
            ls = LinearSpace(n, tuple(lines))
            st = stats(ls)
            count += 1
            summary.visited += 1
            best_excl = max(st.w2_excl.values())
            summary.max_w2 = st.w2 if summary.max_w2 is None else max(summary.max_w2, st.w2)
            summary.max_w2_excl = best_excl if summary.max_w2_excl is None else max(summary.max_w2_excl, best_excl)
            if visitor is not None:
                visitor(ls)
        summary.by_n[n] = count
    return summary
