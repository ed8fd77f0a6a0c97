"""Verification suites: each returns a VerificationReport of labelled checks."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb

from . import k6
from .construction import DEFAULT_MATERIALIZE_THRESHOLD, build_m_q_t, check_m_q_t, find_counterexample, line_count
from .geometry import build_pg, qbinom1, qbinom2, verify_contraction_identity, verify_recurrence
from .linear_space import DEFAULT_MAX_ENUM_POINTS, LinearSpace, enumerate_linear_spaces, in_U, stats
from .partition_search import (
    admissible_profiles,
    count_C,
    integer_feasibility_lemma11,
    orbit_count,
    profile_extremal_check,
    profile_tuples,
    search_lemma5,
    stabilizer_group,
)
from .report import VerificationReport, check

# published table: profile -> (|C(p)|, number of orbits, pair weight)
LEMMA5_TABLE = {
    (3, 3, 3, 2, 1): (71040, 5, 10),
    (3, 3, 3, 3, 0): (4960, 3, 12),
    (4, 3, 2, 2, 1): (136320, 9, 11),
    (4, 3, 3, 1, 1): (41280, 5, 12),
    (4, 3, 3, 2, 0): (38400, 4, 13),
    (4, 4, 2, 1, 1): (27360, 5, 13),
    (4, 4, 2, 2, 0): (12720, 4, 14),
    (4, 4, 3, 1, 0): (15360, 2, 15),
    (4, 4, 4, 0, 0): (960, 1, 18),
}

CONSTRUCTION_CASES = ((5, 3), (5, 4), (5, 5), (7, 7), (9, 5), (13, 6))
SMALL_PLANES = (2, 3, 4, 5, 7, 8, 9)


# -- K6 ---------------------------------------------------------------------

def k6_suite() -> VerificationReport:
    rep = VerificationReport()

    def matchings():
        ms = k6.perfect_matchings()
        per_edge = Counter(e for m in ms for e in m)
        return {"count": len(ms), "all_perfect": all(map(k6.is_perfect_matching, ms)),
                "edge_multiplicity": sorted(set(per_edge.values()))}

    rep.add(check("k6-perfect-matchings", "Lemma 4 proof", {"count": 15, "all_perfect": True,
                  "edge_multiplicity": [3]}, matchings))

    def cycles():
        cs = k6.six_cycles()
        ms = set(k6.perfect_matchings())
        splits = all(all(m in ms for m in k6.split_cycle(c)) for c in cs)
        return {"count": len(cs), "distinct": len({k6.cycle_edges(c) for c in cs}), "split_into_matchings": splits}

    rep.add(check("k6-six-cycles", "Lemma 4 proof", {"count": 60, "distinct": 60, "split_into_matchings": True},
                  cycles))

    def facts():
        fs = k6.factorisations()
        image = k6.class_pair_cycles(fs)
        per_matching = Counter(m for F in fs for m in F)
        return {
            "count": len(fs),
            "class_pairs": len(image),
            "bijective_onto_cycles": set(image.values()) == set(k6.six_cycles()) and len(set(image.values())) == len(image),
            "factorisations_per_matching": sorted(set(per_matching.values())),
        }

    rep.add(check("k6-factorisations", "Lemma 4 proof", {"count": 6, "class_pairs": 60,
                  "bijective_onto_cycles": True, "factorisations_per_matching": [2]}, facts))
    rep.add(k6.verify_lemma4())
    return rep


# -- the twelve-point partition search ----------------------------------------

def lemma5_table_suite() -> VerificationReport:
    rep = VerificationReport()
    rep.add(check("lemma5-profiles", "Lemma 5 table", [list(p) for p in LEMMA5_TABLE],
                  lambda: [list(p.parts) for p in admissible_profiles()]))
    for parts, (size, orbits, weight) in LEMMA5_TABLE.items():
        p = next(x for x in admissible_profiles() if x.parts == parts)
        label = "(" + ",".join(map(str, parts)) + ")"
        rep.add(check(f"lemma5-row-{label}", f"Lemma 5 table row {label}",
                      {"C": size, "orbits": orbits, "pair_weight": weight},
                      lambda p=p: {"C": count_C(p), "orbits": orbit_count(p), "pair_weight": p.pair_weight}))
    rep.add(check("lemma5-stabilizer", "Lemma 5 proof sketch", 46080, lambda: stabilizer_group().order))
    rep.add(check("lemma5-tuples", "Lemma 5 proof sketch", 68, lambda: len(profile_tuples())))
    return rep


def lemma5_search_suite(threads: int = 1, tuple_index: int | None = None, sink=None) -> VerificationReport:
    """Run the search; ``sink`` receives the SearchOutcome for JSON export."""
    indices = None if tuple_index is None else [tuple_index]

    def run():
        out = search_lemma5(threads=threads, indices=indices)
        if sink is not None:
            sink(out)
        return {"total_solutions": out.total_solutions, "tuples": len(out.tuples),
                "all_explored": all(t.nodes >= 1 for t in out.tuples)}

    expected = {"total_solutions": 0, "tuples": 68 if tuple_index is None else 1, "all_explored": True}
    label = "all tuples" if tuple_index is None else f"tuple {tuple_index}"
    rep = VerificationReport()
    rep.add(check(f"lemma5-search-{label.replace(' ', '-')}", "Lemma 5", expected, run))
    return rep


def lemma5_suite(threads: int = 1, tuple_index: int | None = None, sink=None) -> VerificationReport:
    rep = lemma5_table_suite()
    rep.extend(lemma5_search_suite(threads, tuple_index, sink))
    return rep


# -- small arithmetic ---------------------------------------------------------

def _identity(lhs, rhs, xs=range(0, 40)):
    """Polynomial identity check on enough integer points (exact rationals)."""
    return all(Fraction(lhs(x)) == Fraction(rhs(x)) for x in xs)


def quadratic_spot_checks() -> dict:
    """The completed-square rewrites used in the small-q counting arguments."""
    h = Fraction
    return {
        "q4_line_count": _identity(lambda n: n * n - 21 * n + 132,
                                   lambda n: (n - h(21, 2)) ** 2 + h(87, 4)),
        "q5_no_long_line": _identity(lambda n: 72 * n - 18 * 32 - 5 * comb(n, 2),
                                     lambda n: -h(5, 2) * (n - h(149, 10)) ** 2 - h(839, 40)),
        "q5_avoiding_e": _identity(lambda n: 60 * n - 453 - 5 * comb(n - 1, 2),
                                   lambda n: -h(5, 2) * (n - h(27, 2)) ** 2 - h(19, 8), range(1, 40)),
        "q5_avoiding_e_expansion": _identity(
            lambda n: comb(n - 1, 2) + 3 * 26 - 2 * 5 * (n - 1), lambda n: comb(n - 1, 2) - 10 * n + 88,
            range(1, 40)),
    }


def arithmetic_suite() -> VerificationReport:
    rep = VerificationReport()
    for q in (2, 3, 4):
        rep.add(check(f"lemma11-system-q{q}", "Lemma 11", [], lambda q=q: integer_feasibility_lemma11(q)))
    rep.add(check("profile-extremal", "Lemma 18 proof", {"max": 10, "argmax": [[4, 3, 2, 1, 1]]},
                  lambda: (lambda m, a: {"max": m, "argmax": [list(x) for x in a]})(*profile_extremal_check())))
    rep.add(check("quadratic-spot-checks", "Lemmas 12, 15, 16", {k: True for k in quadratic_spot_checks()},
                  quadratic_spot_checks))
    return rep


# -- constructions and the refutation ---------------------------------------------

def construction_suite(cases=CONSTRUCTION_CASES) -> VerificationReport:
    rep = VerificationReport()
    for q, t in cases:
        expected = {"points": t * (q + 1), "w2": line_count(q, t), "degrees": [q + t - 1], "in_U": True}

        def observe(q=q, t=t):
            ls, _ = build_m_q_t(q, t)
            obs = check_m_q_t(ls, q, t)
            obs.pop("max_line")
            return obs

        rep.add(check(f"m({q},{t})", "Lemma 7", expected, observe))
    return rep


def refutation_suite(ells=range(7, 501), materialize_threshold: int = DEFAULT_MATERIALIZE_THRESHOLD) -> VerificationReport:
    from .construction import SMALL_ELL_FIELDS

    def sweep():
        bad = []
        explicit = 0
        for ell in ells:
            w = find_counterexample(ell, materialize_threshold)
            explicit += w.explicit
            if ell < 127:
                ok = w.margin > 0 and w.q in SMALL_ELL_FIELDS and 3 < ell + 2 - w.q <= w.q and w.t == ell + 2 - w.q
            else:
                ok = w.margin > 0 and w.q & (w.q - 1) == 0 and w.t == w.q
            if not ok:
                bad.append(w.to_dict())
        return {"failures": bad, "checked": len(ells), "explicit_builds": explicit}

    rep = VerificationReport()
    rep.add(check(f"refutation-sweep-{ells[0]}-{ells[-1]}", "Theorem 8",
                  {"failures": [], "checked": len(ells)}, sweep,
                  compare=lambda e, o: o["failures"] == e["failures"] and o["checked"] == e["checked"]))
    return rep


# -- projective geometry --------------------------------------------------------

def pg_suite(q: int, r: int) -> VerificationReport:
    rep = VerificationReport()

    def counts():
        S = build_pg(r, q)
        return {"points": len(S.points), "lines": len(S.lines), "line_sizes": sorted({len(L) for L in S.lines})}

    rep.add(check(f"pg({r - 1},{q})-counts", "Section 1 (line count of PG)",
                  {"points": qbinom1(r, q), "lines": qbinom2(r, q), "line_sizes": [q + 1]}, counts))
    if r >= 3:
        rep.add(check(f"recurrence-r{r}-q{q}", "Theorem 21 proof", True, lambda: verify_recurrence(r, q)))
    if r == 3:
        def plane_stats():
            S = build_pg(3, q)
            st = stats(LinearSpace(len(S.points), S.lines))
            return {"w2": st.w2, "degrees": sorted(set(st.delta.values())),
                    "w2_excl": sorted(set(st.w2_excl.values())), "in_U(q)": in_U(LinearSpace(len(S.points), S.lines), q)}

        rep.add(check(f"pg(2,{q})-statistics", "Theorem 13", {"w2": q * q + q + 1, "degrees": [q + 1],
                      "w2_excl": [q * q], "in_U(q)": True}, plane_stats))
    if r == 4:
        S = build_pg(r, q)
        for e in range(len(S.points)):
            rep.add(verify_contraction_identity(S, e))
    return rep


def projective_suite() -> VerificationReport:
    rep = VerificationReport()
    for q in SMALL_PLANES:
        rep.extend(pg_suite(q, 3))
    rep.add(check("recurrence-sweep", "Theorem 21 proof", [],
                  lambda: [(r, q) for r in range(3, 9) for q in SMALL_PLANES if not verify_recurrence(r, q)]))
    rep.add(check("pg(3,2)-lines", "Theorem 21", 35, lambda: len(build_pg(4, 2).lines)))
    return rep


def contraction_suite() -> VerificationReport:
    rep = VerificationReport()
    for q in (2, 3):
        S = build_pg(4, q)
        for e in range(len(S.points)):
            rep.add(verify_contraction_identity(S, e))
    return rep


# -- small-q bounds -------------------------------------------------------------

def enumeration_q2(max_points: int = DEFAULT_MAX_ENUM_POINTS):
    return enumerate_linear_spaces(7, 3, 3, guard=max_points)


def bounds_suite(q: int, max_enum_points: int = DEFAULT_MAX_ENUM_POINTS) -> VerificationReport:
    if q not in (2, 3, 4, 5):
        raise ValueError("q must be in {2, 3, 4, 5}")
    rep = VerificationReport()
    if q == 2:
        def run():
            s = enumeration_q2(max_enum_points)
            return {"max_w2": s.max_w2, "max_w2_excl": s.max_w2_excl}

        rep.add(check("q2-exhaustive", "Theorem 13 (q = 2)", {"max_w2": 7, "max_w2_excl": 4}, run))
    if q <= 4:
        rep.add(check(f"lemma11-system-q{q}", "Lemma 11", [], lambda: integer_feasibility_lemma11(q)))
    h = quadratic_spot_checks()
    if q == 4:
        rep.add(check("q4-quadratic", "Lemma 12", True, lambda: h["q4_line_count"]))
    if q == 5:
        rep.add(check("profile-extremal", "Lemma 18 proof", {"max": 10, "argmax": [[4, 3, 2, 1, 1]]},
                      lambda: (lambda m, a: {"max": m, "argmax": [list(x) for x in a]})(*profile_extremal_check())))
        rep.add(check("q5-quadratics", "Lemmas 15, 16", True,
                      lambda: h["q5_no_long_line"] and h["q5_avoiding_e"] and h["q5_avoiding_e_expansion"]))
    rep.extend(pg_suite(q, 3))
    if q <= 3:
        rep.extend(pg_suite(q, 4))
    else:
        S = build_pg(4, q)
        rep.add(verify_contraction_identity(S, 0))
    return rep


def all_suite(threads: int = 1, materialize_threshold: int = DEFAULT_MATERIALIZE_THRESHOLD,
              max_enum_points: int = DEFAULT_MAX_ENUM_POINTS, sink=None) -> VerificationReport:
    rep = VerificationReport()
    rep.extend(lemma5_suite(threads, sink=sink))
    rep.extend(k6_suite())
    rep.extend(construction_suite())
    rep.extend(refutation_suite(materialize_threshold=materialize_threshold))
    rep.extend(projective_suite())
    rep.extend(contraction_suite())
    rep.extend(bounds_suite(2, max_enum_points))
    rep.extend(arithmetic_suite())
    return rep

