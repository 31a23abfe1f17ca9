"""Verification suites behind the CLI: closed forms against exhaustive
enumeration, oracle runs against the exact-for-every-rank formulas, and
construction round trips.

Each check returns a list of violation dicts; an empty list means the
suite passed.  Enumerations here sweep every candidate vector with table
folds, so they share nothing with the closed forms they test except the
field tables themselves.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .constructions import ConstructionReport, check_report, rebuild
from .formulas import (
    bound_sums,
    coex_formula,
    count_orthogonal_nonzero,
    downset_count,
    ex_formula,
    spacecount,
    spacecount_meets_lower_bound,
    spacecount_threshold,
)
from .gf import make_field, verify_field_axioms
from .linalg import GfMatrix
from .search import OracleQuery, check_uniqueness, run_oracle
from .vectors import LabelSystem, downset_closure


def check_field_axioms(qs) -> list[dict]:
    violations = []
    for q in qs:
        bad = verify_field_axioms(make_field(q))
        if bad:
            violations.append({"check": "field-axioms", "q": q, "violations": bad[:10]})
    return violations


def _tuple_array(values, n: int) -> np.ndarray:
    arr = np.array(list(itertools.product(values, repeat=n)), dtype=np.uint8)
    return arr.reshape(len(values) ** n, n)


def _dot_fold(field, xs: np.ndarray, u) -> np.ndarray:
    add, mul = field.numpy_tables()
    acc = np.zeros(len(xs), dtype=np.uint8)
    for j, c in enumerate(u):
        acc = add[acc, mul[xs[:, j], c]]
    return acc


def check_orthogonal_counts(qs, max_n: int, samples: int, seed: int) -> list[dict]:
    """Closed-form orthogonality counts against full enumeration of the
    all-nonzero vectors, for random coefficient vectors."""
    rng = random.Random(seed)
    violations = []
    for q in qs:
        field = make_field(q)
        nonzero = list(field.nonzero_elements())
        for n in range(0, max_n + 1):
            xs = _tuple_array(nonzero, n)
            want0 = count_orthogonal_nonzero(q, n, 0)
            want1 = count_orthogonal_nonzero(q, n, 1)
            for _ in range(samples):
                u = tuple(rng.choice(nonzero) for _ in range(n))
                acc = _dot_fold(field, xs, u)
                got0, got1 = int((acc == 0).sum()), int((acc == 1).sum())
                if (got0, got1) != (want0, want1):
                    violations.append(
                        {
                            "check": "orthogonal-count",
                            "q": q,
                            "n": n,
                            "u": list(u),
                            "expected": [want0, want1],
                            "actual": [got0, got1],
                        }
                    )
    return violations


def check_spacecounts(qs, max_r: int, samples: int, seed: int) -> list[dict]:
    """Closed-form slice counts against full enumeration of GF(q)^r, for
    random anchor vectors of every support size; also the stated lower
    bound wherever its rank threshold is met."""
    rng = random.Random(seed)
    violations = []
    for q in qs:
        if q < 3:
            continue
        field = make_field(q)
        nonzero = list(field.nonzero_elements())
        for r in range(2, max_r + 1):
            xs = _tuple_array(list(field.elements()), r)
            weights = (xs != 0).sum(axis=1)
            for i in range(2, r + 1):
                for _ in range(samples):
                    v = [0] * r
                    for p in rng.sample(range(r), i):
                        v[p] = rng.choice(nonzero)
                    orth = _dot_fold(field, xs, tuple(v)) == 0
                    hist = np.bincount(weights[orth], minlength=r + 1)
                    for k in range(0, r + 1):
                        expected = spacecount(q, r, k, i)
                        actual = int(hist[r - k])
                        if expected != actual:
                            violations.append(
                                {
                                    "check": "spacecount",
                                    "q": q,
                                    "r": r,
                                    "k": k,
                                    "i": i,
                                    "v": v,
                                    "expected": expected,
                                    "actual": actual,
                                }
                            )
                        if spacecount_threshold(q, r, k) and not spacecount_meets_lower_bound(q, r, k, i):
                            violations.append(
                                {"check": "spacecount-lower-bound", "q": q, "r": r, "k": k, "i": i}
                            )
    return violations


def check_formula_vs_oracle(query: OracleQuery) -> tuple[list[dict], list[dict]]:
    """Run the oracle and compare against the matching closed form.

    Returns (violations, findings).  Comparisons that the theory makes
    exact at every rank (down-set sums, co-weight zero, binary weight 2)
    become violations on mismatch; the large-rank formulas only produce
    findings, since small ranks genuinely beat them.  Upper-bound
    soundness is a violation in every mode.
    """
    res = run_oracle(query)
    q, r = query.field.q, query.r
    violations: list[dict] = []
    findings: list[dict] = []
    if query.mode == "weight":
        bound = bound_sums(q, r, query.k, "weight") if query.k <= r else None
        formula = ex_formula(q, r, query.k)
        exact = q == 2 and query.k == 2
    elif query.mode == "coweight":
        bound = bound_sums(q, r, query.k, "coweight")
        formula = coex_formula(q, r, query.k)
        exact = query.k == 0
    elif query.mode == "labeled-downset":
        value = downset_count(query.labels, r, query.profiles)
        if res.max_count != value:
            violations.append(
                {"check": "downset-exact", "q": q, "r": r, "expected": value, "actual": res.max_count}
            )
        return violations, findings
    else:
        raise ValueError(f"no formula comparison for mode {query.mode!r}")

    if bound is not None and res.max_count > bound:
        violations.append(
            {"check": "upper-bound", "mode": query.mode, "q": q, "r": r, "k": query.k,
             "bound": bound, "actual": res.max_count}
        )
    record = {
        "check": "formula-vs-oracle",
        "mode": query.mode,
        "q": q,
        "r": r,
        "k": query.k,
        "formula": formula.value,
        "oracle": res.max_count,
        "agrees": formula.value == res.max_count,
        "applicability": formula.applicability,
    }
    if exact and not record["agrees"]:
        violations.append(record)
    else:
        findings.append(record)
    return violations, findings


def check_oracle_uniqueness(query: OracleQuery, expected_support: int) -> tuple[list[dict], dict]:
    res = run_oracle(query)
    rep = check_uniqueness(res, expected_support)
    record = {
        "check": "uniqueness",
        "mode": query.mode,
        "q": query.field.q,
        "r": query.r,
        "expected_support": expected_support,
        "witnesses": rep.witness_count,
        "support_sizes": sorted(set(rep.support_sizes)),
        "orbits": rep.orbit_count,
    }
    violations = []
    if not rep.support_ok or not rep.unique:
        violations.append(record)
    return violations, record


def check_construction_files(matrix_dict: dict, report_dict: dict) -> tuple[list[dict], ConstructionReport]:
    """Round trip: rebuild the construction named by the report and demand
    the stored matrix and claims match it exactly."""
    stored = GfMatrix.from_dict(matrix_dict)
    rebuilt = rebuild(report_dict["construction_id"], report_dict["params"])
    violations = []
    if stored != rebuilt.matrix:
        violations.append({"check": "construction-matrix", "detail": "stored matrix differs from rebuild"})
    claims = {
        "claimed_columns": int(report_dict["claimed_columns"]),
        "claimed_rank": int(report_dict["claimed_rank"]),
        "claimed_arank": int(report_dict["claimed_arank"]),
        "claimed_weight": int(report_dict["claimed_weight"]),
    }
    actual = {
        "claimed_columns": rebuilt.claimed_columns,
        "claimed_rank": rebuilt.claimed_rank,
        "claimed_arank": rebuilt.claimed_arank,
        "claimed_weight": rebuilt.claimed_weight,
    }
    if claims != actual:
        violations.append({"check": "construction-claims", "expected": actual, "stored": claims})
    for msg in check_report(rebuilt):
        violations.append({"check": "construction-verify", "detail": msg})
    return violations, rebuilt


def exact_grid_rows(qs=(2, 3), max_r: int = 3, threads: int = 1) -> list[dict]:
    """The grid of exact-at-every-rank comparisons as flat rows."""
    rows = []
    for q in qs:
        field = make_field(q)
        full = LabelSystem.all_nonzero(field)
        for r in range(0, max_r + 1):
            n_list = tuple(range(r, r + 3))
            for k in range(0, r + 1):
                profiles = downset_closure([(k,)])
                res = run_oracle(
                    OracleQuery(field, "labeled-downset", r, n_list, labels=full,
                                profiles=profiles, threads=threads)
                )
                expected = downset_count(full, r, profiles)
                rows.append(
                    {"suite": "exact", "case": "downset", "q": q, "r": r, "param": f"k<={k}",
                     "expected": expected, "actual": res.max_count,
                     "status": "ok" if expected == res.max_count else "fail"}
                )
        if q >= 3:
            for r in range(0, max_r + 1):
                res = run_oracle(OracleQuery(field, "coweight", r, tuple(range(r, r + 3)), k=0,
                                             threads=threads))
                expected = (q - 1) ** r
                rows.append(
                    {"suite": "exact", "case": "coweight-zero", "q": q, "r": r, "param": "k=0",
                     "expected": expected, "actual": res.max_count,
                     "status": "ok" if expected == res.max_count else "fail"}
                )
        if q == 2:
            for r in range(2, max_r + 1):
                res = run_oracle(OracleQuery(field, "weight", r, tuple(range(r, r + 3)), k=2,
                                             threads=threads))
                expected = ex_formula(2, r, 2).value
                rows.append(
                    {"suite": "exact", "case": "weight-binary-even", "q": q, "r": r, "param": "k=2",
                     "expected": expected, "actual": res.max_count,
                     "status": "ok" if expected == res.max_count else "fail"}
                )
    return rows


def construction_grid_rows(max_r: int = 4) -> list[dict]:
    from .constructions import (
        build_coweight_family,
        build_dual_hamming,
        build_weight_family,
    )

    rows = []
    for q in (2, 3, 4):
        for r in range(1, max_r + 1):
            for k in range(0, min(r, 3) + 1):
                reports = [build_weight_family(q, r, k)]
                if q >= 3 or k == 0:
                    reports.append(build_coweight_family(q, r, k))
                for rep in reports:
                    bad = check_report(rep)
                    rows.append(
                        {"suite": "constructions", "case": rep.construction_id, "q": q, "r": r,
                         "param": f"k={k}", "expected": rep.claimed_columns,
                         "actual": rep.matrix.n_cols, "status": "ok" if not bad else "fail"}
                    )
        for r in (1, 2):
            rep = build_dual_hamming(q, r)
            rows.append(
                {"suite": "constructions", "case": "dual-hamming", "q": q, "r": r, "param": "",
                 "expected": rep.claimed_columns, "actual": rep.matrix.n_cols,
                 "status": "ok" if not check_report(rep) else "fail"}
            )
    return rows
