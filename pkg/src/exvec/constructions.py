"""Builders for the extremal column families, each returning the matrix
together with its certified parameters.

Every builder derives its claims (column count, rank, affine rank) from
the case analysis of the family, then re-verifies them against the
linear-algebra routines before returning; a report that fails its own
verification raises instead of being returned.

Support conventions: the fixed support is always the first coordinates,
and columns appear in the deterministic order of the vectors module, so
outputs are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceededError, UnsupportedFieldError
from .formulas import (
    _reduced,
    aex_formula,
    coex_formula,
    ex_formula,
    ex_labeled_formula,
    hamming_params,
    is_singleton_zero_sum,
    multinomial,
)
from .gf import make_field
from .linalg import MEMBER_BUDGET, GfMatrix, a_rank, rank
from .vectors import (
    LabelSystem,
    Profile,
    enumerate_coweight_vectors,
    enumerate_profile_vectors,
    profile_norm,
)


@dataclass(frozen=True)
class ConstructionReport:
    matrix: GfMatrix
    claimed_columns: int
    claimed_rank: int
    claimed_arank: int
    claimed_weight: int  # common weight of every column
    construction_id: str
    params: tuple[tuple[str, object], ...]

    def to_dict(self) -> dict:
        def plain(v):
            if isinstance(v, tuple):
                return [plain(x) for x in v]
            return v

        return {
            "construction_id": self.construction_id,
            "params": {k: plain(v) for k, v in self.params},
            "claimed_columns": str(self.claimed_columns),
            "claimed_rank": self.claimed_rank,
            "claimed_arank": self.claimed_arank,
            "claimed_weight": str(self.claimed_weight),
        }


def check_report(report: ConstructionReport) -> list[str]:
    """Re-verify a report's claims against the matrix; return violations."""
    m = report.matrix
    bad = []
    cols = m.columns()
    if len(set(cols)) != len(cols):
        bad.append("columns are not distinct")
    if m.n_cols != report.claimed_columns:
        bad.append(f"column count {m.n_cols} != claimed {report.claimed_columns}")
    got_rank = rank(m)
    if got_rank != report.claimed_rank:
        bad.append(f"rank {got_rank} != claimed {report.claimed_rank}")
    got_arank = a_rank(m)
    if got_arank != report.claimed_arank:
        bad.append(f"a-rank {got_arank} != claimed {report.claimed_arank}")
    for j, col in enumerate(cols):
        wt = sum(1 for x in col if x)
        if wt != report.claimed_weight:
            bad.append(f"column {j} has weight {wt} != claimed {report.claimed_weight}")
            break
    return bad


def _certified(report: ConstructionReport) -> ConstructionReport:
    bad = check_report(report)
    if bad:
        raise RuntimeError(
            f"{report.construction_id}{dict(report.params)} failed self-verification: {bad}"
        )
    return report


def build_labeled_family(system: LabelSystem, r: int, kappa: Profile) -> ConstructionReport:
    """All profile-kappa columns on a fixed support: r+1 rows when every
    effective list is a singleton and the weighted label sum vanishes,
    r rows otherwise."""
    system.check_profile(kappa)
    value = ex_labeled_formula(system, r, kappa).value  # validates kappa <= r
    t = profile_norm(kappa)
    pairs = _reduced(system, kappa)
    singleton = all(len(ls) == 1 for ls, _ in pairs)
    zero_sum = is_singleton_zero_sum(system, kappa)

    if t == 0:
        length = r
        claimed_rank, claimed_arank = 0, 1
    elif singleton and zero_sum:
        length = r + 1
        claimed_rank, claimed_arank = r, r + 1
    elif singleton:
        length = r
        if multinomial(r, kappa) == 1:
            claimed_rank = claimed_arank = 1  # lone column on a full support
        else:
            claimed_rank = claimed_arank = r
    else:
        length = r
        claimed_rank, claimed_arank = r, r + 1

    cols = [v.entries for v in enumerate_profile_vectors(length, system, kappa)]
    matrix = GfMatrix.from_columns(system.field, cols, n_rows=length)
    return _certified(
        ConstructionReport(
            matrix,
            value,
            claimed_rank,
            claimed_arank,
            t,
            "labeled-family",
            (
                ("q", system.field.q),
                ("lists", tuple(tuple(sorted(ls)) for ls in system.lists)),
                ("kappa", tuple(kappa)),
                ("r", r),
            ),
        )
    )


def build_affine_family(system: LabelSystem, r: int, kappa: Profile) -> ConstructionReport:
    """All profile-kappa columns on a fixed support sized for the affine
    rank bound: r rows in the all-singleton branch, r-1 otherwise."""
    system.check_profile(kappa)
    value = aex_formula(system, r, kappa).value  # validates kappa <= r
    t = profile_norm(kappa)
    pairs = _reduced(system, kappa)
    singleton = all(len(ls) == 1 for ls, _ in pairs)

    if t == 0:
        length = r
        claimed_rank, claimed_arank = 0, 1
    elif singleton:
        length = r
        if multinomial(r, kappa) == 1:
            claimed_rank = claimed_arank = 1
        elif is_singleton_zero_sum(system, kappa):
            claimed_rank, claimed_arank = r - 1, r
        else:
            claimed_rank, claimed_arank = r, r
    else:
        length = r - 1
        if value == 0:  # profile heavier than the support: empty family
            claimed_rank = claimed_arank = 0
        else:
            claimed_rank, claimed_arank = r - 1, r

    cols = [v.entries for v in enumerate_profile_vectors(length, system, kappa)] if value else []
    matrix = GfMatrix.from_columns(system.field, cols, n_rows=length)
    return _certified(
        ConstructionReport(
            matrix,
            value,
            claimed_rank,
            claimed_arank,
            t,
            "affine-family",
            (
                ("q", system.field.q),
                ("lists", tuple(tuple(sorted(ls)) for ls in system.lists)),
                ("kappa", tuple(kappa)),
                ("r", r),
            ),
        )
    )


def build_weight_family(q: int, r: int, k: int) -> ConstructionReport:
    """All weight-k columns on r rows (r+1 rows over GF(2) with k even,
    where the columns all lie in the zero-coordinate-sum hyperplane)."""
    field = make_field(q)
    if not (0 <= k <= r):
        raise ValueError(f"need 0 <= k <= r, got k={k}, r={r}")
    inner = build_labeled_family(LabelSystem.all_nonzero(field), r, (k,))
    expected = ex_formula(q, r, k).value
    assert inner.claimed_columns == expected
    return _certified(
        ConstructionReport(
            inner.matrix,
            inner.claimed_columns,
            inner.claimed_rank,
            inner.claimed_arank,
            k,
            "weight-family",
            (("q", q), ("r", r), ("k", k)),
        )
    )


def build_coweight_family(q: int, r: int, k: int) -> ConstructionReport:
    """All columns of length r with exactly k zeros."""
    field = make_field(q)
    if not (0 <= k <= r):
        raise ValueError(f"need 0 <= k <= r, got k={k}, r={r}")
    if q == 2 and k >= 1:
        raise UnsupportedFieldError("co-weight families with k >= 1 require q >= 3")
    value = coex_formula(q, r, k).value
    if k == r:
        claimed_rank, claimed_arank = 0, 1
    elif q == 2:
        claimed_rank = claimed_arank = 1  # the lone all-ones column
    else:
        claimed_rank, claimed_arank = r, r + 1
    cols = [v.entries for v in enumerate_coweight_vectors(r, field, k)]
    matrix = GfMatrix.from_columns(field, cols, n_rows=r)
    return _certified(
        ConstructionReport(
            matrix, value, claimed_rank, claimed_arank, r - k, "coweight-family",
            (("q", q), ("r", r), ("k", k)),
        )
    )


def build_dual_hamming(q: int, r: int, *, budget: int = MEMBER_BUDGET) -> ConstructionReport:
    """Rows are all q^r vectors in lexicographic order; columns are the
    nonzero linear combinations of the r coordinate columns, swept in
    coefficient-lexicographic order.  Every nonzero vector of the
    r-dimensional column space appears exactly once, each of weight
    (q-1) q^{r-1}."""
    field = make_field(q)
    n_cols, _ = hamming_params(q, r)  # validates r >= 1
    if q**r > budget:
        raise BudgetExceededError(f"{q ** r} rows exceed budget {budget}")
    add, mul = field.add_table, field.mul_table
    ambient = list(itertools.product(field.elements(), repeat=r))
    cols = []
    for lam in itertools.product(field.elements(), repeat=r):
        if not any(lam):
            continue
        col = []
        for v in ambient:
            acc = 0
            for a, b in zip(v, lam):
                acc = add[acc][mul[a][b]]
            col.append(acc)
        cols.append(tuple(col))
    matrix = GfMatrix.from_columns(field, cols, n_rows=q**r)
    claimed_arank = 1 if (q == 2 and r == 1) else r + 1
    return _certified(
        ConstructionReport(
            matrix, n_cols, r, claimed_arank, (q - 1) * q ** (r - 1),
            "dual-hamming", (("q", q), ("r", r)),
        )
    )


def rebuild(construction_id: str, params: dict) -> ConstructionReport:
    """Reconstruct a report from its serialized identity (the round-trip
    path of the checker)."""
    if construction_id == "weight-family":
        return build_weight_family(int(params["q"]), int(params["r"]), int(params["k"]))
    if construction_id == "coweight-family":
        return build_coweight_family(int(params["q"]), int(params["r"]), int(params["k"]))
    if construction_id == "dual-hamming":
        return build_dual_hamming(int(params["q"]), int(params["r"]))
    if construction_id in ("labeled-family", "affine-family"):
        field = make_field(int(params["q"]))
        system = LabelSystem.of(field, *params["lists"])
        kappa = tuple(int(k) for k in params["kappa"])
        build = build_labeled_family if construction_id == "labeled-family" else build_affine_family
        return build(system, int(params["r"]), kappa)
    raise ValueError(f"unknown construction {construction_id!r}")
