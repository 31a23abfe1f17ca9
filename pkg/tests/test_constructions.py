import pytest

from exvec.constructions import (
    build_affine_family,
    build_coweight_family,
    build_dual_hamming,
    build_labeled_family,
    build_weight_family,
    check_report,
    rebuild,
)
from exvec.errors import BudgetExceededError, UnsupportedFieldError
from exvec.gf import make_field
from exvec.linalg import a_rank, rank
from exvec.vectors import LabelSystem, coweight, profile_of, weight

GF2 = make_field(2)
GF3 = make_field(3)
GF4 = make_field(4)


def nonzero_rows(matrix):
    return sum(1 for row in matrix.rows if any(row))


def test_weight_family_gf2_even():
    rep = build_weight_family(2, 3, 2)
    assert rep.matrix.n_rows == 4
    assert rep.claimed_columns == 6 == rep.matrix.n_cols
    assert rep.claimed_rank == 3
    assert all(weight(rep.matrix.column(j)) == 2 for j in range(6))
    assert nonzero_rows(rep.matrix) == 4
    # every column lies in the hyperplane of zero coordinate sums
    for j in range(6):
        assert sum(rep.matrix.column(j).entries) % 2 == 0


def test_weight_family_gf3():
    rep = build_weight_family(3, 3, 2)
    assert rep.matrix.n_rows == 3
    assert rep.claimed_columns == 12
    assert rep.claimed_rank == 3
    assert rep.claimed_arank == 4
    assert nonzero_rows(rep.matrix) == 3


def test_weight_family_k_zero():
    rep = build_weight_family(3, 4, 0)
    assert rep.claimed_columns == 1
    assert rep.claimed_rank == 0
    assert rep.claimed_arank == 1
    assert all(x == 0 for row in rep.matrix.rows for x in row)


def test_weight_family_lone_full_support_column():
    # all-ones is the only weight-r column over GF(2) when k = r is odd
    rep = build_weight_family(2, 3, 3)
    assert rep.claimed_columns == 1
    assert rep.claimed_rank == 1
    assert rep.claimed_arank == 1


def test_coweight_family_k_zero():
    rep = build_coweight_family(3, 2, 0)
    assert rep.matrix.columns() == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert rep.claimed_rank == 2


def test_coweight_family_gf3():
    rep = build_coweight_family(3, 3, 1)
    assert rep.claimed_columns == 12
    assert rep.claimed_rank == 3
    assert all(coweight(rep.matrix.column(j)) == 1 for j in range(12))


def test_coweight_family_k_equals_r():
    rep = build_coweight_family(3, 3, 3)
    assert rep.claimed_columns == 1
    assert rep.claimed_rank == 0


def test_coweight_family_gf2():
    rep = build_coweight_family(2, 3, 0)
    assert rep.claimed_columns == 1
    assert rep.claimed_rank == 1  # the lone all-ones column
    with pytest.raises(UnsupportedFieldError):
        build_coweight_family(2, 3, 1)


def test_affine_family_gf2_even():
    rep = build_affine_family(LabelSystem.of(GF2, [1]), 3, (2,))
    assert rep.matrix.n_rows == 3 and rep.matrix.n_cols == 3
    assert rep.claimed_rank == 2  # zero-sum branch loses one dimension
    assert rep.claimed_arank == 3


def test_affine_family_wide_list():
    rep = build_affine_family(LabelSystem.of(GF3, [1, 2]), 4, (1,))
    assert rep.matrix.n_rows == 3 and rep.matrix.n_cols == 6
    assert rep.claimed_rank == 3
    assert rep.claimed_arank == 4


def test_affine_family_singleton_nonzero_sum():
    rep = build_affine_family(LabelSystem.of(GF3, [1]), 4, (1,))
    assert rep.claimed_rank == 4 and rep.claimed_arank == 4


def test_labeled_family_zero_sum_two_lists():
    system = LabelSystem.of(GF3, [1], [2])
    rep = build_labeled_family(system, 3, (1, 1))
    assert rep.matrix.n_rows == 4
    assert rep.claimed_columns == 12
    assert rep.claimed_rank == 3
    assert nonzero_rows(rep.matrix) == 4
    for j in range(12):
        assert profile_of(rep.matrix.column(j), system) == (1, 1)


def test_labeled_family_char2_three_singletons():
    # 1 + 2 + 3 = 0 in GF(4), so three singleton lists hit the zero-sum branch
    system = LabelSystem.of(GF4, [1], [2], [3])
    rep = build_labeled_family(system, 3, (1, 1, 1))
    assert rep.matrix.n_rows == 4
    assert rep.claimed_rank == 3
    assert rep.claimed_arank == 4


def test_affine_family_empty_when_profile_cannot_fit():
    rep = build_affine_family(LabelSystem.of(GF3, [1, 2]), 2, (2,))
    assert rep.claimed_columns == 0
    assert rep.matrix.n_cols == 0
    assert rep.claimed_rank == 0 and rep.claimed_arank == 0


def test_dual_hamming_small():
    rep = build_dual_hamming(2, 3)
    assert rep.matrix.n_rows == 8 and rep.matrix.n_cols == 7
    assert rep.claimed_rank == 3
    assert all(weight(rep.matrix.column(j)) == 4 for j in range(7))

    rep = build_dual_hamming(3, 2)
    assert rep.matrix.n_rows == 9 and rep.matrix.n_cols == 8
    assert rep.claimed_rank == 2
    assert all(weight(rep.matrix.column(j)) == 6 for j in range(8))

    rep = build_dual_hamming(2, 1)
    assert rep.matrix.n_rows == 2 and rep.matrix.n_cols == 1
    assert weight(rep.matrix.column(0)) == 1

    with pytest.raises(BudgetExceededError):
        build_dual_hamming(2, 5, budget=16)


def grid_reports():
    reports = []
    for q in (2, 3, 4):
        field = make_field(q)
        for r in range(1, 5):
            for k in range(0, min(r, 3) + 1):
                reports.append(build_weight_family(q, r, k))
                if q >= 3 or k == 0:
                    reports.append(build_coweight_family(q, r, k))
            systems = [LabelSystem.of(field, [1])]
            if q >= 3:
                systems.append(LabelSystem.of(field, [1], [2]))
                systems.append(LabelSystem.of(field, [1, 2]))
            for system in systems:
                for kappa in _profiles(system.s, r):
                    reports.append(build_labeled_family(system, r, kappa))
                    reports.append(build_affine_family(system, r, kappa))
        for r in (1, 2):
            reports.append(build_dual_hamming(q, r))
    return reports


def _profiles(s, r):
    if s == 1:
        return [(k,) for k in range(0, min(r, 3) + 1)]
    return [(a, b) for a in range(0, 3) for b in range(0, 3) if a + b <= r]


def test_grid_self_verifies():
    for rep in grid_reports():
        assert check_report(rep) == []
        m = rep.matrix
        assert rank(m) == rep.claimed_rank
        assert a_rank(m) == rep.claimed_arank


def test_rebuild_round_trip():
    for rep in grid_reports()[::7]:
        again = rebuild(rep.construction_id, dict(rep.params))
        assert again == rep
    with pytest.raises(ValueError):
        rebuild("mystery", {})
