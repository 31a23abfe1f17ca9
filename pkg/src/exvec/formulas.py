"""Closed-form extremal counting functions, all in exact integer
arithmetic (alternating sums cancel catastrophically in floats).

The headline maximum-count formulas hold only for ranks beyond
unspecified thresholds, so every ExtremalValue carries an applicability
flag; the down-set sums and the orthogonality counters are exact for
every rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotADownSetError, ProfileTooHeavyError, UnsupportedFieldError
from .gf import make_field
from .vectors import LabelSystem, Profile, is_down_set, profile_norm

EXACT_ALL_R = "exact-for-all-r"
LARGE_R = "proven-for-large-r"


@dataclass(frozen=True)
class ExtremalValue:
    value: int
    regime: str
    applicability: str


def multinomial(r: int, kappa: Profile) -> int:
    """r choose (k_1, ..., k_s, r - sum k_i)."""
    if any(k < 0 for k in kappa):
        raise ValueError(f"profile entries must be nonnegative: {kappa}")
    if profile_norm(kappa) > r:
        raise ProfileTooHeavyError(f"profile {kappa} exceeds {r} positions")
    out = 1
    remaining = r
    for k in kappa:
        out *= math.comb(remaining, k)
        remaining -= k
    return out


def _multinomial0(r: int, kappa: Profile) -> int:
    """Like multinomial but 0 when the profile does not fit (the usual
    binomial convention)."""
    if r < 0 or profile_norm(kappa) > r:
        return 0
    return multinomial(r, kappa)


def _reduced(system: LabelSystem, kappa: Profile) -> list[tuple[frozenset[int], int]]:
    """Drop lists whose requested count is zero: they place no entries,
    so only the remaining lists decide which formula branch applies."""
    system.check_profile(kappa)
    return [(ls, k) for ls, k in zip(system.lists, kappa) if k > 0]


def is_singleton_zero_sum(system: LabelSystem, kappa: Profile) -> bool:
    """True when every effective list is a single label and the weighted
    label sum vanishes in the field (counts reduced mod characteristic)."""
    pairs = _reduced(system, kappa)
    if any(len(ls) != 1 for ls, _ in pairs):
        return False
    f = system.field
    total = 0
    for ls, k in pairs:
        (label,) = ls
        total = f.add(total, f.mul(label, k % f.p))
    return total == 0


def ex_formula(q: int, r: int, k: int) -> ExtremalValue:
    """Large-rank maximum number of distinct weight-k columns at rank <= r."""
    make_field(q)
    if k < 0 or r < 0:
        raise ValueError("r and k must be nonnegative")
    if q == 2 and k % 2 == 0:
        value = math.comb(r + 1, k)
        regime = "zero-sum"
    else:
        value = math.comb(r, k) * (q - 1) ** k
        regime = "generic"
    applicability = EXACT_ALL_R if (q == 2 and k == 2) else LARGE_R
    return ExtremalValue(value, regime, applicability)


def coex_formula(q: int, r: int, k: int) -> ExtremalValue:
    """Large-rank maximum number of distinct co-weight-k columns at rank <= r."""
    make_field(q)
    if k < 0 or r < 0:
        raise ValueError("r and k must be nonnegative")
    if q == 2 and k >= 1:
        raise UnsupportedFieldError("co-weight maxima for k >= 1 require a field other than GF(2)")
    if k > r:
        raise ValueError(f"co-weight {k} exceeds rank bound {r}")
    value = math.comb(r, k) * (q - 1) ** (r - k)
    if k == 0:
        return ExtremalValue(value, "coweight-zero", EXACT_ALL_R)
    return ExtremalValue(value, "coweight", LARGE_R)


def ex_labeled_formula(system: LabelSystem, r: int, kappa: Profile) -> ExtremalValue:
    """Large-rank maximum number of distinct profile-kappa columns at rank <= r."""
    system.check_profile(kappa)
    if profile_norm(kappa) > r:
        raise ProfileTooHeavyError(f"profile {kappa} exceeds rank bound {r}")
    if is_singleton_zero_sum(system, kappa):
        return ExtremalValue(multinomial(r + 1, kappa), "zero-sum", LARGE_R)
    return ExtremalValue(system.power(kappa) * multinomial(r, kappa), "generic", LARGE_R)


def aex_formula(system: LabelSystem, r: int, kappa: Profile) -> ExtremalValue:
    """Large-rank maximum number of distinct profile-kappa columns at
    affine rank <= r."""
    system.check_profile(kappa)
    if profile_norm(kappa) > r:
        raise ProfileTooHeavyError(f"profile {kappa} exceeds affine rank bound {r}")
    pairs = _reduced(system, kappa)
    if all(len(ls) == 1 for ls, _ in pairs):
        return ExtremalValue(multinomial(r, kappa), "singleton", LARGE_R)
    return ExtremalValue(system.power(kappa) * _multinomial0(r - 1, kappa), "generic", LARGE_R)


def downset_count(system: LabelSystem, r: int, profiles) -> int:
    """Exact (every rank) maximum number of distinct columns whose profile
    lies in the given down-set: the sum of |L|^kappa * multinomial over
    the down-set, profiles heavier than r contributing nothing."""
    ps = frozenset(tuple(p) for p in profiles)
    for p in ps:
        system.check_profile(p)
    if not is_down_set(ps):
        raise NotADownSetError(f"{sorted(ps)} is not closed under coordinatewise decrease")
    return sum(system.power(p) * _multinomial0(r, p) for p in ps)


def bound_sums(q: int, r: int, k: int, mode: str) -> int:
    """Exact (every rank) maxima for weight <= k or co-weight <= k columns."""
    make_field(q)
    if not (0 <= k <= r):
        raise ValueError(f"need 0 <= k <= r, got k={k}, r={r}")
    if mode == "weight":
        return sum(math.comb(r, i) * (q - 1) ** i for i in range(k + 1))
    if mode == "coweight":
        return sum(math.comb(r, i) * (q - 1) ** (r - i) for i in range(k + 1))
    raise ValueError(f"mode must be 'weight' or 'coweight', got {mode!r}")


def count_orthogonal_nonzero(q: int, n: int, beta: int) -> int:
    """Number of length-n vectors with all entries nonzero whose dot
    product with a fixed all-nonzero coefficient vector equals beta
    (beta = 0) or any fixed nonzero value (beta = 1).  Independent of the
    coefficients themselves."""
    make_field(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if beta == 0:
        num = (q - 1) ** n + (-1) ** n * (q - 1)
    elif beta == 1:
        num = (q - 1) ** n + (-1) ** (n + 1)
    else:
        raise ValueError("beta must be 0 or 1")
    assert num % q == 0
    return num // q


def spacecount_terms(q: int, r: int, k: int, i: int) -> list[int]:
    """The sequence a_s = C(i,s) C(r-i,k-s) (q-1)^s, s = 0..k; its
    unimodality is what bounds the alternating sum below."""
    return [math.comb(i, s) * math.comb(r - i, k - s) * (q - 1) ** s for s in range(k + 1)]


def spacecount(q: int, r: int, k: int, i: int) -> int:
    """Number of co-weight-k vectors of length r orthogonal to a fixed
    vector with i >= 2 nonzero entries; independent of that vector.

    Computed as the exact sum over s = |zero set meets the support| of
    per-slice counts, each an integer."""
    make_field(q)
    if not (2 <= i <= r) or not (0 <= k <= r):
        raise ValueError(f"need 2 <= i <= r and 0 <= k <= r, got r={r}, k={k}, i={i}")
    total = 0
    for s in range(k + 1):
        ways = math.comb(i, s) * math.comb(r - i, k - s)
        if ways == 0:
            continue
        num = (q - 1) ** (r - k) + (-1) ** (i + s) * (q - 1) ** (r - i - k + s + 1)
        assert num % q == 0
        total += ways * (num // q)
    return total


def spacecount_threshold(q: int, r: int, k: int) -> bool:
    """Whether r >= max(sqrt(q) k^{3/2}, qk), evaluated exactly."""
    return r * r >= q * k**3 and r >= q * k


def spacecount_meets_lower_bound(q: int, r: int, k: int, i: int) -> bool:
    """Exact check of spacecount >= (1/q) C(r,k) (q-1)^{r-k} (1 - 1/(q-1)),
    cross-multiplied to avoid rationals."""
    lhs = q * (q - 1) * spacecount(q, r, k, i)
    rhs = math.comb(r, k) * (q - 1) ** (r - k) * (q - 2)
    return lhs >= rhs


def hamming_params(q: int, r: int) -> tuple[int, int]:
    """(distinct column count, common column weight) of the family that
    packs every nonzero vector of an r-dimensional code: q^r - 1 columns,
    each of weight (q-1) q^{r-1}."""
    make_field(q)
    if r < 1:
        raise ValueError("r must be at least 1")
    return q**r - 1, (q - 1) * q ** (r - 1)
