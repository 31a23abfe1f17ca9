"""Brute-force oracles: exact extremal values at desk scale.

A scan walks every r-dimensional subspace of GF(q)^n (GF(q)^{1+n} in
affine mode, where counted vectors are those whose lift by a leading 1
lies in the subspace) for each requested n, counts the members matching
the query, and reports per-n maxima, the global maximum, and every
witness subspace attaining it.

Scans are deterministic: subspaces are enumerated canonically, pruning
only ever skips subspaces that provably cannot reach the incumbent, the
reduction (max + witness merge) is order-independent, and witnesses are
sorted canonically before being returned, so results do not depend on
the thread count.
"""

from __future__ import annotations

import itertools
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import (
    BudgetExceededError,
    FieldMismatchError,
    NotADownSetError,
    NotExhaustiveError,
)
from .gf import FieldSpec
from .linalg import (
    MEMBER_BUDGET,
    SUBSPACE_BUDGET,
    GfMatrix,
    GfVector,
    Subspace,
    gaussian_binomial,
    subspace_members,
)
from .vectors import (
    LabelSystem,
    Profile,
    coweight,
    is_down_set,
    profile_of,
    profile_norm,
    weight,
)

MODES = ("weight", "coweight", "labeled", "labeled-downset", "affine")


def default_n_list(mode: str, r: int) -> tuple[int, ...]:
    """The extremal families use r or r+1 rows (r-1 or r in affine mode),
    so scan a window of one extra row beyond that."""
    if mode == "affine":
        return tuple(sorted({max(r - 1, 0), r, r + 1}))
    return (r, r + 1, r + 2)


@dataclass(frozen=True)
class OracleQuery:
    field: FieldSpec
    mode: str
    r: int
    n_list: tuple[int, ...] | None = None
    k: int | None = None
    labels: LabelSystem | None = None
    kappa: Profile | None = None
    profiles: frozenset[Profile] | None = None
    subspace_budget: int = SUBSPACE_BUDGET
    member_budget: int = MEMBER_BUDGET
    threads: int = 1
    prune: bool = True
    engine: str = "numpy"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.r < 0:
            raise ValueError("rank bound must be nonnegative")
        if self.engine not in ("numpy", "python"):
            raise ValueError(f"engine must be 'numpy' or 'python', got {self.engine!r}")
        if self.threads < 1:
            raise ValueError("thread count must be positive")
        if self.n_list is None:
            object.__setattr__(self, "n_list", default_n_list(self.mode, self.r))
        else:
            object.__setattr__(self, "n_list", tuple(sorted(set(self.n_list))))
        if not self.n_list:
            raise ValueError("n_list must not be empty")
        low = self.r - 1 if self.mode == "affine" else self.r
        if any(n < low or n < 0 for n in self.n_list):
            raise ValueError(f"every n must be at least {max(low, 0)} for mode {self.mode}")
        if self.mode in ("weight", "coweight"):
            if self.k is None or self.k < 0:
                raise ValueError(f"mode {self.mode} needs a nonnegative k")
        elif self.mode in ("labeled", "affine"):
            if self.labels is None or self.kappa is None:
                raise ValueError(f"mode {self.mode} needs labels and kappa")
            if self.labels.field != self.field:
                raise FieldMismatchError("label system lives over a different field")
            self.labels.check_profile(self.kappa)
            object.__setattr__(self, "kappa", tuple(self.kappa))
        else:  # labeled-downset
            if self.labels is None or self.profiles is None:
                raise ValueError("mode labeled-downset needs labels and profiles")
            if self.labels.field != self.field:
                raise FieldMismatchError("label system lives over a different field")
            ps = frozenset(tuple(p) for p in self.profiles)
            for p in ps:
                self.labels.check_profile(p)
            if not is_down_set(ps):
                raise NotADownSetError(f"{sorted(ps)} is not a down-set")
            object.__setattr__(self, "profiles", ps)

    def ambient(self, n: int) -> int:
        return n + 1 if self.mode == "affine" else n


@dataclass(frozen=True)
class Witness:
    n: int
    subspace: Subspace


@dataclass
class OracleResult:
    query: OracleQuery
    max_count: int
    best_n: int | None
    per_n: tuple[tuple[int, int], ...]
    witnesses: tuple[Witness, ...]
    exhaustive: bool
    _supports: tuple[frozenset[int], ...] | None = dataclass_field(default=None, repr=False)

    def counted_vectors(self, witness: Witness) -> list[GfVector]:
        """The counted members of a witness, re-derived by the plain
        python path (independent of the scan kernel)."""
        q = self.query
        pred = _python_predicate(q)
        out = []
        for v in subspace_members(witness.subspace, budget=q.member_budget):
            kept = pred(v)
            if kept is not None:
                out.append(kept)
        return out

    @property
    def witness_supports(self) -> tuple[frozenset[int], ...]:
        """Union of supports of the counted vectors, one per witness."""
        if self._supports is None:
            sups = []
            for w in self.witnesses:
                acc: frozenset[int] = frozenset()
                for v in self.counted_vectors(w):
                    acc |= v.support()
                sups.append(acc)
            self._supports = tuple(sups)
        return self._supports

    def to_dict(self) -> dict:
        return {
            "mode": self.query.mode,
            "q": self.query.field.q,
            "r": self.query.r,
            "n_list": list(self.query.n_list),
            "max_count": str(self.max_count),
            "best_n": self.best_n,
            "per_n": [{"n": n, "max_count": str(c)} for n, c in self.per_n],
            "exhaustive": self.exhaustive,
            "witnesses": [
                {"n": w.n, "basis": w.subspace.basis.to_dict()} for w in self.witnesses
            ],
            "witness_supports": [sorted(s) for s in self.witness_supports],
        }


def _python_predicate(query: OracleQuery):
    """Returns a function mapping a member vector to the counted vector
    (the member itself, or its unlifted tail in affine mode) or None."""
    mode = query.mode
    if mode == "weight":
        k = query.k
        return lambda v: v if weight(v) == k else None
    if mode == "coweight":
        k = query.k
        return lambda v: v if coweight(v) == k else None
    if mode == "labeled":
        system, kappa = query.labels, query.kappa
        return lambda v: v if profile_of(v, system) == kappa else None
    if mode == "labeled-downset":
        system, profiles = query.labels, query.profiles
        return lambda v: v if profile_of(v, system) in profiles else None
    system, kappa = query.labels, query.kappa

    def lift_pred(v: GfVector):
        if v.entries[0] != 1:
            return None
        tail = GfVector(v.field, v.entries[1:])
        return tail if profile_of(tail, system) == kappa else None

    return lift_pred


class _NumpyKernel:
    """Counts matching members of a subspace given its basis rows, with
    all per-n context (lookup tables, coefficient sweep) precomputed."""

    def __init__(self, query: OracleQuery, m: int):
        self.query = query
        self.m = m
        field = query.field
        self.add_lut, self.mul_lut = field.numpy_tables()
        self.coeffs = _coefficient_sweep(field.q, query.r)
        mode = query.mode
        if mode in ("labeled", "labeled-downset", "affine"):
            system = query.labels
            lut = np.full(field.q, system.s + 1, dtype=np.int64)
            lut[0] = 0
            for i, ls in enumerate(system.lists):
                for x in ls:
                    lut[x] = i + 1
            self.class_lut = lut
            self.alien_class = system.s + 1
        if mode == "labeled-downset":
            # profiles with an entry beyond the length can never match and
            # would collide in the base-(m+1) digit encoding; drop them
            base = m + 1
            self.enc_base = base
            enc = []
            for p in query.profiles:
                if any(c > m for c in p):
                    continue
                code = 0
                for c in p:
                    code = code * base + c
                enc.append(code)
            self.enc_set = np.array(sorted(enc), dtype=np.int64)

    def members(self, basis_rows) -> np.ndarray:
        acc = np.zeros((len(self.coeffs), self.m), dtype=np.uint8)
        if basis_rows:
            basis = np.asarray(basis_rows, dtype=np.uint8)
            for j in range(len(basis_rows)):
                scaled = self.mul_lut[self.coeffs[:, j : j + 1], basis[j][None, :]]
                acc = self.add_lut[acc, scaled]
        return acc

    def _profile_ok(self, block: np.ndarray, kappa) -> np.ndarray:
        lab = self.class_lut[block]
        ok = ~(lab == self.alien_class).any(axis=1)
        for i, k in enumerate(kappa):
            ok &= (lab == i + 1).sum(axis=1) == k
        return ok

    def count(self, basis_rows) -> int:
        members = self.members(basis_rows)
        mode = self.query.mode
        if mode == "weight":
            return int(((members != 0).sum(axis=1) == self.query.k).sum())
        if mode == "coweight":
            return int(((members == 0).sum(axis=1) == self.query.k).sum())
        if mode == "labeled":
            return int(self._profile_ok(members, self.query.kappa).sum())
        if mode == "labeled-downset":
            lab = self.class_lut[members]
            ok = ~(lab == self.alien_class).any(axis=1)
            enc = np.zeros(len(members), dtype=np.int64)
            for i in range(self.query.labels.s):
                enc = enc * self.enc_base + (lab == i + 1).sum(axis=1)
            ok &= np.isin(enc, self.enc_set)
            return int(ok.sum())
        # affine: leading coordinate must be 1, the tail carries the profile
        ok = members[:, 0] == 1
        ok &= self._profile_ok(members[:, 1:], self.query.kappa)
        return int(ok.sum())


_SWEEP_CACHE: dict[tuple[int, int], np.ndarray] = {}
_SWEEP_LOCK = threading.Lock()


def _coefficient_sweep(q: int, dim: int) -> np.ndarray:
    with _SWEEP_LOCK:
        key = (q, dim)
        if key not in _SWEEP_CACHE:
            arr = np.array(
                list(itertools.product(range(q), repeat=dim)), dtype=np.uint8
            ).reshape(q**dim, dim)
            arr.setflags(write=False)
            _SWEEP_CACHE[key] = arr
        return _SWEEP_CACHE[key]


def _python_count(query: OracleQuery, field: FieldSpec, m: int, rows, pivots) -> int:
    w = Subspace(GfMatrix(field, rows, m), pivots)
    pred = _python_predicate(query)
    return sum(1 for v in subspace_members(w, budget=query.member_budget) if pred(v) is not None)


def _iter_bases(q: int, m: int, pivots: tuple[int, ...]):
    """Row tuples of every canonical RREF basis with the given pivots,
    free entries swept lexicographically (matches enumerate_subspaces)."""
    r = len(pivots)
    pivot_set = set(pivots)
    free = [
        (i, c) for i in range(r) for c in range(pivots[i] + 1, m) if c not in pivot_set
    ]
    base = [[0] * m for _ in range(r)]
    for i, p in enumerate(pivots):
        base[i][p] = 1
    for values in itertools.product(range(q), repeat=len(free)):
        rows = [row[:] for row in base]
        for (i, c), val in zip(free, values):
            rows[i][c] = val
        yield tuple(tuple(row) for row in rows)


def _weight_pivot_bound(q: int, m: int, r: int, k: int, pivots: tuple[int, ...]) -> int:
    """Upper bound on the weight-k member count of any subspace with this
    pivot set: each nonzero member's leading coordinate is a pivot."""
    if k == 0:
        return 1
    total = 0
    for j, p in enumerate(pivots):
        leading_here = (q - 1) * q ** (r - 1 - j)
        ambient_here = math.comb(m - p - 1, k - 1) * (q - 1) ** k
        total += min(leading_here, ambient_here)
    return total


def run_oracle(query: OracleQuery) -> OracleResult:
    field = query.field
    q, r = field.q, query.r
    per_n: list[tuple[int, int]] = []
    found: list[tuple[int, int, tuple[int, ...], tuple]] = []  # (count, n, pivots, rows)

    for n in query.n_list:
        m = query.ambient(n)
        n_subspaces = gaussian_binomial(m, r, q)
        if n_subspaces > query.subspace_budget:
            raise BudgetExceededError(
                f"{n_subspaces} subspaces at n={n} exceed budget {query.subspace_budget}"
            )
        if q**r > query.member_budget:
            raise BudgetExceededError(
                f"{q ** r} members per subspace exceed budget {query.member_budget}"
            )
        kernel = _NumpyKernel(query, m) if query.engine == "numpy" else None
        incumbent_lock = threading.Lock()
        incumbent = [-1]

        def scan_pivots(pivots, n=n, m=m, kernel=kernel):
            if query.mode == "weight" and query.prune:
                if _weight_pivot_bound(q, m, r, query.k, pivots) < incumbent[0]:
                    return (-1, [])
            local_best = -1
            local: list[tuple] = []
            for rows in _iter_bases(q, m, pivots):
                if kernel is not None:
                    c = kernel.count(rows)
                else:
                    c = _python_count(query, field, m, rows, pivots)
                if c > local_best:
                    local_best = c
                    local = [rows]
                elif c == local_best:
                    local.append(rows)
            if local_best > incumbent[0]:
                with incumbent_lock:
                    incumbent[0] = max(incumbent[0], local_best)
            return (local_best, local)

        pivot_sets = list(itertools.combinations(range(m), r))
        if query.threads > 1:
            with ThreadPoolExecutor(max_workers=query.threads) as pool:
                chunks = list(pool.map(scan_pivots, pivot_sets))
        else:
            chunks = [scan_pivots(p) for p in pivot_sets]

        n_max = max(best for best, _ in chunks)
        per_n.append((n, n_max))
        for (best, bases), pivots in zip(chunks, pivot_sets):
            if best == n_max:
                found.extend((best, n, pivots, rows) for rows in bases)

    max_count = max(c for _, c in per_n)
    best_n = min(n for n, c in per_n if c == max_count)
    witnesses = tuple(
        Witness(n, Subspace(GfMatrix(field, rows, query.ambient(n)), pivots))
        for count, n, pivots, rows in sorted(
            (rec for rec in found if rec[0] == max_count), key=lambda rec: rec[1:]
        )
    )
    return OracleResult(query, max_count, best_n, tuple(per_n), witnesses, True)


def oracle_ex(query: OracleQuery) -> OracleResult:
    if query.mode != "weight":
        raise ValueError("oracle_ex requires mode 'weight'")
    return run_oracle(query)


def oracle_coex(query: OracleQuery) -> OracleResult:
    if query.mode != "coweight":
        raise ValueError("oracle_coex requires mode 'coweight'")
    return run_oracle(query)


def oracle_aex(query: OracleQuery) -> OracleResult:
    if query.mode != "affine":
        raise ValueError("oracle_aex requires mode 'affine'")
    return run_oracle(query)


def oracle_downset(query: OracleQuery) -> OracleResult:
    if query.mode != "labeled-downset":
        raise ValueError("oracle_downset requires mode 'labeled-downset'")
    return run_oracle(query)


# -- uniqueness ---------------------------------------------------------


@dataclass(frozen=True)
class UniquenessReport:
    expected_support: int
    witness_count: int
    support_sizes: tuple[int, ...]
    support_ok: bool
    orbit_count: int
    unique: bool
    row_scalar_classes: tuple[int, ...]


def _restricted_vectors(result: OracleResult, witness: Witness, support) -> frozenset:
    coords = sorted(support)
    return frozenset(
        tuple(v.entries[i] for i in coords) for v in result.counted_vectors(witness)
    )


def _scalar_row_classes(result: OracleResult, witness: Witness) -> int:
    """Number of nonzero rows of the counted-column matrix up to scaling."""
    vecs = sorted(v.entries for v in result.counted_vectors(witness))
    if not vecs:
        return 0
    f = result.query.field
    classes = set()
    for t in range(len(vecs[0])):
        row = tuple(v[t] for v in vecs)
        lead = next((x for x in row if x), None)
        if lead is None:
            continue
        scale = f.inv(lead)
        classes.add(tuple(f.mul(scale, x) for x in row))
    return len(classes)


def _equivalent(a: frozenset, b: frozenset, field: FieldSpec, m: int, budget: int) -> bool:
    """Whether a coordinate permutation plus per-coordinate nonzero
    scaling maps vector set a onto b."""
    if len(a) != len(b):
        return False
    if m == 0:
        return True
    group_size = math.factorial(m) * (field.q - 1) ** m
    if group_size > budget:
        raise BudgetExceededError(f"symmetry group of size {group_size} exceeds budget {budget}")
    nonzero = list(field.nonzero_elements())
    mul = field.mul_table
    for perm in itertools.permutations(range(m)):
        permuted = [tuple(v[perm[t]] for t in range(m)) for v in a]
        for scales in itertools.product(nonzero, repeat=m):
            image = frozenset(tuple(mul[scales[t]][v[t]] for t in range(m)) for v in permuted)
            if image == b:
                return True
    return False


def check_uniqueness(
    result: OracleResult, expected_support: int, *, symmetry_budget: int = 10**6
) -> UniquenessReport:
    """Verify that every witness's counted vectors live on a support of
    the expected size, and whether all witnesses agree after restricting
    to their supports, up to coordinate permutation and nonzero scaling."""
    if not result.exhaustive or not result.witnesses:
        raise NotExhaustiveError("uniqueness requires an exhaustive result with witnesses")
    supports = result.witness_supports
    sizes = tuple(len(s) for s in supports)
    support_ok = all(size == expected_support for size in sizes)
    restricted = [
        _restricted_vectors(result, w, s) for w, s in zip(result.witnesses, supports)
    ]
    field = result.query.field
    reps: list[tuple[int, frozenset]] = []  # (support size, vector set)
    for size, vecs in zip(sizes, restricted):
        for rep_size, rep_vecs in reps:
            if size == rep_size and _equivalent(vecs, rep_vecs, field, size, symmetry_budget):
                break
        else:
            reps.append((size, vecs))
    scalar_classes = tuple(
        _scalar_row_classes(result, w) for w in result.witnesses
    )
    return UniquenessReport(
        expected_support=expected_support,
        witness_count=len(result.witnesses),
        support_sizes=sizes,
        support_ok=support_ok,
        orbit_count=len(reps),
        unique=len(reps) == 1,
        row_scalar_classes=scalar_classes,
    )


# -- recursion ----------------------------------------------------------


@dataclass(frozen=True)
class RecursionCheck:
    r: int
    lhs: int
    rhs: int
    holds: bool
    within_guarantee: bool


@dataclass(frozen=True)
class RecursionReport:
    kappa: Profile
    shift: int
    checks: tuple[RecursionCheck, ...]

    @property
    def all_hold_within_guarantee(self) -> bool:
        return all(c.holds for c in self.checks if c.within_guarantee)


def verify_recursion(
    system: LabelSystem,
    kappa: Profile,
    r_values,
    *,
    threads: int = 1,
    engine: str = "numpy",
    subspace_budget: int = SUBSPACE_BUDGET,
    member_budget: int = MEMBER_BUDGET,
) -> RecursionReport:
    """Check, from oracle values, that the affine maximum at rank r is at
    most its value at rank r-1 plus the one-step-lighter contributions
    of each list.  Guaranteed only from r = |kappa| + 2 on."""
    system.check_profile(kappa)
    kappa = tuple(kappa)
    shift = 1 if any(len(ls) > 1 for ls in system.lists) else 0
    cache: dict[tuple[int, Profile], int] = {}

    def aex_star(r: int, prof: Profile) -> int:
        key = (r, prof)
        if key not in cache:
            rr = r + shift
            query = OracleQuery(
                system.field,
                "affine",
                rr,
                labels=system,
                kappa=prof,
                threads=threads,
                engine=engine,
                subspace_budget=subspace_budget,
                member_budget=member_budget,
            )
            cache[key] = run_oracle(query).max_count
        return cache[key]

    checks = []
    norm = profile_norm(kappa)
    for r in sorted(set(r_values)):
        if r < 1:
            raise ValueError("recursion needs r >= 1")
        lhs = aex_star(r, kappa)
        rhs = aex_star(r - 1, kappa)
        for i, k in enumerate(kappa):
            if k == 0:
                continue
            lighter = kappa[:i] + (k - 1,) + kappa[i + 1:]
            rhs += len(system.lists[i]) * aex_star(r - 1, lighter)
        checks.append(RecursionCheck(r, lhs, rhs, lhs <= rhs, r >= norm + 2))
    return RecursionReport(kappa, shift, tuple(checks))
