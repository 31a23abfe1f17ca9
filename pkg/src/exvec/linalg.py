"""Dense matrices and subspaces over GF(q).

Matrices are immutable values (tuples of row tuples); every operation is
a pure function.  Subspaces are represented canonically by their reduced
row-echelon basis, which makes duplicate-free enumeration possible
without hashing members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceededError, FieldMismatchError
from .gf import FieldSpec, make_field

SUBSPACE_BUDGET = 10**8
MEMBER_BUDGET = 10**7


@dataclass(frozen=True)
class GfVector:
    field: FieldSpec
    entries: tuple[int, ...]

    def __post_init__(self):
        q = self.field.q
        if any(not (0 <= x < q) for x in self.entries):
            raise ValueError(f"entry out of range for GF({q}): {self.entries}")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.entries) if x)


@dataclass(frozen=True)
class GfMatrix:
    """Row-major matrix; `rows` holds n_rows tuples of length n_cols."""

    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]
    n_cols: int

    def __post_init__(self):
        q = self.field.q
        for row in self.rows:
            if len(row) != self.n_cols:
                raise ValueError("ragged rows")
            if any(not (0 <= x < q) for x in row):
                raise ValueError(f"entry out of range for GF({q})")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[int]], n_cols: int | None = None) -> "GfMatrix":
        rs = tuple(tuple(r) for r in rows)
        if n_cols is None:
            if not rs:
                raise ValueError("n_cols required for a matrix with no rows")
            n_cols = len(rs[0])
        return cls(field, rs, n_cols)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Iterable[Sequence[int]], n_rows: int | None = None) -> "GfMatrix":
        cs = [tuple(c) for c in cols]
        if n_rows is None:
            if not cs:
                raise ValueError("n_rows required for a matrix with no columns")
            n_rows = len(cs[0])
        if any(len(c) != n_rows for c in cs):
            raise ValueError("ragged columns")
        rows = tuple(tuple(c[i] for c in cs) for i in range(n_rows))
        return cls(field, rows, len(cs))

    @classmethod
    def zeros(cls, field: FieldSpec, n_rows: int, n_cols: int) -> "GfMatrix":
        return cls(field, tuple((0,) * n_cols for _ in range(n_rows)), n_cols)

    def row(self, i: int) -> GfVector:
        return GfVector(self.field, self.rows[i])

    def column(self, j: int) -> GfVector:
        if not (0 <= j < self.n_cols):
            raise IndexError(f"column {j} out of range")
        return GfVector(self.field, tuple(r[j] for r in self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(r[j] for r in self.rows) for j in range(self.n_cols)]

    def to_dict(self) -> dict:
        return {
            "q": self.field.q,
            "rows": self.n_rows,
            "cols": self.n_cols,
            "entries": [list(r) for r in self.rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GfMatrix":
        field = make_field(int(d["q"]))
        rows = tuple(tuple(int(x) for x in r) for r in d["entries"])
        m = cls(field, rows, int(d["cols"]))
        if m.n_rows != int(d["rows"]):
            raise ValueError("row count does not match entries")
        return m


def dot(u: GfVector, v: GfVector) -> int:
    """Standard bilinear dot product."""
    if u.field != v.field:
        raise FieldMismatchError("dot product across different fields")
    if len(u) != len(v):
        raise ValueError("length mismatch")
    f = u.field
    acc = 0
    for a, b in zip(u.entries, v.entries):
        acc = f.add_table[acc][f.mul_table[a][b]]
    return acc


def rref(m: GfMatrix) -> tuple[GfMatrix, int, tuple[int, ...]]:
    """Canonical reduced row-echelon form: (R, rank, pivot columns).

    Pivot entries are 1 with zeros above and below; zero rows are moved
    to the bottom and kept (R has the shape of m).
    """
    f = m.field
    add, mul, neg, inv = f.add_table, f.mul_table, f.neg_table, f.inv_table
    rows = [list(r) for r in m.rows]
    n_rows, n_cols = len(rows), m.n_cols
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = inv[rows[r][c]]
        if scale != 1:
            rows[r] = [mul[scale][x] for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                coef = neg[rows[i][c]]
                src = rows[r]
                dst = rows[i]
                for j in range(c, n_cols):
                    if src[j]:
                        dst[j] = add[dst[j]][mul[coef][src[j]]]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return GfMatrix(f, tuple(tuple(row) for row in rows), n_cols), r, tuple(pivots)


def rank(m: GfMatrix) -> int:
    return rref(m)[1]


def append_row(m: GfMatrix, row: Sequence[int]) -> GfMatrix:
    row = tuple(row)
    if len(row) != m.n_cols:
        raise ValueError(f"row length {len(row)} != {m.n_cols}")
    return GfMatrix(m.field, m.rows + (row,), m.n_cols)


def delete_row(m: GfMatrix, i: int) -> GfMatrix:
    if not (0 <= i < m.n_rows):
        raise IndexError(f"row {i} out of range")
    return GfMatrix(m.field, m.rows[:i] + m.rows[i + 1:], m.n_cols)


def a_rank(m: GfMatrix) -> int:
    """Rank of m with an all-ones row appended (affine rank of the columns)."""
    return rank(append_row(m, (1,) * m.n_cols))


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of an n-dimensional space over GF(q)."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (r - i) - 1
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class Subspace:
    """A subspace given by its canonical RREF basis (dim x ambient_dim)."""

    basis: GfMatrix
    pivots: tuple[int, ...]

    def __post_init__(self):
        b = self.basis
        if len(self.pivots) != b.n_rows:
            raise ValueError("one pivot per basis row required")
        if any(p0 >= p1 for p0, p1 in zip(self.pivots, self.pivots[1:])):
            raise ValueError("pivots must be strictly increasing")
        pivot_set = set(self.pivots)
        for i, row in enumerate(b.rows):
            p = self.pivots[i]
            if row[p] != 1 or any(row[j] for j in range(p)):
                raise ValueError("basis is not in reduced row-echelon form")
            if any(row[pj] for pj in pivot_set if pj != p):
                raise ValueError("pivot columns must be cleared")

    @property
    def ambient_dim(self) -> int:
        return self.basis.n_cols

    @property
    def dim(self) -> int:
        return self.basis.n_rows

    @classmethod
    def from_matrix(cls, m: GfMatrix) -> "Subspace":
        """Row space of m as a canonical subspace."""
        red, rk, pivots = rref(m)
        return cls(GfMatrix(m.field, red.rows[:rk], m.n_cols), pivots)

    def contains(self, v: GfVector) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        f = self.basis.field
        add, mul, neg = f.add_table, f.mul_table, f.neg_table
        residue = list(v.entries)
        for i, p in enumerate(self.pivots):
            c = residue[p]
            if c:
                coef = neg[c]
                for j, x in enumerate(self.basis.rows[i]):
                    if x:
                        residue[j] = add[residue[j]][mul[coef][x]]
        return not any(residue)


def enumerate_subspaces(
    field: FieldSpec, n: int, r: int, *, budget: int = SUBSPACE_BUDGET
) -> Iterator[Subspace]:
    """All r-dimensional subspaces of GF(q)^n, each exactly once.

    Deterministic order: lexicographic by pivot set, then lexicographic
    sweep of the free entries (row-major).  Raises BudgetExceededError
    if the Gaussian binomial count exceeds the budget.
    """
    if not (0 <= r <= n):
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    total = gaussian_binomial(n, r, field.q)
    if total > budget:
        raise BudgetExceededError(
            f"{total} subspaces of dim {r} in GF({field.q})^{n} exceed budget {budget}"
        )

    def gen():
        q = field.q
        for pivots in itertools.combinations(range(n), r):
            pivot_set = set(pivots)
            free = [
                (i, c)
                for i in range(r)
                for c in range(pivots[i] + 1, n)
                if c not in pivot_set
            ]
            base = [[0] * n for _ in range(r)]
            for i, p in enumerate(pivots):
                base[i][p] = 1
            for values in itertools.product(range(q), repeat=len(free)):
                rows = [row[:] for row in base]
                for (i, c), val in zip(free, values):
                    rows[i][c] = val
                yield Subspace(
                    GfMatrix(field, tuple(tuple(row) for row in rows), n), pivots
                )

    return gen()


def subspace_members(w: Subspace, *, budget: int = MEMBER_BUDGET) -> Iterator[GfVector]:
    """All q^dim vectors of the subspace, each exactly once.

    Deterministic order: lexicographic sweep of the basis coefficients.
    """
    field = w.basis.field
    count = field.q ** w.dim
    if count > budget:
        raise BudgetExceededError(
            f"{count} members of a dim-{w.dim} subspace exceed budget {budget}"
        )

    def gen():
        add, mul = field.add_table, field.mul_table
        n = w.ambient_dim
        vecs = [(0,) * n]
        # rows are folded last-to-first so the first coefficient is the
        # most significant digit of the sweep
        for row in reversed(w.basis.rows):
            nxt = []
            for coef in field.elements():
                scaled = tuple(mul[coef][x] for x in row)
                for v in vecs:
                    nxt.append(tuple(add[a][b] for a, b in zip(v, scaled)))
            vecs = nxt
        for v in vecs:
            yield GfVector(field, v)

    return gen()


def orthogonal_complement(w: Subspace) -> Subspace:
    """{x : x . w = 0 for all w in W} under the standard dot product."""
    field = w.basis.field
    n = w.ambient_dim
    neg = field.neg_table
    pivot_set = set(w.pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    kernel_rows = []
    for fcol in free_cols:
        vec = [0] * n
        vec[fcol] = 1
        for i, p in enumerate(w.pivots):
            vec[p] = neg[w.basis.rows[i][fcol]]
        kernel_rows.append(tuple(vec))
    if not kernel_rows:
        return Subspace(GfMatrix(field, (), n), ())
    return Subspace.from_matrix(GfMatrix(field, tuple(kernel_rows), n))
