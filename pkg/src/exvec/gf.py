"""Exact arithmetic in GF(q) for prime powers 2 <= q <= 256.

Elements are plain integers in [0, q).  For an extension field GF(p^e)
the index encodes the residue polynomial c_0 + c_1*x + ... + c_{e-1}*x^{e-1}
in base p (index = sum c_i * p^i), reduced modulo a fixed irreducible
polynomial: the monic degree-e polynomial over GF(p) whose non-leading
coefficients have the smallest base-p encoding.  The construction is
fully deterministic, so a field is identified everywhere (files, CLI
flags) by its order q alone.

All operations are table lookups after construction; a FieldSpec is
immutable and safe for unrestricted concurrent reads.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import NotPrimePowerError, UnsupportedFieldError

MAX_ORDER = 256


def _prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise NotPrimePowerError."""
    if q < 2:
        raise NotPrimePowerError(f"field order must be >= 2, got {q}")
    n = q
    p = None
    for d in range(2, n + 1):
        if d * d > n:
            if n > 1:
                p = n if p is None else p
                if n != p:
                    raise NotPrimePowerError(f"{q} has two distinct prime factors")
            break
        if n % d == 0:
            p = d
            while n % d == 0:
                n //= d
            if n != 1:
                raise NotPrimePowerError(f"{q} has two distinct prime factors")
            break
    assert p is not None
    e = 0
    n = q
    while n > 1:
        n //= p
        e += 1
    return p, e


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Reduce a modulo the monic polynomial m over GF(p)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    del a[dm:]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


def _monic_polys(p: int, degree: int):
    """All monic polynomials of the given degree, ascending by the base-p
    encoding of their non-leading coefficients."""
    for code in range(p**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % p)
            c //= p
        yield tuple(coeffs) + (1,)


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    degree = len(poly) - 1
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polys(p, d):
            if _poly_mod(poly, divisor, p) == (0,):
                return False
    return True


def _least_irreducible(p: int, e: int) -> tuple[int, ...]:
    for poly in _monic_polys(p, e):
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


class FieldSpec:
    """A concrete finite field GF(q) with full arithmetic tables.

    Obtain instances through :func:`make_field`; two specs compare equal
    iff they have the same order (construction is deterministic).
    """

    __slots__ = (
        "q",
        "p",
        "e",
        "irreducible_poly",
        "add_table",
        "mul_table",
        "neg_table",
        "inv_table",
        "_np_tables",
    )

    def __init__(self, q: int):
        p, e = _prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        self.irreducible_poly = _least_irreducible(p, e) if e > 1 else None

        if e == 1:
            add = tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
            mul = tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
        else:
            def decode(i: int) -> tuple[int, ...]:
                cs = []
                for _ in range(e):
                    cs.append(i % p)
                    i //= p
                return tuple(cs)

            def encode(cs: tuple[int, ...]) -> int:
                v = 0
                for c in reversed(cs):
                    v = v * p + c
                return v

            polys = [decode(i) for i in range(q)]
            add = tuple(
                tuple(encode(tuple((x + y) % p for x, y in zip(polys[a], polys[b])))
                      for b in range(q))
                for a in range(q)
            )
            mod = self.irreducible_poly
            mul_rows = []
            for a in range(q):
                row = []
                for b in range(q):
                    prod = _poly_mod(_poly_mul(polys[a], polys[b], p), mod, p)
                    prod = prod + (0,) * (e - len(prod))
                    row.append(encode(prod))
                mul_rows.append(tuple(row))
            mul = tuple(mul_rows)

        self.add_table = add
        self.mul_table = mul
        self.neg_table = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
        self.inv_table = tuple(inv)
        self._np_tables = None

    # -- arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.inv_table[a]

    def pow(self, a: int, m: int) -> int:
        if m < 0:
            a, m = self.inv(a), -m
        out = 1
        for _ in range(m):
            out = self.mul_table[out][a]
        return out

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        """The q-1 nonzero elements, ascending by index."""
        return range(1, self.q)

    # -- plumbing ----------------------------------------------------

    def numpy_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(add, mul) tables as uint8 arrays, built lazily."""
        if self._np_tables is None:
            add = np.array(self.add_table, dtype=np.uint8)
            mul = np.array(self.mul_table, dtype=np.uint8)
            add.setflags(write=False)
            mul.setflags(write=False)
            self._np_tables = (add, mul)
        return self._np_tables

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"


@functools.lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Build (and cache) the field of order q.

    Raises UnsupportedFieldError for q > 256 and NotPrimePowerError when
    q is not a prime power.
    """
    if q > MAX_ORDER:
        raise UnsupportedFieldError(f"field orders above {MAX_ORDER} are not supported")
    return FieldSpec(q)


def verify_field_axioms(field: FieldSpec) -> list[str]:
    """Exhaustively check all field axioms; return a list of violations.

    Cubic in q (associativity/distributivity run over all triples), so
    intended for q <= 16 in routine testing; larger orders still finish
    but take seconds.
    """
    q = field.q
    add, mul = field.add_table, field.mul_table
    bad: list[str] = []
    rng = range(q)
    for a in rng:
        if add[a][0] != a:
            bad.append(f"add({a},0) != {a}")
        if mul[a][1] != a:
            bad.append(f"mul({a},1) != {a}")
        if mul[a][0] != 0:
            bad.append(f"mul({a},0) != 0")
        if add[a][field.neg_table[a]] != 0:
            bad.append(f"{a} + neg({a}) != 0")
        if a and mul[a][field.inv_table[a]] != 1:
            bad.append(f"{a} * inv({a}) != 1")
        for b in rng:
            if add[a][b] != add[b][a]:
                bad.append(f"add not commutative at ({a},{b})")
            if mul[a][b] != mul[b][a]:
                bad.append(f"mul not commutative at ({a},{b})")
            for c in rng:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    bad.append(f"add not associative at ({a},{b},{c})")
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    bad.append(f"mul not associative at ({a},{b},{c})")
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    bad.append(f"distributivity fails at ({a},{b},{c})")
    # nonzero elements form a group under mul: closure suffices given the above
    for a in range(1, q):
        for b in range(1, q):
            if mul[a][b] == 0:
                bad.append(f"zero divisor: {a}*{b} = 0")
    return bad
