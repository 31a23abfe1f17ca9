"""Labelled-weight vector model: label systems, weight profiles, and
deterministic enumerators.

A label system is a tuple of disjoint nonempty sets of nonzero field
elements; a weight profile (k_1, ..., k_s) asks for exactly k_i entries
from the i-th set and zeros elsewhere.  Plain weight-k vectors are the
single-list case with all nonzero elements as labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import FieldMismatchError, ProfileTooHeavyError
from .gf import FieldSpec, make_field
from .linalg import GfVector

Profile = tuple[int, ...]


@dataclass(frozen=True)
class LabelSystem:
    field: FieldSpec
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        if not self.lists:
            raise ValueError("a label system needs at least one list")
        seen: set[int] = set()
        for ls in self.lists:
            if not ls:
                raise ValueError("label lists must be nonempty")
            for x in ls:
                if not (1 <= x < self.field.q):
                    raise ValueError(f"label {x} is not a nonzero element of GF({self.field.q})")
                if x in seen:
                    raise ValueError(f"label {x} appears in two lists")
                seen.add(x)

    @classmethod
    def of(cls, field: FieldSpec, *lists: Iterable[int]) -> "LabelSystem":
        return cls(field, tuple(frozenset(ls) for ls in lists))

    @classmethod
    def all_nonzero(cls, field: FieldSpec) -> "LabelSystem":
        """The single-list system of every nonzero element (plain weight)."""
        return cls(field, (frozenset(field.nonzero_elements()),))

    @property
    def s(self) -> int:
        return len(self.lists)

    def list_index(self, value: int) -> int | None:
        for i, ls in enumerate(self.lists):
            if value in ls:
                return i
        return None

    def power(self, kappa: Profile) -> int:
        """Product of |L_i|^{k_i} (the number of labelings of a fixed support split)."""
        self.check_profile(kappa)
        out = 1
        for ls, k in zip(self.lists, kappa):
            out *= len(ls) ** k
        return out

    def check_profile(self, kappa: Profile) -> None:
        if len(kappa) != self.s:
            raise ValueError(f"profile length {len(kappa)} != number of lists {self.s}")
        if any(k < 0 for k in kappa):
            raise ValueError(f"profile entries must be nonnegative: {kappa}")

    def to_dict(self, kappa: Profile | None = None) -> dict:
        d: dict = {"q": self.field.q, "lists": [sorted(ls) for ls in self.lists]}
        if kappa is not None:
            d["kappa"] = list(kappa)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> tuple["LabelSystem", Profile | None]:
        system = cls(make_field(int(d["q"])), tuple(frozenset(int(x) for x in ls) for ls in d["lists"]))
        kappa = tuple(int(k) for k in d["kappa"]) if "kappa" in d else None
        if kappa is not None:
            system.check_profile(kappa)
        return system, kappa


def profile_norm(kappa: Profile) -> int:
    return sum(kappa)


def weight(v: GfVector) -> int:
    """Number of nonzero entries."""
    return sum(1 for x in v.entries if x)


def coweight(v: GfVector) -> int:
    """Number of zero entries."""
    return sum(1 for x in v.entries if not x)


def profile_of(v: GfVector, system: LabelSystem) -> Profile | None:
    """The weight profile of v, or None when some nonzero entry carries
    no label (the cheap rejection path for stream filters)."""
    if v.field != system.field:
        raise FieldMismatchError("vector and label system live over different fields")
    counts = [0] * system.s
    for x in v.entries:
        if x == 0:
            continue
        i = system.list_index(x)
        if i is None:
            return None
        counts[i] += 1
    return tuple(counts)


def _support_splits(n: int, kappa: Profile) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Assignments of disjoint position sets of sizes kappa, positions
    chosen lexicographically list by list."""

    def rec(avail: tuple[int, ...], i: int, acc: tuple):
        if i == len(kappa):
            yield acc
            return
        for chosen in itertools.combinations(avail, kappa[i]):
            chosen_set = set(chosen)
            rest = tuple(p for p in avail if p not in chosen_set)
            yield from rec(rest, i + 1, acc + (chosen,))

    return rec(tuple(range(n)), 0, ())


def enumerate_profile_vectors(n: int, system: LabelSystem, kappa: Profile) -> Iterator[GfVector]:
    """All vectors of length n with profile kappa, deterministically:
    support positions are chosen lexicographically list by list, then
    labels are swept in ascending order position by position."""
    system.check_profile(kappa)
    if profile_norm(kappa) > n:
        raise ProfileTooHeavyError(f"profile {kappa} does not fit in length {n}")
    field = system.field
    sorted_lists = [sorted(ls) for ls in system.lists]

    def gen():
        for split in _support_splits(n, kappa):
            positions = [p for part in split for p in part]
            label_pools = [
                sorted_lists[i] for i, part in enumerate(split) for _ in part
            ]
            for labels in itertools.product(*label_pools):
                entries = [0] * n
                for p, x in zip(positions, labels):
                    entries[p] = x
                yield GfVector(field, tuple(entries))

    return gen()


def enumerate_coweight_vectors(n: int, field: FieldSpec, k: int) -> Iterator[GfVector]:
    """All vectors of length n with exactly k zero entries, zero positions
    in lexicographic order, nonzero values swept ascending."""
    if k < 0 or k > n:
        raise ProfileTooHeavyError(f"cannot place {k} zeros in length {n}")

    def gen():
        nonzero = list(field.nonzero_elements())
        for zeros in itertools.combinations(range(n), k):
            zero_set = set(zeros)
            free = [p for p in range(n) if p not in zero_set]
            for values in itertools.product(nonzero, repeat=len(free)):
                entries = [0] * n
                for p, x in zip(free, values):
                    entries[p] = x
                yield GfVector(field, tuple(entries))

    return gen()


def dominated_by(smaller: Profile, larger: Profile) -> bool:
    """Coordinatewise order on profiles."""
    if len(smaller) != len(larger):
        raise ValueError("profiles of different lengths are incomparable")
    return all(a <= b for a, b in zip(smaller, larger))


def downset_closure(profiles: Iterable[Profile]) -> frozenset[Profile]:
    """Smallest downward-closed set containing the given profiles."""
    profiles = [tuple(p) for p in profiles]
    lengths = {len(p) for p in profiles}
    if len(lengths) > 1:
        raise ValueError(f"profiles of mixed lengths: {sorted(lengths)}")
    out: set[Profile] = set()
    for p in profiles:
        for smaller in itertools.product(*(range(k + 1) for k in p)):
            out.add(smaller)
    return frozenset(out)


def is_down_set(profiles: Iterable[Profile]) -> bool:
    ps = frozenset(tuple(p) for p in profiles)
    return ps == downset_closure(ps) if ps else True
