import math
import random

import pytest

from exvec.errors import FieldMismatchError, ProfileTooHeavyError
from exvec.gf import make_field
from exvec.linalg import GfVector
from exvec.vectors import (
    LabelSystem,
    coweight,
    dominated_by,
    downset_closure,
    enumerate_coweight_vectors,
    enumerate_profile_vectors,
    is_down_set,
    profile_of,
    weight,
)

GF2 = make_field(2)
GF3 = make_field(3)


def test_weight_coweight():
    assert weight(GfVector(GF3, (0,) * 5)) == 0
    assert coweight(GfVector(GF3, (0,) * 5)) == 5
    v = GfVector(GF3, (1, 2, 0, 1))
    assert weight(v) == 3 and coweight(v) == 1
    ones = GfVector(GF2, (1,) * 6)
    assert weight(ones) == 6 and coweight(ones) == 0


def test_label_system_validation():
    with pytest.raises(ValueError):
        LabelSystem.of(GF3, [0, 1])
    with pytest.raises(ValueError):
        LabelSystem.of(GF3, [1], [1, 2])
    with pytest.raises(ValueError):
        LabelSystem.of(GF3, [])
    with pytest.raises(ValueError):
        LabelSystem.of(GF3)
    with pytest.raises(ValueError):
        LabelSystem.of(GF2, [2])


def test_profile_of_examples():
    system = LabelSystem.of(GF3, [1], [2])
    assert profile_of(GfVector(GF3, (1, 2, 2, 0)), system) == (1, 2)
    only_one = LabelSystem.of(GF3, [1])
    assert profile_of(GfVector(GF3, (2, 0)), only_one) is None
    full = LabelSystem.all_nonzero(GF3)
    v = GfVector(GF3, (2, 1, 0, 2))
    assert profile_of(v, full) == (weight(v),)
    with pytest.raises(FieldMismatchError):
        profile_of(GfVector(GF2, (1, 0)), system)


def test_enumerate_profile_gf2():
    system = LabelSystem.of(GF2, [1])
    got = [v.entries for v in enumerate_profile_vectors(3, system, (2,))]
    assert got == [(1, 1, 0), (1, 0, 1), (0, 1, 1)]


def test_enumerate_profile_full_list():
    system = LabelSystem.all_nonzero(GF3)
    got = list(enumerate_profile_vectors(3, system, (2,)))
    assert len(got) == math.comb(3, 2) * 2**2 == 12
    assert len({v.entries for v in got}) == 12


def test_enumerate_profile_two_lists():
    system = LabelSystem.of(GF3, [1], [2])
    got = [v.entries for v in enumerate_profile_vectors(2, system, (1, 1))]
    assert got == [(1, 2), (2, 1)]


def test_enumerate_profile_too_heavy():
    system = LabelSystem.of(GF2, [1])
    with pytest.raises(ProfileTooHeavyError):
        enumerate_profile_vectors(2, system, (3,))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_profile_count_and_round_trip(q):
    field = make_field(q)
    systems = [LabelSystem.all_nonzero(field)]
    if q >= 3:
        systems.append(LabelSystem.of(field, [1], [2]))
    rng = random.Random(q)
    for system in systems:
        for n in range(0, 6):
            for _ in range(4):
                kappa = tuple(rng.randrange(0, 3) for _ in range(system.s))
                if sum(kappa) > n:
                    continue
                vs = list(enumerate_profile_vectors(n, system, kappa))
                expected = math.factorial(n)
                for k in kappa:
                    expected //= math.factorial(k)
                expected //= math.factorial(n - sum(kappa))
                expected *= system.power(kappa)
                assert len(vs) == expected
                assert len({v.entries for v in vs}) == expected
                for v in vs:
                    assert profile_of(v, system) == kappa


def test_coweight_enumeration():
    got = [v.entries for v in enumerate_coweight_vectors(2, GF3, 0)]
    assert got == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert len(list(enumerate_coweight_vectors(3, GF2, 1))) == 3
    got3 = list(enumerate_coweight_vectors(3, GF3, 1))
    assert len(got3) == 12
    assert all(coweight(v) == 1 for v in got3)
    with pytest.raises(ProfileTooHeavyError):
        enumerate_coweight_vectors(2, GF3, 3)


def test_projection_keeps_profile_dominated():
    system = LabelSystem.of(GF3, [1], [2])
    rng = random.Random(17)
    for v in enumerate_profile_vectors(5, system, (1, 2)):
        keep = sorted(rng.sample(range(5), rng.randrange(0, 6)))
        proj = GfVector(GF3, tuple(v.entries[i] for i in keep))
        smaller = profile_of(proj, system)
        assert smaller is not None
        assert dominated_by(smaller, (1, 2))


def test_downset_closure():
    assert downset_closure([(1, 1)]) == frozenset({(0, 0), (1, 0), (0, 1), (1, 1)})
    assert downset_closure([(2,)]) == frozenset({(0,), (1,), (2,)})
    assert downset_closure([]) == frozenset()
    with pytest.raises(ValueError):
        downset_closure([(1,), (1, 2)])


def test_is_down_set():
    assert is_down_set([(0,), (1,)])
    assert not is_down_set([(1,)])
    assert is_down_set([])


def test_label_system_json():
    system = LabelSystem.of(GF3, [2], [1])
    d = system.to_dict((1, 2))
    assert d == {"q": 3, "lists": [[2], [1]], "kappa": [1, 2]}
    back, kappa = LabelSystem.from_dict(d)
    assert back == system and kappa == (1, 2)
