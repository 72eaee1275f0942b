import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import rank4_census
from fusionext import ConfigurationError, FusionRing, multiply, relabel, validate_ring
from fusionext.census import (EnumerationSpec, canonical_form, census_anomalies, dual_patterns,
                              enumerate_fusion_rings)
from fusionext.library import a15, fibonacci, ising, pointed, rank_one
from fusionext.groups import cyclic
from oracles import loop_associative


def census(rank, max_constant, workers=1):
    return list(enumerate_fusion_rings(EnumerationSpec(rank, max_constant), workers=workers))


def brute_force_classes(rank, max_constant):
    """Every tensor with the unit/dual rows fixed and free cells in [0, max], up to unit-fixing relabeling."""
    cells = list(itertools.product(range(1, rank), repeat=3))
    found = set()
    for dual in itertools.permutations(range(1, rank)):
        dual = (0,) + dual
        if any(dual[dual[i]] != i for i in range(rank)):
            continue
        for values in itertools.product(range(max_constant + 1), repeat=len(cells)):
            N = np.zeros((rank,) * 3, dtype=np.int64)
            for k in range(rank):
                N[0, k, k] = N[k, 0, k] = 1
            for i in range(1, rank):
                N[i, dual[i], 0] = 1
            for c, v in zip(cells, values):
                N[c] = v
            if not validate_ring(FusionRing(N, dual)).passed:
                continue
            found.add(min(tuple(N[np.ix_(p, p, p)].flat)
                          for p in ([0] + list(q) for q in itertools.permutations(range(1, rank)))))
    return found


def test_rank_one():
    (ring,) = census(1, 3)
    assert ring.key() == rank_one().key()


def test_rank_two_constants_at_most_one():
    rings = census(2, 1)
    assert [r.key() for r in rings] == sorted([pointed(cyclic(2)).key(), fibonacci().key()], key=lambda k: k[2])


@pytest.mark.parametrize('rank, max_constant', [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_census_matches_brute_force(rank, max_constant):
    keys = {tuple(r.N.flat) for r in census(rank, max_constant)}
    assert keys == brute_force_classes(rank, max_constant)


def test_rank_three_contains_both_named_rings():
    keys = {r.key() for r in census(3, 1)}
    assert ising().key() in keys and a15().key() in keys
    assert len(keys) == 4


def test_census_rings_are_valid_canonical_and_clean():
    for ring in census(3, 2) + list(rank4_census()):
        assert validate_ring(ring).passed
        assert loop_associative(ring.N)
        assert canonical_form(ring) == ring
        assert census_anomalies(ring) == []
        for i in ring.indices:
            assert multiply(ring, i, ring.dual[i])[ring.unit] == 1


def test_rank_four_count():
    assert len(rank4_census()) == 10


def test_thread_count_does_not_change_output():
    assert [r.key() for r in census(4, 1, workers=4)] == [r.key() for r in rank4_census()]


def test_canonical_form_reorders_ising():
    swapped = relabel(ising(), [0, 2, 1])
    assert swapped != ising()
    assert canonical_form(swapped) == ising()
    assert canonical_form(rank_one()) == rank_one()


def test_dual_patterns():
    assert dual_patterns(1) == [(0,)]
    assert dual_patterns(3) == [(0, 1, 2), (0, 2, 1)]
    assert dual_patterns(5) == [(0, 1, 2, 3, 4), (0, 1, 2, 4, 3), (0, 2, 1, 4, 3)]


def test_fixed_dual_pattern():
    rings = list(enumerate_fusion_rings(EnumerationSpec(3, 1, (0, 2, 1))))
    assert [r.dual for r in rings] == [(0, 2, 1)]


@pytest.mark.parametrize('kwargs', [
    dict(rank=7, max_constant=1), dict(rank=3, max_constant=4), dict(rank=0, max_constant=1),
    dict(rank=3, max_constant=1, dual_pattern=(0, 1)), dict(rank=3, max_constant=1, dual_pattern=(1, 0, 2)),
])
def test_guards(kwargs):
    with pytest.raises(ConfigurationError):
        EnumerationSpec(**kwargs)


def test_guards_can_be_lifted():
    assert EnumerationSpec(7, 1, unsafe=True).rank == 7


def test_anomalies_are_reported_not_dropped():
    # not a fusion ring: the classes {1} and {2} multiply inconsistently
    N = np.zeros((3, 3, 3), dtype=np.int64)
    for k in range(3):
        N[0, k, k] = N[k, 0, k] = 1
    N[1, 1, 0] = N[2, 2, 0] = 1
    N[1, 2, 1] = N[2, 1, 2] = 1
    problems = census_anomalies(FusionRing(N, (0, 1, 2)))
    assert any('universal grading failed' in p for p in problems)


@given(st.sampled_from(census(3, 2) + list(rank4_census())), st.randoms(use_true_random=False))
def test_canonical_form_ignores_relabeling(ring, rnd):
    rest = list(range(1, ring.rank))
    rnd.shuffle(rest)
    moved = relabel(ring, [0] + rest)
    assert canonical_form(moved) == canonical_form(ring)
    assert canonical_form(canonical_form(moved)) == canonical_form(moved)
