import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_GROUPS, ring_pool
from fusionext import (Grading, PreconditionError, StructuralError,
                       check_component_dims, check_exact_factorization, cyclic, direct_product, fp_dim_ring,
                       invertible_objects, is_similar_component, is_slightly_trivial, multiply, pointed,
                       synthesize_slightly_trivial, universal_grading, validate_grading, validate_ring)
from fusionext.extensions import factorization_problems, factorize_via_pointed, nonsimilar_components
from fusionext.grading import trivial_grading
from fusionext.library import a15, ising, rank_one
from oracles import eig_total

Z2, Z3 = cyclic(2), cyclic(3)


def test_ising_x_component_is_not_similar():
    g = universal_grading(ising())
    assert is_similar_component(ising(), g, 1) is None
    assert is_slightly_trivial(ising(), g) is None
    assert nonsimilar_components(ising(), g) == [1]


def test_trivial_component_is_always_similar():
    for ring in ring_pool():
        g = universal_grading(ring)
        entry = is_similar_component(ring, g, g.group.identity)
        assert entry.delta == ring.unit
        assert all(k == v for k, v in entry.image.items())


def test_trivial_grading_gives_a_witness():
    for ring in (ising(), a15(), rank_one()):
        w = is_slightly_trivial(ring, trivial_grading(ring))
        assert w is not None and len(w.entries) == 1


def test_a15_z2_nontrivial_component_is_similar():
    ring, grading = synthesize_slightly_trivial(a15(), Z2)
    entry = is_similar_component(ring, grading, 1)
    assert entry is not None and entry.delta == 3
    assert entry.image == {0: 3, 1: 4, 2: 5}


def test_ising_z3_is_slightly_trivial():
    ring, grading = synthesize_slightly_trivial(ising(), Z3)
    w = is_slightly_trivial(ring, grading)
    assert w is not None
    assert sorted(w.labels()) == list(range(9))
    assert w.labels()[7] == (2, 1)


def test_synthesis_of_rank_one_is_the_group_ring():
    ring, _ = synthesize_slightly_trivial(rank_one(), Z3)
    assert ring.key() == pointed(Z3).key()


def test_synthesis_ising_z2():
    ring, grading = synthesize_slightly_trivial(ising(), Z2)
    assert ring.rank == 6
    assert validate_ring(ring).passed
    assert fp_dim_ring(ring).value == pytest.approx(8, abs=1e-9)
    assert len(invertible_objects(ring)) == 4


def test_synthesis_a15_z2():
    ring, grading = synthesize_slightly_trivial(a15(), Z2)
    assert ring.rank == 6
    assert fp_dim_ring(ring).value == pytest.approx(2 * eig_total(a15().N), abs=1e-8)
    assert fp_dim_ring(ring).value == pytest.approx(18.591794, abs=1e-6)
    assert is_slightly_trivial(ring, grading) is not None


def test_synthesis_needs_a_commutative_base():
    # the ring of S3 viewed as a pointed ring is non-commutative
    from fusionext.groups import FiniteGroup
    perms = list(itertools.permutations(range(3)))
    idx = {p: k for k, p in enumerate(perms)}
    s3 = FiniteGroup.from_table([[idx[tuple(a[b[i]] for i in range(3))] for b in perms] for a in perms])
    base = pointed(s3)
    with pytest.raises(PreconditionError, match='commutative'):
        synthesize_slightly_trivial(base, Z2)
    ring, grading = synthesize_slightly_trivial(base, Z2, force=True)
    assert validate_ring(ring).passed and ring.rank == 12


def test_pointed_factorization_z2_z3():
    ring = pointed(direct_product(Z2, Z3))
    left = [3]  # (1, 0)
    right = [1, 2]  # (0, 1), (0, 2)
    fact = check_exact_factorization(ring, left, right)
    assert fact is not None
    assert fact.left == (0, 3) and fact.right == (0, 1, 2)
    assert len(fact.pairing) == 6


def test_factorization_needs_closed_sets():
    with pytest.raises(PreconditionError):
        check_exact_factorization(ising(), [0, 1], [0, 2])


def test_factorization_diagnostics():
    ring = pointed(cyclic(4))
    fact, problems = factorization_problems(ring, [2], [2])
    assert fact is None
    assert any('intersection' in p for p in problems)
    assert any('not products' in p for p in problems)
    fact, problems = factorization_problems(ising(), [1, 2], [1, 2])
    assert fact is None and any('not simple' in p for p in problems)


def test_factorization_of_a15_z2():
    ring, grading = synthesize_slightly_trivial(a15(), Z2)
    fact = check_exact_factorization(ring, invertible_objects(ring), grading.trivial_component())
    assert fact is not None and len(fact.left) == 2 and len(fact.right) == 3


def test_factorize_via_pointed():
    ring, grading = synthesize_slightly_trivial(a15(), Z2)
    fact = factorize_via_pointed(ring, grading)
    assert (len(fact.left), len(fact.right)) == (2, 3)
    fact = factorize_via_pointed(a15(), trivial_grading(a15()))
    assert fact.left == (0,)


def test_factorize_via_pointed_refuses_ising_extensions():
    ring, grading = synthesize_slightly_trivial(ising(), Z2)
    with pytest.raises(PreconditionError, match='pointed part'):
        factorize_via_pointed(ring, grading)
    with pytest.raises(PreconditionError, match='slightly trivial'):
        factorize_via_pointed(ising(), universal_grading(ising()))


def test_similarity_reports_inconsistent_component():
    # A deliberately wrong grading: the invertible delta does not send the
    # trivial component onto its own component.
    ring, _ = synthesize_slightly_trivial(a15(), Z2)
    bad = Grading(Z2, (0, 0, 0, 1, 1, 0))
    with pytest.raises(StructuralError):
        is_similar_component(ring, bad, 1)


ring_index = st.integers(min_value=0, max_value=len(ring_pool()) - 1)


@given(ring_index, st.sampled_from(SMALL_GROUPS))
def test_synthesis_round_trip(k, group):
    base = ring_pool()[k]
    ring, grading = synthesize_slightly_trivial(base, group)
    assert ring.rank == group.order * base.rank
    assert validate_ring(ring).passed and validate_grading(ring, grading).passed
    assert is_slightly_trivial(ring, grading) is not None
    assert check_component_dims(ring, grading).passed
    assert fp_dim_ring(ring).value == pytest.approx(group.order * fp_dim_ring(base).value, abs=1e-8)


@given(ring_index, st.sampled_from(SMALL_GROUPS), st.data())
def test_synthesized_products_follow_the_base_rules(k, group, data):
    base = ring_pool()[k]
    ring, _ = synthesize_slightly_trivial(base, group)
    r = base.rank
    g, h = data.draw(st.integers(0, group.order - 1)), data.draw(st.integers(0, group.order - 1))
    i, j = data.draw(st.integers(0, r - 1)), data.draw(st.integers(0, r - 1))
    prod = multiply(ring, g * r + i, h * r + j)
    expected = np.zeros(ring.rank, dtype=np.int64)
    gh = group.mul(g, h)
    expected[gh * r:(gh + 1) * r] = multiply(base, i, j)
    assert prod.tolist() == expected.tolist()


@given(st.sampled_from(SMALL_GROUPS), st.data())
def test_exact_factorizations_have_product_size(group, data):
    ring = pointed(group)
    subsets = [set(c) for c in itertools.chain.from_iterable(
        itertools.combinations(range(group.order), n) for n in range(group.order + 1))]
    closed = [s | {0} for s in subsets if _closed(group, s | {0})]
    left, right = data.draw(st.sampled_from(closed)), data.draw(st.sampled_from(closed))
    fact = check_exact_factorization(ring, left, right)
    if fact is not None:
        assert len(fact.left) * len(fact.right) == ring.rank


def _closed(group, s):
    return all(group.mul(a, b) in s for a in s for b in s) and all(group.inverse[a] in s for a in s)
