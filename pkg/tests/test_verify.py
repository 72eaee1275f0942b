import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import rank4_census
from fusionext import (ConfigurationError, Grading, PreconditionError, cyclic, fp_dims, invertible_objects, multiply,
                       synthesize_slightly_trivial, tensor_product, universal_grading)
from fusionext.library import a15, fibonacci, ising, rank_one, rep_s3
from fusionext.verify import (HasInvertible, Reason, SimpleProduct, common_summand_obstruction,
                              low_simps_dichotomy, search_invertible_free_component, shared_summands,
                              verify_theorem)
from oracles import SQRT2, eig_dims, eig_total

Z2 = cyclic(2)


def test_dichotomy_needs_a_small_object_in_the_trivial_component():
    g = universal_grading(ising())
    with pytest.raises(PreconditionError):
        low_simps_dichotomy(ising(), g, 2, 1)  # X lives in the odd component
    with pytest.raises(PreconditionError):
        low_simps_dichotomy(ising(), g, 1, 1)  # delta has dimension 1


def test_dichotomy_finds_the_invertible():
    ring, grading = synthesize_slightly_trivial(a15(), Z2)
    assert low_simps_dichotomy(ring, grading, 1, 1) == HasInvertible(3)


def test_dichotomy_finds_a_simple_product():
    # Ising tensor Fibonacci, graded by the Ising degree: the odd part {X, X tau} has no invertible.
    ring = tensor_product(ising(), fibonacci())
    grading = Grading(Z2, tuple((0, 0, 1)[i // 2] for i in range(6)))
    tau, x, x_tau = 1, 4, 5
    assert low_simps_dichotomy(ring, grading, tau, 1) == SimpleProduct(x, x_tau)


def test_no_rank_four_ring_has_both_halves_of_the_dichotomy():
    checked = 0
    for ring in rank4_census():
        grading = universal_grading(ring)
        dims = fp_dims(ring)
        small = [i for i in grading.trivial_component() if 1 + 1e-9 < dims[i].value < 2 - 1e-9]
        for g in range(grading.group.order):
            free = not set(grading.component(g)) & invertible_objects(ring)
            if free:
                assert not small
                x = grading.trivial_component()[-1]
                with pytest.raises(PreconditionError):
                    low_simps_dichotomy(ring, grading, x, g)
                checked += 1
            for x in small:
                assert isinstance(low_simps_dichotomy(ring, grading, x, g), HasInvertible)
    assert checked >= 1


def test_common_summand_examples():
    assert common_summand_obstruction([1, 1, 0], [1, 1, 0])
    assert not common_summand_obstruction([1, 0, 1], [1, 1, 0])
    assert not common_summand_obstruction([1, 0, 0], [1, 0, 0])
    assert shared_summands([1, 2, 1], [1, 1, 1]) == [1, 2]
    with pytest.raises(ValueError):
        shared_summands([1, 0], [1, 0, 0])


def _find(report, products):
    return [e for e in report.eliminations if e.candidate.products == products]


def test_ising_search():
    report = search_invertible_free_component(ising(), 3, 2)
    assert report.survivors == ()
    (e,) = _find(report, ((1, 0), (1, 0)))
    assert e.reason == Reason.CommonSummandObstruction
    assert [d.value for d in e.candidate.dims] == pytest.approx([SQRT2, SQRT2], abs=1e-9)


def test_rank3_search():
    report = search_invertible_free_component(a15(), 4, 2)
    assert report.survivors == ()
    (e,) = _find(report, ((1, 0), (2, 2)))
    assert e.reason == Reason.TotalDimMismatch
    c = math.cos(math.pi / 7)
    assert e.candidate.total().value == pytest.approx(1 + 2 * c + 4 * c ** 2 + 8 * c ** 3, abs=1e-9)
    assert e.candidate.total().value == pytest.approx(11.8998, abs=1e-4)


def test_search_needs_a_small_simple():
    with pytest.raises(PreconditionError):
        search_invertible_free_component(rank_one(), 3, 2)
    with pytest.raises(PreconditionError):
        search_invertible_free_component(rep_s3(), 3, 1)  # smallest non-invertible has dimension 2


def test_search_bounds_are_checked():
    with pytest.raises(ConfigurationError):
        search_invertible_free_component(ising(), 3, 0)
    with pytest.raises(ConfigurationError):
        search_invertible_free_component(a15(), 3, 2)  # below floor(9.29 / 2)


def test_verify_theorem_ising():
    report = verify_theorem('ising')
    assert report.verified and report.survivors == ()
    assert report.max_size == 3 and report.max_mult == 3


def test_verify_theorem_rank3():
    report = verify_theorem('rank3_A15')
    assert report.verified and report.survivors == ()
    assert [(f.group, f.left, f.right, f.ok) for f in report.factorizations] == [
        ('Z2', 2, 3, True), ('Z3', 3, 3, True)]


def test_verify_theorem_rejects_bad_bounds_and_names():
    with pytest.raises(ConfigurationError):
        verify_theorem('rank3', max_mult=0)
    with pytest.raises(ConfigurationError):
        verify_theorem('fibonacci')


def test_report_text_ends_with_status():
    text = verify_theorem('ising').to_text()
    assert text.endswith('status: verified\n')
    assert 'reason=CommonSummandObstruction' in text
    assert verify_theorem('ising').to_dict()['verified'] is True


@pytest.mark.parametrize('base', [ising, a15])
def test_eliminations_recheck_by_direct_arithmetic(base):
    ring = base()
    report = verify_theorem(ring.name)
    exact = eig_dims(ring.N)
    nonunit = [exact[i] for i in report.nonunit]
    budget = eig_total(ring.N)
    x0_sq = exact[report.multiplier] ** 2
    x0x0 = multiply(ring, ring.dual[report.multiplier], report.multiplier)
    for e in report.eliminations:
        sq = [1 + sum(m * d for m, d in zip(p, nonunit)) for p in e.candidate.products]
        if e.reason == Reason.DimBudgetExceeded:
            assert sum(sq[:-1]) > budget
        elif e.reason == Reason.TotalDimMismatch:
            assert abs(sum(sq) - budget) > 1e-6
        else:
            y = min(range(len(sq)), key=lambda k: (round(sq[k], 9), k))
            yy = dict(zip(report.nonunit, e.candidate.products[y]))
            shared = [i for i, m in yy.items() if m and x0x0[i]]
            if e.reason == Reason.CommonSummandObstruction:
                assert shared
            else:
                assert not shared
                assert all(abs(s - x0_sq * sq[y]) > 1e-6 for s in sq)
                assert sum(sq[:-1]) <= budget + 1e-9


def test_reports_do_not_depend_on_thread_count():
    for name in ('ising', 'rank3'):
        assert verify_theorem(name, workers=1).to_text() == verify_theorem(name, workers=4).to_text()


def test_eliminations_are_in_lexicographic_order():
    report = verify_theorem('rank3')
    keys = [(e.candidate.size, e.candidate.products) for e in report.eliminations]
    assert keys == sorted(keys)


@settings(max_examples=8)
@given(st.integers(2, 4), st.integers(1, 3), st.integers(0, 1), st.integers(0, 1))
def test_enlarging_bounds_keeps_every_reason(size, mult, grow_size, grow_mult):
    small = search_invertible_free_component(ising(), size, mult)
    large = search_invertible_free_component(ising(), size + grow_size, mult + grow_mult)
    reasons = {e.candidate.products: e.reason for e in large.eliminations}
    for e in small.eliminations:
        assert reasons[e.candidate.products] == e.reason
