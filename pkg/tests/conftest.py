import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from fusionext import cyclic, direct_product
from fusionext.census import EnumerationSpec, enumerate_fusion_rings
from fusionext.library import a15, fibonacci, ising, rank_one, rep_s3

settings.register_profile('default', max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile('thorough', max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'default'))


@lru_cache(maxsize=None)
def ring_pool():
    """Every ring of rank <= 3 with constants <= 2, plus the named ones."""
    rings = [ring for rank in (1, 2, 3) for ring in enumerate_fusion_rings(EnumerationSpec(rank, 2))]
    rings += [ising(), a15(), fibonacci(), rep_s3(), rank_one()]
    return tuple(rings)


@lru_cache(maxsize=None)
def rank4_census():
    return tuple(enumerate_fusion_rings(EnumerationSpec(4, 1)))


SMALL_GROUPS = (cyclic(1), cyclic(2), cyclic(3), cyclic(4), direct_product(cyclic(2), cyclic(2)),
                cyclic(5), cyclic(6))


@pytest.fixture
def pool():
    return ring_pool()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section('acceptance criteria')
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
