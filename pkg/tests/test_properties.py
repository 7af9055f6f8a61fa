"""Property suites on random well-formed expressions."""

import pytest
from hypothesis import HealthCheck, given, settings

from helpers import expressions
from mforge.dsl import format, parse
from mforge.realization import realize
from mforge.rewrite import normalize, standard_rules
from mforge.verify import proof_corpus

_R = {g: standard_rules(g, saturation_depth=0) for g in range(2, 7)}
_SETTINGS = settings(max_examples=1000, deadline=None, derandomize=True,
                     suppress_health_check=[HealthCheck.too_slow])


def _check_normal_form(e, g):
    n = normalize(e, _R[g])
    assert n.signature() == e.signature()
    assert normalize(n, _R[g]) == n
    assert parse(format(e), g, e.signature()) == e
    assert parse(format(n), g, n.signature()) == n


@pytest.mark.parametrize("g", range(2, 7))
def test_idempotence_homogeneity_round_trip(g):
    @_SETTINGS
    @given(expressions(g))
    def prop(e):
        _check_normal_form(e, g)

    prop()


@pytest.mark.parametrize("g", [2, 3, 4])
def test_random_semantic_soundness(g, model_for):
    m = model_for(g)

    @settings(max_examples=300, deadline=None, derandomize=True,
              suppress_health_check=[HealthCheck.too_slow])
    @given(expressions(g, max_slots=5))
    def prop(e):
        assert realize(e, m) == realize(normalize(e, _R[g]), m)

    prop()


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_corpus_semantic_soundness(g, model_for):
    m = model_for(g)
    for label, e in proof_corpus(g):
        assert realize(e, m) == realize(normalize(e, _R[g]), m), label
