import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qportrait.entropy import von_neumann
from qportrait.hermitian import matrix_fn
from qportrait.scalar import (
    entropy_exp_bound,
    gibbs_gap,
    gibbs_vector,
    logsumexp,
    pairwise_exp_sum,
    tomogram_uncertainty,
)
from qportrait.states import random_mixed_hs

reals = st.floats(-50, 50, allow_nan=False)


def test_logsumexp_large_values():
    assert logsumexp([1000.0, 1000.0]) == pytest.approx(1000 + math.log(2), abs=1e-12)
    assert logsumexp([-1000.0]) == -1000.0


def test_pairwise_examples():
    assert pairwise_exp_sum([0.0, 0.0, 0.0]).lhs == 9.0
    report = pairwise_exp_sum([0.0, math.log(2)])
    assert report.lhs == pytest.approx(2 + 2 + 0.5, abs=1e-14)
    assert report.rhs == 4.0
    # shifting every eigenvalue leaves the sum unchanged
    b = np.array([0.3, -1.2, 2.0])
    assert pairwise_exp_sum(b + 40).lhs == pytest.approx(pairwise_exp_sum(b).lhs, rel=1e-12)
    with pytest.raises(OverflowError):
        pairwise_exp_sum([0.0, 800.0])
    with pytest.raises(ValueError):
        pairwise_exp_sum([])
    with pytest.raises(ValueError):
        pairwise_exp_sum([0.0, math.inf])


def test_gibbs_examples():
    b = np.array([0.0, 1.0, 3.0])
    g = gibbs_vector(b)
    assert g.sum() == pytest.approx(1.0, abs=1e-15)
    assert gibbs_gap(b, g).gap == pytest.approx(0.0, abs=1e-15)
    # the gap is the Kullback-Leibler divergence of w from the Gibbs vector
    w = np.array([0.2, 0.3, 0.5])
    assert gibbs_gap(b, w).lhs == pytest.approx(float(np.sum(w * np.log(w / g))), abs=1e-14)
    # zero weights follow 0 ln 0 = 0
    assert math.isfinite(gibbs_gap(b, [1.0, 0.0, 0.0]).lhs)
    with pytest.raises(ValueError):
        gibbs_gap(b, [0.5, 0.5])


def test_tomogram_value():
    # ln(e + 1) + (0 - 1) for w = (1, 0)
    assert tomogram_uncertainty([1.0, 0.0]).lhs == pytest.approx(math.log(math.e + 1) - 1, abs=1e-15)
    assert tomogram_uncertainty([1.0, 0.0]).label == "tomogram"


def test_exp_bound_examples():
    rho = random_mixed_hs(3, 4)
    b = matrix_fn(rho.matrix, "ln", spectrum=rho.spectrum) @ rho.matrix
    report = entropy_exp_bound(rho, 0.5 * (b + b.conj().T))
    assert report.sense == "<=" and report.holds
    assert report.lhs == pytest.approx(math.exp(von_neumann(rho)), rel=1e-14)
    # B = 0: bound is N, lhs is exp S <= N
    assert entropy_exp_bound(np.eye(3) / 3, np.zeros((3, 3))).gap == pytest.approx(0.0, abs=1e-12)
    huge = entropy_exp_bound(rho, np.diag([800.0, 0.0, -800.0]))
    assert huge.rhs == math.inf and huge.holds
    with pytest.raises(ValueError):
        entropy_exp_bound(rho, np.zeros((2, 2)))


@settings(max_examples=300, deadline=None)
@given(st.lists(reals, min_size=1, max_size=10))
def test_property_pairwise(b):
    report = pairwise_exp_sum(b)
    n = len(b)
    assert report.lhs >= n * n * (1 - 1e-12)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(reals, st.floats(0, 1)), min_size=1, max_size=10).filter(lambda t: sum(x[1] for x in t) > 1e-3))
def test_property_gibbs(pairs):
    b = np.array([p[0] for p in pairs])
    w = np.array([p[1] for p in pairs])
    assert gibbs_gap(b, w / w.sum()).holds


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=10).filter(lambda w: sum(w) > 1e-3))
def test_property_tomogram(w):
    w = np.array(w)
    assert tomogram_uncertainty(w / w.sum()).holds
