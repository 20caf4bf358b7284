import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from qportrait.entropy import (
    InequalityReport,
    bipartite_monotonicity_gap,
    chain_gaps,
    chain_report,
    max_permutation_bound,
    monotonicity_gap,
    portrait_nonneg_gap,
    qubit_relative_entropies,
    relative_entropy,
    von_neumann,
)
from qportrait.portraits import BlockPartition, PortraitKind, embed_padded, qubit_portraits
from qportrait.states import random_mixed_hs, random_pure, validate_density


def _relative_entropy_scipy(rho, sigma):
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    return float(np.trace(rho @ (scipy.linalg.logm(rho) - scipy.linalg.logm(sigma))).real)


@pytest.mark.parametrize("dim", [2, 3, 5])
def test_relative_entropy_matches_logm(dim):
    for seed in range(10):
        rho, sigma = random_mixed_hs(dim, 2 * seed), random_mixed_hs(dim, 2 * seed + 1)
        assert relative_entropy(rho, sigma) == pytest.approx(_relative_entropy_scipy(rho, sigma), abs=1e-10)


def test_kernels_relative_entropy(kernels):
    rho, sigma = random_mixed_hs(4, 1), random_mixed_hs(4, 2)
    p, u = rho.spectrum
    q, v = sigma.spectrum
    value = kernels.relative_entropy_spectra(p, u, q, v, 1e-12, 1e-10)
    assert value == pytest.approx(_relative_entropy_scipy(rho, sigma), abs=1e-10)
    # sigma with a null direction that rho occupies
    q0 = q.copy()
    q0[0] = 0.0
    assert kernels.relative_entropy_spectra(p, u, q0, v, 1e-12, 1e-10) == math.inf


def test_kernels_qubit_formula(kernels, rng):
    k = 40
    blocks = []
    for _ in range(2):
        a = rng.random(k)
        z = 0.5 * np.sqrt(a * (1 - a)) * np.exp(2j * np.pi * rng.random(k)) * rng.random(k)
        blocks.append((a, z.astype(complex), 1 - a))
    got = kernels.qubit_relative_entropies(*blocks[0], *blocks[1], 1e-12, 1e-10)
    for i in range(k):
        r = np.array([[blocks[0][0][i], blocks[0][1][i]], [np.conj(blocks[0][1][i]), blocks[0][2][i]]])
        s = np.array([[blocks[1][0][i], blocks[1][1][i]], [np.conj(blocks[1][1][i]), blocks[1][2][i]]])
        assert got[i] == pytest.approx(_relative_entropy_scipy(r, s), abs=1e-9)


def test_qubit_formula_support():
    pure0 = (np.array([1.0]), np.array([0j]), np.array([0.0]))
    pure1 = (np.array([0.0]), np.array([0j]), np.array([1.0]))
    assert qubit_relative_entropies(pure0, pure0)[0] == 0.0
    assert qubit_relative_entropies(pure0, pure1)[0] == math.inf
    half = (np.array([0.5]), np.array([0j]), np.array([0.5]))
    assert qubit_relative_entropies(half, half)[0] == pytest.approx(0.0, abs=1e-15)
    assert qubit_relative_entropies(pure0, half)[0] == pytest.approx(math.log(2), abs=1e-15)


def test_von_neumann():
    assert von_neumann(np.eye(4) / 4) == pytest.approx(math.log(4), abs=1e-14)
    assert von_neumann(random_pure(3, 1)) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann(np.diag([0.5, 0.25, 0.25])) == pytest.approx(1.5 * math.log(2), abs=1e-14)


def test_qutrit_values():
    rho, sigma = np.diag([0.5, 0.25, 0.25]), np.eye(3) / 3
    assert relative_entropy(rho, sigma) == pytest.approx(math.log(3) - 1.5 * math.log(2), abs=1e-14)
    report = portrait_nonneg_gap(sigma, PortraitKind.FOLD, 1)
    # padded portrait diag(2/3, 1/3, 0) against I/3
    assert report.lhs == pytest.approx(math.log(3) + (2 / 3) * math.log(2 / 3) + (1 / 3) * math.log(1 / 3), abs=1e-14)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        relative_entropy(random_mixed_hs(2, 1), random_mixed_hs(3, 1))
    with pytest.raises(ValueError):
        monotonicity_gap(random_mixed_hs(2, 1), random_mixed_hs(3, 1))
    with pytest.raises(ValueError):
        max_permutation_bound(random_mixed_hs(2, 1), random_mixed_hs(2, 2))


def test_bipartite_oracle_matches_trace_blocks():
    for seed in range(50):
        rho, sigma = random_mixed_hs(4, 2 * seed), random_mixed_hs(4, 2 * seed + 1)
        portrait = monotonicity_gap(rho, sigma, PortraitKind.TRACE_BLOCKS, BlockPartition(2, 2))
        oracle = bipartite_monotonicity_gap(rho, sigma, (2, 2), subsystem=2)
        assert portrait.gap == pytest.approx(oracle.gap, abs=1e-11)
        fold = monotonicity_gap(rho, sigma, PortraitKind.FOLD, BlockPartition(2, 2))
        assert fold.gap == pytest.approx(bipartite_monotonicity_gap(rho, sigma, (2, 2), 1).gap, abs=1e-11)


def test_nonneg_gap_holds():
    for dim in range(2, 7):
        for seed in range(20):
            rho = random_mixed_hs(dim, seed)
            for kind in PortraitKind:
                assert portrait_nonneg_gap(rho, kind, None).holds


def test_nonneg_support_violation_is_infinite():
    # padded portrait puts weight where a rank-deficient rho has none
    rho = validate_density(np.diag([0.0, 0.5, 0.5]))
    assert math.isinf(relative_entropy(embed_padded(np.diag([0.5, 0.5]), 3), rho))


def test_chain_report():
    rho, sigma = random_mixed_hs(5, 1), random_mixed_hs(5, 2)
    values = chain_gaps(rho, sigma)
    assert len(values) == 4
    report = chain_report(rho, sigma)
    assert report.holds and report.detail["values"] == values
    assert report.label.startswith("chain[")


def test_permutation_bound_matches_literal_search():
    for seed in range(5):
        rho, sigma = random_mixed_hs(4, 2 * seed), random_mixed_hs(4, 2 * seed + 1)
        literal = max(
            relative_entropy(a, b) for (_, a), (_, b) in zip(qubit_portraits(rho), qubit_portraits(sigma))
        )
        report = max_permutation_bound(rho, sigma)
        assert report.rhs == pytest.approx(literal, abs=1e-12)
        assert report.holds
        assert sorted(report.detail["argmax_perm"]) == [0, 1, 2, 3]


def test_report_semantics():
    ok = InequalityReport.build("x", 1.0, 0.5)
    assert ok.gap == 0.5 and ok.holds and ok.sense == ">="
    le = InequalityReport.build("y", 1.0, 0.5, sense="<=")
    assert le.gap == -0.5 and not le.holds
    close = InequalityReport.build("z", 1.0, 1.0 + 5e-10)
    assert close.holds
    both = InequalityReport.build("w", math.inf, math.inf)
    assert both.indeterminate and both.holds and math.isnan(both.gap)
    d = both.to_dict()
    assert d["lhs"] == "inf" and d["gap"] is None and d["indeterminate"]
    assert InequalityReport.build("v", math.inf, 1.0).gap == math.inf


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**40), st.integers(0, 2**40))
def test_property_klein(dim, s1, s2):
    rho, sigma = random_mixed_hs(dim, s1), random_mixed_hs(dim, s2)
    assert relative_entropy(rho, sigma) >= -1e-12
    assert abs(relative_entropy(rho, rho)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2**40), st.data())
def test_property_monotonicity(dim, seed, data):
    m = data.draw(st.integers(1, dim // 2))
    kind = data.draw(st.sampled_from(list(PortraitKind)))
    report = monotonicity_gap(random_mixed_hs(dim, seed), random_mixed_hs(dim, seed + 1), kind, m)
    assert report.holds
