import csv
import math

import numpy as np
import pytest

from qportrait.search import (
    TARGET_NAMES,
    Histogram,
    fuzz,
    get_target,
    hermitian_from_params,
    minimize_gap,
    nelder_mead,
    probability_from_params,
    state_from_params,
)


def test_rosenbrock():
    def rosen(x):
        return 100 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2

    x, fx, used = nelder_mead(rosen, [-1.2, 1.0], 2000)
    np.testing.assert_allclose(x, [1, 1], atol=1e-4)
    assert fx < 1e-8 and used <= 2001


def test_budget_respected():
    calls = []

    def f(x):
        calls.append(1)
        return float(np.sum(x**2))

    _, _, used = nelder_mead(f, np.ones(5), 37)
    assert len(calls) == used <= 38
    _, _, used = nelder_mead(f, np.ones(5), 2)
    assert used == 3


def test_decoders(kernels, rng):
    for dim in (2, 4):
        x = rng.standard_normal(2 * dim * dim)
        rho = state_from_params(x, dim)
        assert abs(rho.matrix.trace() - 1) < 1e-14
        factor = (x[: dim * dim] + 1j * x[dim * dim :]).reshape(dim, dim)
        expected = factor @ factor.conj().T + 1e-12 * np.eye(dim)
        np.testing.assert_allclose(kernels.gram_density(x, dim, 1e-12), expected / expected.trace().real, atol=1e-14)
    # zero factor still decodes to a valid state
    assert np.allclose(state_from_params(np.zeros(8), 2).matrix, np.eye(2) / 2)
    p = probability_from_params([0.0, 1.0, -1.0])
    assert p.sum() == pytest.approx(1.0) and p[0] < 1e-11
    h = hermitian_from_params(np.arange(9.0), 3)
    np.testing.assert_array_equal(h, h.conj().T)


@pytest.mark.parametrize("name", TARGET_NAMES)
def test_every_target_fuzz_and_minimize(name):
    dim = max(3, get_target(name).min_dim)
    report = fuzz(name, dim, samples=30, seed=3)
    assert report.violations == 0 and report.evaluations == 30
    assert report.min_gap >= -1e-9
    report = minimize_gap(name, dim, restarts=2, iters=150, seed=3)
    assert report.min_gap >= -1e-9
    assert report.evaluations == 2 * 151
    assert report.argmin


def test_fuzz_is_reproducible(tmp_path):
    a = fuzz("monotonicity", 3, samples=50, seed=1)
    b = fuzz("monotonicity", 3, samples=50, seed=1)
    assert a.to_dict() == b.to_dict()
    assert fuzz("monotonicity", 3, samples=50, seed=2).min_gap != a.min_gap
    path = tmp_path / "gaps.csv"
    a.write_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["bin_low", "bin_high", "count"]
    assert sum(int(r[2]) for r in rows[1:]) == 50


def test_fuzz_trace_blocks_partition():
    report = fuzz("monotonicity", 4, samples=20, seed=1, kind="traceblocks", m=2)
    assert report.options["kind"] == "traceblocks"
    assert "traceblocks,n_top=2,m=2" in report.argmin_report["label"]


def test_argument_errors():
    with pytest.raises(ValueError):
        get_target("nope")
    with pytest.raises(ValueError):
        fuzz("permutation", 2, samples=5)
    with pytest.raises(ValueError):
        fuzz("klein", 3, samples=0)
    with pytest.raises(ValueError):
        minimize_gap("klein", 3, restarts=0)


def test_histogram_bins():
    h = Histogram.from_gaps([-1.0, 0.0, 0.5, 1.0, math.inf, math.nan])
    assert (h.underflow, h.infinite, h.indeterminate) == (1, 1, 1)
    assert sum(h.counts) == 3
    rows = list(h.rows())
    assert rows[0] == (-math.inf, 0.0, 1)
    assert rows[-1] == (math.inf, math.inf, 1)
    assert len(rows) == 52
