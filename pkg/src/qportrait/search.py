"""Counterexample search: seeded fuzzing and Nelder-Mead gap minimization.

Each target maps an input tuple to an :class:`~qportrait.entropy.InequalityReport`
and knows how to draw random inputs and how to decode a real parameter vector
into valid inputs.  State parameters are the real and imaginary parts of a
complex ``N x N`` factor ``L``; the state is ``(L L^dagger + 1e-12 I) / Tr``.
"""
import csv
import dataclasses
import math

import numpy as np

from . import config
from .entropy import (
    chain_report,
    max_permutation_bound,
    monotonicity_gap,
    portrait_nonneg_gap,
    relative_entropy,
    InequalityReport,
)
from ._backend import gram_density
from .hermitian import random_hermitian
from .portraits import PortraitKind, _partition
from .scalar import entropy_exp_bound, gibbs_gap, pairwise_exp_sum, tomogram_uncertainty
from .serialize import jsonable, matrix_to_obj
from .states import DEFAULT_SEED, _trusted_density, make_rng, random_mixed_hs

N_BINS = 50
REGULARIZER = 1e-12


# -- parameter decoding ------------------------------------------------------

def state_from_params(x, dim):
    """Density matrix from ``2 * dim**2`` reals; valid for every finite ``x``."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    return _trusted_density(gram_density(x, dim, REGULARIZER))


def probability_from_params(x):
    """``x**2 / sum(x**2)``; reaches the boundary of the simplex."""
    sq = np.square(np.asarray(x, dtype=np.float64)) + REGULARIZER
    return sq / sq.sum()


def hermitian_from_params(x, dim):
    """Hermitian matrix from ``dim**2`` reals: diagonal, then upper-triangle real and imaginary parts."""
    x = np.asarray(x, dtype=np.float64)
    h = np.zeros((dim, dim), dtype=np.complex128)
    h[np.diag_indices(dim)] = x[:dim]
    iu = np.triu_indices(dim, 1)
    n_off = len(iu[0])
    h[iu] = x[dim : dim + n_off] + 1j * x[dim + n_off : dim + 2 * n_off]
    h[(iu[1], iu[0])] = np.conj(h[iu])
    return h


# -- targets -----------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Target:
    name: str
    min_dim: int
    n_params: object
    sample: object
    decode: object
    evaluate: object
    describe: object


def _pair_sample(seeds, dim):
    return random_mixed_hs(dim, int(seeds[0])), random_mixed_hs(dim, int(seeds[1]))


def _pair_decode(x, dim):
    k = 2 * dim * dim
    return state_from_params(x[:k], dim), state_from_params(x[k:], dim)


def _describe_states(inputs):
    out = {}
    for key, value in zip(("rho", "sigma"), inputs):
        out[key] = matrix_to_obj(value.matrix)
    return out


def _make_targets(kind, m):
    kind = PortraitKind.parse(kind)

    def mono(inputs):
        rho, sigma = inputs
        return monotonicity_gap(rho, sigma, kind, _partition(m, rho.dim))

    def nonneg(inputs):
        (rho,) = inputs
        return portrait_nonneg_gap(rho, kind, _partition(m, rho.dim))

    def klein(inputs):
        return InequalityReport.build("klein", relative_entropy(*inputs), 0.0)

    def pairwise(inputs):
        return pairwise_exp_sum(inputs[0])

    def gibbs(inputs):
        return gibbs_gap(*inputs)

    def tomogram(inputs):
        return tomogram_uncertainty(inputs[0])

    def expbound(inputs):
        return entropy_exp_bound(*inputs)

    def gaussian_b(seeds, dim):
        return (2.0 * make_rng(int(seeds[0])).standard_normal(dim),)

    def dirichlet_w(seeds, dim):
        x = make_rng(int(seeds[1])).standard_exponential(dim)
        return x / x.sum()

    def b_and_w(seeds, dim):
        return gaussian_b(seeds, dim)[0], dirichlet_w(seeds, dim)

    def rho_and_b(seeds, dim):
        return random_mixed_hs(dim, int(seeds[0])), random_hermitian(dim, make_rng(int(seeds[1])))

    def describe_vectors(names):
        return lambda inputs: {n: np.asarray(v).tolist() for n, v in zip(names, inputs)}

    def describe_rho_b(inputs):
        return {"rho": matrix_to_obj(inputs[0].matrix), "B": matrix_to_obj(inputs[1])}

    pair = dict(n_params=lambda d: 4 * d * d, sample=_pair_sample, decode=_pair_decode, describe=_describe_states)
    return {
        "klein": Target("klein", 2, evaluate=klein, **pair),
        "monotonicity": Target("monotonicity", 2, evaluate=mono, **pair),
        "chain": Target("chain", 2, evaluate=lambda i: chain_report(*i), **pair),
        "permutation": Target("permutation", 3, evaluate=lambda i: max_permutation_bound(*i), **pair),
        "nonneg": Target(
            "nonneg",
            2,
            n_params=lambda d: 2 * d * d,
            sample=lambda s, d: (random_mixed_hs(d, int(s[0])),),
            decode=lambda x, d: (state_from_params(x, d),),
            evaluate=nonneg,
            describe=lambda i: {"rho": matrix_to_obj(i[0].matrix)},
        ),
        "pairwise": Target(
            "pairwise",
            1,
            n_params=lambda d: d,
            sample=gaussian_b,
            decode=lambda x, d: (np.asarray(x, dtype=np.float64),),
            evaluate=pairwise,
            describe=describe_vectors(("b",)),
        ),
        "gibbs": Target(
            "gibbs",
            1,
            n_params=lambda d: 2 * d,
            sample=b_and_w,
            decode=lambda x, d: (np.asarray(x[:d], dtype=np.float64), probability_from_params(x[d:])),
            evaluate=gibbs,
            describe=describe_vectors(("b", "w")),
        ),
        "tomogram": Target(
            "tomogram",
            1,
            n_params=lambda d: d,
            sample=lambda s, d: (dirichlet_w(s, d),),
            decode=lambda x, d: (probability_from_params(x),),
            evaluate=tomogram,
            describe=describe_vectors(("w",)),
        ),
        "expbound": Target(
            "expbound",
            2,
            n_params=lambda d: 2 * d * d + d * d,
            sample=rho_and_b,
            decode=lambda x, d: (state_from_params(x[: 2 * d * d], d), hermitian_from_params(x[2 * d * d :], d)),
            evaluate=expbound,
            describe=describe_rho_b,
        ),
    }


TARGET_NAMES = ("monotonicity", "nonneg", "klein", "chain", "permutation", "pairwise", "gibbs", "tomogram", "expbound")


def get_target(name, kind=PortraitKind.FOLD, m=1):
    targets = _make_targets(kind, m)
    if name not in targets:
        raise ValueError(f"unknown target {name!r}; choose from {', '.join(TARGET_NAMES)}")
    return targets[name]


# -- reports -----------------------------------------------------------------

@dataclasses.dataclass
class Histogram:
    edges: list
    counts: list
    underflow: int = 0
    infinite: int = 0
    indeterminate: int = 0

    @classmethod
    def from_gaps(cls, gaps, n_bins=N_BINS):
        g = np.asarray(gaps, dtype=np.float64)
        nan = np.isnan(g)
        posinf = np.isposinf(g)
        finite_nonneg = np.isfinite(g) & (g >= 0)
        under = int(np.count_nonzero(~nan & ~posinf & ~finite_nonneg))
        vals = g[finite_nonneg]
        hi = float(vals.max()) if vals.size and vals.max() > 0 else 1.0
        counts, edges = np.histogram(vals, bins=n_bins, range=(0.0, hi))
        return cls(edges.tolist(), counts.tolist(), under, int(posinf.sum()), int(nan.sum()))

    def rows(self):
        """``(bin_low, bin_high, count)`` rows; the underflow bin comes first as ``(-inf, 0)``."""
        yield (-math.inf, 0.0, self.underflow)
        for lo, hi, c in zip(self.edges, self.edges[1:], self.counts):
            yield (lo, hi, c)
        if self.infinite:
            yield (math.inf, math.inf, self.infinite)


@dataclasses.dataclass
class FuzzReport:
    target: str
    method: str
    dim: int
    seed: int
    evaluations: int
    min_gap: float
    argmin: dict
    argmin_report: dict
    histogram: Histogram
    violations: int
    tol: float
    options: dict = dataclasses.field(default_factory=dict)

    def to_dict(self):
        d = dataclasses.asdict(self)
        return jsonable(d)

    def write_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["bin_low", "bin_high", "count"])
            for lo, hi, c in self.histogram.rows():
                w.writerow([repr(float(lo)), repr(float(hi)), c])


def _objective(report):
    if report.indeterminate or math.isnan(report.gap):
        return math.inf
    return report.gap


def _summarize(target, method, dim, seed, gaps, best_inputs, best_report, options, evaluations):
    tol = config.get().gap_tol
    finite = [g for g in gaps if not math.isnan(g)]
    violations = sum(1 for g in finite if g < -tol)
    min_gap = min(finite) if finite else math.nan
    return FuzzReport(
        target=target.name,
        method=method,
        dim=dim,
        seed=seed,
        evaluations=evaluations,
        min_gap=min_gap,
        argmin=target.describe(best_inputs) if best_inputs is not None else {},
        argmin_report=best_report.to_dict() if best_report is not None else {},
        histogram=Histogram.from_gaps(gaps),
        violations=violations,
        tol=tol,
        options=options,
    )


def _check(target, dim):
    if int(dim) != dim or dim < max(1, target.min_dim):
        raise ValueError(f"target {target.name!r} needs dimension >= {target.min_dim}, got {dim}")


def fuzz(target="monotonicity", dim=3, samples=1000, seed=DEFAULT_SEED, kind=PortraitKind.FOLD, m=1):
    """Evaluate ``target`` on ``samples`` independently seeded random inputs."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    tgt = get_target(target, kind, m)
    _check(tgt, dim)
    children = np.random.SeedSequence(seed).spawn(samples)
    gaps = []
    best = (math.inf, None, None)
    for child in children:
        inputs = tgt.sample(child.generate_state(2, np.uint64), dim)
        report = tgt.evaluate(inputs)
        gaps.append(report.gap)
        if best[1] is None or _objective(report) < best[0]:
            best = (_objective(report), inputs, report)
    options = {"samples": samples, "kind": PortraitKind.parse(kind).value, "m": m}
    return _summarize(tgt, "fuzz", dim, seed, gaps, best[1], best[2], options, samples)


# -- Nelder-Mead ---------------------------------------------------------------

def nelder_mead(f, x0, max_evals, step=0.5):
    """Minimize ``f`` from ``x0`` with at most ``max_evals`` evaluations after the first.

    Fixed coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
    Returns ``(x_best, f_best, evaluations)``.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    n = x0.size
    f0 = f(x0)
    budget = int(max_evals)
    used = 0
    simplex = [x0]
    values = [f0]
    for i in range(n):
        if used >= budget:
            break
        x = x0.copy()
        x[i] += step
        simplex.append(x)
        values.append(f(x))
        used += 1
    if len(simplex) < n + 1:
        k = int(np.argmin(values))
        return simplex[k], values[k], used + 1

    sim = np.array(simplex)
    fs = np.array(values, dtype=np.float64)
    total = sim.sum(axis=0)

    def replace(i, x, fx):
        nonlocal total
        total += x - sim[i]
        sim[i] = x
        fs[i] = fx

    while used < budget:
        hi = int(np.argmax(fs))
        lo = int(np.argmin(fs))
        f_hi = fs[hi]
        fs[hi] = -np.inf
        f_second = fs.max()
        fs[hi] = f_hi
        worst = sim[hi].copy()
        centroid = (total - worst) / n
        xr = 2.0 * centroid - worst
        fr = f(xr)
        used += 1
        if fs[lo] <= fr < f_second:
            replace(hi, xr, fr)
            continue
        if fr < fs[lo]:
            if used >= budget:
                replace(hi, xr, fr)
                break
            xe = centroid + 2.0 * (xr - centroid)
            fe = f(xe)
            used += 1
            if fe < fr:
                replace(hi, xe, fe)
            else:
                replace(hi, xr, fr)
            continue
        if used >= budget:
            break
        if fr < f_hi:
            xc = centroid + 0.5 * (xr - centroid)
            fc = f(xc)
            used += 1
            if fc <= fr:
                replace(hi, xc, fc)
                continue
        else:
            xc = centroid + 0.5 * (worst - centroid)
            fc = f(xc)
            used += 1
            if fc < f_hi:
                replace(hi, xc, fc)
                continue
        best = sim[lo].copy()
        for i in range(n + 1):
            if i == lo:
                continue
            if used >= budget:
                break
            sim[i] = best + 0.5 * (sim[i] - best)
            fs[i] = f(sim[i])
            used += 1
        total = sim.sum(axis=0)
    k = int(np.argmin(fs))
    return sim[k], float(fs[k]), used + 1


def minimize_gap(target="monotonicity", dim=3, restarts=10, iters=500, seed=DEFAULT_SEED, kind=PortraitKind.FOLD, m=1):
    """Derivative-free search for the smallest gap of ``target``.

    Each restart begins at a seeded standard-normal parameter vector and runs
    Nelder-Mead for ``iters`` further evaluations; ``iters=0`` keeps only the
    starting points.
    """
    if restarts < 1 or iters < 0:
        raise ValueError("restarts must be >= 1 and iters >= 0")
    tgt = get_target(target, kind, m)
    _check(tgt, dim)
    n_params = tgt.n_params(dim)
    best = {"value": math.inf, "inputs": None, "report": None}

    def objective(x):
        # decoding validates every state (trace, spectrum) on each evaluation
        inputs = tgt.decode(x, dim)
        report = tgt.evaluate(inputs)
        value = _objective(report)
        if best["inputs"] is None or value < best["value"]:
            best.update(value=value, inputs=inputs, report=report)
        return value

    gaps = []
    total = 0
    for child in np.random.SeedSequence(seed).spawn(restarts):
        x0 = np.random.Generator(np.random.PCG64(child)).standard_normal(n_params)
        _, value, used = nelder_mead(objective, x0, iters)
        gaps.append(value)
        total += used
    options = {"restarts": restarts, "iters": iters, "kind": PortraitKind.parse(kind).value, "m": m}
    return _summarize(tgt, "minimize", dim, seed, gaps, best["inputs"], best["report"], options, total)
