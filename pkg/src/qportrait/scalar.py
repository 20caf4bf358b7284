"""Scalar inequalities on eigenvalue lists and probability vectors.

* exp-entropy bound: ``exp S(rho) <= sqrt(Tr e^{-B} Tr e^{B})``
* pairwise sum: ``sum_{k,j} exp(b_k - b_j) >= N^2``
* Gibbs gap: ``ln sum_k e^{-b_k} + sum_k (w_k ln w_k + w_k b_k) >= 0``, which is
  the Kullback-Leibler divergence of ``w`` from the Gibbs vector of ``b``
* tomogram relation: the Gibbs gap at ``b = -w``
"""
import math

import numpy as np

from .entropy import InequalityReport, von_neumann
from .hermitian import as_hermitian, eigh
from .states import as_density, validate_probability

MAX_SPREAD = 700.0


def logsumexp(x):
    x = np.asarray(x, dtype=np.float64)
    top = float(x.max())
    return top + math.log(float(np.exp(x - top).sum()))


def gibbs_vector(b):
    b = np.asarray(b, dtype=np.float64)
    e = np.exp(-(b - b.min()))
    return e / e.sum()


def _eigenvalue_list(b):
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 1 or b.size == 0:
        raise ValueError(f"eigenvalue list must be a nonempty 1-D array, got shape {b.shape}")
    if not np.isfinite(b).all():
        raise ValueError("eigenvalue list has NaN or infinite entries")
    return b


def entropy_exp_bound(rho, b_matrix):
    """``exp(S(rho)) <= sqrt(Tr exp(-B) * Tr exp(B))`` for Hermitian ``B`` of the same size."""
    rho = as_density(rho)
    h = as_hermitian(b_matrix)
    if h.shape[0] != rho.dim:
        raise ValueError(f"dimension mismatch: rho is {rho.dim}, B is {h.shape[0]}")
    b = eigh(h, check=False).eigenvalues
    log_rhs = 0.5 * (logsumexp(-b) + logsumexp(b))
    rhs = math.exp(log_rhs) if log_rhs < 709.0 else math.inf
    return InequalityReport.build("entropy-exp-bound", math.exp(von_neumann(rho)), rhs, sense="<=")


def pairwise_exp_sum(b):
    """``sum_{k,j} exp(b_k - b_j) >= N^2``, summed over differences only."""
    b = _eigenvalue_list(b)
    diff = b[:, None] - b[None, :]
    spread = float(diff.max())
    if spread > MAX_SPREAD:
        raise OverflowError(f"eigenvalue spread {spread:.6g} exceeds {MAX_SPREAD}")
    return InequalityReport.build("pairwise-exp-sum", float(np.exp(diff).sum()), float(b.size**2))


def gibbs_gap(b, w):
    """``ln sum e^{-b} + sum (w ln w + w b) >= 0`` with ``0 ln 0 = 0``."""
    b = _eigenvalue_list(b)
    w = validate_probability(w)
    if b.size != w.size:
        raise ValueError(f"length mismatch: {b.size} eigenvalues, {w.size} weights")
    pos = w > 0
    lhs = logsumexp(-b) + float(np.dot(w[pos], np.log(w[pos]))) + float(np.dot(w, b))
    return InequalityReport.build("gibbs", lhs, 0.0)


def tomogram_uncertainty(w):
    """Gibbs gap with ``b = -w``: ``ln sum e^{w} + sum (w ln w - w^2) >= 0``."""
    w = validate_probability(w)
    report = gibbs_gap(-w, w)
    return InequalityReport.build("tomogram", report.lhs, report.rhs, report.tol)
