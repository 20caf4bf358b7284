"""Von Neumann entropy, relative entropy, and the portrait inequalities as reports.

Relative entropy is evaluated from the two spectra::

    S(rho||sigma) = sum_j p_j ln p_j - sum_k r_k ln q_k,   r_k = sum_j p_j |<u_j|v_k>|^2

with ``0 ln 0 = 0``.  It is ``+inf`` when eigenvectors of ``sigma`` with
eigenvalue at most ``eig_zero_tol`` carry total weight ``sum r_k`` above
``support_tol``.
"""
import dataclasses
import math

import numpy as np

from . import config
from ._backend import qubit_relative_entropies as _qubit_relative_entropies
from ._backend import relative_entropy_spectra as _relative_entropy_spectra
from .portraits import (
    PortraitKind,
    _pair_index,
    _partition,
    apply_portrait,
    chain,
    embed_padded,
    qubit_portrait_pairs,
)
from .states import as_density, partial_trace

INF = math.inf


@dataclasses.dataclass(frozen=True)
class InequalityReport:
    """One evaluated inequality.

    ``sense`` is ``">="`` when the claim is ``lhs >= rhs`` and ``"<="`` for
    ``lhs <= rhs``; ``gap`` is the slack in the claimed direction, so the claim
    holds iff ``gap >= -tol``.  Both sides infinite gives ``gap = nan`` with
    ``indeterminate`` set and ``holds`` true.
    """

    label: str
    lhs: float
    rhs: float
    gap: float
    holds: bool
    tol: float
    sense: str = ">="
    indeterminate: bool = False
    detail: dict = dataclasses.field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, label, lhs, rhs, tol=None, sense=">=", detail=None):
        tol = config.get().gap_tol if tol is None else float(tol)
        lhs, rhs = float(lhs), float(rhs)
        big, small = (lhs, rhs) if sense == ">=" else (rhs, lhs)
        indeterminate = False
        if math.isinf(big) and math.isinf(small):
            gap, holds, indeterminate = math.nan, True, True
        else:
            gap = big - small
            holds = gap >= -tol
        return cls(label, lhs, rhs, gap, bool(holds), tol, sense, indeterminate, dict(detail or {}))

    def to_dict(self):
        d = {
            "label": self.label,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "gap": _jsonable(self.gap),
            "holds": self.holds,
            "tol": self.tol,
            "sense": self.sense,
        }
        if self.indeterminate:
            d["indeterminate"] = True
        if self.detail:
            d["detail"] = self.detail
        return d


def _jsonable(x):
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _xlogx_sum(p, zero_tol):
    pos = p[p > zero_tol]
    return float(np.dot(pos, np.log(pos)))


def von_neumann(rho):
    """``-sum p ln p`` over the eigenvalues of ``rho``."""
    rho = as_density(rho)
    p = rho.eigenvalues
    s = -_xlogx_sum(p, config.get().eig_zero_tol)
    return s + 0.0


def relative_entropy_from_spectra(p, u, q, v, zero_tol=None, support_tol=None):
    """Relative entropy from eigenpairs ``(p, u)`` of rho and ``(q, v)`` of sigma."""
    tol = config.get()
    zero_tol = tol.eig_zero_tol if zero_tol is None else zero_tol
    support_tol = tol.support_tol if support_tol is None else support_tol
    return _relative_entropy_spectra(p, u, q, v, zero_tol, support_tol)


def relative_entropy(rho, sigma):
    """``Tr(rho ln rho - rho ln sigma)``; ``math.inf`` on support violation."""
    rho, sigma = as_density(rho), as_density(sigma)
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    return relative_entropy_from_spectra(*rho.spectrum, *sigma.spectrum)


def _label(name, kind, p):
    return f"{name}[{kind.value},n_top={p.n_top},m={p.m}]"


def monotonicity_gap(rho, sigma, kind=PortraitKind.FOLD, p=None):
    """``S(rho||sigma) >= S(M rho || M sigma)`` for the portrait map ``M``."""
    rho, sigma = as_density(rho), as_density(sigma)
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    kind = PortraitKind.parse(kind)
    p = _partition(p, rho.dim)
    lhs = relative_entropy(rho, sigma)
    rhs = relative_entropy(apply_portrait(rho, kind, p), apply_portrait(sigma, kind, p))
    return InequalityReport.build(_label("monotonicity", kind, p), lhs, rhs)


def bipartite_monotonicity_gap(rho, sigma, dims, subsystem=2):
    """Monotonicity under a genuine partial trace, for cross-checking portraits."""
    rho, sigma = as_density(rho), as_density(sigma)
    lhs = relative_entropy(rho, sigma)
    rhs = relative_entropy(partial_trace(rho, dims, subsystem), partial_trace(sigma, dims, subsystem))
    return InequalityReport.build(f"bipartite[{dims[0]}x{dims[1]},traced={subsystem}]", lhs, rhs)


def portrait_nonneg_gap(rho, kind=PortraitKind.FOLD, p=None):
    """``Tr[P ln P - P ln rho] >= 0`` with ``P`` the zero-padded portrait of ``rho``."""
    rho = as_density(rho)
    kind = PortraitKind.parse(kind)
    p = _partition(p, rho.dim)
    padded = embed_padded(apply_portrait(rho, kind, p), rho.dim)
    return InequalityReport.build(_label("nonneg", kind, p), relative_entropy(padded, rho), 0.0)


def chain_gaps(rho, sigma):
    """Relative entropies along the fold chains of ``rho`` and ``sigma`` (sizes N down to 2)."""
    rho, sigma = as_density(rho), as_density(sigma)
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    return [relative_entropy(a, b) for a, b in zip(chain(rho), chain(sigma))]


def chain_report(rho, sigma):
    """Weakest link of the chain: the smallest slack between consecutive entries."""
    values = chain_gaps(rho, sigma)
    tol = config.get().gap_tol
    links = [InequalityReport.build("chain-link", a, b, tol) for a, b in zip(values, values[1:])]
    links.append(InequalityReport.build("chain-last", values[-1], 0.0, tol))
    worst = min(links, key=lambda r: (r.holds, math.inf if r.indeterminate else r.gap))
    return dataclasses.replace(worst, label=f"chain[{worst.label}]", detail={"values": [_jsonable(x) for x in values]})


def qubit_relative_entropies(rho_blocks, sigma_blocks):
    """Relative entropies of many 2x2 states at once, from Bloch vectors.

    Each block is given as arrays ``(a, z, d)`` for ``[[a, z], [conj(z), d]]``.
    With Bloch vectors ``r, s`` and ``sigma``'s eigenvalues ``q = (1 +- |s|)/2``
    the weight of ``rho`` on each eigenvector of ``sigma`` is ``(1 +- r.s/|s|)/2``.
    """
    tol = config.get()
    ra, rz, rd = rho_blocks
    sa, sz, sd = sigma_blocks
    return _qubit_relative_entropies(
        np.ascontiguousarray(ra, dtype=np.float64),
        np.ascontiguousarray(rz, dtype=np.complex128),
        np.ascontiguousarray(rd, dtype=np.float64),
        np.ascontiguousarray(sa, dtype=np.float64),
        np.ascontiguousarray(sz, dtype=np.complex128),
        np.ascontiguousarray(sd, dtype=np.float64),
        tol.eig_zero_tol,
        tol.support_tol,
    )


def _portrait_blocks(m, pairs):
    a_idx, b_idx = pairs[:, 0], pairs[:, 1]
    diag = m.diagonal().real
    return diag.sum() - diag[b_idx], m[a_idx, b_idx], diag[b_idx]


def max_permutation_bound(rho, sigma):
    """``S(rho||sigma) >= max_perm S(qubit portrait of rho || of sigma)``, same relabeling for both.

    The qubit portrait depends only on the first two permuted indices, so the
    maximum runs over ordered pairs with the closed-form qubit formula.
    """
    rho, sigma = as_density(rho), as_density(sigma)
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    if rho.dim < 3:
        raise ValueError("permutation bound needs dimension >= 3")
    perms = qubit_portrait_pairs(rho.dim)
    pairs = _pair_index(rho.dim)
    values = qubit_relative_entropies(_portrait_blocks(rho.matrix, pairs), _portrait_blocks(sigma.matrix, pairs))
    k = int(np.argmax(values))
    lhs = relative_entropy(rho, sigma)
    return InequalityReport.build("permutation-bound", lhs, float(values[k]), detail={"argmax_perm": list(perms[k])})
