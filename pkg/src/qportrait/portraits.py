"""Portrait maps: positive trace-preserving reductions of a single qudit state.

A density matrix of size ``N`` is cut into blocks::

    rho = [[A, B],
           [C, D]]      A: n_top x n_top,  D: m x m,  n_top + m = N,  1 <= m <= n_top

The fold map adds ``D`` into the top-left corner of ``A``; the block-trace map
replaces each block by its trace.  For ``N = 4`` with ``(2, 2)`` these coincide
with the two partial traces of a two-qubit state.  Outputs are compact (no
zero padding); :func:`embed_padded` restores the padded square form.

Permutations are 0-based: ``perm[j]`` is the source index placed at ``j``.
"""
import enum
import functools
import itertools
from typing import NamedTuple

import numpy as np

from .states import _trusted_density, as_density, validate_density


class PortraitKind(enum.Enum):
    FOLD = "fold"
    TRACE_BLOCKS = "traceblocks"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("_", "").replace("-", "")
        for kind in cls:
            if kind.value == key or kind.name.lower().replace("_", "") == key:
                return kind
        if key in ("folddiagonalblocks",):
            return cls.FOLD
        raise ValueError(f"unknown portrait kind {value!r}")


class BlockPartition(NamedTuple):
    n_top: int
    m: int

    @property
    def dim(self):
        return self.n_top + self.m

    @classmethod
    def from_m(cls, dim, m=1):
        return cls(int(dim) - int(m), int(m)).checked(dim)

    def checked(self, dim):
        if self.m < 1 or self.m > self.n_top or self.n_top + self.m != dim:
            raise ValueError(f"invalid block partition {tuple(self)} for dimension {dim}: need n_top + m = N and 1 <= m <= n_top")
        return self


def valid_partitions(dim):
    """Every admissible partition of ``dim``, by increasing ``m``."""
    return [BlockPartition(dim - m, m) for m in range(1, dim // 2 + 1)]


@functools.lru_cache(maxsize=256)
def _partition_from_m(dim, m):
    return BlockPartition.from_m(dim, m)


def _partition(p, dim):
    if p is None:
        p = 1
    if isinstance(p, (int, np.integer)):
        return _partition_from_m(int(dim), int(p))
    if isinstance(p, BlockPartition) and p.n_top + p.m == dim and 1 <= p.m <= p.n_top:
        return p
    return BlockPartition(*p).checked(dim)


def fold_matrix(m, p):
    """Fold on a raw array: ``A`` with ``D`` added into its top-left corner."""
    n = p.n_top
    out = m[:n, :n].copy()
    out[: p.m, : p.m] += m[n:, n:]
    return out


def trace_block_matrix(m, p):
    """Block-trace on a raw array.  Off-diagonal blocks use their main diagonal of length ``m``."""
    n, k = p.n_top, p.m
    idx = np.arange(k)
    tr_a = m[:n, :n].trace()
    tr_d = m[n:, n:].trace()
    tr_b = m[idx, n + idx].sum()
    return np.array([[tr_a, tr_b], [np.conj(tr_b), tr_d]], dtype=np.complex128)


def fold_map(rho, p=None):
    """Compact fold portrait of ``rho`` for partition ``p`` (a BlockPartition or ``m``)."""
    rho = as_density(rho)
    return _trusted_density(fold_matrix(rho.matrix, _partition(p, rho.dim)))


def trace_block_map(rho, p=None):
    """2x2 portrait ``[[Tr A, Tr B], [Tr C, Tr D]]``."""
    rho = as_density(rho)
    return _trusted_density(trace_block_matrix(rho.matrix, _partition(p, rho.dim)))


def apply_portrait(rho, kind, p=None):
    kind = PortraitKind.parse(kind)
    if kind is PortraitKind.FOLD:
        return fold_map(rho, p)
    return trace_block_map(rho, p)


def embed_padded(small, target_dim):
    """Place ``small`` in the top-left corner of a ``target_dim`` square of zeros."""
    small = as_density(small)
    n = small.dim
    if target_dim < n:
        raise ValueError(f"cannot embed a {n}x{n} state into dimension {target_dim}")
    if target_dim == n:
        return small
    out = np.zeros((target_dim, target_dim), dtype=np.complex128)
    out[:n, :n] = small.matrix
    return _trusted_density(out)


def _check_perm(perm, dim):
    perm = np.asarray(perm, dtype=np.intp)
    if perm.shape != (dim,) or not np.array_equal(np.sort(perm), np.arange(dim)):
        raise ValueError(f"{perm.tolist()} is not a permutation of 0..{dim - 1}")
    return perm


def permute(rho, perm):
    """Relabel basis indices: ``result[j, k] = rho[perm[j], perm[k]]``."""
    rho = as_density(rho)
    perm = _check_perm(perm, rho.dim)
    return _trusted_density(rho.matrix[np.ix_(perm, perm)])


def chain(rho):
    """States of sizes ``N, N-1, ..., 2``, each the ``m = 1`` fold of the previous."""
    rho = as_density(rho)
    out = [rho]
    while out[-1].dim > 2:
        out.append(fold_map(out[-1], 1))
    return out


def qubit_portrait_matrix(m, perm):
    """Raw 2x2 array reached by permuting then folding down with ``m = 1`` steps.

    Repeated last-index folds leave indices 0 and 1 in place and pour every
    other diagonal entry into index 0, so the result is closed-form.
    """
    a, b = perm[0], perm[1]
    top = m.diagonal().real.sum() - m[b, b].real
    return np.array([[top, m[a, b]], [m[b, a], m[b, b].real]], dtype=np.complex128)


def qubit_portraits(rho, dedupe=False):
    """All ``(perm, 2x2 portrait)`` pairs over permutations of the basis.

    With ``dedupe`` only the first permutation for each distinct leading pair
    ``(perm[0], perm[1])`` is kept; the portrait depends on nothing else.
    """
    rho = as_density(rho)
    if rho.dim < 3:
        raise ValueError("qubit portraits need dimension >= 3")
    seen = set()
    out = []
    for perm in itertools.permutations(range(rho.dim)):
        if dedupe:
            if perm[:2] in seen:
                continue
            seen.add(perm[:2])
        out.append((perm, chain(permute(rho, perm))[-1]))
    return out


@functools.lru_cache(maxsize=64)
def qubit_portrait_pairs(dim):
    """Distinct leading pairs ``(a, b)``; one representative permutation each."""
    reps = []
    for a in range(dim):
        for b in range(dim):
            if a != b:
                rest = [k for k in range(dim) if k not in (a, b)]
                reps.append((a, b, *rest))
    return tuple(reps)


@functools.lru_cache(maxsize=64)
def _pair_index(dim):
    idx = np.array([perm[:2] for perm in qubit_portrait_pairs(dim)], dtype=np.intp)
    idx.setflags(write=False)
    return idx

