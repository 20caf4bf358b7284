"""Density matrices and probability vectors: validation, sampling, partial trace.

Random states are drawn from NumPy's PCG64 generator seeded with an unsigned
64-bit integer, so a given seed yields the same matrices on every platform.
"""
import numpy as np

from . import config
from .errors import NegativeEigenvalue, TraceNotOne, ValidationError
from .hermitian import as_hermitian, eigh

DEFAULT_SEED = 0xC0FFEE


class DensityMatrix:
    """A validated density matrix together with its spectrum.

    Instances are immutable; build them with :func:`validate_density` or the
    samplers below rather than calling the constructor directly.
    """

    __slots__ = ("matrix", "spectrum")

    def __init__(self, matrix, spectrum):
        matrix.setflags(write=False)
        self.matrix = matrix
        self.spectrum = spectrum

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def eigenvalues(self):
        return self.spectrum.eigenvalues

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, eigenvalues={np.array2string(self.eigenvalues, precision=4)})"


def validate_density(m, *, trace_tol=None, psd_tol=None):
    """Check that ``m`` is Hermitian, unit-trace and positive semidefinite.

    Raises:
        NotHermitian, TraceNotOne, NegativeEigenvalue: in that order of checking.
    """
    tol = config.get()
    trace_tol = tol.trace_tol if trace_tol is None else trace_tol
    psd_tol = tol.psd_tol if psd_tol is None else psd_tol
    h = as_hermitian(m, tol.hermiticity_tol)
    tr = h.real.trace()
    if abs(tr - 1.0) > trace_tol:
        raise TraceNotOne(tr, trace_tol)
    spec = eigh(h, check=False)
    if spec.eigenvalues[0] < -psd_tol:
        raise NegativeEigenvalue(float(spec.eigenvalues[0]), psd_tol)
    return DensityMatrix(h, spec)


def _trusted_density(h):
    # h is exactly Hermitian by construction; skips the hermiticity scan
    tol = config.get()
    tr = sum(h.real.diagonal())
    if abs(tr - 1.0) > tol.trace_tol:
        raise TraceNotOne(tr, tol.trace_tol)
    spec = eigh(h, check=False)
    if spec.eigenvalues[0] < -tol.psd_tol:
        raise NegativeEigenvalue(float(spec.eigenvalues[0]), tol.psd_tol)
    return DensityMatrix(h, spec)


def as_density(x):
    """Return ``x`` unchanged if already a :class:`DensityMatrix`, else validate it."""
    if isinstance(x, DensityMatrix):
        return x
    return validate_density(x)


def validate_probability(w, *, trace_tol=None):
    """Return ``w`` as a read-only float array after checking it is a probability vector.

    Entries in ``[-trace_tol, 0)`` are rounding noise and are clipped to zero.
    """
    trace_tol = config.get().trace_tol if trace_tol is None else trace_tol
    p = np.array(w, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ValidationError(f"probability vector must be a nonempty 1-D array, got shape {p.shape}")
    if not np.isfinite(p).all():
        raise ValidationError("probability vector has NaN or infinite entries")
    if p.min() < -trace_tol:
        raise ValidationError(f"negative weight {p.min():.15g}")
    total = float(p.sum())
    if abs(total - 1.0) > trace_tol:
        raise ValidationError(f"weights sum to {total:.15g}, expected 1")
    np.clip(p, 0.0, None, out=p)
    p.setflags(write=False)
    return p


def make_rng(seed):
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def _check_dim(dim):
    if int(dim) != dim or dim < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {dim}")
    return int(dim)


def _complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_mixed_hs(dim, seed=DEFAULT_SEED):
    """Hilbert-Schmidt random state ``G G^dagger / Tr(G G^dagger)`` with Ginibre ``G``."""
    dim = _check_dim(dim)
    g = _complex_gaussian(make_rng(seed), (dim, dim))
    rho = g @ g.conj().T
    rho += rho.conj().T
    rho /= rho.real.trace()
    return _trusted_density(rho)


def random_pure(dim, seed=DEFAULT_SEED):
    """Projector onto a Haar-random unit vector."""
    dim = _check_dim(dim)
    psi = _complex_gaussian(make_rng(seed), dim)
    psi /= np.linalg.norm(psi)
    return validate_density(np.outer(psi, psi.conj()))


def random_diagonal(dim, seed=DEFAULT_SEED):
    """Diagonal state whose populations follow a flat Dirichlet distribution."""
    dim = _check_dim(dim)
    x = make_rng(seed).standard_exponential(dim)
    return validate_density(np.diag(x / x.sum()).astype(np.complex128))


def random_probability(dim, seed=DEFAULT_SEED):
    dim = _check_dim(dim)
    x = make_rng(seed).standard_exponential(dim)
    return validate_probability(x / x.sum())


def partial_trace(rho, dims, subsystem):
    """Reduced state of a bipartite density matrix.

    The composite index is ``j = j1 * d2 + j2``.  ``subsystem`` names the factor
    that is traced out: 2 returns the ``d1 x d1`` state, 1 the ``d2 x d2`` one.
    """
    m = np.asarray(rho)
    d1, d2 = (int(d) for d in dims)
    if d1 < 1 or d2 < 1 or d1 * d2 != m.shape[0]:
        raise ValueError(f"dims {dims} do not factor a {m.shape[0]}-dimensional state")
    t = m.reshape(d1, d2, d1, d2)
    if subsystem == 2:
        out = np.einsum("ajbj->ab", t)
    elif subsystem == 1:
        out = np.einsum("iaib->ab", t)
    else:
        raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")
    return validate_density(out)


def tensor(rho1, rho2):
    """Product state ``rho1 (x) rho2`` in the same index convention as :func:`partial_trace`."""
    return validate_density(np.kron(np.asarray(rho1), np.asarray(rho2)))
