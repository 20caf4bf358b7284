"""Dense complex Hermitian matrices: eigendecomposition and spectral functions.

Eigenpairs come from a cyclic Jacobi iteration, compiled or pure NumPy
depending on :data:`qportrait._backend.BACKEND`.
"""
from typing import NamedTuple

import numpy as np

from . import config
from .errors import ConvergenceError, DomainError, NotHermitian, ValidationError

from ._backend import BACKEND, jacobi_eigh as _jacobi


class Spectrum(NamedTuple):
    """Eigenvalues in ascending order and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def as_matrix(a):
    """Coerce ``a`` to a square complex128 array without checking symmetry."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValidationError(f"expected a nonempty square matrix, got shape {m.shape}")
    return m


def as_hermitian(a, tol=None):
    """Validate that ``a`` is finite and Hermitian within ``tol``; return its exact Hermitian part."""
    if tol is None:
        tol = config.get().hermiticity_tol
    m = as_matrix(a)
    mh = m.conj().T
    deviation = np.abs(m - mh).max()
    # NaN deviation also covers non-finite input: inf - inf is nan
    if not deviation <= tol:
        if not np.isfinite(m).all():
            raise ValidationError("matrix has NaN or infinite entries")
        raise NotHermitian(float(deviation), tol)
    out = m + mh
    out *= 0.5
    return out


def eigh(h, *, check=True):
    """Eigendecomposition of a Hermitian matrix.

    Args:
        h: square array-like, Hermitian within ``hermiticity_tol``.
        check: validate hermiticity first; internal callers that already hold an
            exactly Hermitian array pass ``False``.

    Returns:
        Spectrum with ascending eigenvalues and eigenvectors whose first
        component above 1e-10 in modulus is real-positive.

    Raises:
        NotHermitian: ``h`` is not Hermitian within tolerance.
        ConvergenceError: Jacobi did not converge, or the reconstruction
            residual exceeds ``eig_residual_tol`` (relative to ``max|h|``).
    """
    tol = config.get()
    m = as_hermitian(h, tol.hermiticity_tol) if check else np.ascontiguousarray(h, dtype=np.complex128)
    if m.shape[0] == 1:
        return Spectrum(m.real.diagonal().copy(), np.ones((1, 1), dtype=np.complex128))
    w, v, sweeps, residual = _jacobi(m, tol.jacobi_tol, tol.max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi iteration did not converge in {tol.max_sweeps} sweeps")
    if residual > tol.eig_residual_tol:
        raise ConvergenceError(f"eigendecomposition residual {residual:.3e} exceeds tolerance")
    return Spectrum(w, v)


def eigvalsh(h):
    return eigh(h).eigenvalues


def _resolve(f):
    if callable(f):
        return f, None
    name = str(f).lower()
    if name in ("ln", "log"):
        return np.log, "ln"
    if name == "exp":
        return np.exp, "exp"
    if name == "sqrt":
        return np.sqrt, "sqrt"
    if name in ("identity", "id"):
        return (lambda x: x), "identity"
    raise ValueError(f"unknown matrix function {f!r}")


def matrix_fn(h, f, zero_convention=False, spectrum=None):
    """Apply a real function to a Hermitian matrix through its spectrum.

    ``f`` is a vectorized callable or one of ``"ln"``, ``"exp"``, ``"sqrt"``,
    ``"identity"``.  For ``ln`` every eigenvalue must exceed ``eig_zero_tol``
    unless ``zero_convention`` is set, in which case eigenvalues in
    ``[-eig_zero_tol, eig_zero_tol]`` map to 0 (the ``0 ln 0 = 0`` rule as seen
    from a product ``rho ln rho``).  Eigenvalues below ``-eig_zero_tol`` are a
    :class:`DomainError` for ``ln`` and ``sqrt``.
    """
    func, name = _resolve(f)
    spec = spectrum if spectrum is not None else eigh(h)
    lam = spec.eigenvalues
    if name in ("ln", "sqrt"):
        zero_tol = config.get().eig_zero_tol
        if lam[0] < -zero_tol:
            raise DomainError(f"{name} of negative eigenvalue {lam[0]:.15g}")
        if name == "ln":
            small = lam <= zero_tol
            if small.any() and not zero_convention:
                raise DomainError(f"ln of (near-)zero eigenvalue {lam[small][0]:.3e}")
            vals = np.zeros_like(lam)
            vals[~small] = np.log(lam[~small])
        else:
            vals = np.sqrt(np.clip(lam, 0.0, None))
    else:
        vals = np.asarray(func(lam), dtype=np.float64)
    u = spec.eigenvectors
    return (u * vals) @ u.conj().T


def trace(h):
    """Sum of the real parts of the diagonal."""
    return float(np.asarray(h).diagonal().real.sum())


def random_hermitian(dim, rng):
    """GUE-style Hermitian matrix with unit-variance complex Gaussian entries."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + g.conj().T)


def random_unitary(dim, rng):
    """Unitary from the eigenvectors of a random Hermitian matrix."""
    return eigh(random_hermitian(dim, rng), check=False).eigenvectors
