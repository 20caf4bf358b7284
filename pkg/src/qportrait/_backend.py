"""Pick the compiled kernels when available, else the NumPy fallback.

``QPORTRAIT_PURE=1`` in the environment forces the fallback.
"""
import os

from . import _fallback

if os.environ.get("QPORTRAIT_PURE"):
    _kernels = None
else:
    try:
        from . import _kernels
    except ImportError:
        _kernels = None

BACKEND = "cython" if _kernels is not None else "python"
_impl = _kernels if _kernels is not None else _fallback

jacobi_eigh = _impl.jacobi_eigh
relative_entropy_spectra = _impl.relative_entropy_spectra
qubit_relative_entropies = _impl.qubit_relative_entropies
gram_density = _impl.gram_density
