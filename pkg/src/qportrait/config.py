"""Numerical tolerances shared by every module.

Defaults suit double precision at dimensions up to about 16.  ``QPORTRAIT_TOL``
in the environment overrides ``gap_tol``; :func:`update` and :func:`override` change any value
for the duration of a ``with`` block.
"""
import contextlib
import dataclasses
import os


@dataclasses.dataclass(frozen=True)
class Tolerances:
    hermiticity_tol: float = 1e-10
    eig_residual_tol: float = 1e-10
    eig_zero_tol: float = 1e-12
    psd_tol: float = 1e-10
    trace_tol: float = 1e-10
    support_tol: float = 1e-10
    gap_tol: float = 1e-9
    jacobi_tol: float = 1e-13
    max_sweeps: int = 100


def _from_env():
    raw = os.environ.get("QPORTRAIT_TOL")
    if raw is None or not raw.strip():
        return Tolerances()
    value = float(raw)
    if not value >= 0.0:
        raise ValueError(f"QPORTRAIT_TOL must be a nonnegative number, got {raw!r}")
    return Tolerances(gap_tol=value)


_current = None


def get():
    """Return the active :class:`Tolerances`, reading ``QPORTRAIT_TOL`` on first use."""
    global _current
    if _current is None:
        _current = _from_env()
    return _current


def reload():
    """Re-read ``QPORTRAIT_TOL``, discarding any :func:`update`."""
    global _current
    _current = None
    return get()


def update(**changes):
    """Replace fields of the active tolerances; returns the previous value."""
    global _current
    previous = get()
    _current = dataclasses.replace(_current, **changes)
    return previous


@contextlib.contextmanager
def override(**changes):
    global _current
    previous = update(**changes)
    try:
        yield _current
    finally:
        _current = previous
