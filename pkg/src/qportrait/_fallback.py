"""Pure NumPy cyclic Jacobi kernel, used when the compiled extension is absent."""
import math

import numpy as np


def jacobi_eigh(h, rel_tol, max_sweeps):
    """Same contract as ``qportrait._kernels.jacobi_eigh``."""
    w, v, sweeps = _sweep(h, rel_tol, max_sweeps)
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    first = np.argmax(np.abs(v) > 1e-10, axis=0)
    lead = v[first, np.arange(v.shape[1])]
    v = np.ascontiguousarray(v * (lead.conj() / np.abs(lead)))
    v[first, np.arange(v.shape[1])] = np.abs(lead)
    residual = float(np.max(np.abs(h - (v * w) @ v.conj().T))) / max(1.0, float(np.abs(h).max()))
    return w, v, sweeps, residual


def _sweep(h, rel_tol, max_sweeps):
    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    thresh2 = rel_tol * rel_tol * float(np.vdot(a, a).real)
    offmask = ~np.eye(n, dtype=bool)

    for sweep in range(max_sweeps + 1):
        off = a[offmask]
        if float(np.vdot(off, off).real) <= thresh2:
            return a.diagonal().real.copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                e = apq / r
                ec = e.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                x = a[:, p].copy()
                y = a[:, q]
                a[:, p] = c * x - s * ec * y
                a[:, q] = s * e * x + c * y
                x = a[p, :].copy()
                y = a[q, :]
                a[p, :] = c * x - s * e * y
                a[q, :] = s * ec * x + c * y
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0

                x = v[:, p].copy()
                y = v[:, q]
                v[:, p] = c * x - s * ec * y
                v[:, q] = s * e * x + c * y

    return a.diagonal().real.copy(), v, -1


def relative_entropy_spectra(p, u, q, v, zero_tol, support_tol):
    """Same contract as ``qportrait._kernels.relative_entropy_spectra``."""
    p = np.clip(p, 0.0, None)
    pos = p[p > zero_tol]
    self_term = float(np.dot(pos, np.log(pos)))
    r = p @ (np.abs(u.conj().T @ v) ** 2)
    null = q <= zero_tol
    if float(r[null].sum()) > support_tol:
        return math.inf
    keep = ~null
    return self_term - float(np.dot(r[keep], np.log(q[keep])))


def qubit_relative_entropies(ra, rz, rd, sa, sz, sd, zero_tol, support_tol):
    """Same contract as ``qportrait._kernels.qubit_relative_entropies``."""
    r = np.stack([2.0 * rz.real, -2.0 * rz.imag, ra - rd])
    s = np.stack([2.0 * sz.real, -2.0 * sz.imag, sa - sd])
    r_len = np.sqrt((r * r).sum(axis=0))
    s_len = np.sqrt((s * s).sum(axis=0))
    safe = np.where(s_len > 0, s_len, 1.0)
    proj = np.where(s_len > 0, (r * s).sum(axis=0) / safe, 0.0)

    def xlogx(x):
        return np.where(x > zero_tol, x * np.log(np.where(x > 0, x, 1.0)), 0.0)

    q_hi, q_lo = 0.5 * (1 + s_len), 0.5 * (1 - s_len)
    w_hi, w_lo = 0.5 * (1 + proj), 0.5 * (1 - proj)
    null = q_lo <= zero_tol
    cross = w_hi * np.log(q_hi) + np.where(null, 0.0, w_lo * np.log(np.where(null, 1.0, q_lo)))
    out = xlogx(0.5 * (1 + r_len)) + xlogx(0.5 * (1 - r_len)) - cross
    return np.where(null & (w_lo > support_tol), math.inf, out)


def gram_density(x, dim, regularizer):
    """Same contract as ``qportrait._kernels.gram_density``."""
    half = dim * dim
    factor = (x[:half] + 1j * x[half : 2 * half]).reshape(dim, dim)
    rho = factor @ factor.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    rho.flat[:: dim + 1] = rho.diagonal().real + regularizer
    return rho / rho.real.trace()
