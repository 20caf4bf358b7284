# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclic Jacobi kernel for dense complex Hermitian matrices.

Mirrors :func:`qportrait._fallback.jacobi_eigh` rotation for rotation, with
real and imaginary parts held in separate row-major buffers.
"""
import numpy as np

from libc.math cimport sqrt, fabs, log
from libc.stdlib cimport malloc, free


cdef inline void _rotate_cols(double* xr, double* xi, Py_ssize_t n,
                              Py_ssize_t p, Py_ssize_t q, double c, double s,
                              double er, double ei) noexcept nogil:
    # col_p <- c col_p - s conj(e) col_q ; col_q <- s e col_p + c col_q
    cdef Py_ssize_t k, kp, kq
    cdef double pr, pi, qr, qi
    for k in range(n):
        kp = k * n + p
        kq = k * n + q
        pr = xr[kp]
        pi = xi[kp]
        qr = xr[kq]
        qi = xi[kq]
        xr[kp] = c * pr - s * (er * qr + ei * qi)
        xi[kp] = c * pi - s * (er * qi - ei * qr)
        xr[kq] = s * (er * pr - ei * pi) + c * qr
        xi[kq] = s * (er * pi + ei * pr) + c * qi


cdef inline void _rotate_rows(double* xr, double* xi, Py_ssize_t n,
                              Py_ssize_t p, Py_ssize_t q, double c, double s,
                              double er, double ei) noexcept nogil:
    # row_p <- c row_p - s e row_q ; row_q <- s conj(e) row_p + c row_q
    cdef Py_ssize_t k, pk, qk
    cdef double pr, pi, qr, qi
    for k in range(n):
        pk = p * n + k
        qk = q * n + k
        pr = xr[pk]
        pi = xi[pk]
        qr = xr[qk]
        qi = xi[qk]
        xr[pk] = c * pr - s * (er * qr - ei * qi)
        xi[pk] = c * pi - s * (er * qi + ei * qr)
        xr[qk] = s * (er * pr + ei * pi) + c * qr
        xi[qk] = s * (er * pi - ei * pr) + c * qi


cdef int _jacobi(double* ar, double* ai, double* vr, double* vi, Py_ssize_t n,
                 double thresh2, int max_sweeps) noexcept nogil:
    cdef Py_ssize_t i, p, q, pq, qp
    cdef double off2, r, theta, t, c, s, app, aqq, er, ei
    cdef int sweep
    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for i in range(n * n):
            if i % (n + 1) != 0:
                off2 += ar[i] * ar[i] + ai[i] * ai[i]
        if off2 <= thresh2:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                pq = p * n + q
                qp = q * n + p
                r = sqrt(ar[pq] * ar[pq] + ai[pq] * ai[pq])
                if r == 0.0:
                    continue
                er = ar[pq] / r
                ei = ai[pq] / r
                app = ar[p * n + p]
                aqq = ar[q * n + q]
                theta = (aqq - app) / (2.0 * r)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                _rotate_cols(ar, ai, n, p, q, c, s, er, ei)
                _rotate_rows(ar, ai, n, p, q, c, s, er, ei)
                ar[p * n + p] = app - t * r
                ar[q * n + q] = aqq + t * r
                ai[p * n + p] = 0.0
                ai[q * n + q] = 0.0
                ar[pq] = 0.0
                ai[pq] = 0.0
                ar[qp] = 0.0
                ai[qp] = 0.0
                _rotate_cols(vr, vi, n, p, q, c, s, er, ei)
    return -1


cdef void _finish(double* ar, double* vr, double* vi, const double complex[:, ::1] h,
                  double[::1] w, double complex[:, ::1] v, Py_ssize_t n,
                  double* residual) noexcept nogil:
    # ascending eigenvalues (stable insertion sort), first component above
    # 1e-10 of each eigenvector made real-positive, scaled reconstruction error
    cdef Py_ssize_t i, j, k, col, lead
    cdef double key, mag, cr, ci, xr, xi, err, sr, si, scale
    cdef Py_ssize_t* order = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    for i in range(n):
        order[i] = i
        w[i] = ar[i * n + i]
    for i in range(1, n):
        key = w[i]
        col = order[i]
        j = i - 1
        while j >= 0 and w[j] > key:
            w[j + 1] = w[j]
            order[j + 1] = order[j]
            j -= 1
        w[j + 1] = key
        order[j + 1] = col
    for j in range(n):
        col = order[j]
        lead = 0
        for k in range(n):
            if sqrt(vr[k * n + col] * vr[k * n + col] + vi[k * n + col] * vi[k * n + col]) > 1e-10:
                lead = k
                break
        mag = sqrt(vr[lead * n + col] * vr[lead * n + col] + vi[lead * n + col] * vi[lead * n + col])
        cr = vr[lead * n + col] / mag
        ci = -vi[lead * n + col] / mag
        for k in range(n):
            xr = vr[k * n + col]
            xi = vi[k * n + col]
            v[k, j].real = xr * cr - xi * ci
            v[k, j].imag = xr * ci + xi * cr
        v[lead, j].real = mag
        v[lead, j].imag = 0.0
    free(order)
    err = 0.0
    scale = 1.0
    for i in range(n):
        for k in range(n):
            mag = sqrt(h[i, k].real * h[i, k].real + h[i, k].imag * h[i, k].imag)
            if mag > scale:
                scale = mag
            sr = 0.0
            si = 0.0
            for j in range(n):
                # v[i, j] * w[j] * conj(v[k, j])
                sr += w[j] * (v[i, j].real * v[k, j].real + v[i, j].imag * v[k, j].imag)
                si += w[j] * (v[i, j].imag * v[k, j].real - v[i, j].real * v[k, j].imag)
            sr = sqrt((h[i, k].real - sr) ** 2 + (h[i, k].imag - si) ** 2)
            if sr > err:
                err = sr
    residual[0] = err / scale


def jacobi_eigh(const double complex[:, ::1] h, double rel_tol, int max_sweeps):
    """Diagonalize ``h``.

    Returns ``(eigenvalues, eigenvectors, sweeps, residual)``: eigenvalues
    ascending, eigenvectors canonically phased, ``sweeps`` -1 when the
    off-diagonal norm never fell below ``rel_tol * ||h||_F``, and ``residual``
    the largest entry of ``|h - V diag(w) V^dagger|`` divided by
    ``max(1, max|h|)``.
    """
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t nn = n * n
    cdef Py_ssize_t i, j
    cdef double fro2 = 0.0
    cdef double residual = 0.0
    cdef int result
    cdef double* buf = <double*> malloc(4 * nn * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef double* ar = buf
    cdef double* ai = buf + nn
    cdef double* vr = buf + 2 * nn
    cdef double* vi = buf + 3 * nn

    w_arr = np.empty(n, dtype=np.float64)
    v_arr = np.empty((n, n), dtype=np.complex128)
    cdef double[::1] w = w_arr
    cdef double complex[:, ::1] v = v_arr
    try:
        with nogil:
            for i in range(n):
                for j in range(n):
                    ar[i * n + j] = h[i, j].real
                    ai[i * n + j] = h[i, j].imag
                    fro2 += h[i, j].real * h[i, j].real + h[i, j].imag * h[i, j].imag
                    vr[i * n + j] = 1.0 if i == j else 0.0
                    vi[i * n + j] = 0.0
            result = _jacobi(ar, ai, vr, vi, n, rel_tol * rel_tol * fro2, max_sweeps)
            _finish(ar, vr, vi, h, w, v, n, &residual)
    finally:
        free(buf)
    return w_arr, v_arr, result, residual


def relative_entropy_spectra(const double[::1] p, const double complex[:, ::1] u,
                             const double[::1] q, const double complex[:, ::1] v,
                             double zero_tol, double support_tol):
    """``sum p ln p - sum_k r_k ln q_k`` with ``r_k = sum_j p_j |<u_j|v_k>|^2``.

    Negative ``p`` are clipped to zero; returns ``inf`` when eigenvalues
    ``q_k <= zero_tol`` carry total weight above ``support_tol``.
    """
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double self_term = 0.0, cross = 0.0, null_weight = 0.0
    cdef double pj, rk, ore, oim
    with nogil:
        for j in range(n):
            if p[j] > zero_tol:
                self_term += p[j] * log(p[j])
        for k in range(n):
            rk = 0.0
            for j in range(n):
                pj = p[j]
                if pj <= 0.0:
                    continue
                # <u_j|v_k> = sum_i conj(u[i, j]) v[i, k]
                ore = 0.0
                oim = 0.0
                for i in range(n):
                    ore += u[i, j].real * v[i, k].real + u[i, j].imag * v[i, k].imag
                    oim += u[i, j].real * v[i, k].imag - u[i, j].imag * v[i, k].real
                rk += pj * (ore * ore + oim * oim)
            if q[k] <= zero_tol:
                null_weight += rk
            else:
                cross += rk * log(q[k])
    if null_weight > support_tol:
        return float("inf")
    return self_term - cross


cdef inline double _xlogx(double x, double zero_tol) noexcept nogil:
    return x * log(x) if x > zero_tol else 0.0


def qubit_relative_entropies(const double[::1] ra, const double complex[::1] rz, const double[::1] rd,
                             const double[::1] sa, const double complex[::1] sz, const double[::1] sd,
                             double zero_tol, double support_tol):
    """Relative entropies of 2x2 states ``[[a, z], [conj(z), d]]`` from Bloch vectors."""
    cdef Py_ssize_t n = ra.shape[0]
    cdef Py_ssize_t i
    cdef double rx, ry, rw, sx, sy, sw, r_len, s_len, proj, q_hi, q_lo, w_lo, w_hi, cross
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double inf = float("inf")
    with nogil:
        for i in range(n):
            rx = 2.0 * rz[i].real
            ry = -2.0 * rz[i].imag
            rw = ra[i] - rd[i]
            sx = 2.0 * sz[i].real
            sy = -2.0 * sz[i].imag
            sw = sa[i] - sd[i]
            r_len = sqrt(rx * rx + ry * ry + rw * rw)
            s_len = sqrt(sx * sx + sy * sy + sw * sw)
            proj = (rx * sx + ry * sy + rw * sw) / s_len if s_len > 0.0 else 0.0
            q_hi = 0.5 * (1.0 + s_len)
            q_lo = 0.5 * (1.0 - s_len)
            w_hi = 0.5 * (1.0 + proj)
            w_lo = 0.5 * (1.0 - proj)
            cross = w_hi * log(q_hi)
            if q_lo <= zero_tol:
                if w_lo > support_tol:
                    out[i] = inf
                    continue
            else:
                cross += w_lo * log(q_lo)
            out[i] = _xlogx(0.5 * (1.0 + r_len), zero_tol) + _xlogx(0.5 * (1.0 - r_len), zero_tol) - cross
    return out_arr


def gram_density(const double[::1] x, Py_ssize_t dim, double regularizer):
    """``(L L^dagger + regularizer I) / Tr`` with ``L`` read from ``x`` (real parts, then imaginary)."""
    cdef Py_ssize_t i, j, k, half = dim * dim
    cdef double sr, si, tr = 0.0
    out_arr = np.empty((dim, dim), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    with nogil:
        for i in range(dim):
            for j in range(i, dim):
                # sum_k L[i, k] conj(L[j, k])
                sr = 0.0
                si = 0.0
                for k in range(dim):
                    sr += x[i * dim + k] * x[j * dim + k] + x[half + i * dim + k] * x[half + j * dim + k]
                    si += x[half + i * dim + k] * x[j * dim + k] - x[i * dim + k] * x[half + j * dim + k]
                if i == j:
                    sr += regularizer
                    si = 0.0
                    tr += sr
                out[i, j].real = sr
                out[i, j].imag = si
                out[j, i].real = sr
                out[j, i].imag = -si
        for i in range(dim):
            for j in range(dim):
                out[i, j].real = out[i, j].real / tr
                out[i, j].imag = out[i, j].imag / tr
    return out_arr
