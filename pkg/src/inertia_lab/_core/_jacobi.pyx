# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: cyclic complex Jacobi and the witness-search objective.

Every routine here has a twin in ``_pure.py`` with the same signature.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

cdef extern from "<complex.h>" nogil:
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)
    double complex conj(double complex)


cdef inline double _offdiag_sq(double complex[:, ::1] a, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double s = 0.0
    cdef double complex z
    for i in range(d):
        for j in range(d):
            if i != j:
                z = a[i, j]
                s += creal(z) * creal(z) + cimag(z) * cimag(z)
    return s


cdef int _jacobi(double complex[:, ::1] a, double complex[:, ::1] v,
                 bint want_vectors, double tol, int max_sweeps) noexcept nogil:
    """Diagonalize ``a`` in place. Returns sweeps used, or -1 on no convergence."""
    cdef Py_ssize_t d = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef double fro_sq = 0.0, target, mag, theta, t, c, s, app, aqq
    cdef double complex e, ce, akp, akq, z
    cdef int sweep

    for p in range(d):
        for q in range(d):
            z = a[p, q]
            fro_sq += creal(z) * creal(z) + cimag(z) * cimag(z)
        a[p, p] = creal(a[p, p])
    target = tol * tol * fro_sq
    if want_vectors:
        for p in range(d):
            for q in range(d):
                v[p, q] = 1.0 if p == q else 0.0

    for sweep in range(max_sweeps + 1):
        if _offdiag_sq(a, d) <= target:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                z = a[p, q]
                mag = cabs(z)
                if mag == 0.0:
                    continue
                app = creal(a[p, p])
                aqq = creal(a[q, q])
                # negligible against both diagonal entries: drop without rotating
                if sweep > 3 and fabs(app) + 100.0 * mag == fabs(app) and fabs(aqq) + 100.0 * mag == fabs(aqq):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                e = z / mag
                ce = conj(e)
                theta = (aqq - app) / (2.0 * mag)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(d):
                    if k == p or k == q:
                        continue
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * ce * akq
                    a[k, q] = s * akp + c * ce * akq
                    a[p, k] = conj(a[k, p])
                    a[q, k] = conj(a[k, q])
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    for k in range(d):
                        akp = v[k, p]
                        akq = v[k, q]
                        v[k, p] = c * akp - s * ce * akq
                        v[k, q] = s * akp + c * ce * akq
    return -1


def eigh(a, bint vectors=True, double tol=1e-13, int max_sweeps=100):
    """Jacobi eigensolve of a Hermitian matrix.

    Returns ``(w, v, sweeps)`` with ``w`` unsorted, ``v`` None when
    ``vectors`` is false, and ``sweeps == -1`` when the cap was hit.
    """
    cdef double complex[:, ::1] work = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t d = work.shape[0]
    vec = np.empty((d, d), dtype=np.complex128) if vectors else np.empty((1, 1), dtype=np.complex128)
    cdef double complex[:, ::1] vv = vec
    cdef int sweeps
    with nogil:
        sweeps = _jacobi(work, vv, vectors, tol, max_sweeps)
    w = np.empty(d, dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(d):
        w[i] = creal(work[i, i])
    return w, (vec if vectors else None), sweeps


cdef void _sort(double* x, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double key
    for i in range(1, d):
        key = x[i]
        j = i - 1
        while j >= 0 and x[j] > key:
            x[j + 1] = x[j]
            j -= 1
        x[j + 1] = key


def eigvalsh_batch(stack, double tol=1e-13, int max_sweeps=100):
    """Ascending eigenvalues for a ``(k, d, d)`` stack of Hermitian matrices."""
    cdef double complex[:, :, ::1] src = np.ascontiguousarray(stack, dtype=np.complex128)
    cdef Py_ssize_t k = src.shape[0], d = src.shape[1], i, j
    out = np.empty((k, d), dtype=np.float64)
    cdef double[:, ::1] w = out
    cdef double complex[:, ::1] work = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] dummy = np.empty((1, 1), dtype=np.complex128)
    cdef int bad = 0
    with nogil:
        for i in range(k):
            work[:, :] = src[i]
            if _jacobi(work, dummy, False, tol, max_sweeps) < 0:
                bad = 1
            for j in range(d):
                w[i, j] = creal(work[j, j])
            _sort(&w[i, 0], d)
    if bad:
        raise ArithmeticError("Jacobi iteration cap reached in batch eigensolve")
    return out


def hinge_objective(const double[::1] theta, Py_ssize_t m, Py_ssize_t n, Py_ssize_t r,
                    Py_ssize_t neg, Py_ssize_t zero, double margin):
    """Sign-pattern penalty for the partial transpose of ``L L^dag / tr``.

    ``theta`` packs the real parts of the ``(m*n, r)`` factor row-major,
    followed by the imaginary parts.
    """
    cdef Py_ssize_t d = m * n, i, j, k, ia, ib, ja, jb
    cdef double complex[:, ::1] lf = np.empty((d, r), dtype=np.complex128)
    cdef double complex[:, ::1] mm = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] hh = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] dummy = np.empty((1, 1), dtype=np.complex128)
    mu_arr = np.empty(d, dtype=np.float64)
    cdef double[::1] mu = mu_arr
    cdef double tr = 0.0, fro = 0.0, f = 0.0, x
    cdef double complex acc
    cdef int sweeps
    if theta.shape[0] != 2 * d * r:
        raise ValueError("theta has the wrong length")
    with nogil:
        for i in range(d):
            for k in range(r):
                lf[i, k] = theta[i * r + k] + 1j * theta[d * r + i * r + k]
                tr += theta[i * r + k] * theta[i * r + k] + theta[d * r + i * r + k] * theta[d * r + i * r + k]
        if tr == 0.0:
            tr = 1.0
        for i in range(d):
            for j in range(i, d):
                acc = 0.0
                for k in range(r):
                    acc = acc + lf[i, k] * conj(lf[j, k])
                mm[i, j] = acc / tr
                mm[j, i] = conj(acc) / tr
        # block (ia, ja) of the result is block (ja, ia) of the input
        for ia in range(m):
            for ib in range(n):
                for ja in range(m):
                    for jb in range(n):
                        hh[ia * n + ib, ja * n + jb] = mm[ja * n + ib, ia * n + jb]
        for i in range(d):
            for j in range(d):
                fro += creal(hh[i, j]) * creal(hh[i, j]) + cimag(hh[i, j]) * cimag(hh[i, j])
        fro = sqrt(fro)
        sweeps = _jacobi(hh, dummy, False, 1e-13, 100)
        for i in range(d):
            mu[i] = creal(hh[i, i]) / fro
        _sort(&mu[0], d)
        for i in range(d):
            if i < neg:
                x = mu[i] + margin
                if x > 0.0:
                    f += x * x
            elif i < neg + zero:
                f += mu[i] * mu[i]
            else:
                x = margin - mu[i]
                if x > 0.0:
                    f += x * x
    if sweeps < 0:
        raise ArithmeticError("Jacobi iteration cap reached in objective")
    return f
