"""Pure-Python twins of the compiled kernels in ``_jacobi.pyx``.

The Jacobi routine mirrors the compiled rotation order exactly, with the
row/column updates vectorized through numpy. ``hinge_objective`` hands the
eigenvalue step to LAPACK because a Python-level Jacobi is far too slow
inside a search loop.
"""
import numpy as np


def _jacobi(a, want_vectors, tol, max_sweeps):
    d = a.shape[0]
    a[np.diag_indices(d)] = a.diagonal().real
    target = tol * tol * float(np.vdot(a, a).real)
    v = np.eye(d, dtype=np.complex128) if want_vectors else None
    offmask = ~np.eye(d, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = a[offmask]
        if float(np.vdot(off, off).real) <= target:
            return v, sweep
        if sweep == max_sweeps:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                z = a[p, q]
                mag = abs(z)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                if sweep > 3 and abs(app) + 100.0 * mag == abs(app) and abs(aqq) + 100.0 * mag == abs(aqq):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                ce = np.conj(z / mag)
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                newp = c * colp - s * ce * colq
                newq = s * colp + c * ce * colq
                a[:, p] = newp
                a[:, q] = newq
                a[p, :] = newp.conj()
                a[q, :] = newq.conj()
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * ce * vq
                    v[:, q] = s * vp + c * ce * vq
    return v, -1


def eigh(a, vectors=True, tol=1e-13, max_sweeps=100):
    work = np.array(a, dtype=np.complex128, order="C", copy=True)
    v, sweeps = _jacobi(work, vectors, tol, max_sweeps)
    return work.diagonal().real.copy(), v, sweeps


def eigvalsh_batch(stack, tol=1e-13, max_sweeps=100):
    stack = np.asarray(stack, dtype=np.complex128)
    out = np.empty(stack.shape[:2], dtype=np.float64)
    for i, mat in enumerate(stack):
        work = mat.copy()
        _, sweeps = _jacobi(work, False, tol, max_sweeps)
        if sweeps < 0:
            raise ArithmeticError("Jacobi iteration cap reached in batch eigensolve")
        out[i] = np.sort(work.diagonal().real)
    return out


def hinge_objective(theta, m, n, r, neg, zero, margin):
    d = m * n
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape[0] != 2 * d * r:
        raise ValueError("theta has the wrong length")
    lf = theta[: d * r].reshape(d, r) + 1j * theta[d * r:].reshape(d, r)
    mm = lf @ lf.conj().T
    tr = float(np.sum(theta * theta)) or 1.0
    mm /= tr
    hh = mm.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(d, d)
    mu = np.linalg.eigvalsh(hh) / np.linalg.norm(hh)
    f = np.sum(np.maximum(mu[:neg] + margin, 0.0) ** 2)
    f += np.sum(mu[neg:neg + zero] ** 2)
    f += np.sum(np.maximum(margin - mu[neg + zero:], 0.0) ** 2)
    return float(f)
