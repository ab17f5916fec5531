"""Dense complex linear algebra used by the rest of the package.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
Hermitian eigensolver is cyclic Jacobi from :mod:`inertia_lab._core`; the
SVD is one-sided (Hestenes) Jacobi. All tolerances are relative to
``max(1, ||M||_F)`` unless stated otherwise.
"""
from typing import NamedTuple, Sequence

import numpy as np

from . import _core
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    IndexOutOfBounds,
    NonSquare,
    NotHermitian,
    SingularBlock,
)

HERMITIAN_REPAIR_TOL = 1e-8
JACOBI_TOL = 1e-13
MAX_SWEEPS = 100


class EigenDecomposition(NamedTuple):
    """Ascending real eigenvalues and the matching unitary eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class SvdDecomposition(NamedTuple):
    """``M = u @ diag(singular_values) @ v`` with ``u``, ``v`` unitary.

    ``singular_values`` has ``min(rows, cols)`` entries in nonincreasing order.
    """

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray

    def sigma(self):
        """The rectangular diagonal factor."""
        s = np.zeros((self.u.shape[0], self.v.shape[0]))
        k = len(self.singular_values)
        s[:k, :k] = np.diag(self.singular_values)
        return s


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def frobenius(m) -> float:
    return float(np.linalg.norm(m))


def hermitian_defect(m) -> float:
    """Largest entrywise gap ``|M[i, j] - conj(M[j, i])|``."""
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)))


def symmetrize(m, tol: float = HERMITIAN_REPAIR_TOL) -> np.ndarray:
    """Return ``(M + M^dag) / 2`` after checking the input is nearly Hermitian.

    Raises NotHermitian when the defect exceeds ``tol * (1 + ||M||_F)``.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NonSquare(f"matrix of shape {a.shape} is not square")
    defect = hermitian_defect(a)
    if defect > tol * (1.0 + frobenius(a)):
        raise NotHermitian(f"Hermiticity defect {defect:.3e} exceeds tolerance")
    return (a + a.conj().T) / 2


def _phase_normalize(v):
    # first non-negligible component of each column made real positive
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            z = col[idx[0]]
            v[:, j] = col * (abs(z) / z)
    return v


def _canonical_order(w, v):
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]
    i = 0
    d = len(w)
    while i < d:
        j = i + 1
        while j < d and w[j] == w[i]:
            j += 1
        if j - i > 1:
            block = v[:, i:j]
            keys = [block.imag[k] for k in range(d - 1, -1, -1)]
            keys += [block.real[k] for k in range(d - 1, -1, -1)]
            sub = np.lexsort(keys)[::-1]
            v[:, i:j] = block[:, sub]
        i = j
    return w, v


def eig_hermitian(m) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    The input is symmetrized once; defects above ``1e-8 * (1 + ||M||_F)``
    raise NotHermitian. Eigenvectors are phase-normalized so that their
    first non-negligible component is real positive, and exactly tied
    eigenvalues are ordered by those normalized vectors, which makes the
    output a deterministic function of the input bits.
    """
    a = symmetrize(m)
    if a.shape[0] == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0), dtype=np.complex128))
    w, v, sweeps = _core.eigh(a, True, JACOBI_TOL, MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceFailure(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    v = _phase_normalize(v)
    w, v = _canonical_order(w, v)
    return EigenDecomposition(w, v)


def eigvalsh(m) -> np.ndarray:
    """Ascending eigenvalues only (same Jacobi kernel, no vector accumulation)."""
    a = symmetrize(m)
    if a.shape[0] == 0:
        return np.zeros(0)
    w, _, sweeps = _core.eigh(a, False, JACOBI_TOL, MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceFailure(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return np.sort(w)


def _complete_unitary(q, rows):
    """Extend orthonormal columns ``q`` to a square unitary matrix."""
    basis = [q[:, j] for j in range(q.shape[1])]
    for k in range(rows):
        if len(basis) == rows:
            break
        e = np.zeros(rows, dtype=np.complex128)
        e[k] = 1.0
        for _ in range(2):
            for b in basis:
                e = e - b * np.vdot(b, e)
        nrm = np.linalg.norm(e)
        if nrm > 1e-8:
            basis.append(e / nrm)
    return np.stack(basis, axis=1) if basis else np.zeros((rows, 0), dtype=np.complex128)


def _hestenes(a, max_sweeps):
    rows, cols = a.shape
    w = a.copy()
    v = np.eye(cols, dtype=np.complex128)
    tol = np.finfo(float).eps * rows
    # columns below this squared norm are numerically zero and left alone
    floor = (np.finfo(float).eps * max(rows, cols) * np.linalg.norm(a)) ** 2
    for _ in range(max_sweeps):
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                wp, wq = w[:, p], w[:, q]
                alpha = float(np.vdot(wp, wp).real)
                beta = float(np.vdot(wq, wq).real)
                if min(alpha, beta) <= floor:
                    continue
                gamma = np.vdot(wp, wq)
                mag = abs(gamma)
                if mag == 0.0 or mag <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                ce = np.conj(gamma / mag)
                theta = (beta - alpha) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                w[:, p], w[:, q] = c * wp - s * ce * wq, s * wp + c * ce * wq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * ce * vq, s * vp + c * ce * vq
        if not rotated:
            return w, v
    raise ConvergenceFailure(f"one-sided Jacobi SVD did not converge in {max_sweeps} sweeps")


def svd(m, max_sweeps: int = MAX_SWEEPS) -> SvdDecomposition:
    """Singular value decomposition ``M = U diag(s) V`` (note: ``V``, not ``V^dag``).

    Wide inputs are handled through their adjoint.
    """
    a = as_matrix(m)
    rows, cols = a.shape
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if rows < cols:
        t = svd(a.conj().T, max_sweeps)
        return SvdDecomposition(t.v.conj().T, t.singular_values, t.u.conj().T)
    if cols == 0:
        return SvdDecomposition(np.eye(rows, dtype=np.complex128), np.zeros(0), np.zeros((0, 0), dtype=np.complex128))
    w, vmat = _hestenes(a, max_sweeps)
    sig = np.linalg.norm(w, axis=0)
    order = np.argsort(-sig, kind="stable")
    sig, w, vmat = sig[order], w[:, order], vmat[:, order]
    cutoff = np.finfo(float).eps * max(rows, cols) * (sig[0] if sig[0] > 0 else 1.0)
    keep = sig > cutoff
    u = _complete_unitary(w[:, keep] / sig[keep], rows)
    # columns past the numerical rank come from the completion
    return SvdDecomposition(u, sig, vmat.conj().T)


def rank(m, tol: float = 1e-9) -> int:
    """Number of singular values above ``tol * max(1, sigma_max)``."""
    if not 0.0 < tol < 1.0:
        raise ValueError("tol must lie in (0, 1)")
    a = as_matrix(m)
    if a.size == 0:
        return 0
    s = svd(a).singular_values
    return int(np.sum(s > tol * max(1.0, float(s[0]))))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def congruence(p, m) -> np.ndarray:
    """``P M P^dag``, returned exactly Hermitian."""
    p = as_matrix(p)
    m = as_matrix(m)
    if p.shape[1] != m.shape[0] or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"cannot form P M P^dag with P {p.shape} and M {m.shape}")
    x = p @ m @ p.conj().T
    return (x + x.conj().T) / 2


def principal_submatrix(m, keep: Sequence[int]) -> np.ndarray:
    a = as_matrix(m)
    idx = np.asarray(list(keep), dtype=int)
    if idx.size and (idx.min() < 0 or idx.max() >= a.shape[0] or idx.max() >= a.shape[1]):
        raise IndexOutOfBounds(f"indices {idx.tolist()} out of range for shape {a.shape}")
    if np.any(np.diff(idx) <= 0):
        raise ValueError("indices must be strictly increasing")
    return a[np.ix_(idx, idx)]


def schur_complement(m, block_size: int) -> np.ndarray:
    """``M22 - M21 M11^{-1} M12`` for the leading ``block_size`` block.

    Raises SingularBlock when the leading block's smallest eigenvalue
    magnitude is at most ``1e-10 * ||M11||_F``.
    """
    a = symmetrize(m)
    k = int(block_size)
    if not 0 < k < a.shape[0]:
        raise DimensionMismatch(f"block size {k} invalid for order {a.shape[0]}")
    m11, m12 = a[:k, :k], a[:k, k:]
    m21, m22 = a[k:, :k], a[k:, k:]
    w = eigvalsh(m11)
    if np.min(np.abs(w)) <= 1e-10 * frobenius(m11):
        raise SingularBlock("leading block is numerically singular")
    s = m22 - m21 @ np.linalg.solve(m11, m12)
    return (s + s.conj().T) / 2
