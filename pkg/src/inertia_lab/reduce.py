"""Constructive reductions on states and their partial transposes.

Each routine returns something that can be checked independently: the
Hermitian-combination scalars, a congruence certificate with its local
factors, or an inertia computed by a closed-form rule.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import DegenerateSystem, DimensionMismatch, NotInKernel, NotPsd
from .ptrans import BipartiteDims, Inertia, ProductVector, partial_transpose

PSD_FLOOR = 1e-8
KERNEL_TOL = 1e-7


@dataclass(frozen=True)
class HermitianCombination:
    """Scalars with ``x*S + y*B1 + z*B2`` Hermitian and ``(y, z) != 0``."""

    x: complex
    y: complex
    z: complex

    def combine(self, s, b1, b2) -> np.ndarray:
        return self.x * np.asarray(s) + self.y * np.asarray(b1) + self.z * np.asarray(b2)


def _as_2x2(name, mat):
    a = linalg.as_matrix(mat)
    if a.shape != (2, 2):
        raise DimensionMismatch(f"{name} must be 2x2, got {a.shape}")
    return a


def hermitian_combination(s, b1, b2) -> HermitianCombination:
    """Solve for ``x, y, z`` making ``x*S + y*B1 + z*B2`` Hermitian.

    With ``x = i*x2`` the Hermiticity conditions form a real 4x5 linear
    system in ``(x2, Re y, Im y, Re z, Im z)``. Its null space is nonempty;
    among an orthonormal null basis the vector with the largest ``(y, z)``
    part is returned. When ``S[0, 0]`` is the smaller diagonal entry the
    basis order is swapped first, so the leading entry is positive.
    """
    s = _as_2x2("s", s)
    b1 = _as_2x2("b1", b1)
    b2 = _as_2x2("b2", b2)
    sh = linalg.symmetrize(s)
    w = linalg.eigvalsh(sh)
    scale = max(1.0, linalg.frobenius(sh))
    if w[0] < -PSD_FLOOR * scale or w[-1] <= PSD_FLOOR * scale:
        raise NotPsd("s must be a nonzero positive semidefinite matrix")
    if sh[0, 0].real < sh[1, 1].real:
        # permutation similarity keeps Hermiticity and the scalars
        swap = np.array([[0, 1], [1, 0]])
        sh, b1, b2 = (swap @ x @ swap for x in (sh, b1, b2))

    a, b, c = sh[0, 0].real, sh[1, 1].real, sh[0, 1]
    d, e, f, g = b1[0, 0], b1[0, 1], b1[1, 0], b1[1, 1]
    h, k, l, m = b2[0, 0], b2[0, 1], b2[1, 0], b2[1, 1]
    coef = np.array(
        [
            [a, d.imag, d.real, h.imag, h.real],
            [b, g.imag, g.real, m.imag, m.real],
            [2 * c.imag, f.real - e.real, e.imag - f.imag, l.real - k.real, k.imag - l.imag],
            [2 * c.real, e.imag + f.imag, e.real + f.real, k.imag + l.imag, k.real + l.real],
        ]
    )
    dec = linalg.svd(coef)
    sv = dec.singular_values
    rk = int(np.sum(sv > 1e-12 * max(1.0, float(sv[0]))))
    null = dec.v[rk:, :].conj().real
    weights = np.linalg.norm(null[:, 1:], axis=1)
    best = int(np.argmax(weights))
    if weights[best] <= 1e-12:
        raise DegenerateSystem("no null vector with (y, z) != 0")
    x2, y1, y2, z1, z2 = null[best] / np.linalg.norm(null[best])
    return HermitianCombination(complex(0.0, x2), complex(y1, y2), complex(z1, z2))


@dataclass(frozen=True)
class ReductionCertificate:
    """Local factors ``left`` (on A) and ``right`` (on B) plus the reduced state.

    ``left @ e1`` is the A-factor of the kernel product vector and
    ``right @ e1`` its B-factor. The reduced state is the congruence of the
    input by ``kron(left.T, right^dag)``, returned by :meth:`factor`.
    """

    left: np.ndarray
    right: np.ndarray
    result: np.ndarray

    def factor(self) -> np.ndarray:
        return np.kron(self.left.T, self.right.conj().T)


def _unitary_with_first_column(u) -> np.ndarray:
    """Householder-based unitary ``Q`` with ``Q @ e1 == u`` for a unit ``u``."""
    u = np.asarray(u, dtype=np.complex128)
    u = u / np.linalg.norm(u)
    ph = u[0] / abs(u[0]) if abs(u[0]) > 0 else 1.0
    e1 = np.zeros_like(u)
    e1[0] = ph
    w = u - e1
    nw = np.linalg.norm(w)
    q = np.eye(len(u), dtype=np.complex128)
    if nw > 1e-15:
        w = w / nw
        q = q - 2.0 * np.outer(w, w.conj())
    # q maps ph*e1 to u; absorb the phase in the first column
    q[:, 0] *= ph
    return q


def zero_first_row_col(m, dims: BipartiteDims, phi: ProductVector) -> ReductionCertificate:
    """Move a kernel product vector of ``M^Gamma`` to ``|0,0>``.

    With invertible ``A``, ``B`` sending ``e1`` to ``phi.beta`` and
    ``phi.alpha``, the state ``(A^T (x) B^dag) M (A^* (x) B)`` is congruent to
    ``M`` and its partial transpose is congruent to ``M^Gamma``; both have
    vanishing first row and column.
    """
    a = linalg.symmetrize(m)
    dims.check(a.shape[0])
    fro = linalg.frobenius(a)
    if linalg.eigvalsh(a)[0] < -PSD_FLOOR * max(fro, 1e-300):
        raise NotPsd("input state is not positive semidefinite")
    v = phi.vector()
    if len(v) != dims.order:
        raise DimensionMismatch("product vector does not match dims")
    h = partial_transpose(a, dims)
    if np.linalg.norm(h @ v) > KERNEL_TOL * fro:
        raise NotInKernel("product vector is not in the kernel of the partial transpose")
    left = _unitary_with_first_column(phi.beta)
    right = _unitary_with_first_column(phi.alpha)
    cert = ReductionCertificate(left, right, np.empty(0))
    return ReductionCertificate(left, right, linalg.congruence(cert.factor(), a))


def cross_matrix(b) -> np.ndarray:
    """Assemble ``[[0, B], [B^dag, 0]]`` for an ``n x m`` block ``B``."""
    b = linalg.as_matrix(b)
    n, m = b.shape
    out = np.zeros((n + m, n + m), dtype=np.complex128)
    out[:n, n:] = b
    out[n:, :n] = b.conj().T
    return out


def cross_inertia(b) -> Inertia:
    """Inertia of ``[[0, B], [B^dag, 0]]`` from the rank of ``B`` alone."""
    b = linalg.as_matrix(b)
    n, m = b.shape
    r = linalg.rank(b, 1e-9) if b.size else 0
    return Inertia(r, m + n - 2 * r, r)


def leading_minors(m) -> np.ndarray:
    a = linalg.symmetrize(m)
    return np.array([np.linalg.det(a[:s, :s]).real for s in range(1, a.shape[0] + 1)])


def inertia_from_minors(m) -> Optional[Inertia]:
    """Inertia from the signs of the leading principal minors, when all are nonzero.

    The negative count is the number of sign changes along ``1, D1, ..., Dn``.
    Returns None when some ``|D_s| <= 1e-10 * (1 + ||M||_F)**s``.
    """
    a = linalg.symmetrize(m)
    fro = linalg.frobenius(a)
    minors = leading_minors(a)
    for s, dm in enumerate(minors, start=1):
        if abs(dm) <= 1e-10 * (1.0 + fro) ** s:
            return None
    signs = np.sign(np.concatenate([[1.0], minors]))
    neg = int(np.sum(signs[1:] != signs[:-1]))
    return Inertia(neg, 0, len(minors) - neg)


def rank_downdate(m, a, k: float) -> np.ndarray:
    """``M - k A A^dag`` for ``k > 0``."""
    mm = linalg.symmetrize(m)
    a = linalg.as_matrix(a)
    if a.shape[0] != mm.shape[0]:
        raise DimensionMismatch(f"A has {a.shape[0]} rows, M has order {mm.shape[0]}")
    if not k > 0:
        raise ValueError("k must be positive")
    out = mm - k * (a @ a.conj().T)
    return (out + out.conj().T) / 2
