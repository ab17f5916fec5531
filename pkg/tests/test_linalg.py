import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from inertia_lab import linalg
from inertia_lab.errors import (
    DimensionMismatch,
    IndexOutOfBounds,
    NonSquare,
    NotHermitian,
    SingularBlock,
)
from inertia_lab.ptrans import Inertia, inertia

from conftest import ginibre, rand_herm


def eig_defects(h):
    dec = linalg.eig_hermitian(h)
    v, w = dec.eigenvectors, dec.eigenvalues
    fro = np.linalg.norm(h)
    resid = max(np.linalg.norm(h @ v[:, i] - w[i] * v[:, i]) for i in range(len(w))) / fro
    orth = np.linalg.norm(v.conj().T @ v - np.eye(len(w)))
    recon = np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) / fro
    return resid, orth, recon, w


def test_identity_and_diagonal():
    dec = linalg.eig_hermitian(np.eye(3))
    assert np.allclose(dec.eigenvalues, 1)
    assert np.allclose(linalg.eig_hermitian(np.diag([-1.0, 0.0, 2.0])).eigenvalues, [-1, 0, 2])


@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
def test_eigendecomposition_invariants(d, seed):
    h = rand_herm(np.random.default_rng(seed), d)
    resid, orth, recon, w = eig_defects(h)
    assert resid <= 1e-10 and orth <= 1e-10 and recon <= 1e-10
    assert np.all(np.diff(w) >= 0)


def test_eigenvalues_match_lapack(rng):
    for d in range(2, 13):
        h = rand_herm(rng, d)
        assert np.allclose(linalg.eigvalsh(h), np.linalg.eigvalsh(h), atol=1e-12 * np.linalg.norm(h))


def test_deterministic_with_ties():
    h = np.kron(np.diag([1.0, 1.0, 2.0]), np.eye(2))
    a, b = linalg.eig_hermitian(h), linalg.eig_hermitian(h.copy())
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_hermiticity_errors():
    with pytest.raises(NonSquare):
        linalg.eig_hermitian(np.zeros((2, 3)))
    with pytest.raises(NotHermitian):
        linalg.eig_hermitian(np.array([[0, 1], [0, 0]]))
    # small defects are repaired silently
    h = np.array([[1.0, 1e-12], [0.0, 2.0]])
    assert np.allclose(linalg.eig_hermitian(h).eigenvalues, [1, 2])


def test_svd_examples():
    assert np.allclose(linalg.svd(np.zeros((2, 3))).singular_values, 0)
    assert np.allclose(linalg.svd(np.diag([3.0, 1.0])).singular_values, [3, 1])
    b = np.array([[1.0, 2, 3], [1.0, 2, 3], [0.5, -1, 4j]])
    s = linalg.svd(b).singular_values
    assert s[2] <= 1e-10 * np.linalg.norm(b)


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_svd_reconstruction(r, c, seed):
    m = ginibre(np.random.default_rng(seed), (r, c))
    dec = linalg.svd(m)
    assert np.linalg.norm(dec.u @ dec.sigma() @ dec.v - m) <= 1e-10 * (1 + np.linalg.norm(m))
    assert np.allclose(dec.u.conj().T @ dec.u, np.eye(r), atol=1e-10)
    assert np.allclose(dec.v @ dec.v.conj().T, np.eye(c), atol=1e-10)
    assert np.all(np.diff(dec.singular_values) <= 0) and np.all(dec.singular_values >= 0)
    assert np.allclose(dec.singular_values, np.linalg.svd(m, compute_uv=False), atol=1e-10)


def row_reduction_rank(m, tol=1e-9):
    # Gaussian elimination with partial pivoting as an independent oracle
    a = np.array(m, dtype=complex)
    rows, cols = a.shape
    r = 0
    scale = max(1.0, np.abs(a).max())
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= tol * scale:
            continue
        a[[r, p]] = a[[p, r]]
        a[r + 1:] -= np.outer(a[r + 1:, c] / a[r, c], a[r])
        r += 1
    return r


def test_rank(rng):
    assert linalg.rank(np.eye(4)) == 4
    x = ginibre(rng, 4)
    assert linalg.rank(np.outer(x, x.conj())) == 1
    g = ginibre(rng, (3, 4))
    assert linalg.rank(g) == 3 == row_reduction_rank(g)
    with pytest.raises(ValueError):
        linalg.rank(np.eye(2), 1.5)


def test_kron_against_definition(rng):
    assert np.array_equal(linalg.kron(np.eye(2), np.eye(3)), np.eye(6))
    a, b = ginibre(rng, (2, 2)), ginibre(rng, (3, 3))
    k = linalg.kron(a, b)
    for i in range(2):
        for j in range(2):
            for p in range(3):
                for q in range(3):
                    assert abs(k[i * 3 + p, j * 3 + q] - a[i, j] * b[p, q]) <= 1e-15 * abs(a[i, j] * b[p, q])
    k = linalg.kron(np.array([[0, 1], [0, 0]]), np.eye(2))
    assert np.array_equal(k[:2, 2:], np.eye(2)) and not k[2:].any()


def test_congruence_examples(rng):
    m = np.diag([-1.0, 0.0, 1.0])
    assert np.allclose(linalg.congruence(np.eye(3), m), m)
    p = ginibre(rng, (3, 3))
    assert inertia(linalg.congruence(p, m)) == Inertia(1, 1, 1)
    out = linalg.congruence(np.diag([2.0, 0.0]), np.eye(2))
    assert np.allclose(out, np.diag([4, 0])) and inertia(out) == Inertia(0, 1, 1)
    with pytest.raises(DimensionMismatch):
        linalg.congruence(np.eye(2), np.eye(3))


@given(st.integers(2, 9), st.integers(0, 2**32 - 1))
def test_sylvester_and_projection(d, seed):
    rng = np.random.default_rng(seed)
    m = rand_herm(rng, d)
    p = ginibre(rng, (d, d))
    assert inertia(linalg.congruence(p, m)) == inertia(m)
    q = ginibre(rng, (d + 1, 2)) @ ginibre(rng, (2, d))
    ix, im = inertia(linalg.congruence(q, m)), inertia(m)
    assert ix.neg <= im.neg and ix.pos <= im.pos


def test_principal_submatrix(rng):
    m = np.diag([1.0, 2.0, 3.0])
    assert np.array_equal(linalg.principal_submatrix(m, [0, 1, 2]), m)
    assert np.array_equal(linalg.principal_submatrix(m, [0, 2]), np.diag([1.0, 3.0]))
    with pytest.raises(IndexOutOfBounds):
        linalg.principal_submatrix(m, [0, 3])
    with pytest.raises(ValueError):
        linalg.principal_submatrix(m, [2, 0])
    h = rand_herm(rng, 9)
    keep = np.sort(rng.choice(9, 7, replace=False))
    isub, im = inertia(linalg.principal_submatrix(h, keep)), inertia(h)
    assert isub.neg <= im.neg and isub.pos <= im.pos


def test_schur_complement(rng):
    assert np.allclose(linalg.schur_complement(np.diag([1.0, 1.0, -2.0]), 2), [[-2]])
    assert np.allclose(linalg.schur_complement(np.ones((2, 2)), 1), [[0]])
    with pytest.raises(SingularBlock):
        linalg.schur_complement(np.diag([0.0, 1.0, 1.0]), 1)
    for _ in range(50):
        h = rand_herm(rng, 6)
        s = linalg.schur_complement(h, 2)
        a, b = inertia(h[:2, :2]), inertia(s)
        assert inertia(h) == Inertia(a.neg + b.neg, a.zero + b.zero, a.pos + b.pos)
