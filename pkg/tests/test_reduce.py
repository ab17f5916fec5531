import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from inertia_lab import linalg, reduce
from inertia_lab.errors import DimensionMismatch, NotInKernel, NotPsd
from inertia_lab.ptrans import BipartiteDims, Inertia, ProductVector, inertia, partial_transpose
from inertia_lab.search.verify import hermitian_block_state, kernel_product_state

from conftest import ginibre, rand_herm

Q = BipartiteDims(3, 3)


def herm_defect(hc, s, b1, b2):
    comb = hc.combine(s, b1, b2)
    scale = abs(hc.x) * np.linalg.norm(s) + abs(hc.y) * np.linalg.norm(b1) + abs(hc.z) * np.linalg.norm(b2)
    return linalg.hermitian_defect(comb) / scale


def test_hermitian_combination_examples():
    hc = reduce.hermitian_combination(np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)))
    assert hc.x == 0 and abs(hc.y) + abs(hc.z) > 0
    b1 = np.array([[0, 1], [0, 0]])
    b2 = np.array([[0, 0], [1, 0]])
    hc = reduce.hermitian_combination(np.eye(2), b1, b2)
    assert herm_defect(hc, np.eye(2), b1, b2) <= 1e-10
    assert abs(hc.y) + abs(hc.z) > 0 and hc.x.real == 0
    # the hand solution (0, 1, 1) satisfies the same system
    assert linalg.hermitian_defect(b1 + b2) == 0


def test_hermitian_combination_swaps_for_zero_corner():
    s = np.diag([0.0, 1.0])
    b1, b2 = np.array([[1, 2j], [0, 1]]), np.array([[0, 1], [3, 1j]])
    hc = reduce.hermitian_combination(s, b1, b2)
    assert herm_defect(hc, s, b1, b2) <= 1e-10


def test_hermitian_combination_random(rng):
    for _ in range(10000):
        g = ginibre(rng, (2, int(rng.integers(1, 3))))
        s = g @ g.conj().T
        b1, b2 = ginibre(rng, (2, 2)), ginibre(rng, (2, 2))
        hc = reduce.hermitian_combination(s, b1, b2)
        assert herm_defect(hc, s, b1, b2) <= 1e-10
        assert abs(hc.y) + abs(hc.z) > 1e-12


def test_hermitian_combination_rejects_non_psd():
    with pytest.raises(NotPsd):
        reduce.hermitian_combination(np.diag([1.0, -1.0]), np.eye(2), np.eye(2))
    with pytest.raises(NotPsd):
        reduce.hermitian_combination(np.zeros((2, 2)), np.eye(2), np.eye(2))
    with pytest.raises(DimensionMismatch):
        reduce.hermitian_combination(np.eye(3), np.eye(2), np.eye(2))


def test_zero_first_row_col_identity_case(rng):
    e1 = np.array([1.0, 0.0, 0.0])
    m = kernel_product_state(rng, Q, e1, e1, 5)
    assert np.linalg.norm(m[:, 0]) < 1e-12 and np.linalg.norm(partial_transpose(m, Q)[:, 0]) < 1e-12
    cert = reduce.zero_first_row_col(m, Q, ProductVector.from_factors(e1, e1))
    assert np.allclose(cert.left, np.eye(3)) and np.allclose(cert.right, np.eye(3))
    assert np.allclose(cert.result, m)


@given(st.sampled_from([BipartiteDims(2, 3), Q, BipartiteDims(3, 4)]), st.integers(0, 2**32 - 1))
def test_zero_first_row_col_engineered(dims, seed):
    rng = np.random.default_rng(seed)
    phi = ProductVector.from_factors(ginibre(rng, dims.m), ginibre(rng, dims.n))
    m = kernel_product_state(rng, dims, phi.beta, phi.alpha, int(rng.integers(1, dims.order + 1)))
    fro = np.linalg.norm(m)
    assert np.linalg.norm(partial_transpose(m, dims) @ phi.vector()) <= 1e-12 * fro
    cert = reduce.zero_first_row_col(m, dims, phi)
    res = cert.result
    assert np.allclose(cert.left[:, 0], phi.beta) and np.allclose(cert.right[:, 0], phi.alpha)
    assert np.allclose(cert.left.conj().T @ cert.left, np.eye(dims.m))
    assert np.linalg.norm(res - linalg.congruence(cert.factor(), m)) <= 1e-10 * fro
    assert np.linalg.norm(res[0]) <= 1e-8 * fro
    assert np.linalg.norm(partial_transpose(res, dims)[0]) <= 1e-8 * fro
    assert linalg.eigvalsh(res)[0] >= -1e-8 * fro
    assert inertia(res) == inertia(m)
    assert inertia(partial_transpose(res, dims)) == inertia(partial_transpose(m, dims))


def test_zero_first_row_col_errors(rng):
    m = np.eye(9)
    phi = ProductVector.from_factors([1, 0, 0], [1, 0, 0])
    with pytest.raises(NotInKernel):
        reduce.zero_first_row_col(m, Q, phi)
    with pytest.raises(NotPsd):
        reduce.zero_first_row_col(-np.eye(9), Q, phi)


def test_cross_inertia_examples(rng):
    assert reduce.cross_inertia(np.zeros((3, 3))) == Inertia(0, 6, 0)
    assert reduce.cross_inertia(np.eye(3)) == Inertia(3, 0, 3)
    b = ginibre(rng, (3, 4))
    assert reduce.cross_inertia(b) == Inertia(3, 1, 3) == inertia(reduce.cross_matrix(b))


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 5), st.integers(0, 2**32 - 1))
def test_cross_inertia_matches_eigensolve(n, m, r, seed):
    rng = np.random.default_rng(seed)
    r = min(r, n, m)
    b = ginibre(rng, (n, r)) @ ginibre(rng, (r, m)) if r else np.zeros((n, m))
    assert reduce.cross_inertia(b) == inertia(reduce.cross_matrix(b))


def test_inertia_from_minors_examples():
    assert reduce.inertia_from_minors(np.diag([2.0, 3.0])) == Inertia(0, 0, 2)
    assert reduce.inertia_from_minors(np.diag([-1.0, 2.0])) == Inertia(1, 0, 1)
    assert reduce.inertia_from_minors(np.diag([0.0, 2.0])) is None


def test_inertia_from_minors_vs_eigensolve(rng):
    returned = 0
    for _ in range(1000):
        h = rand_herm(rng, 5)
        got = reduce.inertia_from_minors(h)
        if got is not None:
            returned += 1
            assert got == inertia(h)
    assert returned > 900


def test_rank_downdate_examples(rng):
    h = rand_herm(rng, 4)
    assert np.allclose(reduce.rank_downdate(h, np.zeros((4, 2)), 3.0), h)
    with pytest.raises(DimensionMismatch):
        reduce.rank_downdate(h, np.zeros((3, 1)), 1.0)
    with pytest.raises(ValueError):
        reduce.rank_downdate(h, np.zeros((4, 1)), 0.0)


def low_rank_herm(rng, d, r):
    q, _ = np.linalg.qr(ginibre(rng, (d, r)))
    lam = rng.uniform(0.5, 2, r) * rng.choice([-1, 1], r)
    return (q * lam) @ q.conj().T, q


def test_negative_change_in_range(rng):
    for _ in range(200):
        m, q = low_rank_herm(rng, 6, 3)
        a = q @ ginibre(rng, (3, 2))
        k = 1.0
        while inertia(reduce.rank_downdate(m, a, k)) != inertia(m):
            k /= 2
            assert k > 1e-20
        for f in (0.5, 1e-2, 1e-6):
            assert inertia(reduce.rank_downdate(m, a, k * f)) == inertia(m)


def test_negative_change_outside_range(rng):
    for _ in range(200):
        m, _ = low_rank_herm(rng, 6, 3)
        a = ginibre(rng, (6, 1))
        for k in (1e-4, 1.0, 1e3):
            assert inertia(reduce.rank_downdate(m, a, k)).neg > inertia(m).neg


@given(st.integers(2, 9), st.integers(0, 2**32 - 1))
def test_sumdif_and_c0_le_b0(d, seed):
    rng = np.random.default_rng(seed)
    a, b = rand_herm(rng, d), rand_herm(rng, d)
    ia, ib, iab = inertia(a), inertia(b), inertia(a + b)
    assert iab.neg <= ia.neg + ib.neg and iab.pos <= ia.pos + ib.pos
    g = ginibre(rng, (d, int(rng.integers(1, d + 1))))
    p = g @ g.conj().T
    ipn = inertia(p + b)
    assert ipn.neg <= ib.neg and ipn.pos >= ib.pos


def test_ker_trans_bound(rng):
    for _ in range(500):
        m = hermitian_block_state(rng)
        assert linalg.hermitian_defect(m[0:3, 3:6]) <= 1e-12 * np.linalg.norm(m)
        assert linalg.eigvalsh(m)[0] >= -1e-10 * np.linalg.norm(m)
        assert inertia(partial_transpose(m, Q) - m).neg <= 3


def test_product_vectors_in_nonpositive_space_are_kernel(rng):
    from inertia_lab.ptrans import pencil_product_vectors

    checked = 0
    for _ in range(300):
        beta, alpha = ginibre(rng, 3), ginibre(rng, 3)
        m = kernel_product_state(rng, Q, beta, alpha, 6)
        m /= np.trace(m).real
        h = partial_transpose(m, Q)
        dec = linalg.eig_hermitian(h)
        if dec.eigenvalues[0] >= -1e-9:
            continue
        checked += 1
        res = pencil_product_vectors(np.kron(beta, alpha), dec.eigenvectors[:, 0], Q)
        assert res.vectors
        for pv in res.vectors:
            assert np.linalg.norm(h @ pv.vector()) <= 1e-7 * np.linalg.norm(m)
    assert checked > 100
