"""Randomized property suites for the inertia identities and bounds.

Every suite draws its own inputs from a stream derived from the seed and
the suite name, runs ``trials`` independent checks and reports pass/fail
counts with the worst defect seen. Some draws can be degenerate for a
check (e.g. a vanishing leading minor); those are counted as skipped.
"""
import zlib
from dataclasses import asdict, dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .. import linalg, reduce
from ..errors import UnknownLemma
from ..ptrans import BipartiteDims, Inertia, ProductVector, inertia, partial_transpose, pencil_product_vectors
from .sampling import ginibre, inertia_census

IDENTITY_TOL = 1e-12
KERNEL_TOL = 1e-7
DIMS_POOL = (BipartiteDims(2, 2), BipartiteDims(2, 3), BipartiteDims(3, 3), BipartiteDims(3, 4))
QUTRITS = BipartiteDims(3, 3)


@dataclass
class VerificationReport:
    name: str
    description: str
    trials: int
    passed: int
    failed: int
    skipped: int
    worst_defect: float
    tolerance: Optional[float]

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def as_dict(self) -> Dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def random_hermitian(rng, d, rank=None):
    """Hermitian matrix of the given rank with random signs (full rank by default)."""
    rank = d if rank is None else rank
    g = ginibre(rng, (d, rank))
    signs = rng.choice([-1.0, 1.0], size=rank)
    h = (g * signs) @ g.conj().T
    return (h + h.conj().T) / 2


def random_psd(rng, d, rank=None):
    rank = d if rank is None else rank
    g = ginibre(rng, (d, rank))
    m = g @ g.conj().T
    return (m + m.conj().T) / 2


def _pick_dims(rng):
    return DIMS_POOL[rng.integers(len(DIMS_POOL))]


def _count_excess(lhs: Inertia, rhs_neg, rhs_pos):
    return max(0, lhs.neg - rhs_neg) + max(0, lhs.pos - rhs_pos)


def check_product_tran(rng):
    dims = _pick_dims(rng)
    m, n = dims.m, dims.n
    a, c = ginibre(rng, (m, m)), ginibre(rng, (m, m))
    b, d = ginibre(rng, (n, n)), ginibre(rng, (n, n))
    mm = random_hermitian(rng, dims.order)
    lhs = partial_transpose(np.kron(a, b) @ mm @ np.kron(c, d), dims)
    rhs = np.kron(c.T, b) @ partial_transpose(mm, dims) @ np.kron(a.T, d)
    defect = np.linalg.norm(lhs - rhs) / np.linalg.norm(lhs)
    return defect <= IDENTITY_TOL, defect


def kernel_product_state(rng, dims, beta, alpha, terms):
    """PSD ``M = sum x x^dag`` with ``M^Gamma (beta (x) alpha) = 0``.

    ``(M^Gamma phi)_i = sum_x (x_i^dag alpha) (sum_j beta_j x_j)``, so each
    term either has every block orthogonal to ``alpha`` or satisfies
    ``sum_j beta_j x_j = 0``. Both kinds are mixed in.
    """
    m, n = dims.m, dims.n
    alpha = alpha / np.linalg.norm(alpha)
    bn = beta / np.linalg.norm(beta)
    out = np.zeros((dims.order, dims.order), dtype=np.complex128)
    for k in range(terms):
        x = ginibre(rng, (m, n))
        if k % 2 == 0:
            x = x - np.outer(x @ alpha.conj(), alpha)
        else:
            s = bn @ x
            x = x - np.outer(bn.conj(), s)
        v = x.ravel()
        out += np.outer(v, v.conj())
    return (out + out.conj().T) / 2


def check_vector_tran(rng):
    dims = _pick_dims(rng)
    beta = rng.standard_normal(dims.m)
    alpha = ginibre(rng, dims.n)
    phi = np.kron(beta, alpha)
    # (i) the quadratic forms of M and M^Gamma agree on real-beta product vectors
    h = random_hermitian(rng, dims.order)
    hg = partial_transpose(h, dims)
    d1 = abs(np.vdot(phi, h @ phi) - np.vdot(phi, hg @ phi)) / (np.linalg.norm(h) * np.vdot(phi, phi).real)
    # (ii) M >= 0 and M^Gamma phi = 0 force M phi = 0
    m = kernel_product_state(rng, dims, beta, alpha, int(rng.integers(1, dims.order + 1)))
    pn = np.linalg.norm(phi)
    pre = np.linalg.norm(partial_transpose(m, dims) @ phi) / (np.linalg.norm(m) * pn)
    d2 = np.linalg.norm(m @ phi) / (np.linalg.norm(m) * pn)
    ok = d1 <= IDENTITY_TOL and pre <= 1e-12 and d2 <= 1e-8
    return ok, max(d1, d2)


def check_sumdif(rng):
    d = int(rng.integers(2, 10))
    a = random_hermitian(rng, d, int(rng.integers(1, d + 1)))
    b = random_hermitian(rng, d, int(rng.integers(1, d + 1)))
    ia, ib, iab = inertia(a), inertia(b), inertia(a + b)
    excess = _count_excess(iab, ia.neg + ib.neg, ia.pos + ib.pos)
    return excess == 0, float(excess)


def check_c0_le_b0(rng):
    d = int(rng.integers(2, 10))
    m = random_psd(rng, d, int(rng.integers(1, d + 1)))
    nn = random_hermitian(rng, d, int(rng.integers(1, d + 1)))
    i_n, i_mn = inertia(nn), inertia(m + nn)
    excess = max(0, i_mn.neg - i_n.neg) + max(0, i_n.pos - i_mn.pos)
    return excess == 0, float(excess)


def check_projection(rng):
    d = int(rng.integers(2, 10))
    k = int(rng.integers(1, d + 3))
    p = ginibre(rng, (k, d))
    if rng.random() < 0.5:
        # rank-deficient projection
        r = int(rng.integers(1, min(k, d) + 1))
        p = ginibre(rng, (k, r)) @ ginibre(rng, (r, d))
    m = random_hermitian(rng, d, int(rng.integers(1, d + 1)))
    im, ix = inertia(m), inertia(linalg.congruence(p, m))
    excess = _count_excess(ix, im.neg, im.pos)
    return excess == 0, float(excess)


def check_sub_lem(rng):
    d = int(rng.integers(2, 13))
    s = int(rng.integers(1, d + 1))
    keep = np.sort(rng.choice(d, size=s, replace=False))
    m = random_hermitian(rng, d, int(rng.integers(1, d + 1)))
    im, isub = inertia(m), inertia(linalg.principal_submatrix(m, keep))
    excess = _count_excess(isub, im.neg, im.pos)
    return excess == 0, float(excess)


def check_remove_rows(rng):
    """Dropping one basis vector of B in a 3x4 state leaves a principal submatrix of M^Gamma."""
    dims = BipartiteDims(3, 4)
    small = BipartiteDims(3, 3)
    m = random_psd(rng, 12, int(rng.integers(1, 13)))
    drop = int(rng.integers(4))
    q = np.delete(np.eye(4), drop, axis=0)
    nst = linalg.congruence(np.kron(np.eye(3), q), m)
    keep = [i * 4 + k for i in range(3) for k in range(4) if k != drop]
    mg = partial_transpose(m, dims)
    sub = linalg.principal_submatrix(mg, keep)
    defect = float(np.max(np.abs(partial_transpose(nst, small) - sub)))
    im, isub = inertia(mg), inertia(sub)
    ok = defect <= 1e-12 * max(1.0, np.linalg.norm(m))
    ok = ok and isub.pos <= im.pos and isub.neg <= im.neg and im.neg <= isub.neg + 3
    return ok, defect


def check_cross_lem(rng):
    n, m = (int(x) for x in rng.integers(1, 6, size=2))
    r = int(rng.integers(0, min(n, m) + 1))
    b = ginibre(rng, (n, r)) @ ginibre(rng, (r, m)) if r else np.zeros((n, m), dtype=np.complex128)
    formula = reduce.cross_inertia(b)
    direct = inertia(reduce.cross_matrix(b))
    return formula == direct, float(formula != direct)


def check_det_lem(rng):
    d = int(rng.integers(2, 7))
    m = random_hermitian(rng, d)
    by_minors = reduce.inertia_from_minors(m)
    if by_minors is None:
        return None, 0.0
    return by_minors == inertia(m), float(by_minors != inertia(m))


def check_negative_change(rng):
    d = int(rng.integers(3, 9))
    r = int(rng.integers(1, d))
    g = ginibre(rng, (d, r))
    q, _ = np.linalg.qr(g)
    lam = rng.uniform(0.5, 2.0, r) * rng.choice([-1.0, 1.0], r)
    m = (q * lam) @ q.conj().T
    m = (m + m.conj().T) / 2
    im = inertia(m)
    s = int(rng.integers(1, 4))
    # (i) columns in range(M): some k0 > 0 keeps the inertia for all smaller k
    a_in = q @ ginibre(rng, (r, s))
    k = 1.0
    for _ in range(80):
        if inertia(reduce.rank_downdate(m, a_in, k)) == im:
            break
        k /= 2
    else:
        return False, float("inf")
    ok_i = all(inertia(reduce.rank_downdate(m, a_in, k * f)) == im for f in (0.5, 0.1, 1e-3))
    # (ii) a column outside range(M): i_- strictly increases for every k > 0
    a_out = ginibre(rng, (d, s))
    ok_ii = all(inertia(reduce.rank_downdate(m, a_out, kk)).neg > im.neg for kk in (1e-4, 1e-2, 1.0, 1e2))
    return ok_i and ok_ii, 0.0 if ok_i and ok_ii else 1.0


def hermitian_block_state(rng, rank=None):
    """Random two-qutrit PSD state whose (1,2) block ``M12`` is Hermitian.

    With block rows ``L1, L2, L3`` of a factor ``L``, ``M12 = L1 L2^dag``.
    Taking ``L2 = H L1 + K`` with ``H`` Hermitian and commuting with
    ``L1 L1^dag``, and the rows of ``K`` orthogonal to those of ``L1``,
    gives ``M12 = (L1 L1^dag) H``, a product of commuting Hermitian matrices.
    """
    r = int(rng.integers(4, 10)) if rank is None else rank
    l1 = ginibre(rng, (3, r))
    l3 = ginibre(rng, (3, r))
    s = l1 @ l1.conj().T
    _, u = np.linalg.eigh((s + s.conj().T) / 2)
    h = (u * rng.standard_normal(3)) @ u.conj().T
    proj = np.eye(r) - l1.conj().T @ np.linalg.solve(s, l1)
    k = ginibre(rng, (3, r)) @ proj
    lf = np.vstack([l1, h @ l1 + k, l3])
    m = lf @ lf.conj().T
    return (m + m.conj().T) / 2


def check_ker_trans(rng):
    m = hermitian_block_state(rng)
    herm = linalg.hermitian_defect(m[0:3, 3:6]) / np.linalg.norm(m)
    diff = partial_transpose(m, QUTRITS) - m
    im = inertia(diff)
    # only the blocks coupling the third row of blocks survive
    bound = reduce.cross_inertia(diff[0:6, 6:9])
    ok = herm <= 1e-12 and im.neg <= 3 and im == bound
    return ok, herm


def check_pro_in_ker(rng):
    beta = ginibre(rng, 3)
    alpha = ginibre(rng, 3)
    m = kernel_product_state(rng, QUTRITS, beta, alpha, int(rng.integers(2, 9)))
    m = m / np.trace(m).real
    h = partial_transpose(m, QUTRITS)
    dec = linalg.eig_hermitian(h)
    tau = 1e-9 * max(1.0, np.linalg.norm(h))
    if dec.eigenvalues[0] >= -tau:
        return None, 0.0
    phi = np.kron(beta, alpha)
    # product vectors in span{phi, most negative eigenvector} lie in ker(M^Gamma)
    found = pencil_product_vectors(phi, dec.eigenvectors[:, 0], QUTRITS)
    if not found.vectors:
        return False, float("inf")
    worst = max(np.linalg.norm(h @ pv.vector()) for pv in found.vectors) / np.linalg.norm(m)
    return worst <= KERNEL_TOL, worst


def check_hermitian_combination(rng):
    g = ginibre(rng, (2, int(rng.integers(1, 3))))
    s = g @ g.conj().T
    b1, b2 = ginibre(rng, (2, 2)), ginibre(rng, (2, 2))
    hc = reduce.hermitian_combination(s, b1, b2)
    comb = hc.combine(s, b1, b2)
    scale = abs(hc.x) * np.linalg.norm(s) + abs(hc.y) * np.linalg.norm(b1) + abs(hc.z) * np.linalg.norm(b2)
    defect = linalg.hermitian_defect(comb) / scale
    return defect <= 1e-10 and abs(hc.y) + abs(hc.z) > 0, defect


def check_first_tran(rng):
    dims = _pick_dims(rng)
    beta, alpha = ginibre(rng, dims.m), ginibre(rng, dims.n)
    phi = ProductVector.from_factors(beta, alpha)
    m = kernel_product_state(rng, dims, phi.beta, phi.alpha, int(rng.integers(1, dims.order + 1)))
    cert = reduce.zero_first_row_col(m, dims, phi)
    fro = np.linalg.norm(m)
    res = cert.result
    edge = max(np.linalg.norm(res[0]), np.linalg.norm(partial_transpose(res, dims)[0])) / fro
    same = inertia(res) == inertia(m) and inertia(partial_transpose(res, dims)) == inertia(partial_transpose(m, dims))
    return edge <= 1e-8 and same, edge


def _ew_positive(seed, trials):
    census = inertia_census(QUTRITS, trials, ranks=(9, 8, 7, 4, 2, 1), seed=seed, threads=1)
    npt = census.npt
    bad = sum(c for k, c in census.counts.items() if k.neg >= 1 and k.pos < 3)
    worst = float(3 - census.min_npt_pos) if census.min_npt_pos is not None else 0.0
    return npt - bad, bad, trials - npt, max(worst, 0.0)


_REGISTRY: Dict[str, Tuple[str, Callable, Optional[float]]] = {
    "product-tran": ("((A(x)B) M (C(x)D))^G == (C^T(x)B) M^G (A^T(x)D)", check_product_tran, IDENTITY_TOL),
    "vector-tran": ("real-beta product vectors: phi^dag M phi == phi^dag M^G phi; M>=0, M^G phi=0 => M phi=0",
                    check_vector_tran, 1e-8),
    "sumdif": ("i_x(A+B) <= i_x(A) + i_x(B)", check_sumdif, None),
    "c0-le-b0": ("M >= 0: i_-(M+N) <= i_-(N) and i_+(M+N) >= i_+(N)", check_c0_le_b0, None),
    "projection": ("i_x(P M P^dag) <= i_x(M)", check_projection, None),
    "sub-lem": ("i_x(principal submatrix) <= i_x(M)", check_sub_lem, None),
    "remove-rows": ("3x4 -> 3x3 row removal gives a principal submatrix of M^G", check_remove_rows, 1e-12),
    "cross-lem": ("In [[0,B],[B^dag,0]] == (r, m+n-2r, r)", check_cross_lem, None),
    "det-lem": ("leading-minor sign rule agrees with the eigensolve inertia", check_det_lem, None),
    "negative-change": ("N = M - k A A^dag: (i) small k keeps In M, (ii) i_- grows", check_negative_change, None),
    "ker-trans": ("Hermitian M12: i_-(M^G - M) <= 3", check_ker_trans, 1e-12),
    "pro-in-ker": ("product vectors in the nonpositive eigenspace lie in ker M^G", check_pro_in_ker, KERNEL_TOL),
    "hermitian-comb": ("x S + y B1 + z B2 Hermitian with (y, z) != 0", check_hermitian_combination, 1e-10),
    "first-tran": ("local congruence zeroes the first row/column of M and M^G", check_first_tran, 1e-8),
    "ew-positive": ("NPT two-qutrit states: i_+(M^G) >= 3", None, None),
}


def lemma_names():
    return list(_REGISTRY)


def lemma_rng(name: str, seed: int) -> np.random.Generator:
    key = zlib.crc32(name.encode())
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(key,)))


def verify_lemma(name: str, trials: int = 1000, seed: int = 0) -> VerificationReport:
    """Run the randomized suite registered under ``name``."""
    if name not in _REGISTRY:
        raise UnknownLemma(f"unknown lemma {name!r}; known: {', '.join(_REGISTRY)}")
    if trials < 1:
        raise ValueError("trials must be positive")
    desc, fn, tol = _REGISTRY[name]
    if name == "ew-positive":
        passed, failed, skipped, worst = _ew_positive(seed, trials)
        return VerificationReport(name, desc, trials, passed, failed, skipped, worst, tol)
    rng = lemma_rng(name, seed)
    passed = failed = skipped = 0
    worst = 0.0
    for _ in range(trials):
        ok, defect = fn(rng)
        if ok is None:
            skipped += 1
            continue
        worst = max(worst, float(defect))
        if ok:
            passed += 1
        else:
            failed += 1
    return VerificationReport(name, desc, trials, passed, failed, skipped, worst, tol)
