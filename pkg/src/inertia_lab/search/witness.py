"""Target-inertia witness search.

A restart draws a random complex factor ``L`` of shape ``d x r`` and drives
the hinge penalty on the normalized spectrum of ``(L L^dag / tr)^Gamma``
down by compass search. Once the sign pattern is right, a Gauss-Newton
polish collapses the would-be zero eigenvalues, and the resulting state is
certified from scratch with the Jacobi eigensolver. Restarts cycle the
factor rank through ``1..d``: targets with a large nonpositive space force
the state to be singular and are invisible to full-rank factors.
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from .. import _core, linalg
from ..errors import InvalidTarget
from ..ptrans import DEFAULT_ZERO_TOL, BipartiteDims, Inertia, classify, partial_transpose
from ._parallel import run_ordered
from .sampling import task_rng

PSD_CERT_FLOOR = 1e-10
POLISH_GATE = 1e-4
COMPASS_STOP = 1e-24
NON_PROOF_NOTE = "numerical corroboration only, not a proof of exclusion"


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of :func:`target_inertia_search`.

    ``margin`` is the certification margin for nonzero eigenvalues;
    ``search_margin`` is the (larger) margin the optimizer aims for, which
    leaves room for the polish step to shrink the gap.
    """

    dims: BipartiteDims
    target: Inertia
    restarts: Optional[int] = None
    max_iters: int = 1500
    seed: int = 0
    zero_tol: float = DEFAULT_ZERO_TOL
    margin: float = 1e-4
    separation_ratio: float = 1e4
    search_margin: float = 1e-2
    ranks: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not isinstance(self.target, Inertia):
            object.__setattr__(self, "target", Inertia(*self.target))
        if self.target.order != self.dims.order:
            raise InvalidTarget(f"target {self.target} does not sum to {self.dims.order}")
        if self.separation_ratio < 10:
            raise ValueError("separation_ratio must be at least 10")
        if not self.margin > self.zero_tol * self.separation_ratio:
            raise ValueError("margin must exceed zero_tol * separation_ratio")
        if self.search_margin < self.margin:
            raise ValueError("search_margin must be at least margin")
        if self.restarts is not None and self.restarts < 1:
            raise ValueError("restarts must be positive")
        if self.ranks is not None:
            ranks = tuple(int(r) for r in self.ranks)
            if not ranks or min(ranks) < 1 or max(ranks) > self.dims.order:
                raise ValueError(f"ranks must lie in [1, {self.dims.order}]")
            object.__setattr__(self, "ranks", ranks)

    @property
    def n_restarts(self) -> int:
        if self.restarts is not None:
            return self.restarts
        return 50 if self.dims.order <= 9 else 200

    @property
    def rank_schedule(self) -> Tuple[int, ...]:
        return self.ranks or tuple(range(1, self.dims.order + 1))

    @property
    def certification_threshold(self) -> float:
        """Objective level implied by a certified witness: ``d * zero_tol**2``."""
        return self.dims.order * self.zero_tol ** 2


@dataclass
class Certification:
    ok: bool
    achieved: Inertia
    min_state_eig: float
    max_zero: float
    min_nonzero: float
    spectrum: np.ndarray
    reasons: Tuple[str, ...] = ()

    def as_dict(self) -> Dict:
        return {
            "ok": self.ok,
            "achieved": str(self.achieved),
            "min_state_eigenvalue": self.min_state_eig,
            "max_zero_class": self.max_zero,
            "min_nonzero_class": self.min_nonzero,
            "normalized_spectrum": [float(x) for x in self.spectrum],
            "reasons": list(self.reasons),
        }


@dataclass
class WitnessResult:
    status: str
    witness: Optional[np.ndarray]
    achieved: Inertia
    residual: float
    restarts_used: int
    residual_at_margin: float = float("nan")
    certification: Optional[Certification] = None
    best_restart: int = -1
    best_rank: int = 0
    notes: Tuple[str, ...] = field(default=())

    @property
    def found(self) -> bool:
        return self.status == "found"


def certify_witness(witness, dims: BipartiteDims, target: Inertia, zero_tol=DEFAULT_ZERO_TOL,
                    margin=1e-4, separation_ratio=1e4) -> Certification:
    """Re-check a candidate from scratch with the Jacobi eigensolver.

    Requirements: the state is PSD up to ``-1e-10 * ||M||_F``; the ``b``
    middle eigenvalues of ``M^Gamma`` satisfy ``|mu| <= zero_tol * ||M^Gamma||_F``;
    the others clear ``margin * ||M^Gamma||_F`` with the target signs; the
    ratio of the two bands is at least ``separation_ratio``; and the plain
    zero-band inertia equals the target.
    """
    a, b, c = target
    m = linalg.symmetrize(witness)
    reasons = []
    fro = linalg.frobenius(m)
    min_eig = float(linalg.eigvalsh(m)[0])
    if min_eig < -PSD_CERT_FLOOR * fro:
        reasons.append("state is not PSD")
    h = partial_transpose(m, dims)
    hn = linalg.frobenius(h)
    w = linalg.eig_hermitian(h).eigenvalues
    mu = w / hn if hn > 0 else w
    zero = mu[a:a + b]
    nonzero = np.concatenate([-mu[:a], mu[a + b:]])
    max_zero = float(np.max(np.abs(zero))) if b else 0.0
    min_nonzero = float(np.min(nonzero)) if a + c else float("inf")
    if b and max_zero > zero_tol:
        reasons.append("zero class exceeds zero_tol")
    if a + c and min_nonzero <= margin:
        reasons.append("nonzero class within margin")
    if b and a + c and min_nonzero < separation_ratio * max(max_zero, np.finfo(float).tiny):
        reasons.append("spectral gap below separation_ratio")
    achieved = classify(w, zero_tol * max(1.0, hn))
    if achieved != target:
        reasons.append(f"zero-band inertia {achieved} differs from target")
    return Certification(not reasons, achieved, min_eig, max_zero, min_nonzero, mu, tuple(reasons))


def compass_search(f, x, rng, step=0.5, min_step=1e-7, max_iters=1500, stop_value=0.0):
    """Opportunistic compass search; the poll order is shuffled every iteration.

    ``x`` is modified in place. Returns ``(x, f(x), iterations)``.
    """
    fx = f(x)
    p = x.size
    it = 0
    while it < max_iters and step > min_step and fx > stop_value:
        it += 1
        improved = False
        for k in rng.permutation(2 * p):
            i = k % p
            s = step if k < p else -step
            x[i] += s
            fy = f(x)
            if fy < fx:
                fx = fy
                improved = True
                break
            x[i] -= s
        if not improved:
            step *= 0.5
    return x, fx, it


def theta_to_factor(theta, d, r) -> np.ndarray:
    return theta[: d * r].reshape(d, r) + 1j * theta[d * r:].reshape(d, r)


def factor_to_state(lf) -> np.ndarray:
    m = lf @ lf.conj().T
    m = (m + m.conj().T) / 2
    return m / np.trace(m).real


def _spectrum(lf, dims, a, b):
    m = factor_to_state(lf)
    h = partial_transpose(m, dims)
    w, v = np.linalg.eigh(h)
    nrm = np.linalg.norm(h)
    d = dims.order
    err = float(np.max(np.abs(w[a:a + b]))) / nrm if b else 0.0
    lo = -w[a - 1] if a else np.inf
    hi = w[a + b] if a + b < d else np.inf
    return h, w, v, err, float(min(lo, hi)) / nrm


def polish(lf, dims: BipartiteDims, target: Inertia, iters=60, tol=1e-14):
    """Gauss-Newton on the compressed block ``W^dag M^Gamma W`` of the zero cluster.

    ``W`` holds the current eigenvectors of the ``b`` middle eigenvalues and is
    frozen within an iteration; the minimum-norm least-squares step in the
    factor entries drives that block to zero. A step is accepted only if it
    lowers the cluster size and keeps at least half of the spectral gap.
    Returns the polished factor.
    """
    a, b, _ = target
    if b == 0:
        return lf
    d, r = lf.shape
    m, n = dims.m, dims.n
    npar = 2 * d * r
    basis = np.zeros((npar, d * r), dtype=np.complex128)
    idx = np.arange(d * r)
    basis[idx, idx] = 1.0
    basis[d * r + idx, idx] = 1j
    basis = basis.reshape(npar, d, r)
    iu = np.triu_indices(b)
    lf = lf / np.sqrt(np.trace(lf @ lf.conj().T).real)
    h, w, v, err, gap = _spectrum(lf, dims, a, b)
    for _ in range(iters):
        if err < tol:
            break
        wz = v[:, a:a + b]
        res = wz.conj().T @ h @ wz
        dm = basis @ lf.conj().T[None]
        dm = dm + dm.conj().transpose(0, 2, 1)
        dh = dm.reshape(npar, m, n, m, n).transpose(0, 3, 2, 1, 4).reshape(npar, d, d)
        jac = np.einsum("ip,kij,jq->kpq", wz.conj(), dh, wz)[:, iu[0], iu[1]]
        jr = np.concatenate([jac.real, jac.imag], axis=1).T
        rr = np.concatenate([res[iu].real, res[iu].imag])
        step = np.linalg.lstsq(jr, -rr, rcond=None)[0]
        dl = theta_to_factor(step, d, r)
        t = 1.0
        while t > 1e-6:
            trial = lf + t * dl
            out = _spectrum(trial, dims, a, b)
            if out[3] < err and out[4] > 0.5 * gap:
                break
            t *= 0.5
        else:
            break
        lf = trial / np.sqrt(np.trace(trial @ trial.conj().T).real)
        h, w, v, err, gap = out
    return lf


@dataclass
class _Attempt:
    index: int
    rank: int
    residual: float
    residual_at_margin: float
    state: np.ndarray
    cert: Certification


def _restart(config: SearchConfig, index: int) -> _Attempt:
    dims, target = config.dims, config.target
    a, b, _ = target
    d = dims.order
    sched = config.rank_schedule
    r = sched[index % len(sched)]
    rng = task_rng(config.seed, index)
    theta = rng.standard_normal(2 * d * r)

    def f(th):
        return _core.hinge_objective(th, dims.m, dims.n, r, a, b, config.search_margin)

    theta, fx, _ = compass_search(f, theta, rng, max_iters=config.max_iters, stop_value=COMPASS_STOP)
    lf = theta_to_factor(theta, d, r)
    state = factor_to_state(lf)
    cert = certify_witness(state, dims, target, config.zero_tol, config.margin, config.separation_ratio)
    if not cert.ok and b and fx < POLISH_GATE:
        polished = factor_to_state(polish(lf, dims, target))
        pc = certify_witness(polished, dims, target, config.zero_tol, config.margin, config.separation_ratio)
        if pc.ok or pc.max_zero < cert.max_zero:
            state, cert = polished, pc
    mu = cert.spectrum
    at_margin = float(
        np.sum(np.maximum(mu[:a] + config.margin, 0.0) ** 2)
        + np.sum(mu[a:a + b] ** 2)
        + np.sum(np.maximum(config.margin - mu[a + b:], 0.0) ** 2)
    )
    return _Attempt(index, r, float(fx), at_margin, state, cert)


def target_inertia_search(config: SearchConfig, threads: Optional[int] = None) -> WitnessResult:
    """Search for a PSD state whose partial transpose has inertia ``config.target``.

    Restarts run in index order (or in ordered waves when threaded) and the
    first certified restart wins. Without one, the result carries the best
    residual across all restarts.
    """
    attempts = run_ordered(
        lambda i: _restart(config, i), config.n_restarts, stop=lambda at: at.cert.ok, threads=threads
    )
    last = attempts[-1]
    if last.cert.ok:
        return WitnessResult(
            "found", last.state, last.cert.achieved, last.residual_at_margin, len(attempts),
            last.residual_at_margin, last.cert, last.index, last.rank,
        )
    best = min(attempts, key=lambda at: (at.residual, at.index))
    return WitnessResult(
        "not-found", None, best.cert.achieved, best.residual, len(attempts),
        min(at.residual_at_margin for at in attempts), best.cert, best.index, best.rank,
        (NON_PROOF_NOTE,),
    )
