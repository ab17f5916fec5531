"""Bipartite structure: partial transpose, inertia, product-vector detection.

Vectors of ``C^m (x) C^n`` are indexed ``i * n + k`` with ``i`` on system A
(dimension ``m``) and ``k`` on system B. The partial transpose acts on A by
default, swapping the ``n x n`` blocks ``(i, j)`` and ``(j, i)``.
"""
import itertools
from collections import namedtuple
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from . import linalg
from .errors import DependentInputs, DimensionMismatch, ZeroVector

DEFAULT_ZERO_TOL = 1e-9


@dataclass(frozen=True)
class BipartiteDims:
    m: int
    n: int

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n or self.m < 1 or self.n < 1:
            raise ValueError(f"dimensions must be positive integers, got {self.m}x{self.n}")

    @property
    def order(self) -> int:
        return self.m * self.n

    @classmethod
    def parse(cls, text: str) -> "BipartiteDims":
        """Read ``"3x4"`` (also accepts ``"3X4"`` and ``"3,4"``)."""
        parts = text.lower().replace(",", "x").split("x")
        if len(parts) != 2:
            raise ValueError(f"cannot parse dimensions {text!r}; expected MxN")
        return cls(int(parts[0]), int(parts[1]))

    def check(self, order: int) -> None:
        if order != self.order:
            raise DimensionMismatch(f"matrix order {order} does not match dims {self}")

    def __str__(self):
        return f"{self.m}x{self.n}"


class Inertia(namedtuple("_Inertia", "neg zero pos")):
    """Counts of negative, zero and positive eigenvalues, in that order."""

    __slots__ = ()

    def __new__(cls, neg, zero, pos):
        vals = tuple(int(x) for x in (neg, zero, pos))
        if min(vals) < 0:
            raise ValueError(f"inertia counts must be nonnegative, got {vals}")
        return super().__new__(cls, *vals)

    @property
    def order(self) -> int:
        return self.neg + self.zero + self.pos

    @classmethod
    def parse(cls, text: str) -> "Inertia":
        parts = text.strip().strip("()").split(",")
        if len(parts) != 3:
            raise ValueError(f"cannot parse inertia {text!r}; expected a,b,c")
        return cls(*(int(p) for p in parts))

    def __str__(self):
        return f"({self.neg},{self.zero},{self.pos})"


@dataclass(frozen=True)
class ProductVector:
    """Unit factors with ``scale * kron(beta, alpha)`` equal to the source vector.

    The first non-negligible entry of ``beta`` is real positive.
    """

    beta: np.ndarray
    alpha: np.ndarray
    scale: complex = field(default=1.0, compare=False)

    def vector(self) -> np.ndarray:
        return np.kron(self.beta, self.alpha)

    @classmethod
    def from_factors(cls, beta, alpha) -> "ProductVector":
        beta = np.asarray(beta, dtype=np.complex128)
        alpha = np.asarray(alpha, dtype=np.complex128)
        nb, na = np.linalg.norm(beta), np.linalg.norm(alpha)
        if nb == 0 or na == 0:
            raise ZeroVector("product factors must be nonzero")
        beta, alpha = beta / nb, alpha / na
        idx = np.flatnonzero(np.abs(beta) > 1e-12)
        ph = beta[idx[0]] / abs(beta[idx[0]])
        return cls(beta / ph, alpha * ph, complex(nb * na))


def partial_transpose(m, dims: BipartiteDims, system: str = "A") -> np.ndarray:
    """Transpose one tensor factor. This is an exact entry permutation."""
    a = linalg.as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix of shape {a.shape} is not square")
    dims.check(a.shape[0])
    t = a.reshape(dims.m, dims.n, dims.m, dims.n)
    if system == "A":
        t = t.transpose(2, 1, 0, 3)
    elif system == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"system must be 'A' or 'B', got {system!r}")
    return np.ascontiguousarray(t.reshape(dims.order, dims.order))


def classify(eigenvalues, tau: float) -> Inertia:
    """Count eigenvalues below ``-tau``, within ``[-tau, tau]`` and above ``tau``."""
    w = np.asarray(eigenvalues)
    neg = int(np.sum(w < -tau))
    pos = int(np.sum(w > tau))
    return Inertia(neg, len(w) - neg - pos, pos)


def inertia(m, zero_tol: float = DEFAULT_ZERO_TOL) -> Inertia:
    """Inertia with zero band ``zero_tol * max(1, ||M||_F)``."""
    a = linalg.symmetrize(m)
    tau = zero_tol * max(1.0, linalg.frobenius(a))
    return classify(linalg.eigvalsh(a), tau)


def _as_vector(v, dims):
    v = np.asarray(v, dtype=np.complex128).ravel()
    if v.shape[0] != dims.order:
        raise DimensionMismatch(f"vector length {v.shape[0]} does not match dims {dims}")
    return v


def is_product_vector(v, dims: BipartiteDims, tol: float = 1e-8) -> Optional[ProductVector]:
    """Return the rank-one factors of ``v`` if its reshaping is rank one, else None."""
    v = _as_vector(v, dims)
    if np.linalg.norm(v) == 0:
        raise ZeroVector("the zero vector has no product factorization")
    dec = linalg.svd(v.reshape(dims.m, dims.n))
    s = dec.singular_values
    if len(s) > 1 and s[1] > tol * s[0]:
        return None
    pv = ProductVector.from_factors(dec.u[:, 0], dec.v[0, :])
    # recover the complex coefficient against the source vector
    coeff = np.vdot(pv.vector(), v)
    return ProductVector(pv.beta, pv.alpha, complex(coeff))


class PencilProducts(NamedTuple):
    """Product vectors of a two-dimensional span.

    ``line`` is True when every member of the span is a product vector; the
    two generators are then returned as representatives.
    """

    vectors: List[ProductVector]
    line: bool


def _same_ray(u, v):
    return abs(np.vdot(u, v)) >= (1 - 1e-8) * np.linalg.norm(u) * np.linalg.norm(v)


def pencil_product_vectors(v1, v2, dims: BipartiteDims, tol: float = 1e-7) -> PencilProducts:
    """Find the product vectors in ``span{v1, v2}``.

    Members ``v1 + lam * v2`` are product exactly when every 2x2 minor of the
    reshaped matrix ``A + lam * B`` vanishes. Each minor is a quadratic in
    ``lam``; the one with the largest leading coefficient supplies candidate
    roots (falling back to the largest linear coefficient), and the remaining
    minors filter them. ``v2`` alone stands for ``lam = inf``.
    """
    v1 = _as_vector(v1, dims)
    v2 = _as_vector(v2, dims)
    if linalg.rank(np.stack([v1, v2], axis=1), 1e-9) < 2:
        raise DependentInputs("the two vectors are linearly dependent")
    v1 = v1 / np.linalg.norm(v1)
    v2 = v2 / np.linalg.norm(v2)
    a = v1.reshape(dims.m, dims.n)
    b = v2.reshape(dims.m, dims.n)
    quads = [
        (i, j, k, l)
        for i, j in itertools.combinations(range(dims.m), 2)
        for k, l in itertools.combinations(range(dims.n), 2)
    ]
    i, j, k, l = (np.array(x, dtype=int) for x in zip(*quads)) if quads else ([],) * 4
    c2 = b[i, k] * b[j, l] - b[i, l] * b[j, k]
    c1 = a[i, k] * b[j, l] + b[i, k] * a[j, l] - a[i, l] * b[j, k] - b[i, l] * a[j, k]
    c0 = a[i, k] * a[j, l] - a[i, l] * a[j, k]

    if not quads or max(np.abs(c0).max(), np.abs(c1).max(), np.abs(c2).max()) <= tol:
        gens = [is_product_vector(v, dims, tol) for v in (v1, v2)]
        return PencilProducts([g for g in gens if g is not None], True)

    roots = []
    q = int(np.argmax(np.abs(c2)))
    if abs(c2[q]) > tol:
        roots = list(np.roots([c2[q], c1[q], c0[q]]))
    else:
        q = int(np.argmax(np.abs(c1)))
        if abs(c1[q]) > tol:
            roots = [-c0[q] / c1[q]]

    candidates = []
    for lam in roots:
        resid = np.abs(c0 + c1 * lam + c2 * lam * lam)
        if resid.max() <= tol * (1 + abs(lam)) ** 2:
            candidates.append(v1 + lam * v2)
    if np.abs(c2).max() <= tol:
        candidates.append(v2)

    found = []
    for cand in candidates:
        pv = is_product_vector(cand, dims, tol)
        if pv is None:
            continue
        if not any(_same_ray(pv.vector(), f.vector()) for f in found):
            found.append(pv)
    return PencilProducts(found, False)
