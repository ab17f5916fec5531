"""Numerical core with a compiled backend and a pure-Python fallback.

The compiled extension ``_jacobi`` is used when it imports; otherwise the
numpy implementation in ``_pure`` takes over. Setting ``INERTIA_LAB_PURE=1``
forces the fallback.

Kernels
-------
eigh(a, vectors, tol, max_sweeps)
    Cyclic complex Jacobi; returns ``(w, v, sweeps)`` with ``sweeps == -1``
    on hitting the cap. Eigenvalues come back unsorted.
eigvalsh_batch(stack)
    Sorted eigenvalues of a ``(k, d, d)`` stack.
hinge_objective(theta, m, n, r, neg, zero, margin)
    Witness-search penalty on the partial-transpose spectrum.
"""
import importlib
import os

__all__ = ["BACKEND", "eigh", "eigvalsh_batch", "hinge_objective", "load_backend", "available_backends"]


def load_backend(name):
    """Return the kernel module for ``"compiled"`` or ``"python"``."""
    if name == "compiled":
        return importlib.import_module("inertia_lab._core._jacobi")
    if name == "python":
        return importlib.import_module("inertia_lab._core._pure")
    raise ValueError(f"unknown backend {name!r}")


def available_backends():
    names = ["python"]
    try:
        load_backend("compiled")
    except ImportError:
        return names
    return ["compiled"] + names


if os.environ.get("INERTIA_LAB_PURE") == "1":
    _impl = load_backend("python")
    BACKEND = "python"
else:
    try:
        _impl = load_backend("compiled")
        BACKEND = "compiled"
    except ImportError:
        _impl = load_backend("python")
        BACKEND = "python"

eigh = _impl.eigh
eigvalsh_batch = _impl.eigvalsh_batch
hinge_objective = _impl.hinge_objective
