"""Dense linear-algebra primitives and the ridge plug-in backbone."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import NumericalError
from .tensor import Tensor, tensorize, unfold

__all__ = [
    "SvdFactors",
    "Backbone",
    "svd",
    "singular_values",
    "spectral_norm",
    "nuclear_norm",
    "tensor_nuclear_norm",
    "backbone",
]


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD ``a = u @ diag(s) @ v.T`` with ``s`` non-increasing, >= 0."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.s) @ self.v.T


@dataclass(frozen=True)
class Backbone:
    """Ridge plug-in estimate around which the constraint balls are centered."""

    tensor: Tensor
    epsilon: float


def svd(a: np.ndarray) -> SvdFactors:
    """Thin SVD of a matrix.

    Uses the LAPACK divide-and-conquer driver and falls back to the slower
    QR-based driver if it fails to converge; both are deterministic for a
    fixed input.
    """
    a = _as_matrix(a)
    if not np.all(np.isfinite(a)):
        raise NumericalError("SVD requires finite entries")
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError:
        try:
            u, s, vh = scipy.linalg.svd(a, full_matrices=False, lapack_driver="gesvd")
        except Exception as exc:  # pragma: no cover - needs a pathological input
            raise NumericalError(f"SVD failed to converge on {a.shape} matrix: {exc}") from exc
    return SvdFactors(u=u, s=s, v=vh.T)


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values only (non-increasing), skipping the factor computation."""
    a = _as_matrix(a)
    if not np.all(np.isfinite(a)):
        raise NumericalError("SVD requires finite entries")
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError:
        try:
            return scipy.linalg.svd(a, compute_uv=False, lapack_driver="gesvd")
        except Exception as exc:  # pragma: no cover - needs a pathological input
            raise NumericalError(f"SVD failed to converge on {a.shape} matrix: {exc}") from exc


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value."""
    return float(singular_values(a)[0])


def nuclear_norm(a: np.ndarray) -> float:
    """Sum of singular values of a matrix."""
    return float(np.sum(singular_values(a)))


def tensor_nuclear_norm(t: Tensor) -> float:
    """Average of the nuclear norms of all mode unfoldings.

    Requires order >= 2; for a 1-D tensor the single unfolding is a row
    vector whose nuclear norm silently degenerates to the Euclidean norm,
    so that case is rejected.
    """
    if t.order < 2:
        raise ValueError("tensor nuclear norm requires an order >= 2 tensor")
    return math.fsum(nuclear_norm(unfold(t, m)) for m in range(1, t.order + 1)) / t.order


def backbone(x: np.ndarray, y: np.ndarray, epsilon: float, dims) -> Backbone:
    """Ridge plug-in point ``tensorize((X'X + eps I)^-1 X'y)``.

    Solves the P x P primal system when P <= N and the mathematically
    identical N x N dual (Woodbury) system ``X'(XX' + eps I)^-1 y`` when
    P > N, which is the cheap direction in the high-dimensional regime.
    """
    x = _as_matrix(x)
    y = np.asarray(y, dtype=np.float64).ravel()
    dims = tuple(int(p) for p in dims)
    n, p = x.shape
    if y.size != n:
        raise ValueError(f"design has {n} rows but y has {y.size} entries")
    if p != math.prod(dims):
        raise ValueError(f"design has {p} columns but prod(dims) = {math.prod(dims)}")
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise NumericalError("backbone requires finite design and responses")
    try:
        if p <= n:
            w = np.linalg.solve(x.T @ x + epsilon * np.eye(p), x.T @ y)
        else:
            w = x.T @ np.linalg.solve(x @ x.T + epsilon * np.eye(n), y)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"ridge system singular despite epsilon={epsilon}: {exc}") from exc
    return Backbone(tensor=tensorize(w, dims), epsilon=float(epsilon))


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a
