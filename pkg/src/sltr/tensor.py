"""Dense M-order tensors and the unfold/fold/vectorize algebra.

Conventions used throughout the package:

* A *tensor* is an immutable :class:`Tensor`: a dimension vector
  ``(p_1, ..., p_M)`` plus a flat float64 array in the canonical layout.
* The canonical flat layout is generalized column-major (mode-1 fastest):
  the zero-based element ``(i_1, ..., i_M)`` is stored at offset
  ``sum_m i_m * prod_{l<m} p_l``.  This makes the mode-1 unfolding a plain
  reshape.
* A *matrix* is a 2-D float64 ``numpy.ndarray``.
* Mode indices are 1-based: ``m`` ranges over ``1..M``.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "Tensor",
    "unfold",
    "fold",
    "vectorize",
    "tensorize",
    "inner",
    "frobenius_norm",
    "l1_norm",
    "linf_norm",
]


class Tensor:
    """Immutable dense tensor of 64-bit reals.

    Parameters
    ----------
    dims : sequence of int
        Strictly positive mode sizes ``(p_1, ..., p_M)``, M >= 1.
    data : array_like
        ``prod(dims)`` reals in the canonical (mode-1-fastest) layout.
    """

    __slots__ = ("dims", "data")

    def __init__(self, dims, data):
        dims = tuple(int(p) for p in dims)
        if len(dims) < 1:
            raise ValueError("tensor order must be at least 1")
        if any(p <= 0 for p in dims):
            raise ValueError(f"dims must be strictly positive, got {dims}")
        arr = np.array(data, dtype=np.float64, copy=True).ravel()
        if arr.size != math.prod(dims):
            raise ValueError(
                f"data length {arr.size} does not match prod(dims) = {math.prod(dims)}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @property
    def order(self) -> int:
        """Number of modes M."""
        return len(self.dims)

    @property
    def size(self) -> int:
        """Total element count prod(p_m)."""
        return self.data.size

    @classmethod
    def from_array(cls, arr) -> "Tensor":
        """Build a tensor from an M-dimensional array (any memory order)."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim < 1:
            arr = arr.reshape(1)
        return cls(arr.shape, arr.ravel(order="F"))

    @classmethod
    def zeros(cls, dims) -> "Tensor":
        return cls(dims, np.zeros(math.prod(tuple(dims))))

    def to_array(self) -> np.ndarray:
        """View as an M-dimensional numpy array (read-only)."""
        return self.data.reshape(self.dims, order="F")

    def __repr__(self):
        return f"Tensor(dims={self.dims})"


def _check_mode(m: int, order: int) -> None:
    if not 1 <= m <= order:
        raise ValueError(f"mode {m} out of range for order-{order} tensor")


def unfold(t: Tensor, m: int) -> np.ndarray:
    """Mode-m unfolding (matricization) of ``t``.

    Returns the ``p_m x prod_{m' != m} p_m'`` matrix whose columns are the
    mode-m fibers.  Element ``(i_1, ..., i_M)`` lands in row ``i_m`` and
    column ``j = sum_{k != m} i_k * J_k`` with ``J_k = prod_{l<k, l != m} p_l``.
    """
    _check_mode(m, t.order)
    arr = t.to_array()
    return np.moveaxis(arr, m - 1, 0).reshape(t.dims[m - 1], -1, order="F")


def fold(a: np.ndarray, m: int, dims) -> Tensor:
    """Inverse of :func:`unfold`: rebuild the tensor from its mode-m unfolding."""
    dims = tuple(int(p) for p in dims)
    _check_mode(m, len(dims))
    a = np.asarray(a, dtype=np.float64)
    rest = dims[: m - 1] + dims[m:]
    expected = (dims[m - 1], math.prod(rest))
    if a.ndim != 2 or a.shape != expected:
        raise ValueError(f"expected a {expected} matrix for mode {m} of {dims}, got {a.shape}")
    arr = np.moveaxis(a.reshape((dims[m - 1],) + rest, order="F"), 0, m - 1)
    return Tensor.from_array(arr)


def vectorize(t: Tensor) -> np.ndarray:
    """Canonical flat vector of ``t`` (read-only view of the stored data)."""
    return t.data


def tensorize(v, dims) -> Tensor:
    """Inverse of :func:`vectorize`: reshape a flat vector into a tensor."""
    dims = tuple(int(p) for p in dims)
    v = np.asarray(v, dtype=np.float64).ravel()
    if v.size != math.prod(dims):
        raise ValueError(f"vector length {v.size} does not match prod(dims) = {math.prod(dims)}")
    return Tensor(dims, v)


def inner(a: Tensor, b: Tensor) -> float:
    """Inner product sum_i a_i * b_i.

    Summed with :func:`math.fsum` (correctly rounded), so the value does not
    depend on platform or BLAS reduction order.
    """
    if a.dims != b.dims:
        raise ValueError(f"dims mismatch: {a.dims} vs {b.dims}")
    return math.fsum(np.multiply(a.data, b.data))


def frobenius_norm(t: Tensor) -> float:
    """sqrt of the sum of squared entries."""
    return float(np.linalg.norm(t.data))


def l1_norm(t: Tensor) -> float:
    """Sum of absolute entries."""
    return float(np.sum(np.abs(t.data)))


def linf_norm(t: Tensor) -> float:
    """Largest absolute entry."""
    return float(np.max(np.abs(t.data)))
