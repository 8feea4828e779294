"""Closed-form proximal and projection operators for the mode subproblems.

The four operators act on the mode-m unfolding and correspond to the four
terms of the split objective: the elementwise l1 norm, the matrix nuclear
norm, and the indicator functions of the l-infinity and spectral balls
centered on the backbone unfolding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import svd

__all__ = [
    "ConstraintCenter",
    "prox_l1",
    "prox_nuclear",
    "project_linf_ball",
    "project_spectral_ball",
]


@dataclass(frozen=True)
class ConstraintCenter:
    """Center and radii of the two constraint balls for one mode.

    ``c`` is the mode-m unfolding of the backbone tensor; ``lam`` is the
    entrywise (l-infinity) radius and ``tau`` the spectral radius.
    """

    c: np.ndarray
    lam: float
    tau: float

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")

    def check_shape(self, v: np.ndarray) -> None:
        if v.shape != self.c.shape:
            raise ValueError(f"operand shape {v.shape} does not match center {self.c.shape}")


def prox_l1(v: np.ndarray, gamma: float) -> np.ndarray:
    """Soft thresholding: the prox of ``gamma * ||.||_1`` at ``v``."""
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return np.sign(v) * np.maximum(np.abs(v) - gamma, 0.0)


def prox_nuclear(v: np.ndarray, gamma: float) -> np.ndarray:
    """Singular-value soft thresholding: the prox of ``gamma * ||.||_*`` at ``v``."""
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    f = svd(v)
    return (f.u * np.maximum(f.s - gamma, 0.0)) @ f.v.T


def project_linf_ball(v: np.ndarray, ctr: ConstraintCenter) -> np.ndarray:
    """Euclidean projection onto ``{w : ||w - c||_inf <= lambda}`` (entrywise clamp)."""
    ctr.check_shape(v)
    return np.clip(v, ctr.c - ctr.lam, ctr.c + ctr.lam)


def project_spectral_ball(v: np.ndarray, ctr: ConstraintCenter) -> np.ndarray:
    """Euclidean projection onto ``{w : ||w - c||_spec <= tau}``.

    Clips the singular values of ``v - c`` at ``tau`` and re-centers.
    """
    ctr.check_shape(v)
    f = svd(v - ctr.c)
    if f.s.size and f.s[0] <= ctr.tau:
        return v
    return ctr.c + (f.u * np.minimum(f.s, ctr.tau)) @ f.v.T
