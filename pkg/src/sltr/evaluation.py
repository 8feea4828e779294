"""Metrics, cross-validation, and recovery-error bound calculators."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import rng
from .data import Dataset
from .linalg import singular_values
from .solver import SolverConfig, fit, predict
from .tensor import Tensor, unfold

__all__ = [
    "CvReport",
    "BoundInputs",
    "mse",
    "coefficient_error",
    "auc",
    "fold_indices",
    "kfold_cv",
    "theorem_bound",
    "three_mode_bound",
    "unfolding_ranks",
    "default_grid",
]


@dataclass(frozen=True)
class CvReport:
    """Grid search result: one mean validation MSE per (lambda, tau, epsilon) cell."""

    grid: tuple
    per_cell: tuple
    selected: tuple
    fold_seed: int


@dataclass(frozen=True)
class BoundInputs:
    """Inputs to the recovery-error bounds.

    ``orth_rank`` is the orthogonal-rank bound R used by the general bound;
    ``mode_ranks`` are the per-mode unfolding ranks used by the three-mode
    bound.  Either may be omitted when the corresponding bound is not used.
    """

    lam: float
    tau: float
    dims: tuple
    orth_rank: int | None = None
    mode_ranks: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(p) for p in self.dims))
        if self.lam < 0 or self.tau < 0:
            raise ValueError("lambda and tau must be non-negative")
        if self.orth_rank is not None and self.orth_rank < 1:
            raise ValueError(f"orth_rank must be >= 1, got {self.orth_rank}")
        if self.mode_ranks is not None:
            ranks = tuple(int(r) for r in self.mode_ranks)
            object.__setattr__(self, "mode_ranks", ranks)
            if len(ranks) != len(self.dims):
                raise ValueError("need one rank per mode")
            p_total = math.prod(self.dims)
            for r, p in zip(ranks, self.dims):
                if not 0 <= r <= min(p, p_total // p):
                    raise ValueError(f"rank {r} impossible for a mode of size {p}")


def mse(y, yhat) -> float:
    """Mean squared residual."""
    y = np.asarray(y, dtype=np.float64).ravel()
    yhat = np.asarray(yhat, dtype=np.float64).ravel()
    if y.size != yhat.size:
        raise ValueError(f"length mismatch: {y.size} vs {yhat.size}")
    return float(np.mean((y - yhat) ** 2))


def coefficient_error(w_hat: Tensor, w_star: Tensor) -> float:
    """Relative Frobenius error ``||w_hat - w_star||_F / ||w_star||_F``."""
    if w_hat.dims != w_star.dims:
        raise ValueError(f"dims mismatch: {w_hat.dims} vs {w_star.dims}")
    denom = float(np.linalg.norm(w_star.data))
    if denom == 0.0:
        raise ValueError("coefficient error undefined for a zero reference tensor")
    return float(np.linalg.norm(w_hat.data - w_star.data)) / denom


def auc(scores, labels) -> float:
    """Area under the ROC curve (rank statistic, ties counted half)."""
    scores = np.asarray(scores, dtype=np.float64).ravel()
    labels = np.asarray(labels).ravel()
    if scores.size != labels.size:
        raise ValueError(f"length mismatch: {scores.size} vs {labels.size}")
    uniq = np.unique(labels)
    if not np.isin(uniq, (0, 1)).all():
        raise ValueError(f"labels must be binary 0/1, got values {uniq}")
    if uniq.size != 2:
        raise ValueError("both classes must be present")
    pos = labels == 1
    n_pos = int(np.count_nonzero(pos))
    n_neg = scores.size - n_pos
    ranks = _average_ranks(scores)
    u_stat = float(np.sum(ranks[pos])) - n_pos * (n_pos + 1) / 2.0
    return u_stat / (n_pos * n_neg)


def _average_ranks(v: np.ndarray) -> np.ndarray:
    order = np.argsort(v, kind="stable")
    sorted_v = v[order]
    boundaries = np.flatnonzero(np.diff(sorted_v) != 0) + 1
    starts = np.concatenate(([0], boundaries))
    stops = np.concatenate((boundaries, [v.size]))
    ranks = np.empty(v.size)
    for a, b in zip(starts, stops):
        ranks[order[a:b]] = 0.5 * (a + b + 1)
    return ranks


def fold_indices(n: int, k: int, fold_seed: int):
    """Seeded shuffle split into k contiguous folds (first ``n % k`` get the extra)."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    perm = rng.shuffled_indices(n, n, fold_seed, rng.STREAM_FOLDS)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for f in range(k):
        size = base + (1 if f < extra else 0)
        folds.append(perm[start : start + size])
        start += size
    return folds


def kfold_cv(ds: Dataset, grid, cfg_template: SolverConfig, k: int = 5, fold_seed: int = 0,
             threads: int | None = None) -> CvReport:
    """Grid search by k-fold cross-validation on mean validation MSE.

    Each grid cell is a ``(lambda, tau, epsilon)`` triple; the remaining
    solver parameters come from ``cfg_template``.  Selection takes the cell
    with the smallest mean MSE, breaking ties by the lexicographically
    smallest triple, so the winner does not depend on grid order.
    """
    cells = [(float(l), float(t), float(e)) for l, t, e in grid]
    if not cells:
        raise ValueError("empty parameter grid")
    folds = fold_indices(ds.n, k, fold_seed)
    all_idx = np.arange(ds.n)
    splits = []
    for f in folds:
        train = ds.subset(np.setdiff1d(all_idx, f))
        val = ds.subset(f)
        splits.append((train, val))
    per_cell = []
    for lam, tau, eps in cells:
        cfg = replace(cfg_template, lam=lam, tau=tau, epsilon=eps)
        scores = [
            mse(val.y, predict(fit(train, cfg, threads=threads).w_hat, val.samples()))
            for train, val in splits
        ]
        per_cell.append(float(np.mean(scores)))
    selected = min(zip(per_cell, cells))[1]
    return CvReport(grid=tuple(cells), per_cell=tuple(per_cell), selected=selected,
                    fold_seed=fold_seed)


def theorem_bound(b: BoundInputs) -> float:
    """General recovery bound ``4 sqrt(2) (lam sqrt(prod dims) + tau sqrt(R))``."""
    if b.orth_rank is None:
        raise ValueError("orth_rank required for the general bound")
    return 4.0 * math.sqrt(2.0) * (
        b.lam * math.sqrt(math.prod(b.dims)) + b.tau * math.sqrt(b.orth_rank)
    )


def three_mode_bound(b: BoundInputs) -> float:
    """Sharper three-mode bound using per-mode unfolding ranks.

    ``4 sqrt(2) (lam sqrt(prod dims) + tau R')`` with
    ``R' = max_m sqrt(r_m * min of the other two ranks)``.
    """
    if len(b.dims) != 3:
        raise ValueError(f"three-mode bound needs a 3-mode shape, got {len(b.dims)} modes")
    if b.mode_ranks is None:
        raise ValueError("mode_ranks required for the three-mode bound")
    r1, r2, r3 = b.mode_ranks
    r_prime = max(
        math.sqrt(r1 * min(r2, r3)),
        math.sqrt(r2 * min(r1, r3)),
        math.sqrt(r3 * min(r1, r2)),
    )
    return 4.0 * math.sqrt(2.0) * (b.lam * math.sqrt(math.prod(b.dims)) + b.tau * r_prime)


def unfolding_ranks(t: Tensor, rtol: float = 1e-8):
    """Numerical rank of every mode unfolding (threshold ``rtol * s_max``)."""
    ranks = []
    for m in range(1, t.order + 1):
        s = singular_values(unfold(t, m))
        ranks.append(int(np.count_nonzero(s > rtol * s[0])) if s[0] > 0 else 0)
    return tuple(ranks)


def default_grid():
    """Default (lambda, tau, epsilon) grid: 9x9 log-spaced radii, 3 ridge values."""
    radii = np.logspace(-3, 1, 9)
    eps = (0.1, 1.0, 10.0)
    return [(float(l), float(t), float(e)) for l in radii for t in radii for e in eps]
