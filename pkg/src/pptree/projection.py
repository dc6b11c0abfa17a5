"""Projection pursuit index and its optimizer.

The separation index of a direction alpha is

    I(alpha) = 1 - (alpha' W alpha) / (alpha' (B + W) alpha)

where B is the between-group scatter and W the within-group scatter. I lies
in [0, 1]; it is 1 when groups collapse to distinct points along alpha and 0
when alpha carries no between-group variation. The penalized variant shrinks
the off-diagonal of W on standardized data,

    W_lam = (1 - lam) W + lam diag(W),

and uses B + W_lam in the denominator, which keeps the problem well posed
when predictors are many or collinear.

Maximizing I is a generalized Rayleigh quotient problem; the optimum is the
leading eigenvector of B v = theta (B + W_lam) v, computed here by reduction
to a symmetric eigenproblem via Cholesky (scipy.linalg.eigh). Data are
standardized per call for conditioning and the direction is mapped back to
the raw scale, which leaves the attained index unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .datasets import Dataset
from .errors import (
    DegenerateGroupingError,
    ProjectionError,
    SingularScatterError,
)

# Relative ridge added to B + W_lam before factorization.
_RIDGE = 1e-10
# Condition-number ceiling beyond which plain LDA refuses to proceed.
_COND_LIMIT = 1e12
# Denominator floor below which the index is undefined.
_DENOM_FLOOR = 1e-12


@dataclass(frozen=True)
class IndexConfig:
    """Which index to optimize: kind "lda" or "pda", with penalty lambda_.

    lambda_ must be 0 under LDA and in [0, 1) under PDA. The PDA default of
    0.1 is a mild, configurable choice.
    """

    kind: str = "lda"
    lambda_: float = 0.0

    def __post_init__(self):
        if self.kind not in ("lda", "pda"):
            raise ValueError(f"index kind must be 'lda' or 'pda', got {self.kind!r}")
        if self.kind == "lda" and self.lambda_ != 0.0:
            raise ValueError("lambda must be 0 under LDA")
        if not (0.0 <= self.lambda_ < 1.0):
            raise ValueError("lambda must lie in [0, 1)")


@dataclass(frozen=True)
class ScatterPair:
    """Between-group and within-group scatter matrices plus row count."""

    between: np.ndarray
    within: np.ndarray
    count: int


@dataclass(frozen=True)
class Projection:
    """A unit direction together with the index value it attains."""

    alpha: np.ndarray
    index_value: float


def class_scatter(data: Dataset) -> ScatterPair:
    """Between/within scatter of a labeled sample.

    B = sum_g n_g (xbar_g - xbar)(xbar_g - xbar)'
    W = sum_g sum_{i in g} (x_i - xbar_g)(x_i - xbar_g)'
    """
    X, y = data.X, data.y
    if data.n < 2:
        raise DegenerateGroupingError("need at least 2 observations")
    groups = np.unique(y)
    if len(groups) < 2:
        raise DegenerateGroupingError("degenerate grouping: fewer than 2 classes")
    grand = X.mean(axis=0)
    p = data.p
    B = np.zeros((p, p))
    W = np.zeros((p, p))
    for g in groups:
        Xg = X[y == g]
        mg = Xg.mean(axis=0)
        d = mg - grand
        B += len(Xg) * np.outer(d, d)
        R = Xg - mg
        W += R.T @ R
    return ScatterPair(between=B, within=W, count=data.n)


def _penalized_within(scatter: ScatterPair, cfg: IndexConfig) -> np.ndarray:
    W = scatter.within
    if cfg.kind == "lda" or cfg.lambda_ == 0.0:
        return W
    return (1.0 - cfg.lambda_) * W + cfg.lambda_ * np.diag(np.diag(W))


def index_value(alpha: np.ndarray, scatter: ScatterPair, cfg: IndexConfig) -> float:
    """Evaluate I(alpha) for a given scatter pair.

    Scale-invariant in alpha. Raises ProjectionError when alpha carries no
    variation at all (denominator below 1e-12).
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    if alpha.ndim != 1 or alpha.shape[0] != scatter.between.shape[0]:
        raise ValueError("alpha has wrong shape for this scatter")
    Wl = _penalized_within(scatter, cfg)
    num = float(alpha @ Wl @ alpha)
    den = float(alpha @ (scatter.between + Wl) @ alpha)
    if den < _DENOM_FLOOR:
        raise ProjectionError("projection annihilates all variation")
    val = 1.0 - num / den
    # clamp roundoff; the exact value lies in [0, 1]
    return min(1.0, max(0.0, val))


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip so the first coordinate of non-negligible magnitude is positive."""
    tol = 1e-12 * np.max(np.abs(v))
    for x in v:
        if abs(x) > tol:
            return v if x > 0 else -v
    return v


def _power_iteration(B: np.ndarray, M: np.ndarray, tol: float = 1e-12,
                     max_iter: int = 10000) -> np.ndarray:
    """Dominant eigenvector of M^-1 B, used when the Cholesky route fails."""
    p = B.shape[0]
    try:
        lu = scipy.linalg.lu_factor(M)
    except np.linalg.LinAlgError as exc:
        raise SingularScatterError(f"scatter factorization failed: {exc}") from exc
    v = np.ones(p) / np.sqrt(p)
    for _ in range(max_iter):
        w = scipy.linalg.lu_solve(lu, B @ v)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            break  # B v = 0: no between-group signal along any direction
        w = w / norm
        if min(np.linalg.norm(w - v), np.linalg.norm(w + v)) < tol:
            return w
        v = w
    return v


def optimal_projection(data: Dataset, cfg: IndexConfig) -> Projection:
    """Direction maximizing the index for this sample.

    The data are standardized per call (zero-variance columns are left at
    scale 1), the generalized eigenproblem is solved there, and the leading
    eigenvector is mapped back to the raw scale, unit-normalized, with the
    first nonzero coordinate made positive. The reported index_value is the
    attained maximum on the standardized scale; under LDA this equals the raw
    scale index of the returned direction (the maximum is invariant under
    invertible linear maps), under PDA the penalty itself is defined on the
    standardized scale.
    """
    X = data.X
    mu = X.mean(axis=0)
    sd = X.std(axis=0, ddof=1) if data.n > 1 else np.ones(data.p)
    scale = np.where(sd > 0, sd, 1.0)
    Xs = (X - mu) / scale
    scatter = class_scatter(Dataset(Xs, data.y))

    Wl = _penalized_within(scatter, cfg)
    M = scatter.between + Wl
    tr = float(np.trace(M))
    if tr <= 0.0:
        raise ProjectionError("projection annihilates all variation")
    if cfg.kind == "lda" and np.linalg.cond(M) > _COND_LIMIT:
        raise SingularScatterError(
            "combined scatter is numerically singular; apply PDA regularization"
            " (index kind 'pda' with lambda > 0)"
        )
    M = M + (_RIDGE * tr / data.p) * np.eye(data.p)
    try:
        vals, vecs = scipy.linalg.eigh(scatter.between, M)
        v = vecs[:, -1]
    except np.linalg.LinAlgError:
        v = _power_iteration(scatter.between, M)

    a_std = _canonical_sign(v / np.linalg.norm(v))
    idx = index_value(a_std, scatter, cfg)

    alpha = a_std / scale
    alpha = alpha / np.linalg.norm(alpha)
    alpha = _canonical_sign(alpha)
    alpha.setflags(write=False)
    return Projection(alpha=alpha, index_value=idx)
