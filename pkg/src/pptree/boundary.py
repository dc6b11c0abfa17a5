"""Decision-boundary diagnostics: prediction grids, border extraction, PCA.

For 2-D feature spaces the region map is a lattice of predictions over the
data bounding box (expanded 10% per side); border cells are those whose
label differs from a 4-neighbor. Higher-dimensional models are probed with
uniform random samples instead, marking points whose nearest sampled
neighbors disagree. Everything here is exact bookkeeping over predict();
no smoothing, no plotting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .datasets import Dataset
from .tree import FittedTree, predict_batch

DEFAULT_RESOLUTION = 201
_MARGIN = 0.1


def data_bbox(data, margin: float = _MARGIN) -> tuple[tuple[float, float], ...]:
    """Per-dimension (low, high) of the data, expanded by margin per side.

    A dimension with zero range is padded by 0.5 on each side so the box
    never collapses.
    """
    X = data.X if isinstance(data, Dataset) else np.asarray(data, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1:
        raise ValueError("need a non-empty (n, p) matrix to take a bounding box")
    lows = X.min(axis=0)
    highs = X.max(axis=0)
    spans = highs - lows
    pad = np.where(spans > 0, margin * spans, 0.5)
    return tuple((float(lo - p), float(hi + p)) for lo, hi, p in zip(lows, highs, pad))


def _resolve_bbox(region, n_features: int) -> tuple[tuple[float, float], ...]:
    if isinstance(region, Dataset) or (
        isinstance(region, np.ndarray) and region.ndim == 2
    ):
        box = data_bbox(region)
    else:
        box = tuple((float(lo), float(hi)) for lo, hi in region)
        for lo, hi in box:
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValueError(f"invalid bounding box interval ({lo}, {hi})")
    if len(box) != n_features:
        raise ValueError(
            f"bounding box has {len(box)} dimensions, model expects {n_features}"
        )
    return box


@dataclass(frozen=True)
class BoundaryGrid:
    """Predictions over a 2-D lattice.

    labels[i, j] is the prediction at (x1 axis point i, x2 axis point j);
    flattening row-major matches the CSV row order. border marks cells whose
    label differs from any 4-neighbor.
    """

    bbox: tuple[tuple[float, float], tuple[float, float]]
    resolution: int
    labels: np.ndarray
    border: np.ndarray

    def axis(self, dim: int) -> np.ndarray:
        lo, hi = self.bbox[dim]
        return np.linspace(lo, hi, self.resolution)


def boundary_grid(tree: FittedTree, region, resolution: int = DEFAULT_RESOLUTION) -> BoundaryGrid:
    """Region map of a 2-feature model over a dataset or explicit bbox."""
    if tree.n_features != 2:
        raise ValueError(
            "grids are only defined for 2-feature models; use boundary_sample "
            "for higher-dimensional probing"
        )
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    box = _resolve_bbox(region, 2)
    xs = np.linspace(box[0][0], box[0][1], resolution)
    ys = np.linspace(box[1][0], box[1][1], resolution)
    pts = np.column_stack([np.repeat(xs, resolution), np.tile(ys, resolution)])
    labels = predict_batch(tree, pts).reshape(resolution, resolution)

    border = np.zeros_like(labels, dtype=bool)
    vert = labels[:-1, :] != labels[1:, :]
    border[:-1, :] |= vert
    border[1:, :] |= vert
    horiz = labels[:, :-1] != labels[:, 1:]
    border[:, :-1] |= horiz
    border[:, 1:] |= horiz
    return BoundaryGrid(bbox=(box[0], box[1]), resolution=resolution,
                        labels=labels, border=border)


def border_points(grid: BoundaryGrid) -> np.ndarray:
    """(k, 2) coordinates of border cells, in row-major order."""
    idx = np.argwhere(grid.border)
    if idx.size == 0:
        return np.empty((0, 2))
    return np.column_stack([grid.axis(0)[idx[:, 0]], grid.axis(1)[idx[:, 1]]])


def grid_to_csv(grid: BoundaryGrid) -> str:
    """Delimited dump: x1,x2,label,is_border in row-major lattice order."""
    xs = grid.axis(0)
    ys = grid.axis(1)
    lines = ["x1,x2,label,is_border"]
    res = grid.resolution
    for i in range(res):
        for j in range(res):
            lines.append(
                f"{float(xs[i])!r},{float(ys[j])!r},"
                f"{grid.labels[i, j]},{int(grid.border[i, j])}"
            )
    return "\n".join(lines) + "\n"


def boundary_sample(tree: FittedTree, region, n_samples: int = 2000, seed: int = 0,
                    neighbors: int = 8):
    """Uniform random probe of a model of any dimension.

    Returns (points, labels, border) where border marks points whose label
    disagrees with at least one of their `neighbors` nearest sampled points.
    """
    if n_samples < 2:
        raise ValueError("need at least 2 sample points")
    box = _resolve_bbox(region, tree.n_features)
    lows = np.array([lo for lo, _ in box])
    highs = np.array([hi for _, hi in box])
    rng = np.random.default_rng(seed)
    pts = lows + rng.random((n_samples, len(box))) * (highs - lows)
    labels = predict_batch(tree, pts)
    k = min(neighbors, n_samples - 1)
    _, nbr = cKDTree(pts).query(pts, k=k + 1)
    # first neighbor is the point itself
    border = np.any(labels[nbr[:, 1:]] != labels[:, None], axis=1)
    return pts, labels, border


@dataclass(frozen=True)
class PcaReduction:
    """Leading principal directions of a sample covariance."""

    components: np.ndarray        # (p, k), orthonormal columns
    scores: np.ndarray            # (n, k), centered data projected
    variance_explained: np.ndarray  # (k,), shares of total variance
    center: np.ndarray            # (p,) column means


def pca_reduce(data, k: int = 2) -> PcaReduction:
    """Project onto the k leading eigenvectors of the sample covariance.

    Components carry a canonical sign (first sizable coordinate positive);
    variance_explained is non-increasing and sums to at most 1.
    """
    X = data.X if isinstance(data, Dataset) else np.asarray(data, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("need at least 2 rows for a covariance")
    n, p = X.shape
    limit = min(n - 1, p)
    if not (1 <= k <= limit):
        raise ValueError(f"k must lie in 1..{limit} for this sample, got {k}")
    center = X.mean(axis=0)
    Xc = X - center
    cov = (Xc.T @ Xc) / (n - 1)
    total = float(np.trace(cov))
    if total <= 0:
        raise ValueError("data has no variance to reduce")
    vals, vecs = np.linalg.eigh(cov)
    order = np.argsort(vals)[::-1][:k]
    comps = vecs[:, order].copy()
    for col in range(k):
        v = comps[:, col]
        tol = 1e-12 * np.max(np.abs(v))
        for x in v:
            if abs(x) > tol:
                if x < 0:
                    comps[:, col] = -v
                break
    explained = np.maximum(vals[order], 0.0) / total
    return PcaReduction(
        components=comps,
        scores=Xc @ comps,
        variance_explained=explained,
        center=center,
    )
