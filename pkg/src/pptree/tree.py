"""Projection pursuit classification trees.

Four fitting variants share one tree shape (oblique threshold splits,
``direction . x < cutoff`` routes left):

* ``fit_original``   one split per pair of super-classes, recursing on the
  class partition until every leaf holds a single class.
* ``fit_mod1``       like the original, but the boundary at each node is
  re-derived from only the two closest classes across the super-class gap,
  which keeps the cutoff near the true between-class gap when group sizes
  or spreads are unbalanced.
* ``fit_mod2``       entropy-driven multi-way refinement: nodes split where
  the weighted child entropy drops the most, so a class may occupy several
  leaves. Handles classes that are not linearly separable as one block.
* ``fit_axis_baseline``  same stopping logic as fit_mod2 but splits are
  restricted to coordinate axes; the comparison baseline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .datasets import Dataset
from .errors import (
    DegenerateGroupingError,
    ModelFormatError,
    NoCandidateSplitsError,
    NoSeparationError,
    ProjectionError,
)
from .projection import IndexConfig, optimal_projection
from .split_rules import VALID_RULES, GroupStats, split_value, summarize_group

VARIANTS = ("original", "mod1", "mod2", "axis")

_FORMAT_VERSION = 1


@dataclass(frozen=True)
class FitConfig:
    """Fitting knobs shared by all variants.

    min_node_size, entropy_threshold and max_depth only stop the entropy
    variants early; the class-partition variants are bounded by G-1 splits
    on their own. Defaults (10 observations, 0.01 nats, depth 30) are mild
    enough to be invisible on clean data.
    """

    index: IndexConfig = field(default_factory=IndexConfig)
    rule: int = 1
    min_node_size: int = 10
    entropy_threshold: float = 0.01
    max_depth: int = 30
    seed: int = 0

    def __post_init__(self):
        if self.rule not in VALID_RULES:
            raise ValueError(f"rule must be in 1..8, got {self.rule}")
        if self.min_node_size < 1:
            raise ValueError("min_node_size must be >= 1")
        if self.entropy_threshold < 0:
            raise ValueError("entropy_threshold must be >= 0")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


@dataclass(frozen=True)
class Leaf:
    """Terminal node: a class label plus why growth stopped there."""

    label: int
    reason: str = "pure"


@dataclass(frozen=True)
class Internal:
    """Oblique split: observations with direction . x < cutoff go left."""

    direction: np.ndarray
    cutoff: float
    rule: int | str
    left: "Leaf | Internal"
    right: "Leaf | Internal"


@dataclass(frozen=True)
class FittedTree:
    root: Leaf | Internal
    n_features: int
    classes: tuple[int, ...]
    variant: str
    config: FitConfig
    notes: tuple[str, ...] = ()


def n_leaves(tree: FittedTree) -> int:
    return sum(1 for node in _walk(tree.root) if isinstance(node, Leaf))


def n_internal(tree: FittedTree) -> int:
    return sum(1 for node in _walk(tree.root) if isinstance(node, Internal))


def depth(tree: FittedTree) -> int:
    def d(node):
        if isinstance(node, Leaf):
            return 0
        return 1 + max(d(node.left), d(node.right))

    return d(tree.root)


def _walk(node):
    yield node
    if isinstance(node, Internal):
        yield from _walk(node.left)
        yield from _walk(node.right)


def _majority(y: np.ndarray) -> int:
    # ties resolve to the smallest class id (argmax takes the first max)
    return int(np.bincount(y).argmax())


# ---------------------------------------------------------------------------
# entropy machinery


def entropy(counts) -> float:
    """Shannon entropy (natural log) of a count vector; 0 log 0 is 0."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total <= 0:
        raise DegenerateGroupingError("entropy of an empty subset")
    frac = counts[counts > 0] / total
    return float(-(frac * np.log(frac)).sum())


def best_entropy_split(z, y) -> tuple[float, float]:
    """Cutoff minimizing the size-weighted child entropy of z < c vs z >= c.

    Candidates are the midpoints between consecutive distinct sorted values.
    Ties in the combined entropy resolve to the smallest cutoff. Returns
    (cutoff, combined_entropy). Raises NoCandidateSplitsError when fewer
    than two distinct values are present.
    """
    z = np.asarray(z, dtype=np.float64)
    y = np.asarray(y)
    n = z.shape[0]
    if n < 2 or z.ndim != 1:
        raise NoCandidateSplitsError("need at least 2 projected values")
    order = np.argsort(z, kind="stable")
    zs = z[order]
    _, yi = np.unique(y[order], return_inverse=True)
    g = yi.max() + 1

    bnd = np.nonzero(zs[:-1] != zs[1:])[0]
    if bnd.size == 0:
        raise NoCandidateSplitsError("all projected values are identical")
    candidates = (zs[bnd] + zs[bnd + 1]) / 2.0

    onehot = np.zeros((n, g), dtype=np.int64)
    onehot[np.arange(n), yi] = 1
    cum = np.cumsum(onehot, axis=0)
    left = cum[bnd]
    right = cum[-1] - left
    n_left = (bnd + 1).astype(np.float64)
    n_right = n - n_left

    def side_entropy(cnt, size):
        frac = cnt / size[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(cnt > 0, frac * np.log(frac), 0.0)
        return -terms.sum(axis=1)

    combined = (
        n_left * side_entropy(left, n_left) + n_right * side_entropy(right, n_right)
    ) / n
    k = int(np.argmin(combined))  # first minimum: smallest cutoff wins ties
    return float(candidates[k]), float(combined[k])


# ---------------------------------------------------------------------------
# super-class relabeling (class-partition variants)


def relabel_supergroups(means: dict[int, float]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split classes into two super-classes around the widest mean pair.

    The pair with the largest projected-mean difference is the extreme pair
    (lowest mean, highest mean); classes strictly below their midpoint form
    the first super-class, the rest the second. Raises NoSeparationError
    when all projected means coincide.
    """
    if len(means) < 2:
        raise DegenerateGroupingError("need at least 2 classes to relabel")
    lo = min(means.values())
    hi = max(means.values())
    if lo == hi:
        raise NoSeparationError("projected class means are all equal")
    mid = 0.5 * (lo + hi)
    g1 = tuple(sorted(g for g, m in means.items() if m < mid))
    g2 = tuple(sorted(g for g, m in means.items() if m >= mid))
    return g1, g2


def _class_means(z: np.ndarray, y: np.ndarray) -> dict[int, float]:
    return {int(g): float(z[y == g].mean()) for g in np.unique(y)}


def _closest_cross_pair(means: dict[int, float], g1: tuple[int, ...],
                        g2: tuple[int, ...]) -> tuple[int, int]:
    """The (a, b) pair spanning the super-class boundary with the smallest
    projected-mean difference; ties take the smallest ids."""
    best = None
    best_gap = np.inf
    for a in g1:
        for b in g2:
            gap = abs(means[a] - means[b])
            if gap < best_gap:
                best_gap = gap
                best = (a, b)
    return best


# ---------------------------------------------------------------------------
# fitting


def fit(data: Dataset, cfg: FitConfig | None = None, variant: str = "original") -> FittedTree:
    """Dispatch to one of the four fitting variants."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    cfg = cfg or FitConfig()
    if variant == "original":
        return fit_original(data, cfg)
    if variant == "mod1":
        return fit_mod1(data, cfg)
    if variant == "mod2":
        return fit_mod2(data, cfg)
    return fit_axis_baseline(data, cfg)


def fit_original(data: Dataset, cfg: FitConfig | None = None) -> FittedTree:
    """Class-partition tree: one oblique split per super-class pair."""
    return _fit_partition(data, cfg or FitConfig(), closest_pair=False, variant="original")


def fit_mod1(data: Dataset, cfg: FitConfig | None = None) -> FittedTree:
    """Class-partition tree with boundaries from the two closest classes.

    Identical to fit_original when only two classes meet at a node.
    """
    return _fit_partition(data, cfg or FitConfig(), closest_pair=True, variant="mod1")


def _fit_partition(data: Dataset, cfg: FitConfig, closest_pair: bool,
                   variant: str) -> FittedTree:
    classes = data.classes
    if len(classes) < 2:
        raise DegenerateGroupingError("need at least 2 classes to fit")
    if data.n < 2 * len(classes):
        raise ValueError(
            f"need at least 2 observations per class ({2 * len(classes)}), have {data.n}"
        )
    notes: list[str] = []
    root = _grow_partition(data.X, data.y, cfg, closest_pair, 0, notes)
    return FittedTree(
        root=root,
        n_features=data.p,
        classes=tuple(int(c) for c in classes),
        variant=variant,
        config=cfg,
        notes=tuple(notes),
    )


def _grow_partition(X, y, cfg, closest_pair, level, notes):
    present = np.unique(y)
    if len(present) == 1:
        return Leaf(int(present[0]), "pure")
    if level >= cfg.max_depth:
        notes.append(f"depth limit {cfg.max_depth} reached with classes {present.tolist()}")
        return Leaf(_majority(y), "max_depth")
    try:
        proj = optimal_projection(Dataset(X, y), cfg.index)
        z = X @ proj.alpha
        means = _class_means(z, y)
        g1, g2 = relabel_supergroups(means)

        if closest_pair and len(present) > 2:
            a, b = _closest_cross_pair(means, g1, g2)
            pair_mask = np.isin(y, (a, b))
            pair_proj = optimal_projection(Dataset(X[pair_mask], y[pair_mask]), cfg.index)
            direction = pair_proj.alpha
            zz = X @ direction
            stats_a = summarize_group(zz[y == a])
            stats_b = summarize_group(zz[y == b])
            if stats_a.mean <= stats_b.mean:
                low_stats, high_stats, low_set, high_set = stats_a, stats_b, g1, g2
            else:
                low_stats, high_stats, low_set, high_set = stats_b, stats_a, g2, g1
        else:
            super_y = np.where(np.isin(y, g1), 1, 2)
            super_proj = optimal_projection(Dataset(X, super_y), cfg.index)
            direction = super_proj.alpha
            zz = X @ direction
            stats_1 = summarize_group(zz[super_y == 1])
            stats_2 = summarize_group(zz[super_y == 2])
            if stats_1.mean <= stats_2.mean:
                low_stats, high_stats, low_set, high_set = stats_1, stats_2, g1, g2
            else:
                low_stats, high_stats, low_set, high_set = stats_2, stats_1, g2, g1

        cutoff = split_value(cfg.rule, low_stats, high_stats)
    except (ProjectionError, NoSeparationError, DegenerateGroupingError) as exc:
        notes.append(f"classes {present.tolist()} left unsplit: {exc}")
        return Leaf(_majority(y), "degenerate")

    left_mask = np.isin(y, low_set)
    left = _grow_partition(X[left_mask], y[left_mask], cfg, closest_pair, level + 1, notes)
    right = _grow_partition(X[~left_mask], y[~left_mask], cfg, closest_pair, level + 1, notes)
    return Internal(direction, float(cutoff), cfg.rule, left, right)


def fit_mod2(data: Dataset, cfg: FitConfig | None = None) -> FittedTree:
    """Entropy-refined tree; a class may occupy several leaves."""
    return _fit_entropy(data, cfg or FitConfig(), axis_only=False, variant="mod2")


def fit_axis_baseline(data: Dataset, cfg: FitConfig | None = None) -> FittedTree:
    """Axis-aligned counterpart of fit_mod2 (comparison baseline)."""
    return _fit_entropy(data, cfg or FitConfig(), axis_only=True, variant="axis")


def _fit_entropy(data: Dataset, cfg: FitConfig, axis_only: bool, variant: str) -> FittedTree:
    if data.n < 2:
        raise ValueError("need at least 2 observations to fit")
    notes: list[str] = []
    root = _grow_entropy(data.X, data.y, cfg, axis_only, 0, notes)
    return FittedTree(
        root=root,
        n_features=data.p,
        classes=tuple(int(c) for c in data.classes),
        variant=variant,
        config=cfg,
        notes=tuple(notes),
    )


def _best_axis_split(X, y):
    """Best single-feature entropy split; None when no column has 2 values."""
    best = None
    for j in range(X.shape[1]):
        try:
            c, combined = best_entropy_split(X[:, j], y)
        except NoCandidateSplitsError:
            continue
        if best is None or combined < best[2]:
            best = (j, c, combined)
    return best


def _grow_entropy(X, y, cfg, axis_only, level, notes):
    present = np.unique(y)
    if len(present) == 1:
        return Leaf(int(present[0]), "pure")
    if len(y) < cfg.min_node_size:
        return Leaf(_majority(y), "min_size")
    if level >= cfg.max_depth:
        return Leaf(_majority(y), "max_depth")

    direction = None
    if not axis_only:
        try:
            proj = optimal_projection(Dataset(X, y), cfg.index)
            z = X @ proj.alpha
            cutoff, combined = best_entropy_split(z, y)
            direction = proj.alpha
        except (ProjectionError, NoCandidateSplitsError, DegenerateGroupingError) as exc:
            notes.append(f"projection failed ({exc}); using an axis split instead")
    if direction is None:
        axis = _best_axis_split(X, y)
        if axis is None:
            notes.append(f"classes {present.tolist()} left unsplit: no candidate splits")
            return Leaf(_majority(y), "degenerate")
        j, cutoff, combined = axis
        direction = np.zeros(X.shape[1])
        direction[j] = 1.0
        direction.setflags(write=False)
        z = X @ direction

    parent = entropy(np.bincount(y))
    if parent - combined < cfg.entropy_threshold:
        return Leaf(_majority(y), "entropy_gain")

    left_mask = z < cutoff
    left = _grow_entropy(X[left_mask], y[left_mask], cfg, axis_only, level + 1, notes)
    right = _grow_entropy(X[~left_mask], y[~left_mask], cfg, axis_only, level + 1, notes)
    return Internal(direction, float(cutoff), "entropy", left, right)


# ---------------------------------------------------------------------------
# prediction


def predict(tree: FittedTree, x) -> int:
    """Class id for a single observation."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (tree.n_features,):
        raise ValueError(
            f"observation has shape {x.shape}, model expects ({tree.n_features},)"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError("observation contains non-finite values")
    node = tree.root
    while isinstance(node, Internal):
        node = node.left if float(node.direction @ x) < node.cutoff else node.right
    return node.label


def predict_batch(tree: FittedTree, X) -> np.ndarray:
    """Class ids for each row of X; identical to predict applied rowwise."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != tree.n_features:
        raise ValueError(
            f"matrix has shape {X.shape}, model expects (n, {tree.n_features})"
        )
    out = np.empty(X.shape[0], dtype=np.int64)

    def route(node, idx):
        if isinstance(node, Leaf):
            out[idx] = node.label
            return
        mask = (X[idx] @ node.direction) < node.cutoff
        route(node.left, idx[mask])
        route(node.right, idx[~mask])

    route(tree.root, np.arange(X.shape[0]))
    return out


# ---------------------------------------------------------------------------
# serialization


def _node_doc(node):
    if isinstance(node, Leaf):
        return {"label": node.label, "reason": node.reason}
    return {
        "alpha": [float(a) for a in node.direction],
        "c": node.cutoff,
        "rule": node.rule,
        "left": _node_doc(node.left),
        "right": _node_doc(node.right),
    }


def serialize(tree: FittedTree) -> str:
    """JSON document for a fitted tree; floats survive a round trip exactly."""
    cfg = tree.config
    doc = {
        "version": _FORMAT_VERSION,
        "variant": tree.variant,
        "classes": list(tree.classes),
        "n_features": tree.n_features,
        "config": {
            "index": {"kind": cfg.index.kind, "lambda": cfg.index.lambda_},
            "rule": cfg.rule,
            "min_node_size": cfg.min_node_size,
            "entropy_threshold": cfg.entropy_threshold,
            "max_depth": cfg.max_depth,
            "seed": cfg.seed,
        },
        "notes": list(tree.notes),
        "root": _node_doc(tree.root),
    }
    return json.dumps(doc)


def _parse_node(doc, n_features):
    if not isinstance(doc, dict):
        raise ModelFormatError("malformed node: expected an object")
    if "label" in doc:
        label = doc["label"]
        if not isinstance(label, int):
            raise ModelFormatError("leaf label must be an integer")
        return Leaf(label, str(doc.get("reason", "pure")))
    for key in ("alpha", "c", "rule", "left", "right"):
        if key not in doc:
            raise ModelFormatError(f"internal node is missing {key!r}")
    alpha = np.asarray(doc["alpha"], dtype=np.float64)
    if alpha.shape != (n_features,):
        raise ModelFormatError(
            f"node direction has length {alpha.size}, expected {n_features}"
        )
    alpha.setflags(write=False)
    rule = doc["rule"]
    if rule != "entropy" and rule not in VALID_RULES:
        raise ModelFormatError(f"unknown split rule {rule!r}")
    return Internal(
        alpha,
        float(doc["c"]),
        rule,
        _parse_node(doc["left"], n_features),
        _parse_node(doc["right"], n_features),
    )


def deserialize(text: str) -> FittedTree:
    """Rebuild a tree from its JSON document; rejects anything malformed."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise ModelFormatError(f"not a valid model document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    version = doc.get("version")
    if version != _FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version: {version!r}")
    for key in ("variant", "classes", "n_features", "root"):
        if key not in doc:
            raise ModelFormatError(f"model document is missing {key!r}")
    if doc["variant"] not in VARIANTS:
        raise ModelFormatError(f"unknown variant {doc['variant']!r}")
    n_features = doc["n_features"]
    if not isinstance(n_features, int) or n_features < 1:
        raise ModelFormatError("n_features must be a positive integer")
    classes = doc["classes"]
    if not isinstance(classes, list) or not all(isinstance(c, int) for c in classes):
        raise ModelFormatError("classes must be a list of integers")

    cfg_doc = doc.get("config", {})
    idx_doc = cfg_doc.get("index", {})
    try:
        cfg = FitConfig(
            index=IndexConfig(
                kind=idx_doc.get("kind", "lda"),
                lambda_=idx_doc.get("lambda", 0.0),
            ),
            rule=cfg_doc.get("rule", 1),
            min_node_size=cfg_doc.get("min_node_size", 10),
            entropy_threshold=cfg_doc.get("entropy_threshold", 0.01),
            max_depth=cfg_doc.get("max_depth", 30),
            seed=cfg_doc.get("seed", 0),
        )
    except ValueError as exc:
        raise ModelFormatError(f"invalid config block: {exc}") from exc

    return FittedTree(
        root=_parse_node(doc["root"], n_features),
        n_features=n_features,
        classes=tuple(classes),
        variant=doc["variant"],
        config=cfg,
        notes=tuple(str(s) for s in doc.get("notes", ())),
    )


def save_model(tree: FittedTree, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(tree))


def load_model(path: str) -> FittedTree:
    with open(path) as fh:
        return deserialize(fh.read())
