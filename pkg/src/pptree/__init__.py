"""Projection pursuit classification trees.

Oblique decision trees whose splits come from a class-separation projection
index, with entropy-refined variants, synthetic benchmark scenarios,
decision-boundary diagnostics, a CLI and a small HTTP service.
"""

from .bench import (
    BenchReport,
    BenchSpec,
    DatasetSource,
    ModelSpec,
    error_rate,
    holdout_split,
    run_benchmark,
)
from .boundary import (
    BoundaryGrid,
    boundary_grid,
    boundary_sample,
    border_points,
    data_bbox,
    pca_reduce,
)
from .datasets import Dataset, load_csv, save_csv
from .projection import (
    IndexConfig,
    Projection,
    ScatterPair,
    class_scatter,
    index_value,
    optimal_projection,
)
from .simulate import SimSpec, sim_basic, sim_mixture, sim_outlier, simulate
from .split_rules import GroupStats, split_value, summarize_group
from .tree import (
    FitConfig,
    FittedTree,
    Internal,
    Leaf,
    best_entropy_split,
    depth,
    deserialize,
    entropy,
    fit,
    fit_axis_baseline,
    fit_mod1,
    fit_mod2,
    fit_original,
    load_model,
    n_internal,
    n_leaves,
    predict,
    predict_batch,
    relabel_supergroups,
    save_model,
    serialize,
)

__version__ = "0.1.0"

__all__ = [
    "BenchReport", "BenchSpec", "BoundaryGrid", "Dataset", "DatasetSource",
    "FitConfig", "FittedTree", "GroupStats", "IndexConfig", "Internal",
    "Leaf", "ModelSpec", "Projection", "ScatterPair", "SimSpec",
    "best_entropy_split", "boundary_grid", "boundary_sample",
    "border_points", "class_scatter", "data_bbox", "depth", "deserialize",
    "entropy", "error_rate", "fit", "fit_axis_baseline", "fit_mod1",
    "fit_mod2", "fit_original", "holdout_split", "index_value", "load_csv",
    "load_model", "n_internal", "n_leaves",
    "optimal_projection", "pca_reduce", "predict", "predict_batch",
    "relabel_supergroups", "run_benchmark", "save_csv", "save_model",
    "serialize", "sim_basic", "sim_mixture", "sim_outlier", "simulate",
    "split_value", "summarize_group",
]
