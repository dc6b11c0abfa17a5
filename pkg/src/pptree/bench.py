"""Repeated holdout benchmarking of fitting variants over datasets.

Every (dataset, repetition) pair draws its own train/test split from a seed
derived by hashing (benchmark seed, dataset name, repetition index), so runs
are reproducible cell by cell, results do not depend on execution order, and
all models within a repetition see the same split. Failed fits are recorded
as failed cells rather than aborting the run. Parallelism is capped by the
MAX_PARALLELISM environment variable (default 1, sequential).
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .datasets import Dataset, load_csv
from .errors import PPTreeError
from .projection import IndexConfig
from .simulate import SimSpec, simulate
from .tree import VARIANTS, FitConfig, fit, predict_batch

DEFAULT_TRAIN_FRACTION = 2.0 / 3.0
DEFAULT_REPETITIONS = 200


@dataclass(frozen=True)
class DatasetSource:
    """A named dataset: either a simulation spec or a CSV path."""

    name: str
    sim: SimSpec | None = None
    path: str | None = None
    label_column: str = "label"

    def __post_init__(self):
        if (self.sim is None) == (self.path is None):
            raise ValueError(f"dataset {self.name!r}: give exactly one of sim or path")

    def load(self) -> Dataset:
        if self.sim is not None:
            return simulate(self.sim)
        return load_csv(self.path, self.label_column)


@dataclass(frozen=True)
class ModelSpec:
    name: str
    variant: str
    config: FitConfig = field(default_factory=FitConfig)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"model {self.name!r}: unknown variant {self.variant!r}")


@dataclass(frozen=True)
class BenchSpec:
    datasets: tuple[DatasetSource, ...]
    models: tuple[ModelSpec, ...]
    train_fraction: float = DEFAULT_TRAIN_FRACTION
    repetitions: int = DEFAULT_REPETITIONS
    seed: int = 0
    stratified: bool = False

    def __post_init__(self):
        if not self.datasets:
            raise ValueError("benchmark needs at least one dataset")
        if not self.models:
            raise ValueError("benchmark needs at least one model")
        names = [d.name for d in self.datasets]
        if len(set(names)) != len(names):
            raise ValueError("dataset names must be unique")
        names = [m.name for m in self.models]
        if len(set(names)) != len(names):
            raise ValueError("model names must be unique")
        if not (0.0 < self.train_fraction < 1.0):
            raise ValueError("train_fraction must lie in (0, 1)")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass(frozen=True)
class BenchRow:
    """Aggregate over repetitions for one (dataset, model) cell."""

    dataset: str
    model: str
    mean_error: float | None
    sd_error: float | None
    repetitions: int
    failures: int


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]
    seed: int
    train_fraction: float
    repetitions: int
    stratified: bool


def error_rate(predicted, truth) -> float:
    """Fraction of mismatches between two equally long label vectors."""
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.shape != truth.shape or predicted.ndim != 1 or predicted.size == 0:
        raise ValueError("predicted and truth must be equally long, non-empty vectors")
    return float(np.mean(predicted != truth))


def holdout_split(data: Dataset, train_fraction: float = DEFAULT_TRAIN_FRACTION,
                  seed: int = 0, stratified: bool = False) -> tuple[Dataset, Dataset]:
    """Random train/test partition.

    The training size is floor(n * train_fraction) (per class when
    stratified). Both sides must come out non-empty. Row order within each
    side follows the original dataset.
    """
    if not (0.0 < train_fraction < 1.0):
        raise ValueError("train_fraction must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    n = data.n
    if stratified:
        picks = []
        for g in np.unique(data.y):
            idx = np.nonzero(data.y == g)[0]
            k = math.floor(len(idx) * train_fraction)
            picks.append(idx[rng.permutation(len(idx))[:k]])
        train_idx = np.sort(np.concatenate(picks))
    else:
        n_train = math.floor(n * train_fraction)
        train_idx = np.sort(rng.permutation(n)[:n_train])
    if len(train_idx) < 1 or n - len(train_idx) < 1:
        raise ValueError(
            f"split of {n} rows at fraction {train_fraction} leaves a side empty"
        )
    mask = np.zeros(n, dtype=bool)
    mask[train_idx] = True
    return (
        Dataset(data.X[mask], data.y[mask], data.label_names),
        Dataset(data.X[~mask], data.y[~mask], data.label_names),
    )


def cell_seed(seed: int, dataset_name: str, repetition: int) -> int:
    """Split seed for one benchmark cell: a stable hash of its coordinates."""
    digest = hashlib.sha256(f"{seed}|{dataset_name}|{repetition}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _parallelism() -> int:
    raw = os.environ.get("MAX_PARALLELISM", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_benchmark(spec: BenchSpec) -> BenchReport:
    """Run the full grid. Output is identical for any parallelism setting."""
    loaded = [(src.name, src.load()) for src in spec.datasets]
    n_models = len(spec.models)
    reps = spec.repetitions
    # errors[d][r][m]: test error or None for a failed fit
    errors: list[list[list[float | None]]] = [
        [[None] * n_models for _ in range(reps)] for _ in loaded
    ]

    def run_cell(d: int, r: int) -> None:
        name, data = loaded[d]
        try:
            train, test = holdout_split(
                data, spec.train_fraction, cell_seed(spec.seed, name, r),
                spec.stratified,
            )
        except (PPTreeError, ValueError):
            return  # every model in this cell stays failed
        for m, model in enumerate(spec.models):
            try:
                fitted = fit(train, model.config, model.variant)
                errors[d][r][m] = error_rate(predict_batch(fitted, test.X), test.y)
            except (PPTreeError, ValueError):
                pass

    tasks = [(d, r) for d in range(len(loaded)) for r in range(reps)]
    workers = _parallelism()
    if workers == 1:
        for d, r in tasks:
            run_cell(d, r)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda t: run_cell(*t), tasks))

    rows = []
    for d, (name, _) in enumerate(loaded):
        for m, model in enumerate(spec.models):
            vals = [errors[d][r][m] for r in range(reps) if errors[d][r][m] is not None]
            if vals:
                mean = float(np.mean(vals))
                sd = float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
            else:
                mean = None
                sd = None
            rows.append(
                BenchRow(
                    dataset=name,
                    model=model.name,
                    mean_error=mean,
                    sd_error=sd,
                    repetitions=reps,
                    failures=reps - len(vals),
                )
            )
    return BenchReport(
        rows=tuple(rows),
        seed=spec.seed,
        train_fraction=spec.train_fraction,
        repetitions=reps,
        stratified=spec.stratified,
    )


def report_to_csv(report: BenchReport) -> str:
    """Long-format CSV, one row per (dataset, model), floats via repr."""
    out = ["dataset,model,mean_error,sd_error,repetitions,failures"]
    for r in report.rows:
        mean = "" if r.mean_error is None else repr(r.mean_error)
        sd = "" if r.sd_error is None else repr(r.sd_error)
        out.append(f"{r.dataset},{r.model},{mean},{sd},{r.repetitions},{r.failures}")
    return "\n".join(out) + "\n"


def report_to_json(report: BenchReport) -> str:
    doc = {
        "seed": report.seed,
        "train_fraction": report.train_fraction,
        "repetitions": report.repetitions,
        "stratified": report.stratified,
        "rows": [
            {
                "dataset": r.dataset,
                "model": r.model,
                "mean_error": r.mean_error,
                "sd_error": r.sd_error,
                "repetitions": r.repetitions,
                "failures": r.failures,
            }
            for r in report.rows
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _model_from_doc(doc: dict) -> ModelSpec:
    known = {
        "name", "variant", "rule", "index", "lambda", "min_node_size",
        "entropy_threshold", "max_depth", "seed",
    }
    unknown = set(doc) - known
    if unknown:
        raise ValueError(f"unknown model keys: {sorted(unknown)}")
    kind = doc.get("index", "lda")
    lam = doc.get("lambda", 0.1 if kind == "pda" else 0.0)
    cfg = FitConfig(
        index=IndexConfig(kind=kind, lambda_=lam),
        rule=doc.get("rule", 1),
        min_node_size=doc.get("min_node_size", 10),
        entropy_threshold=doc.get("entropy_threshold", 0.01),
        max_depth=doc.get("max_depth", 30),
        seed=doc.get("seed", 0),
    )
    return ModelSpec(name=doc["name"], variant=doc["variant"], config=cfg)


def _dataset_from_doc(doc: dict) -> DatasetSource:
    if "sim" in doc:
        return DatasetSource(name=doc["name"], sim=SimSpec(**doc["sim"]))
    return DatasetSource(
        name=doc["name"],
        path=doc["path"],
        label_column=doc.get("label_column", "label"),
    )


def spec_from_json(text: str) -> BenchSpec:
    """Parse a benchmark spec document (see README for the schema)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"benchmark spec is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("benchmark spec must be a JSON object")
    try:
        datasets = tuple(_dataset_from_doc(d) for d in doc["datasets"])
        models = tuple(_model_from_doc(m) for m in doc["models"])
    except KeyError as exc:
        raise ValueError(f"benchmark spec is missing {exc}") from exc
    except TypeError as exc:
        raise ValueError(f"benchmark spec is malformed: {exc}") from exc
    return BenchSpec(
        datasets=datasets,
        models=models,
        train_fraction=doc.get("train_fraction", DEFAULT_TRAIN_FRACTION),
        repetitions=doc.get("repetitions", DEFAULT_REPETITIONS),
        seed=doc.get("seed", 0),
        stratified=doc.get("stratified", False),
    )
