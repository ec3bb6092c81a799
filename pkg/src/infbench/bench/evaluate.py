"""Grid evaluation and benchmark artifacts.

Every (model, dataset) cell gets its own seed stream derived from the base
seed and the two id hashes, so cells can run serially or on any number of
worker processes and still produce identical numbers.  The machine-readable
artifact is canonical JSON (sorted keys, repr floats) and therefore
byte-identical across schedules; its timestamp honors SOURCE_DATE_EPOCH so a
pinned environment reproduces the whole file exactly.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core import derive_seed, resolve_seed, stable_text_hash
from ..errors import EvaluationError, InfbenchError, InsufficientClassMembers
from ..metasynthesis import stratified_folds
from .ingest import ingest_csv
from .scoring import (
    Leaderboard,
    ScoreTable,
    aggregate_minmax,
    average_rank,
    build_leaderboard,
    normalize_table,
    render_leaderboard,
)

log = logging.getLogger("infbench.bench")

RESULTS_FILENAME = "results.json"
TABLE_FILENAME = "leaderboard.txt"


@dataclass
class EvalProtocol:
    folds: int = 5
    seed: int | None = None
    metric: str = "accuracy"

    def __post_init__(self):
        if self.folds < 2:
            raise InfbenchError(f"folds must be >= 2, got {self.folds}")
        if self.metric != "accuracy":
            raise InfbenchError(f"unsupported metric {self.metric!r}")


def cell_seed(base_seed: int, model_id: str, dataset_id: str) -> int:
    """Independent stream for one grid cell, from the two id hashes."""
    s = derive_seed(base_seed, stable_text_hash(model_id))
    return derive_seed(s, stable_text_hash(dataset_id))


def _cross_validate(prototype, data, folds: int, seed: int,
                    model_id: str, dataset_id: str):
    """Stratified k-fold accuracies for one cell. Returns a list of floats."""
    y_idx = data.classes.encode(data.y)
    fold_of = stratified_folds(y_idx, folds, derive_seed(seed, 0))
    accuracies = []
    for k in range(folds):
        test = fold_of == k
        train = ~test
        clone = prototype.fresh_clone(seed=derive_seed(seed, 1 + k))
        try:
            clone.fit(data.X[train], data.y[train])
            pred = clone.predict(data.X[test])
        except Exception as e:
            raise EvaluationError(model_id, dataset_id, k, e) from e
        hits = sum(1 for p, t in zip(pred, data.y[test]) if str(p) == str(t))
        accuracies.append(hits / int(test.sum()))
    return accuracies


def evaluate_model_on_dataset(prototype, data, protocol: EvalProtocol, *,
                              model_id: str | None = None,
                              dataset_id: str | None = None) -> float:
    """Mean stratified k-fold accuracy of one model on one dataset."""
    model_id = model_id if model_id is not None else prototype.kind
    dataset_id = dataset_id if dataset_id is not None else data.dataset_id
    seed = cell_seed(resolve_seed(protocol.seed), model_id, dataset_id)
    accs = _cross_validate(prototype, data, protocol.folds, seed,
                           model_id, dataset_id)
    return sum(accs) / len(accs)


def _eval_cell_task(args):
    """Worker-side cell evaluation; exceptions come back as strings."""
    model_id, prototype, dataset_id, data, folds, seed = args
    try:
        accs = _cross_validate(prototype, data, folds, seed, model_id, dataset_id)
        return model_id, dataset_id, accs, None
    except Exception as e:
        return model_id, dataset_id, None, f"{type(e).__name__}: {e}"


@dataclass
class BenchResult:
    protocol: EvalProtocol
    base_seed: int
    model_ids: list
    generators: dict
    datasets: list  # (dataset_id, rows, features, classes) in registry order
    fold_accuracies: dict  # (model_id, dataset_id) -> list of per-fold floats
    failures: list  # dicts: model, dataset, error
    table: ScoreTable
    leaderboard: Leaderboard | None

    @property
    def ok(self) -> bool:
        return not self.failures


def run_benchmark(specs, models, protocol: EvalProtocol, workers: int = 1) -> BenchResult:
    """Evaluate every model on every registry dataset.

    ``models`` maps model_id -> (prototype, generator tag).  A model that
    fails any cell is excluded from the leaderboard; its failures are kept in
    the result.  Ingest problems are raised immediately (they invalidate the
    run), cell-level failures are collected.
    """
    if workers < 1:
        raise InfbenchError(f"workers must be >= 1, got {workers}")
    base_seed = resolve_seed(protocol.seed)
    encoded = {}
    datasets = []
    for spec in specs:
        data = ingest_csv(spec)
        encoded[spec.dataset_id] = data
        datasets.append(
            (spec.dataset_id, data.X.shape[0], data.X.shape[1], data.classes.size)
        )

    model_ids = list(models)
    dataset_ids = [spec.dataset_id for spec in specs]
    tasks = [
        (m, models[m][0], d, encoded[d], protocol.folds,
         cell_seed(base_seed, m, d))
        for m in model_ids
        for d in dataset_ids
    ]

    outcomes = []
    if workers == 1:
        for t in tasks:
            outcomes.append(_eval_cell_task(t))
            log.info("evaluated %s on %s", t[0], t[2])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for out in pool.map(_eval_cell_task, tasks):
                outcomes.append(out)
                log.info("evaluated %s on %s", out[0], out[1])

    fold_accuracies = {}
    failures = []
    for model_id, dataset_id, accs, error in outcomes:
        if error is None:
            fold_accuracies[(model_id, dataset_id)] = accs
        else:
            failures.append(
                {"model": model_id, "dataset": dataset_id, "error": error}
            )

    failed_models = {f["model"] for f in failures}
    surviving = [m for m in model_ids if m not in failed_models]
    table = ScoreTable(model_ids=surviving, dataset_ids=dataset_ids)
    for m in surviving:
        for d in dataset_ids:
            accs = fold_accuracies[(m, d)]
            table.raw[(m, d)] = sum(accs) / len(accs)

    leaderboard = None
    if len(surviving) >= 2:
        leaderboard = build_leaderboard(
            table, {m: models[m][1] for m in surviving}
        )
    return BenchResult(
        protocol=protocol,
        base_seed=base_seed,
        model_ids=model_ids,
        generators={m: models[m][1] for m in model_ids},
        datasets=datasets,
        fold_accuracies=fold_accuracies,
        failures=failures,
        table=table,
        leaderboard=leaderboard,
    )


def _artifact_timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch is not None else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def result_document(result: BenchResult) -> dict:
    """The machine-readable artifact body, pure data."""
    normalized, extremes = ({}, {})
    minmax, avg = ({}, {})
    if result.table.model_ids:
        try:
            normalized, extremes = normalize_table(result.table)
            minmax = aggregate_minmax(result.table)
            avg = average_rank(result.table)
        except InfbenchError:
            pass  # fewer than 2 surviving models; grids stay empty
    doc = {
        "format_version": 1,
        "kind": "bench_results",
        "timestamp": _artifact_timestamp(),
        "protocol": {
            "folds": result.protocol.folds,
            "metric": result.protocol.metric,
            "seed": result.base_seed,
        },
        "datasets": [
            {"id": d, "rows": r, "features": f, "classes": c}
            for d, r, f, c in result.datasets
        ],
        "models": [
            {"id": m, "generator": result.generators[m]}
            for m in result.model_ids
        ],
        "raw_scores": {
            m: {d: result.table.raw[(m, d)] for d in result.table.dataset_ids}
            for m in result.table.model_ids
        },
        "fold_accuracies": {
            m: {
                d: result.fold_accuracies[(m, d)]
                for d in result.table.dataset_ids
            }
            for m in result.table.model_ids
        },
        "normalized_scores": {
            m: {d: normalized[(m, d)] for d in result.table.dataset_ids}
            for m in result.table.model_ids
        } if normalized else {},
        "dataset_score_range": {
            d: {"min": lo, "max": hi} for d, (lo, hi) in extremes.items()
        },
        "minmax": minmax,
        "average_rank": avg,
        "leaderboard": [
            {
                "rank": row.rank,
                "model": row.model_id,
                "minmax": row.minmax,
                "avg_rank": row.avg_rank,
                "generator": row.generator,
            }
            for row in (result.leaderboard.rows if result.leaderboard else [])
        ],
        "failures": sorted(
            result.failures, key=lambda f: (f["model"], f["dataset"])
        ),
    }
    return doc


def write_artifacts(result: BenchResult, out_dir) -> tuple:
    """Write results.json then leaderboard.txt; returns both paths.

    The JSON artifact lands first so a table-rendering failure can never lose
    the numbers.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    results_path = out / RESULTS_FILENAME
    doc = result_document(result)
    results_path.write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    table_path = out / TABLE_FILENAME
    if result.leaderboard is not None:
        table_path.write_text(render_leaderboard(result.leaderboard), encoding="utf-8")
    else:
        table_path.write_text("no leaderboard: fewer than 2 models scored\n",
                              encoding="utf-8")
    return results_path, table_path
