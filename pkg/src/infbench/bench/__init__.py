"""Benchmark harness: datasets, per-cell evaluation, scoring, leaderboards."""

from .registry import DatasetSpec, load_registry, bundled_manifest_path
from .ingest import (
    EncodedDataset,
    TableEncoder,
    encode_table,
    infer_kinds,
    ingest_csv,
    read_csv,
)
from .scoring import (
    Leaderboard,
    LeaderboardRow,
    ScoreTable,
    aggregate_minmax,
    average_rank,
    build_leaderboard,
    minmax_normalize,
    normalize_table,
    render_leaderboard,
)
from .evaluate import (
    EvalProtocol,
    cell_seed,
    evaluate_model_on_dataset,
    result_document,
    run_benchmark,
    write_artifacts,
)

__all__ = [
    "DatasetSpec",
    "load_registry",
    "bundled_manifest_path",
    "EncodedDataset",
    "TableEncoder",
    "encode_table",
    "infer_kinds",
    "ingest_csv",
    "read_csv",
    "ScoreTable",
    "Leaderboard",
    "LeaderboardRow",
    "minmax_normalize",
    "normalize_table",
    "aggregate_minmax",
    "average_rank",
    "build_leaderboard",
    "render_leaderboard",
    "EvalProtocol",
    "cell_seed",
    "evaluate_model_on_dataset",
    "result_document",
    "run_benchmark",
    "write_artifacts",
]
