"""Cross-dataset scoring: min-max normalization, aggregation, ranks, leaderboard.

A model's normalized score on a dataset rescales its accuracy by the worst
and best accuracies any model achieved there, so easy datasets (where
everyone lands near 1.0) cannot wash out the comparison.  The leaderboard
metric is the unweighted mean of those normalized scores over all datasets;
fractional average ranks are reported alongside as a second view of the same
grid.  All means use exact summation, so every result is independent of
dataset and model enumeration order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import IncompleteGrid, InfbenchError


@dataclass
class ScoreTable:
    """Raw accuracy grid s[(model_id, dataset_id)] plus its axes."""

    model_ids: list
    dataset_ids: list
    raw: dict = field(default_factory=dict)

    def require_complete(self) -> None:
        for m in self.model_ids:
            for d in self.dataset_ids:
                if (m, d) not in self.raw:
                    raise IncompleteGrid(m, d)

    def dataset_scores(self, dataset_id) -> dict:
        return {m: self.raw[(m, dataset_id)] for m in self.model_ids}


def minmax_normalize(scores: dict) -> dict:
    """Rescale one dataset's per-model scores to [0, 1].

    n_m = (s_m - min) / (max - min).  When every model ties (max == min) all
    of them count as the best available and receive 1.0.
    """
    if len(scores) < 2:
        raise InfbenchError(
            f"min-max normalization needs >= 2 models, got {len(scores)}"
        )
    lo = min(scores.values())
    hi = max(scores.values())
    if hi == lo:
        return {m: 1.0 for m in scores}
    return {m: (s - lo) / (hi - lo) for m, s in scores.items()}


def normalize_table(table: ScoreTable):
    """Per-dataset normalized grid plus the (min, max) used for each dataset."""
    table.require_complete()
    normalized = {}
    extremes = {}
    for d in table.dataset_ids:
        scores = table.dataset_scores(d)
        extremes[d] = (min(scores.values()), max(scores.values()))
        for m, n in minmax_normalize(scores).items():
            normalized[(m, d)] = n
    return normalized, extremes


def aggregate_minmax(table: ScoreTable) -> dict:
    """Per-model mean of normalized scores over all datasets."""
    normalized, _ = normalize_table(table)
    k = len(table.dataset_ids)
    return {
        m: math.fsum(normalized[(m, d)] for d in table.dataset_ids) / k
        for m in table.model_ids
    }


def _fractional_ranks(scores: dict) -> dict:
    """Descending fractional ranks: tied scores share the mean of their positions."""
    ordered = sorted(scores.items(), key=lambda kv: -kv[1])
    ranks = {}
    i = 0
    while i < len(ordered):
        j = i
        while j + 1 < len(ordered) and ordered[j + 1][1] == ordered[i][1]:
            j += 1
        # positions i+1 .. j+1 (1-based) share one rank
        shared = (i + j + 2) / 2.0
        for k in range(i, j + 1):
            ranks[ordered[k][0]] = shared
        i = j + 1
    return ranks


def average_rank(table: ScoreTable) -> dict:
    """Per-model mean fractional rank over datasets (lower is better)."""
    table.require_complete()
    k = len(table.dataset_ids)
    per_dataset = [_fractional_ranks(table.dataset_scores(d)) for d in table.dataset_ids]
    return {
        m: math.fsum(r[m] for r in per_dataset) / k
        for m in table.model_ids
    }


@dataclass
class LeaderboardRow:
    rank: int
    model_id: str
    minmax: float
    avg_rank: float
    generator: str


@dataclass
class Leaderboard:
    rows: list
    n_datasets: int


def build_leaderboard(table: ScoreTable, generators: dict) -> Leaderboard:
    """Sorted leaderboard with dense 1-based ranks.

    Orders descending by MinMax score, alphabetical model id on ties; tied
    MinMax scores share the better rank.
    """
    minmax = aggregate_minmax(table)
    avg = average_rank(table)
    ordered = sorted(minmax.items(), key=lambda kv: (-kv[1], kv[0]))
    rows = []
    rank = 0
    prev = None
    for m, score in ordered:
        if prev is None or score != prev:
            rank += 1
            prev = score
        rows.append(LeaderboardRow(
            rank=rank,
            model_id=m,
            minmax=score,
            avg_rank=avg[m],
            generator=generators.get(m, "baseline"),
        ))
    return Leaderboard(rows=rows, n_datasets=len(table.dataset_ids))


def render_leaderboard(board: Leaderboard) -> str:
    """Aligned text table: Rank, Model, MinMax (4 decimals), Generator."""
    headers = ("Rank", "Model", "MinMax", "Generator")
    body = [
        (str(r.rank), r.model_id, format(r.minmax, ".4f"), r.generator.capitalize())
        for r in board.rows
    ]
    widths = [
        max(len(headers[c]), max((len(row[c]) for row in body), default=0))
        for c in range(4)
    ]
    lines = [
        "  ".join(headers[c].ljust(widths[c]) for c in range(4)).rstrip(),
        "  ".join("-" * widths[c] for c in range(4)),
    ]
    for row in body:
        cells = [row[0].rjust(widths[0])] + [
            row[c].ljust(widths[c]) for c in range(1, 4)
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"
