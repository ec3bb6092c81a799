"""Versioned JSON model artifacts.

An artifact stores the estimator kind, its fitted state, and the table
encoder that produced its training matrix.  Floats serialize via repr, which
round-trips float64 exactly, so a loaded model predicts bit-identically.
"""

from __future__ import annotations

import json
from pathlib import Path

from .baselearners import DecisionTree, LogisticRegression, RandomForest
from .directional import DirectionalForest
from .errors import FormatVersionMismatch, IngestError, MissingFile
from .metasynthesis import MetaSynthesisClassifier

FORMAT_VERSION = 1

ESTIMATOR_KINDS = {
    cls.kind: cls
    for cls in (
        DecisionTree,
        RandomForest,
        LogisticRegression,
        DirectionalForest,
        MetaSynthesisClassifier,
    )
}


def estimator_state(est) -> dict:
    return {"kind": est.kind, "state": est.get_state()}


def estimator_from_state(d: dict):
    kind = d["kind"]
    cls = ESTIMATOR_KINDS.get(kind)
    if cls is None:
        raise IngestError(f"unknown estimator kind {kind!r} in artifact")
    return cls.from_state(d["state"])


def save_model_artifact(path, model_id: str, est, encoder) -> Path:
    """Write a fitted model plus its input encoding to a JSON artifact."""
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "model_artifact",
        "model_id": model_id,
        "estimator": estimator_state(est),
        "encoding": encoder.to_dict(),
    }
    path = Path(path)
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8")
    return path


def load_model_artifact(path):
    """Read an artifact back; returns (model_id, estimator, encoder)."""
    from .bench.ingest import TableEncoder

    path = Path(path)
    if not path.is_file():
        raise MissingFile(str(path))
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise IngestError(f"{path} is not valid JSON: {e}") from e
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatVersionMismatch(
            f"artifact {path} has format_version {version!r}, "
            f"this build reads {FORMAT_VERSION}"
        )
    if doc.get("kind") != "model_artifact":
        raise IngestError(f"{path} is not a model artifact")
    est = estimator_from_state(doc["estimator"])
    encoder = TableEncoder.from_dict(doc["encoding"])
    return doc["model_id"], est, encoder
