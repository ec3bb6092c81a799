"""Dataset registry: a JSON manifest naming CSV files and their schemas."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import DuplicateId, IngestError, MissingFile, UnknownColumn
from .ingest import read_header


@dataclass
class DatasetSpec:
    dataset_id: str
    path: Path
    target_column: str
    kinds: dict  # feature column name -> "numeric" | "categorical"
    note: str = ""


def bundled_manifest_path() -> Path:
    """Location of the manifest shipped inside the package."""
    return Path(resources.files("infbench.bench").joinpath("data", "manifest.json"))


def load_registry(manifest_path) -> list:
    """Parse and validate a manifest, returning specs in manifest order.

    Relative dataset paths resolve against the manifest's directory.  Every
    referenced file must exist, ids must be unique, and the target plus all
    schema columns must appear in the file's header.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise MissingFile(str(manifest_path))
    try:
        doc = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise IngestError(f"manifest {manifest_path} is not valid JSON: {e}") from e
    if not isinstance(doc, dict) or not isinstance(doc.get("datasets"), list):
        raise IngestError(f"manifest {manifest_path} lacks a 'datasets' list")

    specs = []
    seen = set()
    for entry in doc["datasets"]:
        dataset_id = entry["id"]
        if dataset_id in seen:
            raise DuplicateId(dataset_id)
        seen.add(dataset_id)
        path = Path(entry["path"])
        if not path.is_absolute():
            path = manifest_path.parent / path
        if not path.is_file():
            raise MissingFile(str(path))
        header = read_header(path)
        target = entry["target_column"]
        if target not in header:
            raise UnknownColumn(target, dataset_id)
        kinds = dict(entry["columns"])
        for col, kind in kinds.items():
            if col not in header:
                raise UnknownColumn(col, dataset_id)
            if kind not in ("numeric", "categorical"):
                raise IngestError(
                    f"dataset {dataset_id}: column {col} has unknown kind {kind!r}"
                )
        specs.append(DatasetSpec(
            dataset_id=dataset_id,
            path=path,
            target_column=target,
            kinds=kinds,
            note=entry.get("note", ""),
        ))
    return specs
