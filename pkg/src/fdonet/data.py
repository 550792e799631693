"""
CSV ingestion: yes/no encoding, cleaning, de-duplication and the seeded
80:20 split.

Binary feature cells encode positive -> 0, negative -> 1. Targets encode
positive -> 1, negative -> 2. Schemas are INI files, see ``schemas/``.
"""
from __future__ import annotations

import configparser
import csv
import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, SchemaError


def _split_list(value: str) -> list[str]:
    items = []
    for line in value.replace(",", "\n").splitlines():
        line = line.strip()
        if line:
            items.append(line)
    return items


@dataclass(frozen=True)
class DatasetSchema:
    feature_columns: tuple[str, ...]
    target_column: str
    positive_tokens: frozenset[str] = frozenset({"yes", "positive"})
    negative_tokens: frozenset[str] = frozenset({"no", "negative"})
    numeric_columns: frozenset[str] = frozenset()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "feature_columns", tuple(self.feature_columns))
        object.__setattr__(self, "positive_tokens", frozenset(t.strip().lower() for t in self.positive_tokens))
        object.__setattr__(self, "negative_tokens", frozenset(t.strip().lower() for t in self.negative_tokens))
        object.__setattr__(self, "numeric_columns", frozenset(self.numeric_columns))
        if not self.feature_columns:
            raise SchemaError("schema lists no feature columns")
        if len(set(self.feature_columns)) != len(self.feature_columns):
            raise SchemaError("schema lists a feature column twice")
        if self.target_column in self.feature_columns:
            raise SchemaError(f"target column {self.target_column!r} is also listed as a feature")
        if self.positive_tokens & self.negative_tokens:
            raise SchemaError(
                f"tokens {sorted(self.positive_tokens & self.negative_tokens)} are both positive and negative"
            )
        unknown = self.numeric_columns - set(self.feature_columns)
        if unknown:
            raise SchemaError(f"numeric columns {sorted(unknown)} are not feature columns")

    @classmethod
    def from_file(cls, path) -> "DatasetSchema":
        parser = configparser.ConfigParser(interpolation=None)
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise SchemaError(f"cannot read schema {path}: {exc}") from exc
        except configparser.Error as exc:
            raise SchemaError(f"malformed schema {path}: {exc}") from exc
        if not parser.has_section("schema"):
            raise SchemaError(f"schema {path} has no [schema] section")
        s = parser["schema"]
        for key in ("features", "target"):
            if key not in s:
                raise SchemaError(f"schema {path} lacks the {key!r} key")
        return cls(
            feature_columns=tuple(_split_list(s["features"])),
            target_column=s["target"].strip(),
            positive_tokens=frozenset(_split_list(s.get("positive_tokens", "yes, positive"))),
            negative_tokens=frozenset(_split_list(s.get("negative_tokens", "no, negative"))),
            numeric_columns=frozenset(_split_list(s.get("numeric", ""))),
            name=s.get("name", "").strip(),
        )

    def fingerprint(self) -> str:
        blob = json.dumps(
            {
                "features": list(self.feature_columns),
                "target": self.target_column,
                "numeric": sorted(self.numeric_columns),
                "positive": sorted(self.positive_tokens),
                "negative": sorted(self.negative_tokens),
            },
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    targets: np.ndarray
    row_provenance: np.ndarray
    feature_names: tuple[str, ...] = ()
    rows_read: int = 0
    dropped_invalid: int = 0
    dropped_duplicates: int = 0

    def __len__(self):
        return self.targets.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            np.array_equal(self.features, other.features)
            and np.array_equal(self.targets, other.targets)
            and np.array_equal(self.row_provenance, other.row_provenance)
            and self.feature_names == other.feature_names
            and (self.rows_read, self.dropped_invalid, self.dropped_duplicates)
            == (other.rows_read, other.dropped_invalid, other.dropped_duplicates)
        )

    def subset(self, indices) -> tuple[np.ndarray, np.ndarray]:
        indices = np.asarray(indices, dtype=np.intp)
        return self.features[indices], self.targets[indices]


@dataclass(frozen=True)
class Split:
    train_indices: np.ndarray
    test_indices: np.ndarray
    seed: int = 0


def _encode_binary(cell: str, schema: DatasetSchema, feature: bool):
    token = cell.strip().lower()
    if token in schema.positive_tokens:
        return 0.0 if feature else 1.0
    if token in schema.negative_tokens:
        return 1.0 if feature else 2.0
    return None


def _encode_numeric(cell: str):
    try:
        value = float(cell.strip())
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def load_csv(path, schema: DatasetSchema) -> Dataset:
    """Read, encode and clean a CSV file.

    Rows with a missing or unrecognised cell are dropped and counted in
    ``dropped_invalid``; repeated encoded rows keep their first occurrence
    and are counted in ``dropped_duplicates``.
    """
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise SchemaError(f"{path} is empty") from None
        position = {name: i for i, name in enumerate(header)}
        for col in (*schema.feature_columns, schema.target_column):
            if col not in position:
                raise SchemaError(f"column {col!r} missing from {path}")
        feature_idx = [position[c] for c in schema.feature_columns]
        numeric = [c in schema.numeric_columns for c in schema.feature_columns]
        target_idx = position[schema.target_column]

        rows, targets, provenance = [], [], []
        seen = set()
        rows_read = invalid = duplicates = 0
        for i, cells in enumerate(reader):
            if not cells or all(not c.strip() for c in cells):
                continue
            rows_read += 1
            encoded = _encode_row(cells, feature_idx, numeric, target_idx, schema)
            if encoded is None:
                invalid += 1
                continue
            key = tuple(encoded)
            if key in seen:
                duplicates += 1
                continue
            seen.add(key)
            rows.append(encoded[:-1])
            targets.append(encoded[-1])
            provenance.append(i)

    n_features = len(schema.feature_columns)
    return Dataset(
        features=np.array(rows, dtype=np.float64).reshape(-1, n_features),
        targets=np.array(targets, dtype=np.float64),
        row_provenance=np.array(provenance, dtype=np.int64),
        feature_names=schema.feature_columns,
        rows_read=rows_read,
        dropped_invalid=invalid,
        dropped_duplicates=duplicates,
    )


def _encode_row(cells, feature_idx, numeric, target_idx, schema):
    if max(max(feature_idx), target_idx) >= len(cells):
        return None
    out = []
    for idx, is_numeric in zip(feature_idx, numeric):
        cell = cells[idx]
        value = _encode_numeric(cell) if is_numeric else _encode_binary(cell, schema, True)
        if value is None:
            return None
        out.append(value)
    target = _encode_binary(cells[target_idx], schema, False)
    if target is None:
        return None
    out.append(target)
    return out


def train_size(n: int) -> int:
    """ceil(0.8 * n) in exact integer arithmetic."""
    return -(-4 * n // 5)


def split_80_20(dataset_or_n, seed: int) -> Split:
    n = dataset_or_n if isinstance(dataset_or_n, (int, np.integer)) else len(dataset_or_n)
    if n < 5:
        raise ConfigError(f"need at least 5 rows to split 80:20, got {n}")
    order = np.random.default_rng(seed).permutation(n)
    k = train_size(n)
    return Split(order[:k], order[k:], seed)


def export_encoded_csv(path, dataset: Dataset) -> None:
    names = list(dataset.feature_names) or [f"x{i}" for i in range(dataset.features.shape[1])]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["source_row", *names, "target"])
        for src, row, y in zip(dataset.row_provenance, dataset.features, dataset.targets):
            w.writerow([int(src), *(_fmt(v) for v in row), int(y)])


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))
