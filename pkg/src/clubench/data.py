"""Benchmark battery I/O: the unified on-disk dataset format.

Layout: ``<data_root>/<battery>/<dataset>.data.gz`` plus one or more
``<dataset>.labels<j>.gz`` files (j = 0, 1, ...).  Files are gzip-compressed
UTF-8 text, one point (or one integer label) per line, ``%``/``#`` comment
lines ignored; uncompressed ``.data``/``.labels<j>`` variants are accepted
too.  Reference label 0 marks a noise point.
"""

from __future__ import annotations

import gzip
import os
import re
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvariantError, LabelError, MissingDataset, MissingRoot, ParseError

_NAME_RE = re.compile(r"^[a-z0-9_]+$")

# Fixed gzip settings so identical content re-saves to identical bytes.
_GZIP_LEVEL = 9


def _check_name(kind: str, name: str) -> str:
    if not _NAME_RE.match(name):
        raise InvariantError(f"{kind} name {name!r} must match [a-z0-9_]+")
    return name


def validate_labelling(labels: np.ndarray) -> int:
    """Check a reference label vector and return its cluster count k.

    Values must lie in {0, 1, ..., k} with 0 reserved for noise, every id
    1..k must occur, and k = max(labels) must be at least 2.
    """
    labels = np.asarray(labels)
    if labels.ndim != 1 or labels.size == 0:
        raise LabelError("labels must be a nonempty vector")
    if not np.issubdtype(labels.dtype, np.integer):
        raise LabelError("labels must be integers")
    if labels.min() < 0:
        raise LabelError(f"negative label {int(labels.min())} not allowed")
    k = int(labels.max())
    if k < 2:
        raise LabelError(f"k = {k} < 2: a reference partition needs at least 2 clusters")
    present = np.bincount(labels, minlength=k + 1)[1:]
    if (present == 0).any():
        gap = int(np.nonzero(present == 0)[0][0]) + 1
        raise LabelError(f"cluster id {gap} missing: labels must cover 1..{k}")
    return k


@dataclass(frozen=True)
class ReferenceLabelling:
    """One expert ground-truth partition: labels in {0..k}, 0 = noise."""

    labels: np.ndarray
    n_clusters: int

    @classmethod
    def from_labels(cls, labels) -> "ReferenceLabelling":
        labels = np.asarray(labels, dtype=np.int64)
        k = validate_labelling(labels)
        labels = labels.copy()
        labels.setflags(write=False)
        return cls(labels=labels, n_clusters=k)

    def __post_init__(self):
        if self.n_clusters != int(np.max(self.labels)):
            raise InvariantError("n_clusters must equal max(labels)")

    @property
    def has_noise(self) -> bool:
        return bool((self.labels == 0).any())

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    def __eq__(self, other):
        if not isinstance(other, ReferenceLabelling):
            return NotImplemented
        return self.n_clusters == other.n_clusters and np.array_equal(self.labels, other.labels)


@dataclass(frozen=True)
class BenchmarkDataset:
    """An n x d point matrix plus one or more reference labellings."""

    battery: str
    dataset: str
    data: np.ndarray
    labellings: tuple[ReferenceLabelling, ...]

    def __post_init__(self):
        _check_name("battery", self.battery)
        _check_name("dataset", self.dataset)
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise InvariantError(f"data must be an n x d matrix with n, d >= 1, got shape {data.shape}")
        if not np.isfinite(data).all():
            raise InvariantError("data contains non-finite coordinates")
        if data is not self.data or data.flags.writeable:
            data = data.copy()
            data.setflags(write=False)
            object.__setattr__(self, "data", data)
        if not self.labellings:
            raise InvariantError("a dataset needs at least one reference labelling")
        n = data.shape[0]
        for j, lab in enumerate(self.labellings):
            if len(lab) != n:
                raise InvariantError(f"labels{j} has {len(lab)} entries, expected {n}")
        object.__setattr__(self, "labellings", tuple(self.labellings))

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    @property
    def d(self) -> int:
        return int(self.data.shape[1])

    @property
    def labels(self) -> list[np.ndarray]:
        """All reference label vectors, in labelling order."""
        return [lab.labels for lab in self.labellings]

    @property
    def n_clusters(self) -> list[int]:
        return [lab.n_clusters for lab in self.labellings]

    @property
    def name(self) -> str:
        return f"{self.battery}/{self.dataset}"


def _open_text(path: Path):
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="utf-8", newline=None)
    return open(path, "rt", encoding="utf-8", newline=None)


def _read_lines(path: Path) -> list[list[str]]:
    """Tokenized non-comment lines; wraps any decoding failure in ParseError."""
    rows = []
    try:
        with _open_text(path) as fh:
            for line in fh:
                stripped = line.strip()
                if not stripped or stripped.startswith(("%", "#")):
                    continue
                rows.append(stripped.split())
    except (OSError, EOFError, UnicodeError, zlib.error) as exc:
        # gzip surfaces corruption as zlib.error / BadGzipFile / EOFError
        raise ParseError(f"{path}: unreadable ({exc})") from exc
    return rows


def _parse_data_file(path: Path) -> np.ndarray:
    rows = _read_lines(path)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    d = len(rows[0])
    out = np.empty((len(rows), d), dtype=np.float64)
    for i, row in enumerate(rows):
        if len(row) != d:
            raise ParseError(f"{path}: row {i} has {len(row)} fields, expected {d}")
        for j, tok in enumerate(row):
            try:
                out[i, j] = float(tok)
            except ValueError as exc:
                raise ParseError(f"{path}: row {i}: malformed number {tok!r}") from exc
    if not np.isfinite(out).all():
        raise ParseError(f"{path}: non-finite coordinate")
    return out


_INT_TOKEN = re.compile(r"^[+-]?\d{1,18}$")  # bounded so it always fits int64


def _parse_labels_file(path: Path) -> np.ndarray:
    rows = _read_lines(path)
    if not rows:
        raise ParseError(f"{path}: no label rows")
    out = np.empty(len(rows), dtype=np.int64)
    for i, row in enumerate(rows):
        if len(row) != 1 or not _INT_TOKEN.match(row[0]):
            raise ParseError(f"{path}: line {i}: expected one integer, got {' '.join(row)!r}")
        out[i] = int(row[0])
    return out


def _find_file(base: Path) -> Path | None:
    """Prefer the gzip variant, accept the uncompressed one."""
    gz = base.with_name(base.name + ".gz")
    if gz.is_file():
        return gz
    if base.is_file():
        return base
    return None


def _dataset_names(battery_dir: Path) -> list[str]:
    names = set()
    for p in battery_dir.iterdir():
        name = p.name
        if name.endswith(".data.gz"):
            name = name[: -len(".data.gz")]
        elif name.endswith(".data"):
            name = name[: -len(".data")]
        else:
            continue
        if _NAME_RE.match(name) and _find_file(battery_dir / f"{name}.labels0") is not None:
            names.add(name)
    return sorted(names)


def list_batteries(data_root) -> list[str]:
    """Sorted battery names under data_root that contain at least one dataset."""
    root = Path(data_root)
    if not root.is_dir():
        raise MissingRoot(f"data root {root} does not exist")
    out = []
    for sub in sorted(root.iterdir()):
        if sub.is_dir() and _NAME_RE.match(sub.name) and _dataset_names(sub):
            out.append(sub.name)
    return out


def list_datasets(data_root, battery: str) -> list[str]:
    """Sorted dataset names inside one battery."""
    root = Path(data_root)
    if not root.is_dir():
        raise MissingRoot(f"data root {root} does not exist")
    battery_dir = root / _check_name("battery", battery)
    if not battery_dir.is_dir():
        raise MissingDataset(f"battery {battery!r} not found under {root}")
    return _dataset_names(battery_dir)


def load_dataset(data_root, battery: str, dataset: str) -> BenchmarkDataset:
    """Load one battery/dataset with all its reference labellings."""
    root = Path(data_root)
    _check_name("battery", battery)
    _check_name("dataset", dataset)
    base = root / battery / dataset
    data_path = _find_file(base.with_name(f"{dataset}.data"))
    labels0 = _find_file(base.with_name(f"{dataset}.labels0"))
    if data_path is None or labels0 is None:
        raise MissingDataset(f"{battery}/{dataset} not found under {root}")

    data = _parse_data_file(data_path)
    labellings = []
    j = 0
    while True:
        path = _find_file(base.with_name(f"{dataset}.labels{j}"))
        if path is None:
            break
        labels = _parse_labels_file(path)
        if labels.shape[0] != data.shape[0]:
            raise LabelError(f"{path}: {labels.shape[0]} labels for {data.shape[0]} points")
        labellings.append(ReferenceLabelling.from_labels(labels))
        j += 1
    return BenchmarkDataset(battery=battery, dataset=dataset, data=data, labellings=tuple(labellings))


def _format_point(row: np.ndarray) -> str:
    # repr() is the shortest representation that round-trips a 64-bit float
    return " ".join(repr(float(v)) for v in row)


def _write_gz(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "wb") as raw:
            with gzip.GzipFile(
                filename="", mode="wb", fileobj=raw, compresslevel=_GZIP_LEVEL, mtime=0
            ) as gz:
                gz.write(text.encode("utf-8"))
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()


def save_dataset(data_root, dataset: BenchmarkDataset) -> None:
    """Write a dataset in the unified format (gzip, LF endings)."""
    _validate_for_save(dataset)
    battery_dir = Path(data_root) / dataset.battery
    battery_dir.mkdir(parents=True, exist_ok=True)
    data_text = "".join(_format_point(row) + "\n" for row in dataset.data)
    _write_gz(battery_dir / f"{dataset.dataset}.data.gz", data_text)
    for j, lab in enumerate(dataset.labellings):
        labels_text = "".join(f"{int(v)}\n" for v in lab.labels)
        _write_gz(battery_dir / f"{dataset.dataset}.labels{j}.gz", labels_text)


def _validate_for_save(dataset: BenchmarkDataset) -> None:
    # Construction already validates; this guards objects mutated via
    # __setattr__ tricks or stale references to since-closed memmaps.
    if not np.isfinite(dataset.data).all():
        raise InvariantError("data contains non-finite coordinates")
    for j, lab in enumerate(dataset.labellings):
        if len(lab) != dataset.n:
            raise InvariantError(f"labels{j} has {len(lab)} entries, expected {dataset.n}")
        validate_labelling(lab.labels)
