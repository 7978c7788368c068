"""Precomputed-partition repositories.

Layout: ``<results_root>/<method_variant>/<battery>/<dataset>.result<k>.gz``
with one 1..k integer label per line.  A "method group" selects variants by
directory-name prefix (group "Genie" matches "Genie_G0.3").  Writes use
fixed gzip settings so identical partitions always produce identical bytes.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

import numpy as np

from .data import _check_name, _find_file, _open_text, _write_gz
from .errors import InvariantError, MissingRoot, ParseError
from .scoring import PartitionSet

log = logging.getLogger("clubench.results")

_METHOD_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


def check_method_id(method: str) -> str:
    if not _METHOD_RE.match(method):
        raise InvariantError(f"method id {method!r} must match [A-Za-z0-9_.-]+")
    return method


def list_result_methods(results_root, method_group: str = "") -> list[str]:
    """Sorted method-variant directory names matching the group prefix."""
    root = Path(results_root)
    if not root.is_dir():
        raise MissingRoot(f"results root {root} does not exist")
    return sorted(
        p.name
        for p in root.iterdir()
        if p.is_dir() and _METHOD_RE.match(p.name) and p.name.startswith(method_group)
    )


_INT_RE = re.compile(r"^[+-]?\d{1,18}$")  # bounded so it always fits int64


def _parse_result_file(path: Path) -> np.ndarray:
    """Strict reader: one integer per line, no comments or blank lines."""
    import zlib

    try:
        with _open_text(path) as fh:
            lines = fh.read().splitlines()
    except (OSError, EOFError, UnicodeError, zlib.error) as exc:
        raise ParseError(f"{path}: unreadable ({exc})") from exc
    if not lines:
        raise ParseError(f"{path}: empty result file")
    out = np.empty(len(lines), dtype=np.int64)
    for i, line in enumerate(lines):
        token = line.strip()
        if not _INT_RE.match(token):
            raise ParseError(f"{path}: line {i}: expected an integer label, got {line!r}")
        out[i] = int(token)
    return out


def _load_result_vector(path: Path, k: int) -> np.ndarray:
    labels = _parse_result_file(path)
    if labels.min() < 1 or labels.max() != k:
        raise ParseError(f"{path}: labels must lie in 1..{k} with max exactly {k}")
    present = np.bincount(labels, minlength=k + 1)[1:]
    if (present == 0).any():
        gap = int(np.nonzero(present == 0)[0][0]) + 1
        raise ParseError(f"{path}: cluster id {gap} missing, labels must cover 1..{k}")
    return labels


def load_results(
    results_root, method_group: str, battery: str, dataset: str, ks
) -> dict[str, PartitionSet]:
    """Load stored partitions for every variant of a method group.

    Variants that are missing any requested k are omitted with a warning on
    the clubench.results logger.
    """
    root = Path(results_root)
    _check_name("battery", battery)
    _check_name("dataset", dataset)
    ks = sorted({int(k) for k in ks})
    if not ks:
        raise InvariantError("ks must be nonempty")
    out: dict[str, PartitionSet] = {}
    for variant in list_result_methods(root, method_group):
        vectors: dict[int, np.ndarray] = {}
        missing = None
        for k in ks:
            path = _find_file(root / variant / battery / f"{dataset}.result{k}")
            if path is None:
                missing = k
                break
            vectors[k] = _load_result_vector(path, k)
        if missing is not None:
            log.warning(
                "omitting %s: no stored %s/%s partition for k=%d", variant, battery, dataset, missing
            )
            continue
        try:
            out[variant] = PartitionSet(vectors)
        except InvariantError as exc:
            raise ParseError(f"{root / variant / battery / dataset}: {exc}") from exc
    return out


def save_results(results_root, method: str, battery: str, dataset: str, partitions: PartitionSet) -> None:
    """Write one result<k>.gz file per stored partition (idempotent bytes)."""
    check_method_id(method)
    _check_name("battery", battery)
    _check_name("dataset", dataset)
    target = Path(results_root) / method / battery
    target.mkdir(parents=True, exist_ok=True)
    for k in partitions.ks():
        text = "".join(f"{int(v)}\n" for v in partitions[k])
        _write_gz(target / f"{dataset}.result{k}.gz", text)
