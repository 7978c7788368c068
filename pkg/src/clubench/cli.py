"""clubench command line: list, run, score, plot, confusion.

Exit codes: 0 success, 1 partial failures during a batch run, 2 usage or
environment errors.  --data/--results default to the CLUBENCH_DATA and
CLUBENCH_RESULTS environment variables.
"""

from __future__ import annotations

import argparse
import gzip
import hashlib
import logging
import os
import shlex
import subprocess
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .cluster import AgglomerativeClusterer, KMeansClusterer, KMeansConfig, fit_predict_many
from .data import BenchmarkDataset, list_batteries, list_datasets, load_dataset
from .errors import (
    BadDimension,
    ClubenchError,
    ExternalMethodError,
    MissingK,
    MissingLabels,
)
from .metrics import METRIC_IDS, confusion_matrix
from .plotting import scatter_svg
from .results import check_method_id, list_result_methods, load_results, save_results
from .scoring import PartitionSet, filter_noise, score_all, score_one

BUILTIN_METHODS = {
    "kmeans": "KMeans",
    "single": "SingleLinkage",
    "complete": "CompleteLinkage",
    "average": "AverageLinkage",
}

DEFAULT_TIMEOUT = 300.0


@dataclass(frozen=True)
class ExternalMethodSpec:
    """Out-of-process clusterer: argv template with {data} and {k} slots."""

    template: str
    timeout: float = DEFAULT_TIMEOUT

    def __post_init__(self):
        if "{data}" not in self.template or "{k}" not in self.template:
            raise ClubenchError("external command must contain both {data} and {k}")
        if not self.timeout > 0:
            raise ClubenchError("timeout must be positive")

    def argv(self, data_path: str, k: int) -> list[str]:
        return [
            tok.replace("{data}", data_path).replace("{k}", str(k))
            for tok in shlex.split(self.template)
        ]


def _dataset_seed(seed: int, battery: str, dataset: str) -> int:
    """Stable per-dataset seed so runs are worker-count independent."""
    digest = hashlib.sha256(f"{seed}:{battery}/{dataset}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _require(value, flag: str, envvar: str) -> str:
    if not value:
        raise ClubenchError(f"missing {flag} (or set {envvar})")
    return value


def _select_pairs(data_root, batteries, datasets) -> list[tuple[str, str]]:
    want_b = set(batteries or [])
    want_d = set(datasets or [])
    pairs = []
    for b in list_batteries(data_root):
        if want_b and b not in want_b:
            continue
        for d in list_datasets(data_root, b):
            if want_d and d not in want_d:
                continue
            pairs.append((b, d))
    return pairs


def cmd_list(args) -> int:
    data_root = _require(args.data, "--data", "CLUBENCH_DATA")
    for b, d in _select_pairs(data_root, args.battery, args.dataset):
        ds = load_dataset(data_root, b, d)
        ks = ",".join(str(k) for k in ds.n_clusters)
        print(f"{b}/{d}  {ds.n}  {ds.d}  {ks}")
    return 0


def _uncompressed_data_file(data_root, ds: BenchmarkDataset, scratch: Path) -> Path:
    """Path to a plain-text data file, decompressing into scratch if needed."""
    plain = Path(data_root) / ds.battery / f"{ds.dataset}.data"
    if plain.is_file():
        return plain
    gz = Path(data_root) / ds.battery / f"{ds.dataset}.data.gz"
    out = scratch / f"{ds.battery}__{ds.dataset}.data"
    with gzip.open(gz, "rb") as src:
        out.write_bytes(src.read())
    return out


def _run_external(
    spec: ExternalMethodSpec, data_path: Path, n: int, ks: list[int]
) -> PartitionSet:
    vectors = {}
    for k in ks:
        argv = spec.argv(str(data_path), k)
        try:
            proc = subprocess.run(
                argv, capture_output=True, text=True, timeout=spec.timeout
            )
        except subprocess.TimeoutExpired:
            raise ExternalMethodError(f"{argv[0]}: timed out after {spec.timeout}s (k={k})")
        except OSError as exc:
            raise ExternalMethodError(f"{argv[0]}: {exc}")
        if proc.returncode != 0:
            tail = proc.stderr.strip().splitlines()[-1:] or [""]
            raise ExternalMethodError(
                f"{argv[0]}: exit code {proc.returncode} (k={k}): {tail[0]}"
            )
        lines = proc.stdout.splitlines()
        while lines and not lines[-1].strip():
            lines.pop()
        if len(lines) != n:
            raise ExternalMethodError(
                f"{argv[0]}: wrote {len(lines)} label lines, expected {n} (k={k})"
            )
        try:
            vec = np.array([int(line.strip()) for line in lines], dtype=np.int64)
        except ValueError:
            raise ExternalMethodError(f"{argv[0]}: non-integer label line (k={k})")
        vectors[k] = vec
    return PartitionSet(vectors)


def _make_builtin(method: str, seed: int):
    if method == "kmeans":
        return KMeansClusterer(KMeansConfig(seed=seed))
    return AgglomerativeClusterer(method)


def cmd_run(args) -> int:
    data_root = _require(args.data, "--data", "CLUBENCH_DATA")
    results_root = _require(args.results, "--results", "CLUBENCH_RESULTS")
    external = None
    if args.method.startswith("exec:"):
        external = ExternalMethodSpec(args.method[len("exec:"):], timeout=args.timeout)
        if not args.name:
            raise ClubenchError("external methods need --name for the results tree")
        method_id = check_method_id(args.name)
    elif args.method in BUILTIN_METHODS:
        method_id = check_method_id(args.name or BUILTIN_METHODS[args.method])
    else:
        raise ClubenchError(
            f"unknown method {args.method!r}: builtin {sorted(BUILTIN_METHODS)} or exec:\"cmd {{data}} {{k}}\""
        )

    pairs = _select_pairs(data_root, args.battery, args.dataset)
    if not pairs:
        raise ClubenchError("selectors match no dataset")

    def task(pair: tuple[str, str]) -> tuple[list[int], PartitionSet]:
        b, d = pair
        ds = load_dataset(data_root, b, d)
        ks = sorted(set(ds.n_clusters))
        if external is not None:
            with tempfile.TemporaryDirectory(prefix="clubench-") as scratch:
                data_path = _uncompressed_data_file(data_root, ds, Path(scratch))
                parts = _run_external(external, data_path, ds.n, ks)
        else:
            algo = _make_builtin(args.method, _dataset_seed(args.seed, b, d))
            parts = fit_predict_many(algo, ds.data, ks)
        return ks, parts

    failures = []
    outcomes: dict[tuple[str, str], tuple[list[int], PartitionSet]] = {}
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        futures = {pair: pool.submit(task, pair) for pair in pairs}
        for pair in pairs:  # sorted already; collection order fixed
            try:
                outcomes[pair] = futures[pair].result()
            except Exception as exc:  # record per-dataset failure, keep going
                failures.append((pair, exc))

    for pair in pairs:
        if pair not in outcomes:
            continue
        b, d = pair
        ks, parts = outcomes[pair]
        save_results(results_root, method_id, b, d, parts)
        print(f"ok {b}/{d} k={','.join(str(k) for k in ks)}")
    for (b, d), exc in failures:
        print(f"fail {b}/{d}: {exc}", file=sys.stderr)
    if failures:
        print(f"{len(failures)} dataset(s) failed", file=sys.stderr)
        return 1
    return 0


def _render_csv(rows) -> str:
    out = ["method,battery,dataset,metric,score,k_used"]
    for method, b, d, metric, score, k_used in rows:
        score_s = "NA" if score is None else f"{score:.6f}"
        k_s = "NA" if k_used is None else str(k_used)
        out.append(f"{method},{b},{d},{metric},{score_s},{k_s}")
    return "\n".join(out) + "\n"


def _render_markdown(rows) -> str:
    header = ("method", "battery", "dataset", "metric", "score", "k_used")
    table = [header]
    for method, b, d, metric, score, k_used in rows:
        score_s = "NA" if score is None else f"{score:.2f}"
        k_s = "NA" if k_used is None else str(k_used)
        table.append((method, b, d, metric, score_s, k_s))
    widths = [max(len(r[c]) for r in table) for c in range(len(header))]
    lines = []
    for i, row in enumerate(table):
        cells = [row[c].ljust(widths[c]) for c in range(len(header))]
        lines.append("| " + " | ".join(cells) + " |")
        if i == 0:
            lines.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
    return "\n".join(lines) + "\n"


def cmd_score(args) -> int:
    data_root = _require(args.data, "--data", "CLUBENCH_DATA")
    results_root = _require(args.results, "--results", "CLUBENCH_RESULTS")
    groups = args.method or [""]
    variants = sorted(
        {v for g in groups for v in list_result_methods(results_root, g)}
    )
    pairs = _select_pairs(data_root, args.battery, args.dataset)
    rows = []
    missing = 0
    for b, d in pairs:
        ds = load_dataset(data_root, b, d)
        ks = sorted(set(ds.n_clusters))
        for variant in variants:
            loaded = load_results(results_root, variant, b, d, ks).get(variant)
            if loaded is None:
                rows.append((variant, b, d, args.metric, None, None))
                missing += 1
                continue
            scored = score_all(ds.labellings, loaded, args.metric)
            best_k, best = max(
                ((k, s) for k, s in scored), key=lambda ks_s: ks_s[1]
            )
            rows.append((variant, b, d, args.metric, best, best_k))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    text = _render_csv(rows) if args.format == "csv" else _render_markdown(rows)
    sys.stdout.write(text)
    if missing:
        print(f"warning: {missing} row(s) have no stored results", file=sys.stderr)
    return 0


def cmd_plot(args) -> int:
    data_root = _require(args.data, "--data", "CLUBENCH_DATA")
    ds = load_dataset(data_root, args.battery, args.dataset)
    if ds.d < 2:
        raise BadDimension(f"{ds.name} has d={ds.d}; plotting needs d >= 2")
    if args.labels is not None:
        if not 0 <= args.labels < len(ds.labellings):
            raise MissingLabels(
                f"{ds.name} has labellings 0..{len(ds.labellings) - 1}, not {args.labels}"
            )
        labels = ds.labellings[args.labels].labels
        title = f"{ds.name} labels{args.labels}"
    else:
        results_root = _require(args.results, "--results", "CLUBENCH_RESULTS")
        loaded = load_results(
            results_root, args.method, args.battery, args.dataset, [args.k]
        ).get(args.method)
        if loaded is None:
            raise MissingK(f"no stored {args.method} partition for k={args.k}")
        labels = loaded[args.k]
        title = f"{ds.name} {args.method} k={args.k}"
    svg = scatter_svg(ds.data, labels, title=title)
    Path(args.out).write_bytes(svg.encode("utf-8"))
    return 0


def cmd_confusion(args) -> int:
    data_root = _require(args.data, "--data", "CLUBENCH_DATA")
    results_root = _require(args.results, "--results", "CLUBENCH_RESULTS")
    ds = load_dataset(data_root, args.battery, args.dataset)
    reference = None
    ref_index = None
    for j, lab in enumerate(ds.labellings):
        if lab.n_clusters == args.k:
            reference, ref_index = lab, j
            break
    if reference is None:
        raise MissingK(f"{ds.name} has no reference labelling with k={args.k}")
    loaded = load_results(
        results_root, args.method, args.battery, args.dataset, [args.k]
    ).get(args.method)
    if loaded is None:
        raise MissingK(f"no stored {args.method} partition for {ds.name} k={args.k}")
    y_pred = loaded[args.k]

    y_ref, y_kept = filter_noise(reference, y_pred)
    C = confusion_matrix(y_ref, y_kept, n_pred_clusters=args.k).counts
    noise_counts = np.bincount(
        y_pred[reference.labels == 0] - 1, minlength=args.k
    ) if reference.has_noise else None

    print(f"{ds.name}: reference labels{ref_index} (k={args.k}) vs {args.method}")
    width = max(
        5,
        len(str(int(C.max()))),
        len(str(int(noise_counts.max()))) if noise_counts is not None else 1,
    )
    head = "".join(f"p{j + 1}".rjust(width + 2) for j in range(args.k))
    print(" " * 7 + head)
    if noise_counts is not None:
        cells = "".join(str(int(v)).rjust(width + 2) for v in noise_counts)
        print("noise  " + cells + "   (excluded from scoring)")
    for i in range(C.shape[0]):
        cells = "".join(str(int(v)).rjust(width + 2) for v in C[i])
        print(f"r{i + 1}".ljust(7) + cells)
    score = score_one(reference, y_pred, "nca")
    print(f"nca = {score:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clubench",
        description="Benchmark clustering algorithms against reference labellings.",
    )
    parser.add_argument("--version", action="version", version=f"clubench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, results=False):
        p.add_argument("--data", default=os.environ.get("CLUBENCH_DATA"), help="benchmark data root")
        if results:
            p.add_argument(
                "--results", default=os.environ.get("CLUBENCH_RESULTS"), help="results tree root"
            )

    p_list = sub.add_parser("list", help="enumerate battery/dataset  n  d  ks")
    add_common(p_list)
    p_list.add_argument("--battery", action="append")
    p_list.add_argument("--dataset", action="append")
    p_list.set_defaults(func=cmd_list)

    p_run = sub.add_parser("run", help="cluster datasets and store the partitions")
    add_common(p_run, results=True)
    p_run.add_argument("--method", required=True, help="kmeans|single|complete|average or exec:\"cmd {data} {k}\"")
    p_run.add_argument("--name", help="method id for the results tree (required for exec:)")
    p_run.add_argument("--battery", action="append")
    p_run.add_argument("--dataset", action="append")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--workers", type=int, default=1)
    p_run.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="external method timeout (s)")
    p_run.set_defaults(func=cmd_run)

    p_score = sub.add_parser("score", help="score stored partitions against the references")
    add_common(p_score, results=True)
    p_score.add_argument("--method", action="append", help="method group prefix (repeatable; default all)")
    p_score.add_argument("--metric", choices=METRIC_IDS, default="nca")
    p_score.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p_score.add_argument("--battery", action="append")
    p_score.add_argument("--dataset", action="append")
    p_score.set_defaults(func=cmd_score)

    p_plot = sub.add_parser("plot", help="write an SVG scatterplot")
    add_common(p_plot, results=True)
    p_plot.add_argument("--battery", required=True)
    p_plot.add_argument("--dataset", required=True)
    src = p_plot.add_mutually_exclusive_group(required=True)
    src.add_argument("--labels", type=int, help="reference labelling index")
    src.add_argument("--method", help="stored method variant (with --k)")
    p_plot.add_argument("--k", type=int, help="cluster count of the stored partition")
    p_plot.add_argument("--out", required=True)
    p_plot.set_defaults(func=cmd_plot)

    p_conf = sub.add_parser("confusion", help="print a confusion matrix vs the matching-k reference")
    add_common(p_conf, results=True)
    p_conf.add_argument("--method", required=True)
    p_conf.add_argument("--battery", required=True)
    p_conf.add_argument("--dataset", required=True)
    p_conf.add_argument("--k", type=int, required=True)
    p_conf.set_defaults(func=cmd_confusion)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "plot" and args.method is not None and args.k is None:
        parser.error("--method needs --k")
    try:
        return args.func(args)
    except ClubenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
