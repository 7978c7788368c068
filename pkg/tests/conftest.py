from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `import oracles`

REPO = Path(__file__).resolve().parent.parent
MINIDATA = REPO / "minidata"
UI_EXPORTS = Path(__file__).resolve().parent / "fixtures" / "ui_exports"


@pytest.fixture(scope="session")
def minidata() -> Path:
    assert MINIDATA.is_dir(), "bundled mini battery missing; run scripts/make_minidata.py"
    return MINIDATA


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(1234))


def write_dataset_text(root: Path, battery: str, dataset: str, data_lines, labels_by_index) -> None:
    """Write plain-text fixture files (the loader accepts the uncompressed form)."""
    d = root / battery
    d.mkdir(parents=True, exist_ok=True)
    (d / f"{dataset}.data").write_text("".join(f"{line}\n" for line in data_lines))
    for j, labels in labels_by_index.items():
        (d / f"{dataset}.labels{j}").write_text("".join(f"{v}\n" for v in labels))
