"""Regenerate the bundled demo battery under minidata/.

Plain-text (uncompressed) files so they stay readable in the repository;
the loader accepts both forms.  Deterministic: fixed PCG64 seed.
"""

from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent / "minidata"


def write(path: Path, lines) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(f"{line}\n" for line in lines), newline="\n")


def fmt(row) -> str:
    return " ".join(repr(float(v)) for v in row)


def gauss3() -> None:
    rng = np.random.Generator(np.random.PCG64(20220901))
    centers = np.array([[0.0, 0.0], [3.2, 0.0], [1.2, 2.8]])
    pts = np.vstack([rng.normal(c, 0.85, size=(40, 2)) for c in centers])
    labels0 = np.repeat([1, 2, 3], 40)
    # alternative view: split the third blob in two, mark stragglers as noise
    labels1 = labels0.copy()
    labels1[(labels0 == 3) & (pts[:, 0] >= 1.5)] = 4
    dist = np.linalg.norm(pts - centers[labels0 - 1], axis=1)
    labels1[np.argsort(dist)[-8:]] = 0
    for lab in (1, 2, 3, 4):  # keep the labelling valid whatever noise removed
        assert (labels1 == lab).any()
    write(ROOT / "mini" / "gauss3.data", [fmt(p) for p in pts])
    write(ROOT / "mini" / "gauss3.labels0", [str(v) for v in labels0])
    write(ROOT / "mini" / "gauss3.labels1", [str(v) for v in labels1])


def pair() -> None:
    pts = [(0, 0), (0, 1), (0.5, 0.5), (10, 10), (10, 11), (10.5, 10.5)]
    write(ROOT / "mini" / "pair.data", [fmt(p) for p in pts])
    write(ROOT / "mini" / "pair.labels0", ["1", "1", "1", "2", "2", "2"])
    write(ROOT / "mini" / "pair.labels1", ["1", "1", "1", "2", "2", "3"])


def chain() -> None:
    xs = [0, 1, 2, 3, 10, 11, 12, 13]
    write(ROOT / "toy" / "chain.data", [fmt((x, 0.0)) for x in xs])
    write(ROOT / "toy" / "chain.labels0", ["1"] * 4 + ["2"] * 4)


def noisy() -> None:
    pts = [
        (0, 0), (0, 0.5), (0.5, 0), (5, 5), (5, 5.5), (5.5, 5),
        (2.5, 2.5), (2.6, 2.4), (0, 5), (5, 0),
    ]
    write(ROOT / "toy" / "noisy.data", [fmt(p) for p in pts])
    write(ROOT / "toy" / "noisy.labels0", ["1", "1", "1", "2", "2", "2", "0", "0", "0", "0"])


if __name__ == "__main__":
    gauss3()
    pair()
    chain()
    noisy()
    print(f"wrote {ROOT}")
