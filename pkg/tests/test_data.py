from __future__ import annotations

import gzip

import numpy as np
import pytest

from clubench.data import (
    BenchmarkDataset,
    ReferenceLabelling,
    list_batteries,
    list_datasets,
    load_dataset,
    save_dataset,
    validate_labelling,
)
from clubench.errors import InvariantError, LabelError, MissingDataset, MissingRoot, ParseError

from conftest import write_dataset_text


def make_dataset(battery="bat", dataset="ds", data=None, labellings=None) -> BenchmarkDataset:
    if data is None:
        data = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    if labellings is None:
        labellings = (ReferenceLabelling.from_labels([1, 1, 2]),)
    return BenchmarkDataset(battery=battery, dataset=dataset, data=data, labellings=labellings)


class TestValidateLabelling:
    def test_basic(self):
        assert validate_labelling(np.array([1, 2, 0, 2, 1])) == 2

    def test_k_below_two(self):
        with pytest.raises(LabelError, match="k = 1"):
            validate_labelling(np.array([1, 1, 1]))

    def test_gap(self):
        with pytest.raises(LabelError, match="1 missing|id 1"):
            validate_labelling(np.array([0, 0, 2, 2]))

    def test_negative(self):
        with pytest.raises(LabelError, match="negative"):
            validate_labelling(np.array([1, -1, 2]))

    def test_all_noise(self):
        with pytest.raises(LabelError):
            validate_labelling(np.array([0, 0, 0]))


class TestListBatteries:
    def test_sorted(self, tmp_path):
        for b in ("wut", "fcps", "graves"):
            write_dataset_text(tmp_path, b, "x", ["0 0", "1 1", "2 2"], {0: [1, 1, 2]})
        assert list_batteries(tmp_path) == ["fcps", "graves", "wut"]

    def test_empty(self, tmp_path):
        assert list_batteries(tmp_path) == []

    def test_missing_root(self, tmp_path):
        with pytest.raises(MissingRoot):
            list_batteries(tmp_path / "nope")

    def test_dir_without_datasets_excluded(self, tmp_path):
        (tmp_path / "empty").mkdir()
        write_dataset_text(tmp_path, "full", "x", ["0 0", "1 1", "2 2"], {0: [1, 1, 2]})
        assert list_batteries(tmp_path) == ["full"]
        assert list_datasets(tmp_path, "full") == ["x"]


class TestLoadDataset:
    def test_minimal(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "1 1", "2 2"], {0: [1, 1, 2]})
        ds = load_dataset(tmp_path, "b", "d")
        assert (ds.n, ds.d) == (3, 2)
        assert ds.n_clusters == [2]
        assert np.array_equal(ds.data, [[0, 0], [1, 1], [2, 2]])

    def test_multiple_labellings_consecutive(self, tmp_path):
        write_dataset_text(
            tmp_path, "b", "d", ["0 0", "1 1", "2 2"],
            {0: [1, 1, 2], 1: [0, 1, 2], 3: [1, 2, 2]},
        )
        ds = load_dataset(tmp_path, "b", "d")
        # labels3 is not consecutive with labels1 and must be ignored
        assert ds.n_clusters == [2, 2]
        assert ds.labellings[1].has_noise

    def test_label_gap(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "1 1", "2 2"], {0: [1, 3, 3]})
        with pytest.raises(LabelError):
            load_dataset(tmp_path, "b", "d")

    def test_label_length_mismatch(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "1 1", "2 2"], {0: [1, 2]})
        with pytest.raises(LabelError):
            load_dataset(tmp_path, "b", "d")

    def test_missing(self, tmp_path):
        with pytest.raises(MissingDataset):
            load_dataset(tmp_path, "b", "nothere")

    def test_data_without_labels0_missing(self, tmp_path):
        (tmp_path / "b").mkdir()
        (tmp_path / "b" / "d.data").write_text("0 0\n1 1\n")
        with pytest.raises(MissingDataset):
            load_dataset(tmp_path, "b", "d")

    def test_comments_blanks_tabs_crlf_scientific(self, tmp_path):
        (tmp_path / "b").mkdir()
        (tmp_path / "b" / "d.data").write_bytes(
            b"% comment\r\n# another\r\n1e-3\t2.5E+2\r\n\r\n-1.25 .5\r\n"
        )
        (tmp_path / "b" / "d.labels0").write_bytes(b"# c\r\n1\r\n2\r\n")
        ds = load_dataset(tmp_path, "b", "d")
        assert np.allclose(ds.data, [[0.001, 250.0], [-1.25, 0.5]])

    def test_ragged_rows(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "1 1 1", "2 2"], {0: [1, 1, 2]})
        with pytest.raises(ParseError, match="fields"):
            load_dataset(tmp_path, "b", "d")

    def test_malformed_number(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "1 x", "2 2"], {0: [1, 1, 2]})
        with pytest.raises(ParseError, match="malformed"):
            load_dataset(tmp_path, "b", "d")

    def test_non_finite_coordinate(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "nan 1", "2 2"], {0: [1, 1, 2]})
        with pytest.raises(ParseError, match="non-finite"):
            load_dataset(tmp_path, "b", "d")

    def test_gzip_preferred_and_equivalent(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "1 1", "2 2"], {0: [1, 1, 2]})
        with gzip.open(tmp_path / "b" / "d.data.gz", "wt") as fh:
            fh.write("5 5\n6 6\n7 7\n")
        ds = load_dataset(tmp_path, "b", "d")
        assert ds.data[0, 0] == 5.0  # .gz wins over the plain file

    def test_repeated_loads_identical(self, minidata):
        a = load_dataset(minidata, "mini", "gauss3")
        b = load_dataset(minidata, "mini", "gauss3")
        assert np.array_equal(a.data, b.data)
        assert a.labellings == b.labellings

    def test_bad_name(self, tmp_path):
        with pytest.raises(InvariantError, match="name"):
            load_dataset(tmp_path, "No-Caps", "d")


class TestSaveDataset:
    def test_round_trip_exact_and_idempotent(self, tmp_path):
        data = np.array([[0.1, 1e-17], [-2.5, 3.0], [1 / 3, -0.0]])
        ds = make_dataset(data=data, labellings=(
            ReferenceLabelling.from_labels([1, 1, 2]),
            ReferenceLabelling.from_labels([0, 1, 2]),
        ))
        save_dataset(tmp_path, ds)
        assert (tmp_path / "bat" / "ds.labels1.gz").is_file()
        back = load_dataset(tmp_path, "bat", "ds")
        assert np.array_equal(back.data, ds.data)
        assert back.labellings == ds.labellings
        first = (tmp_path / "bat" / "ds.data.gz").read_bytes()
        save_dataset(tmp_path, back)
        assert (tmp_path / "bat" / "ds.data.gz").read_bytes() == first

    def test_nan_rejected_at_construction(self):
        with pytest.raises(InvariantError, match="non-finite"):
            make_dataset(data=np.array([[0.0, np.nan], [1, 1], [2, 2]]))

    def test_save_revalidates_mutated_object(self, tmp_path):
        ds = make_dataset()
        hacked = np.array(ds.data)
        hacked[0, 0] = np.inf
        object.__setattr__(ds, "data", hacked)
        with pytest.raises(InvariantError):
            save_dataset(tmp_path, ds)

    def test_random_round_trips(self, tmp_path, rng):
        for case in range(25):
            n = int(rng.integers(1, 30))
            d = int(rng.integers(1, 5))
            data = rng.normal(scale=10.0 ** rng.integers(-12, 12), size=(n, d))
            if n >= 2:
                labels = rng.integers(1, 3, size=n)
                labels[0], labels[1] = 1, 2
            else:
                continue
            ds = make_dataset(dataset=f"r{case}", data=data,
                              labellings=(ReferenceLabelling.from_labels(labels),))
            save_dataset(tmp_path, ds)
            back = load_dataset(tmp_path, "bat", f"r{case}")
            assert np.array_equal(back.data, ds.data)
            assert back.labellings == ds.labellings


class TestDatasetInvariants:
    def test_labelling_length_checked(self):
        with pytest.raises(InvariantError, match="entries"):
            make_dataset(labellings=(ReferenceLabelling.from_labels([1, 2]),))

    def test_needs_labellings(self):
        with pytest.raises(InvariantError):
            make_dataset(labellings=())

    def test_data_immutable(self):
        ds = make_dataset()
        with pytest.raises(ValueError):
            ds.data[0, 0] = 9.0


class TestParserHardening:
    def test_huge_label_rejected_not_crashing(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "1 1"], {0: [1, "99999999999999999999"]})
        with pytest.raises(ParseError):
            load_dataset(tmp_path, "b", "d")

    def test_underscored_integer_rejected(self, tmp_path):
        write_dataset_text(tmp_path, "b", "d", ["0 0", "1 1"], {0: ["1_0", 2]})
        with pytest.raises(ParseError):
            load_dataset(tmp_path, "b", "d")

    def test_list_datasets_missing_battery(self, tmp_path):
        with pytest.raises(MissingDataset):
            list_datasets(tmp_path, "ghost")
