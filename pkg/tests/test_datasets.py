import pytest

from freqspec.dataset import BitVector
from freqspec.datasets import (
    DATASETS,
    _build_chess_like,
    _build_mushroom_like,
    build_dataset,
    dataset_names,
    exact_fixture_from_json,
    exact_fixture_to_json,
    load_exact_fixture,
)
from freqspec.spectrum import exact_spectrum


class TestRegistry:
    def test_names(self):
        assert dataset_names() == ["mammals_like", "chess_like", "mushroom_like"]

    def test_shapes_match_built_data(self):
        for name, info in DATASETS.items():
            db = build_dataset(name)
            assert (db.n_rows, db.n_attrs) == (info.n_rows, info.n_attrs), name

    def test_build_is_cached(self):
        assert build_dataset("chess_like") is build_dataset("chess_like")

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            build_dataset("nope")
        with pytest.raises(KeyError):
            load_exact_fixture("nope")


class TestDataQuality:
    @pytest.mark.parametrize("name", list(DATASETS))
    def test_no_blank_rows_and_no_empty_columns(self, name):
        db = build_dataset(name)
        union = 0
        for col in db.columns:
            assert col.popcount() >= 1
            union |= col.bits
        assert BitVector(bits=union, n_bits=db.n_rows).popcount() == db.n_rows

    def test_generators_deterministic(self):
        assert _build_chess_like() == _build_chess_like()
        assert _build_mushroom_like() == _build_mushroom_like()


class TestSpectrumAnchors:
    def test_mammals_nested_tower_counts(self):
        db = build_dataset("mammals_like")
        ex = exact_spectrum(db, sigma_min=500)
        # 10 columns cover >= 1000 rows and 20 cover >= 500; every subset of
        # a nested tower is frequent at the depth it survives to
        assert ex.count_at(1000) == 2**10
        assert ex.count_at(500) == 2**20

    @pytest.mark.parametrize("name", list(DATASETS))
    def test_fixture_matches_live_enumeration(self, name):
        info = DATASETS[name]
        fixture = load_exact_fixture(name)
        live = exact_spectrum(build_dataset(name), sigma_min=info.exact_sigma_min)
        assert fixture == live


class TestFixtureSerialization:
    def test_round_trip(self):
        ex = exact_spectrum(build_dataset("chess_like"), sigma_min=2500)
        text = exact_fixture_to_json("chess_like", ex)
        assert exact_fixture_from_json(text) == ex
