import random
from fractions import Fraction

import pytest

from freqspec.dataset import BitVector, TransactionDatabase, support_of_intersection
from freqspec.sampler import (
    PathSample,
    derive_path_rng,
    mix_seed,
    path_estimate_lattice,
    path_estimate_tree,
    sample_path,
)

from conftest import (
    brute_force_count,
    correlated_pair_db,
    db_from_rows,
    exhaust_paths,
    random_rows,
)


def count_regular_tree(b: int, h: int) -> int:
    """Node count of the complete b-ary tree of height h, built explicitly."""

    def grow(depth: int) -> int:
        if depth == h:
            return 1
        return 1 + sum(grow(depth + 1) for _ in range(b))

    return grow(0)


class TestTreeEstimate:
    def test_empty_path(self):
        assert path_estimate_tree(()) == 1.0

    def test_worked_example(self):
        assert path_estimate_tree((3, 2)) == 10.0

    def test_regular_trees(self):
        # in a complete b-ary tree every root-to-leaf path sees branching b at
        # each level, so the single path value must equal the exact node count
        for b in range(1, 4):
            for h in range(0, 5):
                assert path_estimate_tree((b,) * h) == count_regular_tree(b, h)

    def test_rejects_nonpositive_degree(self):
        with pytest.raises(ValueError):
            path_estimate_tree((2, 0))


class TestLatticeEstimate:
    def test_empty_path(self):
        assert path_estimate_lattice(()) == 1.0

    def test_depth_one_matches_tree(self):
        assert path_estimate_lattice((3,)) == 4.0
        assert path_estimate_tree((3,)) == 4.0

    def test_worked_example(self):
        # 1 + 2/1! + (2*1)/2! = 4
        assert path_estimate_lattice((2, 1)) == 4.0

    def test_matches_factorial_form(self):
        rng = random.Random(5)
        for _ in range(200):
            d = tuple(rng.randrange(1, 9) for _ in range(rng.randrange(0, 8)))
            expected = Fraction(1)
            prod = 1
            fact = 1
            for j, dj in enumerate(d, start=1):
                prod *= dj
                fact *= j
                expected += Fraction(prod, fact)
            assert path_estimate_lattice(d) == pytest.approx(float(expected), rel=1e-12)

    def test_never_exceeds_tree(self):
        rng = random.Random(6)
        for _ in range(200):
            d = tuple(rng.randrange(1, 6) for _ in range(rng.randrange(1, 7)))
            lat = path_estimate_lattice(d)
            tree = path_estimate_tree(d)
            assert lat <= tree + 1e-9
            if len(d) == 1:
                assert lat == tree

    def test_rejects_nonpositive_degree(self):
        with pytest.raises(ValueError):
            path_estimate_lattice((0,))


class TestMixSeed:
    def test_deterministic(self):
        assert mix_seed(123, 45) == mix_seed(123, 45)

    def test_stream_repeatability(self):
        a = derive_path_rng(99, 3)
        b = derive_path_rng(99, 3)
        assert [a.getrandbits(64) for _ in range(5)] == [
            b.getrandbits(64) for _ in range(5)
        ]

    def test_no_collisions_across_paths(self):
        seeds = {mix_seed(1, k) for k in range(10_000)}
        assert len(seeds) == 10_000

    def test_no_collisions_across_master_seeds(self):
        seeds = {mix_seed(s, 1) for s in range(10_000)}
        assert len(seeds) == 10_000

    def test_adjacent_streams_diverge(self):
        draws = {derive_path_rng(0, k).getrandbits(64) for k in range(1000)}
        assert len(draws) == 1000

    def test_wraps_at_64_bits(self):
        assert 0 <= mix_seed(2**64 - 1, 2**63) < 2**64


class TestSamplePath:
    def test_single_column(self):
        db = db_from_rows([{1}, {1}, {1}, {1}, {1}], 5)
        s = sample_path(db, 3, derive_path_rng(0, 0))
        assert s.branching == (1,)
        assert s.items == (0,)
        assert s.estimate == 2.0

    def test_correlated_pair_every_seed(self):
        db = correlated_pair_db()
        for k in range(50):
            s = sample_path(db, 2, derive_path_rng(9, k))
            assert s.branching == (2, 1)
            assert s.estimate == 4.0
            assert s.depth == 2

    def test_sigma_above_max_support(self):
        db = correlated_pair_db()
        s = sample_path(db, 5, derive_path_rng(0, 0))
        assert s.branching == ()
        assert s.items == ()
        assert s.estimate == 1.0

    def test_sigma_bounds(self):
        db = correlated_pair_db()
        with pytest.raises(ValueError):
            sample_path(db, 0, derive_path_rng(0, 0))
        with pytest.raises(ValueError):
            sample_path(db, 9, derive_path_rng(0, 0))

    def test_replay_realizable(self):
        # every step's recorded branching must equal the number of frequent
        # one-item extensions of the prefix, and the chosen item must be one
        rng = random.Random(17)
        for trial in range(25):
            rows = random_rows(rng, rng.randrange(4, 20), rng.randrange(2, 7), 0.5)
            db = db_from_rows(rows)
            sigma = rng.randrange(1, db.n_rows + 1)
            s = sample_path(db, sigma, derive_path_rng(5, trial))
            mask = BitVector.ones(db.n_rows)
            chosen: set[int] = set()
            for step, item in enumerate(s.items):
                ext = [
                    j
                    for j in range(db.n_attrs)
                    if j not in chosen
                    and support_of_intersection(db, mask, j) >= sigma
                ]
                assert s.branching[step] == len(ext)
                assert item in ext
                chosen.add(item)
                mask = mask & db.columns[item]
            # path must terminate only at the border
            ext = [
                j
                for j in range(db.n_attrs)
                if j not in chosen and support_of_intersection(db, mask, j) >= sigma
            ]
            assert ext == []

    def test_observed_sequences_are_enumerated(self):
        rng = random.Random(31)
        rows = random_rows(rng, 8, 4, 0.6)
        db = db_from_rows(rows)
        sigma = 3
        valid = {branching for branching, _ in exhaust_paths(rows, sigma)}
        seen = {
            sample_path(db, sigma, derive_path_rng(2, k)).branching for k in range(300)
        }
        assert seen <= valid

    def test_deterministic_given_rng(self):
        rng = random.Random(41)
        rows = random_rows(rng, 12, 6, 0.5)
        db = db_from_rows(rows)
        a = sample_path(db, 2, derive_path_rng(8, 8))
        b = sample_path(db, 2, derive_path_rng(8, 8))
        assert a == b


class TestUnbiasedness:
    def test_small_instances(self):
        # expectation over all paths, with exact probabilities, must equal the
        # exact frequent-itemset count (empty set included)
        rng = random.Random(101)
        for _ in range(8):
            rows = random_rows(rng, rng.randrange(3, 10), rng.randrange(2, 5), 0.6)
            for sigma in range(1, len(rows) + 1):
                expected = Fraction(0)
                for branching, prob in exhaust_paths(rows, sigma):
                    expected += prob * Fraction(path_estimate_lattice(branching))
                exact = brute_force_count(rows, sigma, include_empty=True)
                assert abs(float(expected) - exact) < 1e-9

    def test_max_depth_shrinks_with_sigma(self):
        rng = random.Random(55)
        rows = random_rows(rng, 10, 5, 0.7)
        depths = []
        for sigma in range(1, 11):
            paths = exhaust_paths(rows, sigma)
            depths.append(max(len(b) for b, _ in paths))
        assert depths == sorted(depths, reverse=True)


class TestPathSample:
    def test_depth_property(self):
        s = PathSample(sigma=2, branching=(2, 1), items=(0, 1), estimate=4.0)
        assert s.depth == 2

    def test_frozen(self):
        s = PathSample(sigma=2, branching=(), items=(), estimate=1.0)
        with pytest.raises(AttributeError):
            s.sigma = 3
