import random

import pytest

from freqspec.dataset import (
    BitVector,
    TransactionDatabase,
    column_marginals,
    parse_fimi,
    randomize_marginals,
    support_of_intersection,
    to_fimi,
)
from freqspec.errors import FimiParseError

from conftest import db_from_rows, random_rows


class TestBitVector:
    def test_from_indices_roundtrip(self):
        v = BitVector.from_indices(10, [0, 3, 9])
        assert v.popcount() == 3
        assert list(v.indices()) == [0, 3, 9]
        assert v.get(0) and v.get(3) and v.get(9)
        assert not v.get(1)

    def test_out_of_range_bits_rejected(self):
        with pytest.raises(ValueError):
            BitVector(bits=1 << 5, n_bits=5)

    def test_from_indices_out_of_range(self):
        with pytest.raises(ValueError):
            BitVector.from_indices(4, [4])
        with pytest.raises(ValueError):
            BitVector.from_indices(4, [-1])

    def test_and_requires_same_length(self):
        a = BitVector.ones(4)
        b = BitVector.ones(5)
        with pytest.raises(ValueError):
            a & b

    def test_words_cover_all_bits(self):
        # popcount computed three ways must agree, including past word 0
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randrange(1, 300)
            idx = [i for i in range(n) if rng.random() < 0.4]
            v = BitVector.from_indices(n, idx)
            naive = sum(1 for i in range(n) if v.get(i))
            by_words = sum(w.bit_count() for w in v.words)
            assert v.popcount() == naive == by_words == len(idx)
            rebuilt = 0
            for k, w in enumerate(v.words):
                assert w >> 64 == 0
                rebuilt |= w << (64 * k)
            assert rebuilt == v.bits


class TestParse:
    def test_basic(self):
        db = parse_fimi("1 3\n2 3\n")
        assert db.n_rows == 2
        assert db.n_attrs == 3
        assert db.item_labels == (1, 2, 3)
        by_label = dict(zip(db.item_labels, db.supports))
        assert by_label == {1: 1, 2: 1, 3: 2}

    def test_duplicate_items_within_row(self):
        db = parse_fimi("5 5 5\n")
        assert db.n_rows == 1
        assert db.n_attrs == 1
        assert db.supports == (1,)

    def test_whitespace_variants(self):
        db = parse_fimi("1\t2\r\n  2   3  \n")
        assert db.n_rows == 2
        assert db.item_labels == (1, 2, 3)

    def test_blank_lines_skipped(self):
        db = parse_fimi("1 2\n\n   \n2\n")
        assert db.n_rows == 2

    def test_sparse_ids_densified(self):
        db = parse_fimi("7 5000\n7\n")
        assert db.item_labels == (7, 5000)
        assert db.supports == (2, 1)
        assert db.columns[0].popcount() == 2

    def test_item_id_zero_allowed(self):
        db = parse_fimi("0 1\n0\n")
        assert db.item_labels == (0, 1)
        assert db.supports == (2, 1)

    def test_non_integer_token(self):
        with pytest.raises(FimiParseError) as ei:
            parse_fimi("1 2\nx 3\n")
        assert ei.value.line == 2
        assert "line 2" in str(ei.value)

    def test_negative_id(self):
        with pytest.raises(FimiParseError) as ei:
            parse_fimi("1\n-2\n")
        assert ei.value.line == 2

    def test_empty_input(self):
        with pytest.raises(FimiParseError):
            parse_fimi("")
        with pytest.raises(FimiParseError):
            parse_fimi("\n  \n")

    def test_accepts_line_iterable(self):
        db = parse_fimi(["1 2", "2 3"])
        assert db.n_rows == 2
        assert db.n_attrs == 3

    def test_rows_reconstruction(self):
        db = parse_fimi("3 1\n2\n1 2 3\n")
        assert db.rows() == [[1, 3], [2], [1, 2, 3]]


class TestRoundTrip:
    def test_examples(self):
        for text in ("1 3\n2 3\n", "0 9\n9\n0\n", "4\n4\n4\n"):
            db = parse_fimi(text)
            assert parse_fimi(to_fimi(db)) == db

    def test_random(self):
        rng = random.Random(7)
        for _ in range(30):
            rows = random_rows(rng, rng.randrange(1, 12), rng.randrange(1, 8), 0.5)
            rows = [r for r in rows if r] or [{1}]
            text = "\n".join(" ".join(str(i) for i in sorted(r)) for r in rows)
            db = parse_fimi(text)
            assert parse_fimi(to_fimi(db)) == db


class TestIntersection:
    def test_pairwise(self):
        db = parse_fimi("1 2\n1\n2\n")
        # only row 0 holds both items
        col1 = db.columns[db.item_labels.index(1)]
        assert support_of_intersection(db, col1, db.item_labels.index(2)) == 1

    def test_identity_mask(self):
        db = parse_fimi("1 2\n1\n2\n")
        full = BitVector.ones(db.n_rows)
        for j in range(db.n_attrs):
            assert support_of_intersection(db, full, j) == db.supports[j]

    def test_zero_mask(self):
        db = parse_fimi("1 2\n1\n2\n")
        empty = BitVector.zeros(db.n_rows)
        for j in range(db.n_attrs):
            assert support_of_intersection(db, empty, j) == 0

    def test_attr_out_of_range(self):
        db = parse_fimi("1\n")
        with pytest.raises(ValueError):
            support_of_intersection(db, BitVector.ones(1), 1)

    def test_mask_length_mismatch(self):
        db = parse_fimi("1\n1\n")
        with pytest.raises(ValueError):
            support_of_intersection(db, BitVector.ones(3), 0)

    def test_matches_row_scan(self):
        rng = random.Random(3)
        for _ in range(20):
            rows = random_rows(rng, 10, 5, 0.5)
            db = db_from_rows(rows)
            j = rng.randrange(db.n_attrs)
            mask = db.columns[rng.randrange(db.n_attrs)]
            label = db.item_labels[j]
            mask_rows = set(mask.indices())
            expected = sum(1 for r in mask_rows if label in rows[r])
            assert support_of_intersection(db, mask, j) == expected


class TestMarginals:
    def test_simple(self):
        db = parse_fimi("1\n1\n2\n")
        assert column_marginals(db) == (2, 1)

    def test_sum_equals_token_count(self):
        rng = random.Random(19)
        rows = random_rows(rng, 40, 9, 0.3)
        rows = [r for r in rows if r]
        db = db_from_rows(rows, n_rows=len(rows))
        assert sum(column_marginals(db)) == sum(len(r) for r in rows)

    def test_no_zero_support_columns(self):
        db = parse_fimi("1 2\n2\n")
        assert all(s >= 1 for s in column_marginals(db))


class TestRandomize:
    def _db(self):
        rng = random.Random(23)
        return db_from_rows(random_rows(rng, 30, 8, 0.4))

    def test_preserves_marginals_and_shape(self):
        db = self._db()
        shuffled = randomize_marginals(db, seed=42)
        assert shuffled.n_rows == db.n_rows
        assert shuffled.n_attrs == db.n_attrs
        assert shuffled.item_labels == db.item_labels
        assert column_marginals(shuffled) == column_marginals(db)

    def test_same_seed_identical(self):
        db = self._db()
        assert randomize_marginals(db, 7) == randomize_marginals(db, 7)

    def test_different_seeds_differ(self):
        db = self._db()
        assert randomize_marginals(db, 7) != randomize_marginals(db, 8)

    def test_changes_content(self):
        db = self._db()
        shuffled = randomize_marginals(db, seed=1)
        assert shuffled.columns != db.columns

    def test_overlap_expectation(self):
        # two columns of support 4 over 8 rows; after independent shuffles the
        # chance their overlap is >= 2 is 1 - [C(4,4) + C(4,1)C(4,3)] / C(8,4)
        # = 1 - 17/70 = 53/70, so the indicator's mean over many seeds must
        # land near 53/70 ~ 0.7571
        col = BitVector.from_indices(8, [0, 1, 2, 3])
        db = TransactionDatabase.from_columns([col, col], [1, 2], 8)
        hits = 0
        trials = 1000
        for seed in range(trials):
            sh = randomize_marginals(db, seed)
            if (sh.columns[0] & sh.columns[1]).popcount() >= 2:
                hits += 1
        assert abs(hits / trials - 53 / 70) < 0.05


class TestFromColumns:
    def test_label_column_length_mismatch(self):
        with pytest.raises(ValueError):
            TransactionDatabase.from_columns([BitVector.ones(2)], [1, 2], 2)

    def test_duplicate_labels(self):
        c = BitVector.ones(2)
        with pytest.raises(ValueError):
            TransactionDatabase.from_columns([c, c], [1, 1], 2)

    def test_empty_column_rejected(self):
        with pytest.raises(ValueError):
            TransactionDatabase.from_columns([BitVector.zeros(2)], [1], 2)

    def test_column_length_mismatch(self):
        with pytest.raises(ValueError):
            TransactionDatabase.from_columns([BitVector.ones(3)], [1], 2)
