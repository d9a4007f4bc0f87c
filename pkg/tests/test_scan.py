import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inthist.errors import ParameterError, ScanOverflowError
from inthist.scan import (
    blocked_scan,
    exclusive_scan,
    inclusive_scan,
    scan_cols,
    scan_rows,
    transpose,
)

small_seqs = st.lists(st.integers(min_value=0, max_value=1000), max_size=300)


def naive_inclusive(xs):
    out, acc = [], 0
    for x in xs:
        acc += x
        out.append(acc)
    return out


class TestFlatScans:
    def test_empty(self):
        assert inclusive_scan([]).tolist() == []
        assert exclusive_scan([]).tolist() == []

    def test_counting(self):
        assert inclusive_scan([1, 1, 1, 1]).tolist() == [1, 2, 3, 4]

    def test_fixed_example(self):
        got = inclusive_scan([3, 1, 7, 0, 4, 1, 6, 3])
        assert got.tolist() == [3, 4, 11, 11, 15, 16, 22, 25]

    def test_exclusive_fixed(self):
        assert exclusive_scan([3, 1, 7, 0]).tolist() == [0, 3, 4, 11]

    @given(small_seqs)
    def test_matches_naive(self, xs):
        assert inclusive_scan(xs).tolist() == naive_inclusive(xs)

    @given(small_seqs)
    def test_inclusive_exclusive_relation(self, xs):
        inc = inclusive_scan(xs)
        exc = exclusive_scan(xs)
        assert (inc == exc + np.asarray(xs, dtype=np.uint32)).all()

    @given(small_seqs, small_seqs)
    def test_linearity(self, xs, ys):
        n = min(len(xs), len(ys))
        a = np.asarray(xs[:n], dtype=np.uint32)
        b = np.asarray(ys[:n], dtype=np.uint32)
        assert (inclusive_scan(a + b) == inclusive_scan(a) + inclusive_scan(b)).all()

    def test_overflow_detected(self):
        with pytest.raises(ScanOverflowError):
            inclusive_scan([2**32 - 1, 1])
        with pytest.raises(ScanOverflowError):
            exclusive_scan([2**32 - 1, 1, 0])
        with pytest.raises(ScanOverflowError):
            blocked_scan([2**32 - 1, 1], block=2)


class TestBlockedScan:
    def test_bad_block(self):
        with pytest.raises(ParameterError):
            blocked_scan([1, 2, 3], block=0)

    def test_fixed_example(self):
        got = blocked_scan([3, 1, 7, 0, 4, 1, 6, 3], block=3)
        assert got.tolist() == [3, 4, 11, 11, 15, 16, 22, 25]

    @given(small_seqs, st.sampled_from([1, 2, 3, 5, 8, 64, 256]))
    def test_equals_flat_scan(self, xs, block):
        assert blocked_scan(xs, block).tolist() == inclusive_scan(xs).tolist()

    def test_block_larger_than_input(self):
        xs = [9, 9, 9]
        assert blocked_scan(xs, block=100).tolist() == inclusive_scan(xs).tolist()


class TestPlaneOps:
    def test_scan_rows_ones(self):
        p = np.ones((2, 3), dtype=np.uint32)
        assert scan_rows(p).tolist() == [[1, 2, 3], [1, 2, 3]]

    def test_scan_rows_single_column(self):
        p = np.arange(5, dtype=np.uint32).reshape(5, 1)
        assert (scan_rows(p) == p).all()

    def test_scan_cols_ones(self):
        p = np.ones((3, 2), dtype=np.uint32)
        assert scan_cols(p).tolist() == [[1, 1], [2, 2], [3, 3]]

    def test_scan_cols_single_row(self):
        p = np.arange(4, dtype=np.uint32).reshape(1, 4)
        assert (scan_cols(p) == p).all()

    def test_scan_rows_random_vs_naive(self, rng):
        p = rng.integers(0, 100, size=(5, 7)).astype(np.uint32)
        expect = np.array([naive_inclusive(row) for row in p.tolist()])
        assert (scan_rows(p) == expect).all()

    def test_scan_cols_is_transposed_row_scan(self, rng):
        p = rng.integers(0, 100, size=(5, 7)).astype(np.uint32)
        assert (scan_cols(p) == transpose(scan_rows(transpose(p)))).all()


class TestTranspose:
    def test_definition(self):
        p = np.array([[1, 2, 3], [4, 5, 6]], dtype=np.uint32)
        assert transpose(p).tolist() == [[1, 4], [2, 5], [3, 6]]

    def test_row_to_column(self):
        p = np.arange(6, dtype=np.uint32).reshape(1, 6)
        assert transpose(p).shape == (6, 1)

    @given(st.integers(1, 40), st.integers(1, 40), st.integers(1, 8))
    @settings(max_examples=30)
    def test_involution_and_tiling(self, rows, cols, tile):
        rng = np.random.default_rng(rows * 1000 + cols * 10 + tile)
        p = rng.integers(0, 1000, size=(rows, cols)).astype(np.uint32)
        t = transpose(p, tile=tile)
        assert (t == p.T).all()
        assert (transpose(t, tile=tile) == p).all()
