import numpy as np
import pytest

from conftest import random_image
from inthist import BinSpec, FormatError, IntegralHistogram, compute_sequential
from inthist.imgio import (
    TensorFileSink,
    deserialize_ih,
    read_pgm,
    serialize_ih,
    write_map_pgm,
    write_pgm,
)
from inthist.streaming import ArraySink, compute_streamed, plan_tiles


class TestReadPgm:
    def test_minimal(self):
        img = read_pgm(b"P5 1 1 255 \x00")
        assert (img.width, img.height) == (1, 1)
        assert img.pixels[0, 0] == 0

    def test_newline_header_and_comments(self):
        data = b"P5\n# a comment\n2 2\n# another\n255\n\x01\x02\x03\x04"
        img = read_pgm(data)
        assert img.pixels.tolist() == [[1, 2], [3, 4]]

    def test_wrong_magic(self):
        with pytest.raises(FormatError, match="P5"):
            read_pgm(b"P6 1 1 255 \x00")

    def test_bad_maxval(self):
        with pytest.raises(FormatError, match="maxval"):
            read_pgm(b"P5 1 1 65535 \x00\x00")

    def test_truncated_pixels(self):
        with pytest.raises(FormatError, match="truncated"):
            read_pgm(b"P5 4 4 255 " + b"\x00" * 15)

    def test_truncated_header(self):
        with pytest.raises(FormatError):
            read_pgm(b"P5 4")

    def test_round_trip(self, rng):
        img = random_image(rng, 13, 7)
        assert read_pgm(write_pgm(img)).pixels.tobytes() == img.pixels.tobytes()


class TestWriteMapPgm:
    def test_zeros_and_ones(self):
        zero = write_map_pgm(np.zeros((2, 3)))
        assert zero.endswith(b"\x00" * 6)
        one = write_map_pgm(np.ones((2, 3)))
        assert one.endswith(b"\xff" * 6)

    def test_round_half_up(self):
        data = write_map_pgm(np.array([[0.5]]))
        assert data[-1] == 128

    def test_range_error(self):
        with pytest.raises(ValueError):
            write_map_pgm(np.array([[1.5]]))
        with pytest.raises(ValueError):
            write_map_pgm(np.array([[-0.1]]))


class TestTensorFile:
    def test_round_trip(self, rng):
        img = random_image(rng, 17, 9)
        ih = compute_sequential(img, BinSpec.uniform(12))
        rt = deserialize_ih(serialize_ih(ih))
        assert rt.counts.tobytes() == ih.counts.tobytes()
        assert (rt.bins, rt.height, rt.width) == (12, 9, 17)

    def test_minimal_is_20_bytes(self):
        ih = IntegralHistogram(np.ones((1, 1, 1), dtype=np.uint32))
        data = serialize_ih(ih)
        assert len(data) == 20
        assert deserialize_ih(data).counts[0, 0, 0] == 1

    def test_bad_magic(self):
        data = bytearray(serialize_ih(IntegralHistogram(np.ones((1, 1, 1), np.uint32))))
        data[0] ^= 0xFF
        with pytest.raises(FormatError, match="magic"):
            deserialize_ih(bytes(data))

    def test_bad_version(self):
        data = bytearray(serialize_ih(IntegralHistogram(np.ones((1, 1, 1), np.uint32))))
        data[4] = 9
        with pytest.raises(FormatError, match="version"):
            deserialize_ih(bytes(data))

    def test_bad_length(self):
        data = serialize_ih(IntegralHistogram(np.ones((1, 2, 2), np.uint32)))
        with pytest.raises(FormatError, match="length"):
            deserialize_ih(data + b"\x00")
        with pytest.raises(FormatError, match="length"):
            deserialize_ih(data[:-1])
        with pytest.raises(FormatError, match="header"):
            deserialize_ih(data[:10])


class TestTensorFileSink:
    def test_streamed_file_equals_serialized(self, rng, tmp_path):
        img = random_image(rng, 29, 31)
        spec = BinSpec.uniform(8)
        plan = plan_tiles(29, 31, 8, budget=20_000)
        path = tmp_path / "t.ihst"
        with TensorFileSink(path, 29, 31, 8) as sink:
            compute_streamed(img, spec, plan, sink)
        expect = serialize_ih(compute_sequential(img, spec))
        assert path.read_bytes() == expect

    def test_matches_array_sink(self, rng, tmp_path):
        img = random_image(rng, 11, 6)
        spec = BinSpec.uniform(3)
        plan = plan_tiles(11, 6, 3, budget=10**6)
        arr = ArraySink(11, 6, 3)
        compute_streamed(img, spec, plan, arr)
        path = tmp_path / "t.ihst"
        with TensorFileSink(path, 11, 6, 3) as sink:
            compute_streamed(img, spec, plan, sink)
        assert deserialize_ih(path.read_bytes()).counts.tobytes() == arr.counts.tobytes()
