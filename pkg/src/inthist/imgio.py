"""File formats: binary PGM (P5) images and the "IHST" tensor container.

Tensor container layout, all little-endian:

    offset 0   magic   4 bytes  b"IHST"
    offset 4   version u16      1
    offset 6   bins    u16
    offset 8   width   u32
    offset 12  height  u32
    offset 16  payload: ``bins`` planes, each height x width u32 row-major,
               bin 0 first

Total length is 16 + 4 * width * height * bins bytes.
"""

from __future__ import annotations

import struct
import threading

import numpy as np

from .core import GrayImage, IntegralHistogram
from .errors import FormatError

TENSOR_MAGIC = b"IHST"
TENSOR_VERSION = 1
_HEADER = struct.Struct("<4sHHII")
HEADER_BYTES = _HEADER.size  # 16

_WS = b" \t\r\n\x0b\x0c"


def read_pgm(data: bytes) -> GrayImage:
    """Parse a binary PGM (P5, maxval 255) byte string."""
    if data[:2] != b"P5":
        raise FormatError("not a binary PGM: magic is not P5")
    pos = 2
    if pos >= len(data) or data[pos] not in _WS + b"#":
        raise FormatError("malformed PGM header after magic")
    fields = []
    while len(fields) < 3:
        # skip whitespace and '#' comment lines
        while pos < len(data):
            if data[pos] in _WS:
                pos += 1
            elif data[pos] == ord("#"):
                nl = data.find(b"\n", pos)
                pos = len(data) if nl < 0 else nl + 1
            else:
                break
        start = pos
        while pos < len(data) and data[pos] not in _WS:
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise FormatError("malformed PGM header: expected an integer field")
        fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise FormatError(f"unsupported PGM maxval {maxval} (must be 255)")
    if width < 1 or height < 1:
        raise FormatError("PGM extents must be positive")
    if pos >= len(data) or data[pos] not in _WS:
        raise FormatError("malformed PGM header: missing separator before pixels")
    pos += 1  # exactly one whitespace byte before the raster
    pixels = data[pos : pos + width * height]
    if len(pixels) < width * height:
        raise FormatError(
            f"truncated PGM: expected {width * height} pixel bytes, got {len(pixels)}"
        )
    return GrayImage.from_bytes(width, height, pixels)


def write_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode()
    return header + img.pixels.tobytes()


def write_map_pgm(values) -> bytes:
    """Render a grid of fractions in [0, 1] as a P5 image; v -> round(v*255)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("map must be a non-empty 2D grid")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("map values must lie in [0, 1]")
    pixels = np.floor(arr * 255.0 + 0.5).astype(np.uint8)  # round half up
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n255\n".encode()
    return header + pixels.tobytes()


def serialize_ih(ih: IntegralHistogram) -> bytes:
    header = _HEADER.pack(TENSOR_MAGIC, TENSOR_VERSION, ih.bins, ih.width, ih.height)
    return header + ih.counts.astype("<u4", copy=False).tobytes()


def deserialize_ih(data: bytes) -> IntegralHistogram:
    if len(data) < HEADER_BYTES:
        raise FormatError("tensor file shorter than its header")
    magic, version, bins, width, height = _HEADER.unpack_from(data)
    if magic != TENSOR_MAGIC:
        raise FormatError(f"bad tensor magic {magic!r}")
    if version != TENSOR_VERSION:
        raise FormatError(f"unsupported tensor version {version}")
    if bins < 1 or width < 1 or height < 1:
        raise FormatError("tensor extents must be positive")
    expected = HEADER_BYTES + 4 * width * height * bins
    if len(data) != expected:
        raise FormatError(
            f"tensor length mismatch: expected {expected} bytes, got {len(data)}"
        )
    counts = (
        np.frombuffer(data, dtype="<u4", offset=HEADER_BYTES)
        .astype(np.uint32)
        .reshape(bins, height, width)
    )
    return IntegralHistogram(counts)


class TensorFileSink:
    """Streams tensor chunks into an IHST file at their final offsets.

    Usable as the sink for ``compute_streamed``; writes are serialized with
    a lock so concurrent chunk producers are safe.
    """

    def __init__(self, path, width: int, height: int, bins: int):
        self.width, self.height, self.bins = width, height, bins
        self._fh = open(path, "wb")
        self._fh.write(_HEADER.pack(TENSOR_MAGIC, TENSOR_VERSION, bins, width, height))
        self._fh.truncate(HEADER_BYTES + 4 * width * height * bins)
        self._lock = threading.Lock()

    def write(self, bin_start, bin_stop, row_start, row_stop, data):
        with self._lock:
            for k, b in enumerate(range(bin_start, bin_stop)):
                offset = HEADER_BYTES + 4 * ((b * self.height + row_start) * self.width)
                self._fh.seek(offset)
                self._fh.write(data[k].astype("<u4", copy=False).tobytes())

    def close(self):
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
