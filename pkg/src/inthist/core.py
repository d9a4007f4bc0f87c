"""Domain types, intensity binning, region queries and histogram metrics.

The central structure is the integral histogram: for every pixel (r, c) and
bin b it stores the number of pixels in the up-left rectangle [0..r] x [0..c]
whose intensity falls in bin b.  The corner convention is inclusive: the
entry at (r, c) counts pixel (r, c) itself, and out-of-range corner terms in
the four-corner query read as zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundsError, CapacityError, ShapeError

U32_MAX = 2**32 - 1


@dataclass(frozen=True)
class GrayImage:
    """A width x height 8-bit grayscale raster, row-major."""

    pixels: np.ndarray  # (height, width) uint8

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.size == 0:
            raise ShapeError("image must be a non-empty 2D array")
        if px.dtype != np.uint8:
            raise ShapeError(f"image dtype must be uint8, got {px.dtype}")
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @classmethod
    def from_bytes(cls, width: int, height: int, data: bytes) -> "GrayImage":
        if len(data) != width * height:
            raise ShapeError("pixel data length does not match extents")
        arr = np.frombuffer(data, dtype=np.uint8).reshape(height, width)
        return cls(arr.copy())

    def check_capacity(self) -> None:
        if self.width * self.height > U32_MAX:
            raise CapacityError(
                f"{self.width}x{self.height} image exceeds the 32-bit count range"
            )


@dataclass(frozen=True)
class BinSpec:
    """Maps an 8-bit intensity to one of ``bins`` bin indices.

    ``table`` is a 256-entry lookup covering every intensity; the uniform
    constructor fills it with floor(v * bins / 256).
    """

    bins: int
    table: np.ndarray  # 256 entries, uint8, each < bins

    def __post_init__(self):
        if not 1 <= self.bins <= 256:
            raise ShapeError(f"bin count must be in [1, 256], got {self.bins}")
        tab = np.asarray(self.table)
        if tab.shape != (256,):
            raise ShapeError("lookup table must have exactly 256 entries")
        if tab.min() < 0 or tab.max() >= self.bins:
            raise ShapeError("lookup table entries must lie in [0, bins)")
        tab = tab.astype(np.uint8)
        tab.setflags(write=False)
        object.__setattr__(self, "table", tab)

    @classmethod
    def uniform(cls, bins: int) -> "BinSpec":
        if not 1 <= bins <= 256:
            raise ShapeError(f"bin count must be in [1, 256], got {bins}")
        return cls(bins, (np.arange(256) * bins) // 256)

    @classmethod
    def explicit(cls, table) -> "BinSpec":
        tab = np.asarray(table)
        return cls(int(tab.max()) + 1 if tab.size else 1, tab)

    def bin_image(self, img: GrayImage) -> np.ndarray:
        """Quantize every pixel; returns a (height, width) uint8 bin-index grid."""
        return self.table[img.pixels]


def map_intensity(v: int, spec: BinSpec) -> int:
    """Bin index for intensity ``v``; uniform mode gives floor(v*B/256)."""
    if not 0 <= v <= 255:
        raise ValueError(f"intensity out of range: {v}")
    return int(spec.table[v])


@dataclass(frozen=True)
class IntegralHistogram:
    """Cumulative bin counts: ``counts[b, r, c]`` pixels of bin b in [0..r]x[0..c]."""

    counts: np.ndarray  # (bins, height, width) uint32, bin-major planes

    def __post_init__(self):
        t = np.asarray(self.counts)
        if t.ndim != 3 or t.dtype != np.uint32:
            raise ShapeError("tensor must be a 3D uint32 array (bins, height, width)")
        object.__setattr__(self, "counts", t)

    @property
    def bins(self) -> int:
        return self.counts.shape[0]

    @property
    def height(self) -> int:
        return self.counts.shape[1]

    @property
    def width(self) -> int:
        return self.counts.shape[2]


@dataclass(frozen=True)
class Region:
    """Inclusive rectangle: rows r0..r1, columns c0..c1."""

    r0: int
    c0: int
    r1: int
    c1: int

    def __post_init__(self):
        if self.r0 < 0 or self.c0 < 0 or self.r0 > self.r1 or self.c0 > self.c1:
            raise BoundsError(f"degenerate region {self}")

    @property
    def height(self) -> int:
        return self.r1 - self.r0 + 1

    @property
    def width(self) -> int:
        return self.c1 - self.c0 + 1

    @property
    def area(self) -> int:
        return self.height * self.width

    def check_within(self, height: int, width: int) -> None:
        if self.r1 >= height or self.c1 >= width:
            raise BoundsError(f"region {self} outside {width}x{height} image")


@dataclass(frozen=True)
class Histogram:
    """Per-bin pixel counts for one region."""

    counts: np.ndarray  # (bins,) uint64

    def __post_init__(self):
        object.__setattr__(self, "counts", np.asarray(self.counts, dtype=np.uint64))

    @property
    def bins(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def region_histogram(ih: IntegralHistogram, reg: Region) -> Histogram:
    """Histogram of an inclusive rectangle via four corner reads per bin."""
    reg.check_within(ih.height, ih.width)
    t = ih.counts

    def corner(r, c):
        if r < 0 or c < 0:
            return np.zeros(ih.bins, dtype=np.int64)
        return t[:, r, c].astype(np.int64)

    h = (
        corner(reg.r1, reg.c1)
        - corner(reg.r0 - 1, reg.c1)
        - corner(reg.r1, reg.c0 - 1)
        + corner(reg.r0 - 1, reg.c0 - 1)
    )
    return Histogram(h.astype(np.uint64))


def normalize(h: Histogram) -> np.ndarray:
    """Fractions summing to 1; errors on a zero-total histogram."""
    total = h.total
    if total == 0:
        raise ValueError("cannot normalize a zero-total histogram")
    return h.counts.astype(np.float64) / total


def _check_pair(p: np.ndarray, q: np.ndarray):
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ShapeError(f"bin count mismatch: {p.shape} vs {q.shape}")
    return p, q


def intersection(p, q) -> float:
    """Histogram intersection of two normalized histograms, in [0, 1]."""
    p, q = _check_pair(p, q)
    return float(np.minimum(p, q).sum())


def bhattacharyya(p, q) -> tuple[float, float]:
    """Bhattacharyya coefficient sum_b sqrt(p_b q_b) and distance sqrt(1-rho)."""
    p, q = _check_pair(p, q)
    rho = float(np.sqrt(p * q).sum())
    rho = min(rho, 1.0)
    return rho, math.sqrt(1.0 - rho)
