"""Byte-budgeted computation: bin chunks x horizontal strips with row carries.

When the full tensor does not fit the budget, bins are split into contiguous
chunks first (keeps strips full height and carries small); only if a single
bin at full height still does not fit is the strip height reduced.  Strips
within a chunk run strictly top to bottom, each seeded with the cumulative
last row of the strip above, so the reassembled output is bit-identical to
the in-memory tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .core import BinSpec, GrayImage
from .errors import CapacityError, ParameterError, ShapeError
from .scan import scan_cols, scan_rows

COUNT_BYTES = 4  # u32 counts everywhere


def working_set_bytes(width: int, strip_height: int, chunk_bins: int) -> int:
    """Peak bytes: strip tensor + row carry + one image strip."""
    strip = strip_height * width * chunk_bins * COUNT_BYTES
    carry = width * chunk_bins * COUNT_BYTES
    image = strip_height * width
    return strip + carry + image


@dataclass(frozen=True)
class TilePlan:
    """A feasible decomposition for one (width, height, bins, budget) instance."""

    width: int
    height: int
    bins: int
    budget: int
    bin_chunks: tuple[tuple[int, int], ...]  # half-open, partition [0, bins)
    strip_height: int

    def __post_init__(self):
        if self.strip_height < 1:
            raise ParameterError("strip height must be >= 1")
        pos = 0
        for lo, hi in self.bin_chunks:
            if lo != pos or hi <= lo:
                raise ParameterError("bin chunks must partition [0, bins) in order")
            pos = hi
        if pos != self.bins:
            raise ParameterError("bin chunks must cover every bin")
        if self.peak_bytes > self.budget:
            raise CapacityError(
                f"plan working set {self.peak_bytes} exceeds budget {self.budget}"
            )

    @property
    def carry_bytes(self) -> int:
        widest = max(hi - lo for lo, hi in self.bin_chunks)
        return self.width * widest * COUNT_BYTES

    @property
    def peak_bytes(self) -> int:
        widest = max(hi - lo for lo, hi in self.bin_chunks)
        return working_set_bytes(self.width, self.strip_height, widest)

    @property
    def strips(self) -> int:
        return -(-self.height // self.strip_height)


def plan_tiles(width: int, height: int, bins: int, budget: int) -> TilePlan:
    """Largest feasible strips first, then the widest bin chunk that fits."""
    if budget <= 0:
        raise CapacityError("budget must be positive")
    if width < 1 or height < 1 or not 1 <= bins <= 256:
        raise ParameterError("bad extents or bin count")

    def chunks_of(size):
        return tuple((lo, min(lo + size, bins)) for lo in range(0, bins, size))

    # Full-height strips with as many bins per chunk as fit.
    for chunk in range(bins, 0, -1):
        if working_set_bytes(width, height, chunk) <= budget:
            return TilePlan(width, height, bins, budget, chunks_of(chunk), height)
    # One bin per chunk; shrink the strip.
    for strip in range(height, 0, -1):
        if working_set_bytes(width, strip, 1) <= budget:
            return TilePlan(width, height, bins, budget, chunks_of(1), strip)
    raise CapacityError(
        f"even a 1-bin, 1-row strip exceeds the {budget}-byte budget"
    )


class TensorSink(Protocol):
    """Receives (bin range, row range, data) records of the finished tensor."""

    def write(
        self, bin_start: int, bin_stop: int, row_start: int, row_stop: int,
        data: np.ndarray,
    ) -> None: ...


class ArraySink:
    """Reassembles the streamed tensor in memory (tests, small inputs)."""

    def __init__(self, width: int, height: int, bins: int):
        self.counts = np.zeros((bins, height, width), dtype=np.uint32)

    def write(self, bin_start, bin_stop, row_start, row_stop, data):
        self.counts[bin_start:bin_stop, row_start:row_stop] = data


@dataclass(frozen=True)
class StreamSummary:
    chunks: int
    strips: int
    peak_bytes: int


def compute_streamed(
    img: GrayImage, spec: BinSpec, plan: TilePlan, sink: TensorSink
) -> StreamSummary:
    """Stream the tensor to ``sink`` without exceeding ``plan.budget`` bytes."""
    if (plan.width, plan.height, plan.bins) != (img.width, img.height, spec.bins):
        raise ShapeError("plan extents do not match the image / bin spec")
    img.check_capacity()
    width, height = img.width, img.height
    sh = plan.strip_height
    peak = 0
    written = 0

    for lo, hi in plan.bin_chunks:
        nb = hi - lo
        carry = np.zeros((nb, width), dtype=np.uint32)
        strip = np.empty((nb, min(sh, height), width), dtype=np.uint32)
        for r0 in range(0, height, sh):
            r1 = min(r0 + sh, height)
            rows = r1 - r0
            img_strip = spec.table[img.pixels[r0:r1]]
            tensor = strip[:, :rows, :]
            for k, b in enumerate(range(lo, hi)):
                plane = tensor[k]
                np.equal(img_strip, b, out=plane, casting="unsafe")
                scan_rows(plane, out=plane)
                scan_cols(plane, out=plane)
                plane += carry[k][None, :]
                carry[k] = plane[-1]
            peak = max(peak, strip.nbytes + carry.nbytes + img_strip.nbytes)
            sink.write(lo, hi, r0, r1, tensor)
            written += 1

    return StreamSummary(chunks=len(plan.bin_chunks), strips=written, peak_bytes=peak)
