"""Benchmark harness: strategy sweeps and window-size sensitivity, to CSV.

Instances are synthesized from a 64-bit seed so every run is reproducible
without shipping image corpora.  Correctness piggybacks on benchmarking:
each record carries a checksum of the output tensor, and all strategies
must agree on it for the same instance.
"""

from __future__ import annotations

import io
import statistics
import time
import zlib
from dataclasses import dataclass

import numpy as np

from .core import BinSpec, GrayImage, IntegralHistogram, Region, normalize, region_histogram
from .errors import IntHistError
from .likelihood import likelihood_map
from .strategies import Strategy, compute

CSV_HEADER = "strategy,width,height,bins,tile,workers,reps,median_ms,min_ms,fps,checksum"


@dataclass(frozen=True)
class BenchRecord:
    strategy: str
    width: int
    height: int
    bins: int
    tile: int  # 0 when not applicable
    workers: int
    reps: int
    median_ms: float
    min_ms: float
    fps: float
    checksum: str

    def csv_row(self) -> str:
        return (
            f"{self.strategy},{self.width},{self.height},{self.bins},{self.tile},"
            f"{self.workers},{self.reps},{self.median_ms:.6f},{self.min_ms:.6f},"
            f"{self.fps:.6f},{self.checksum}"
        )


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[tuple[int, int], ...]  # (width, height)
    bins: tuple[int, ...]
    strategies: tuple[Strategy, ...]
    workers: tuple[int, ...] = (0,)
    reps: int = 3
    seed: int = 0


def synth_image(width: int, height: int, seed: int) -> GrayImage:
    """Deterministic uniform-random image for a (seed, width, height) triple."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, width, height]))
    return GrayImage(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


def tensor_checksum(ih: IntegralHistogram) -> str:
    return f"{zlib.crc32(ih.counts.astype('<u4', copy=False).tobytes()):08x}"


def _time_reps(fn, reps: int):
    samples = []
    result = None
    for _ in range(reps):
        t0 = time.perf_counter()
        result = fn()
        samples.append((time.perf_counter() - t0) * 1000.0)
    return result, statistics.median(samples), min(samples)


def run_bench(config: BenchConfig) -> list[BenchRecord]:
    """One record per strategy x size x bins x workers configuration.

    Infeasible configurations produce a diagnostic record (zero timings,
    checksum ``skipped(<reason>)``) instead of aborting the sweep.
    """
    if config.reps < 1:
        raise ValueError("reps must be >= 1")
    records = []
    for width, height in config.sizes:
        img = synth_image(width, height, config.seed)
        for bins in config.bins:
            for strat in config.strategies:
                for workers in config.workers:
                    try:
                        spec = BinSpec.uniform(bins)
                        ih, median_ms, min_ms = _time_reps(
                            lambda: compute(img, spec, strat, workers), config.reps
                        )
                        rec = BenchRecord(
                            strat.name, width, height, bins, strat.tile, workers,
                            config.reps, median_ms, min_ms,
                            1000.0 / median_ms if median_ms > 0 else 0.0,
                            tensor_checksum(ih),
                        )
                    except IntHistError as exc:
                        reason = str(exc).replace(",", ";")
                        rec = BenchRecord(
                            strat.name, width, height, bins, strat.tile, workers,
                            config.reps, 0.0, 0.0, 0.0, f"skipped({reason})",
                        )
                    records.append(rec)
    return records


def run_window_sensitivity(
    map_rows: int,
    map_cols: int,
    sides: tuple[int, ...],
    bins: int,
    seed: int = 0,
    reps: int = 3,
    workers: int = 0,
) -> list[BenchRecord]:
    """Time likelihood maps of a fixed size for different window sides.

    The image is grown with the window so the map extents stay constant;
    with constant-time region queries the per-cell cost must not depend on
    the window side.
    """
    records = []
    spec = BinSpec.uniform(bins)
    for side in sides:
        width = map_cols + side - 1
        height = map_rows + side - 1
        img = synth_image(width, height, seed)
        ih = compute(img, spec, Strategy("crossweave"), workers)
        template = normalize(
            region_histogram(ih, Region(0, 0, side - 1, side - 1))
        )
        lmap, median_ms, min_ms = _time_reps(
            lambda: likelihood_map(ih, template, side, side), reps
        )
        records.append(
            BenchRecord(
                f"likelihood-w{side}", width, height, bins, 0, workers, reps,
                median_ms, min_ms, 1000.0 / median_ms if median_ms > 0 else 0.0,
                f"{zlib.crc32(lmap.values.tobytes()):08x}",
            )
        )
    return records


def write_csv(records, fh) -> None:
    """Fixed-schema CSV, UTF-8, LF line endings."""
    fh.write(CSV_HEADER + "\n")
    for rec in records:
        fh.write(rec.csv_row() + "\n")


def csv_text(records) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
