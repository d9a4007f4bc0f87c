"""Sliding-window histogram matching over an integral histogram.

Every window placement costs four corner reads per bin, independent of the
window area; the whole map is produced with vectorized corner arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import IntegralHistogram, bhattacharyya, intersection
from .errors import BoundsError, ParameterError, ShapeError

METRICS = ("intersection", "bhattacharyya")


@dataclass(frozen=True)
class LikelihoodMap:
    """Similarity in [0, 1] at every window top-left placement."""

    values: np.ndarray  # (H-h+1, W-w+1) float64

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]


def window_counts(ih: IntegralHistogram, h: int, w: int) -> np.ndarray:
    """(bins, H-h+1, W-w+1) int64 pixel counts of every h x w window."""
    if h < 1 or w < 1:
        raise ParameterError("window extents must be >= 1")
    if h > ih.height or w > ih.width:
        raise BoundsError(
            f"{h}x{w} window exceeds {ih.width}x{ih.height} image"
        )
    # four corner reads per bin and placement; out-of-range corners are zero,
    # so the top row / left column of placements skip the matching terms.
    # Only map-sized arrays are allocated: per-cell cost is independent of
    # the window area.
    t = ih.counts
    height, width = ih.height, ih.width
    counts = t[:, h - 1 :, w - 1 :].astype(np.int64)
    counts[:, 1:, :] -= t[:, : height - h, w - 1 :]
    counts[:, :, 1:] -= t[:, h - 1 :, : width - w]
    counts[:, 1:, 1:] += t[:, : height - h, : width - w]
    return counts


def likelihood_map(
    ih: IntegralHistogram,
    template: np.ndarray,
    h: int,
    w: int,
    metric: str = "bhattacharyya",
) -> LikelihoodMap:
    """Similarity of ``template`` to every window's normalized histogram."""
    template = np.asarray(template, dtype=np.float64)
    if template.shape != (ih.bins,):
        raise ShapeError(
            f"template has {template.shape} entries, tensor has {ih.bins} bins"
        )
    if metric not in METRICS:
        raise ParameterError(f"unknown metric {metric!r}")
    counts = window_counts(ih, h, w)
    q = counts.astype(np.float64) / float(h * w)
    t = template[:, None, None]
    if metric == "intersection":
        values = np.minimum(t, q).sum(axis=0)
    else:
        values = np.sqrt(t * q).sum(axis=0)
    return LikelihoodMap(np.clip(values, 0.0, 1.0))


def best_match(lmap: LikelihoodMap) -> tuple[int, int, float]:
    """Location and score of the maximum; ties go to smallest row, then column."""
    if lmap.values.size == 0:
        raise ShapeError("empty likelihood map")
    flat = int(np.argmax(lmap.values))  # first occurrence = lexicographic min
    r, c = divmod(flat, lmap.cols)
    return r, c, float(lmap.values[r, c])


def score_pair(p, q, metric: str) -> float:
    """Scalar metric between two normalized histograms (shared by CLI/tests)."""
    if metric == "intersection":
        return intersection(p, q)
    if metric == "bhattacharyya":
        return bhattacharyya(p, q)[0]
    raise ParameterError(f"unknown metric {metric!r}")
