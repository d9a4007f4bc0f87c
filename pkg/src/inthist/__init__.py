"""Integral histograms with parallel scan strategies, streaming, and matching."""

from .core import (
    BinSpec,
    GrayImage,
    Histogram,
    IntegralHistogram,
    Region,
    bhattacharyya,
    intersection,
    map_intensity,
    normalize,
    region_histogram,
)
from .errors import (
    BoundsError,
    CapacityError,
    FormatError,
    IntHistError,
    ParameterError,
    ScanOverflowError,
    ShapeError,
)
from .likelihood import LikelihoodMap, best_match, likelihood_map
from .strategies import (
    CROSSWEAVE,
    SCAN_TRANSPOSE_SCAN,
    SEQUENTIAL,
    Strategy,
    compute,
    compute_crossweave,
    compute_sequential,
    compute_sts,
    compute_wavefront,
    wavefront,
)
from .streaming import ArraySink, StreamSummary, TilePlan, compute_streamed, plan_tiles

__all__ = [
    "ArraySink",
    "BinSpec",
    "BoundsError",
    "CapacityError",
    "CROSSWEAVE",
    "compute",
    "compute_crossweave",
    "compute_sequential",
    "compute_streamed",
    "compute_sts",
    "compute_wavefront",
    "FormatError",
    "GrayImage",
    "Histogram",
    "IntegralHistogram",
    "IntHistError",
    "LikelihoodMap",
    "ParameterError",
    "Region",
    "SCAN_TRANSPOSE_SCAN",
    "ScanOverflowError",
    "SEQUENTIAL",
    "ShapeError",
    "StreamSummary",
    "Strategy",
    "TilePlan",
    "best_match",
    "bhattacharyya",
    "intersection",
    "likelihood_map",
    "map_intensity",
    "normalize",
    "plan_tiles",
    "region_histogram",
    "wavefront",
]

__version__ = "0.1.0"
