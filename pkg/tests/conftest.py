import numpy as np
import pytest

from inthist import BinSpec, GrayImage


def random_image(rng, width, height):
    return GrayImage(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


def brute_region_counts(img: GrayImage, spec: BinSpec, r0, c0, r1, c1):
    """Direct per-pixel counting over an inclusive rectangle."""
    patch = spec.table[img.pixels[r0 : r1 + 1, c0 : c1 + 1]]
    return np.bincount(patch.ravel(), minlength=spec.bins).astype(np.uint64)


def brute_integral_histogram(img: GrayImage, spec: BinSpec):
    """O((WH)^2) direct-count tensor; only for tiny images."""
    h, w = img.height, img.width
    out = np.zeros((spec.bins, h, w), dtype=np.uint32)
    binned = spec.bin_image(img)
    for r in range(h):
        for c in range(w):
            for rr in range(r + 1):
                for cc in range(c + 1):
                    out[binned[rr, cc], r, c] += 1
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
