"""Periodized orthogonal discrete wavelet transforms in 1-D and 2-D.

Conventions, fixed so that every decode reproduces its encode bit for bit:

* circular (periodized) convolution; signals wrap modulo their length,
* analysis correlates with the taps starting at even sample positions
  (approx[k] = sum_n h[n] x[(2k + n) mod N], same for the high-pass),
* synthesis is the exact adjoint, so orthonormal taps give perfect
  reconstruction for any even length,
* a 2-D level transforms rows first, then columns of each half.

Subband naming for one 2-D level: ``horizontal`` is row-low/column-high,
``vertical`` is row-high/column-low, ``diagonal`` is row-high/column-high.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .filters import WaveletFilter

__all__ = ["DetailBands", "SubbandPyramid", "dwt1d", "idwt1d", "dwt2d", "idwt2d"]


class DetailBands(NamedTuple):
    horizontal: np.ndarray
    vertical: np.ndarray
    diagonal: np.ndarray


@dataclass
class SubbandPyramid:
    """Multi-level 2-D DWT output: one approximation band plus detail triples.

    ``details[i]`` holds the bands of level i+1 with side ``source_size / 2**(i+1)``;
    the approximation has side ``source_size / 2**levels``. Total coefficient
    count always equals ``source_size**2``.
    """

    levels: int
    source_size: int
    approx: np.ndarray
    details: list[DetailBands]

    def validate(self) -> None:
        n = self.source_size
        if n < 2 or n & (n - 1):
            raise ValueError(f"source size {n} is not a power of two")
        if self.levels < 1 or len(self.details) != self.levels:
            raise ValueError("pyramid must hold exactly one detail triple per level")
        if 2**self.levels > n:
            raise ValueError(f"{self.levels} levels is too deep for side {n}")
        side = n >> self.levels
        if self.approx.shape != (side, side):
            raise ValueError(f"approximation band must be {side}x{side}")
        for i, bands in enumerate(self.details):
            side = n >> (i + 1)
            for band in bands:
                if band.shape != (side, side):
                    raise ValueError(f"level {i + 1} detail bands must be {side}x{side}")

    def detail_side(self, level: int) -> int:
        return self.source_size >> level


def _analyze_stack(x: np.ndarray, h: np.ndarray, g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One analysis step applied to every row of a (stack, n) array."""
    n = x.shape[-1]
    idx = (2 * np.arange(n // 2)[:, None] + np.arange(h.size)[None, :]) % n
    win = x[..., idx]
    return win @ h, win @ g


def _synthesize_stack(
    a: np.ndarray, d: np.ndarray, h: np.ndarray, g: np.ndarray
) -> np.ndarray:
    """Adjoint of _analyze_stack via the even/odd polyphase components."""
    half = a.shape[-1]
    idx = (np.arange(half)[:, None] - np.arange((h.size + 1) // 2)[None, :]) % half
    awin, dwin = a[..., idx], d[..., idx]
    out = np.empty(a.shape[:-1] + (2 * half,))
    for phase, (hp, gp) in enumerate(((h[0::2], g[0::2]), (h[1::2], g[1::2]))):
        out[..., phase::2] = awin[..., : hp.size] @ hp + dwin[..., : gp.size] @ gp
    return out


def dwt1d(signal, filt: WaveletFilter) -> tuple[np.ndarray, np.ndarray]:
    """One-level periodized analysis of an even-length signal.

    Returns (approx, detail), each of half the input length.
    """
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("dwt1d expects a 1-D signal")
    if x.size == 0 or x.size % 2 != 0:
        raise ValueError(f"non-dyadic input: signal length {x.size} is not even")
    a, d = _analyze_stack(x[None, :], filt.taps, filt.highpass())
    return a[0], d[0]


def idwt1d(approx, detail, filt: WaveletFilter) -> np.ndarray:
    """Exact inverse of dwt1d."""
    a = np.asarray(approx, dtype=np.float64)
    d = np.asarray(detail, dtype=np.float64)
    if a.ndim != 1 or d.ndim != 1 or a.size != d.size:
        raise ValueError("approx and detail must be 1-D and of equal length")
    if a.size == 0:
        raise ValueError("empty subbands")
    return _synthesize_stack(a[None, :], d[None, :], filt.taps, filt.highpass())[0]


def dwt2d(image, filt: WaveletFilter, levels: int) -> SubbandPyramid:
    """Separable multi-level 2-D analysis of a square, dyadic image.

    Each level transforms the rows, then the columns, and recurses on the
    approximation quarter.
    """
    a = np.asarray(image, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("dwt2d expects a square matrix")
    n = a.shape[0]
    if n < 2 or n & (n - 1):
        raise ValueError(f"image side {n} is not a power of two")
    max_levels = n.bit_length() - 2  # log2(n) - 1
    if not 1 <= levels <= max_levels:
        raise ValueError(f"levels must be in 1..{max_levels} for side {n}, got {levels}")

    h, g = filt.taps, filt.highpass()
    details: list[DetailBands] = []
    for _ in range(levels):
        row_lo, row_hi = _analyze_stack(a, h, g)
        approx, horiz = _analyze_stack(row_lo.T, h, g)
        vert, diag = _analyze_stack(row_hi.T, h, g)
        a = approx.T
        details.append(DetailBands(horiz.T, vert.T, diag.T))
    return SubbandPyramid(levels=levels, source_size=n, approx=a, details=details)


def idwt2d(pyramid: SubbandPyramid, filt: WaveletFilter) -> np.ndarray:
    """Perfect reconstruction from a SubbandPyramid."""
    pyramid.validate()
    h, g = filt.taps, filt.highpass()
    x = np.asarray(pyramid.approx, dtype=np.float64)
    for bands in reversed(pyramid.details):
        row_lo = _synthesize_stack(x.T, np.asarray(bands.horizontal, float).T, h, g).T
        row_hi = _synthesize_stack(
            np.asarray(bands.vertical, float).T, np.asarray(bands.diagonal, float).T, h, g
        ).T
        x = _synthesize_stack(row_lo, row_hi, h, g)
    return x
