"""Image quality and reduction measures: MSE, PSNR, recover error, IRL, detection.

PSNR uses the 8-bit peak (255) regardless of input dtype; reconstructions are
compared as floats without clipping. Zero MSE maps to an infinite PSNR
sentinel. The object detector thresholds at median + k * 1.4826 * MAD, the
robust analogue of a k-sigma cut over a flat background.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .solver import mad

__all__ = [
    "QualityReport",
    "mse",
    "psnr",
    "recover_error",
    "irl_linear",
    "irl_cs",
    "detect_objects",
    "MAD_TO_SIGMA",
]

MAD_TO_SIGMA = 1.4826  # Gaussian consistency factor


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(x, dtype=np.float64)
    b = np.asarray(y, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")
    return a, b


def mse(x, y) -> float:
    """Mean squared pixel difference."""
    a, b = _pair(x, y)
    diff = a - b
    return float(np.mean(diff * diff))


def psnr(x, y) -> float:
    """10 log10(255^2 / MSE) in dB; +inf for identical images."""
    err = mse(x, y)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / err)


def recover_error(reference, reconstruction) -> float:
    """Relative 2-norm error ||X - X~||_2 / ||X||_2.

    For matrices the induced (spectral) 2-norm is used, matching the MATLAB
    ``norm`` convention under which the reference epsilon values for this
    codec were produced; 1-D inputs use the ordinary Euclidean norm.
    """
    a, b = _pair(reference, reconstruction)
    order = 2 if a.ndim == 2 else None
    norm = np.linalg.norm(a, order)
    if norm == 0.0:
        raise ValueError("recover error is undefined for an all-zero reference")
    return float(np.linalg.norm(a - b, order) / norm)


def irl_linear(i: int) -> int:
    """Reduction level of an i-level truncation: 4**i."""
    i = int(i)
    if i < 0:
        raise ValueError("decomposition level must be nonnegative")
    return 4**i


def irl_cs(total_pixels: int, i_cs: int) -> float:
    """Reduction level of a compressed payload: pixels / stored coefficients.

    Returned unrounded; display code rounds to the nearest integer.
    """
    if total_pixels <= 0:
        raise ValueError("total_pixels must be positive")
    if i_cs <= 0:
        raise ValueError("i_cs must be positive")
    return total_pixels / i_cs


def detect_objects(image, k: float = 3.0) -> np.ndarray:
    """Boolean mask of pixels brighter than median + k * 1.4826 * MAD.

    Depends only on rank statistics and the MAD, so it is invariant under
    adding a constant to the whole image.
    """
    if k <= 0:
        raise ValueError("sigma multiplier k must be positive")
    pixels = np.asarray(image, dtype=np.float64)
    threshold = np.median(pixels) + k * MAD_TO_SIGMA * mad(pixels.ravel())
    return pixels > threshold


@dataclass
class QualityReport:
    """One evaluation of a reconstruction against its reference."""

    mse: float
    psnr_db: float
    epsilon: float
    irl_cs: float

    @staticmethod
    def from_images(reference, reconstruction, i_cs: int) -> "QualityReport":
        ref = np.asarray(reference, dtype=np.float64)
        return QualityReport(
            mse=mse(ref, reconstruction),
            psnr_db=psnr(ref, reconstruction),
            epsilon=recover_error(ref, reconstruction),
            irl_cs=irl_cs(ref.size, i_cs),
        )

    def csv_row(self, image: str, wavelet: str, i_cs: int) -> str:
        """image, wavelet, psnr_db, epsilon, i_cs, irl_cs."""
        return ",".join(
            (image, wavelet, format_psnr(self.psnr_db), f"{self.epsilon:.4f}", str(i_cs), f"{self.irl_cs:.1f}")
        )


def format_psnr(value: float) -> str:
    """CSV convention: two decimals, literal 'inf' for a zero-MSE comparison."""
    return "inf" if math.isinf(value) else f"{value:.2f}"
