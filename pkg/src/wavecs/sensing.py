"""Random projection matrices with columns i.i.d. uniform on the unit sphere.

Reproducibility contract: a matrix is fully determined by (seed, rows, cols).
Column j is drawn from its own Philox4x64 substream keyed (seed, j); the raw
64-bit stream is turned into uniforms (top 53 bits) and then into standard
normals with the Box-Muller transform, and the column is normalized to unit
length. Payload files therefore store only the seed, never the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SensingMatrix", "GramOperator", "sample_sphere_matrix", "project", "backproject", "gram"]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class SensingMatrix:
    """Dense I x J projection matrix with unit-norm columns, plus its seed."""

    rows: int
    cols: int
    entries: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        self.entries.flags.writeable = False


@dataclass(frozen=True, eq=False)
class GramOperator:
    """The J x J product G = A^T A; unit diagonal, symmetric, PSD."""

    gram: np.ndarray

    def __post_init__(self) -> None:
        g = self.gram
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("gram must be a square matrix")
        g.flags.writeable = False

    @property
    def size(self) -> int:
        return self.gram.shape[0]


def _unit_column(seed: int, column: int, count: int) -> np.ndarray:
    """Deterministic unit vector in R^count from the (seed, column) substream."""
    bits = np.random.Philox(key=np.array([seed, column], dtype=np.uint64))
    pairs = (count + 1) // 2
    while True:
        raw = bits.random_raw(2 * pairs)
        u = (raw >> np.uint64(11)) * 2.0**-53
        radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))
        theta = (2.0 * np.pi) * u[1::2]
        z = np.empty(2 * pairs)
        z[0::2] = radius * np.cos(theta)
        z[1::2] = radius * np.sin(theta)
        z = z[:count]
        norm = np.sqrt(z @ z)
        if norm > 0.0:  # zero draw has probability ~2^-53 per pair; redraw
            return z / norm


def sample_sphere_matrix(rows: int, cols: int, seed: int) -> SensingMatrix:
    """Draw an I x J matrix with columns i.i.d. uniform on the sphere S^(I-1).

    Bit-identical for identical (seed, rows, cols). ``rows`` may equal ``cols``
    (no reduction, used by the codec at reduction rate 1.0) but never exceed it.
    """
    if rows < 1:
        raise ValueError("measurement count must be at least 1")
    if rows > cols:
        raise ValueError(f"measurement count {rows} exceeds coefficient count {cols}")
    if not 0 <= int(seed) <= _MASK64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    seed = int(seed)
    entries = np.empty((rows, cols), dtype=np.float64)
    for j in range(cols):
        entries[:, j] = _unit_column(seed, j, rows)
    return SensingMatrix(rows=rows, cols=cols, entries=entries, seed=seed)


def project(matrix: SensingMatrix, x) -> np.ndarray:
    """Y = A X for X with J rows (1-D vectors allowed)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != matrix.cols:
        raise ValueError(f"expected {matrix.cols} rows, got {x.shape[0]}")
    return matrix.entries @ x


def backproject(matrix: SensingMatrix, y) -> np.ndarray:
    """Y_tilde = A^T Y for Y with I rows (1-D vectors allowed)."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape[0] != matrix.rows:
        raise ValueError(f"expected {matrix.rows} rows, got {y.shape[0]}")
    return matrix.entries.T @ y


def gram(matrix: SensingMatrix) -> GramOperator:
    """G = A^T A."""
    return GramOperator(gram=matrix.entries.T @ matrix.entries)
