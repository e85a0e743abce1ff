"""Netpbm PGM reading and writing (P5 binary and P2 ASCII, maxval up to 255).

Pixels live in memory as float64 in [0, 255]; writing rounds half away from
zero and clamps, so no out-of-range value ever reaches disk and integer-valued
images survive a write/read round trip bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["GrayImage", "read_pgm", "write_pgm", "crop_center"]


@dataclass
class GrayImage:
    width: int
    height: int
    pixels: np.ndarray  # float64, shape (height, width)

    @staticmethod
    def from_array(pixels) -> "GrayImage":
        arr = np.asarray(pixels, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("grayscale image must be a 2-D array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("image contains non-finite values")
        return GrayImage(width=arr.shape[1], height=arr.shape[0], pixels=arr)


class _TokenReader:
    """Whitespace/comment-aware tokenizer over the PGM header bytes."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def next_token(self) -> bytes:
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = self.data[self.pos]
            if c in b"#":
                while self.pos < n and data[self.pos] not in b"\n":
                    self.pos += 1
            elif c in b" \t\r\n\x0b\x0c":
                self.pos += 1
            else:
                break
        start = self.pos
        while self.pos < n and data[self.pos] not in b" \t\r\n\x0b\x0c#":
            self.pos += 1
        if start == self.pos:
            raise ValueError("malformed PGM header: unexpected end of file")
        return data[start : self.pos]

    def next_int(self, label: str) -> int:
        token = self.next_token()
        try:
            return int(token)
        except ValueError:
            raise ValueError(f"malformed PGM header: bad {label} {token!r}") from None


def read_pgm(path) -> GrayImage:
    """Read a P5 or P2 PGM file with maxval <= 255."""
    data = Path(path).read_bytes()
    reader = _TokenReader(data)
    magic = reader.next_token()
    if magic not in (b"P5", b"P2"):
        raise ValueError(f"malformed PGM header: magic {magic!r} is not P5 or P2")
    width = reader.next_int("width")
    height = reader.next_int("height")
    maxval = reader.next_int("maxval")
    if width <= 0 or height <= 0:
        raise ValueError("malformed PGM header: nonpositive dimensions")
    if maxval > 255:
        raise ValueError(f"unsupported depth: maxval {maxval} exceeds 255")
    if maxval <= 0:
        raise ValueError("malformed PGM header: maxval must be positive")

    count = width * height
    if magic == b"P5":
        start = reader.pos + 1  # exactly one whitespace byte after maxval
        raw = data[start : start + count]
        if len(raw) < count:
            raise ValueError("unexpected end of pixel data")
        pixels = np.frombuffer(raw, dtype=np.uint8).astype(np.float64)
    else:
        try:
            values = [reader.next_int("pixel") for _ in range(count)]
        except ValueError:
            raise ValueError("unexpected end of pixel data") from None
        pixels = np.array(values, dtype=np.float64)
        if pixels.min() < 0 or pixels.max() > maxval:
            raise ValueError("pixel value out of range for declared maxval")
    return GrayImage(width=width, height=height, pixels=pixels.reshape(height, width))


def write_pgm(image: GrayImage, path) -> None:
    """Write binary (P5) PGM; values are rounded half away from zero and clamped."""
    quantized = np.clip(np.floor(image.pixels + 0.5), 0, 255).astype(np.uint8)
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + quantized.tobytes())


def crop_center(image: GrayImage, side: int) -> GrayImage:
    """Centered square crop; odd margins are split floor-first."""
    if side < 1:
        raise ValueError("crop side must be positive")
    if side > min(image.width, image.height):
        raise ValueError(f"crop side {side} exceeds image size {image.width}x{image.height}")
    top = (image.height - side) // 2
    left = (image.width - side) // 2
    return GrayImage(width=side, height=side, pixels=image.pixels[top : top + side, left : left + side].copy())
