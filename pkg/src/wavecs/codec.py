"""End-to-end codec: image -> CsPayload -> image, plus the .wcs file format.

Encoding decomposes the image until the approximation is 16x16 (levels =
log2(N) - 4), stores that approximation verbatim, compresses the two coarsest
detail scales (sides 16 and 32, flattened to vectors of length 768 and 3072)
with independent random spherical matrices, and discards every finer detail
scale. Decoding regenerates each matrix from its stored seed, recovers the
detail vectors with the HALS shrinkage solver, zero-fills the discarded
scales, and inverts the wavelet transform.

File format (extension .wcs, all little-endian):

    magic "WCS1"
    header: width u32, height u32, wavelet family id u8, tap_count u8,
            levels u8, rr_coarse f64, rr_next f64, seed_coarse u64,
            seed_next u64, len(y_coarse) u32, len(y_next) u32
    body:   256 f64 approximation values (row-major 16x16),
            then y_coarse, then y_next as f64
    trailer: CRC32 of the body, u32

Family ids: beylkin=1, coiflet=2, daubechies=3, symmlet=4, vaidyanathan=5.
Coefficients are stored as raw 64-bit floats; there is no quantization.
"""

from __future__ import annotations

import math
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .filters import Family, WaveletFilter, filter_by_name, filter_coefficients
from .sensing import backproject, gram, project, sample_sphere_matrix
from .solver import RecoveryReport, ThresholdSchedule, hals_recover
from .transform import DetailBands, SubbandPyramid, dwt2d, idwt2d

__all__ = [
    "APPROX_SIDE",
    "COARSE_SIDE",
    "NEXT_SIDE",
    "COARSE_LEN",
    "NEXT_LEN",
    "PayloadFormatError",
    "ReductionPlan",
    "CsPayload",
    "plan_reduction",
    "flatten_details",
    "unflatten_details",
    "compute_ics",
    "encode",
    "decode",
    "payload_to_bytes",
    "payload_from_bytes",
    "write_payload",
    "read_payload",
]

APPROX_SIDE = 16
COARSE_SIDE = 16  # deepest detail scale, vector length 768
NEXT_SIDE = 32    # second-deepest detail scale, vector length 3072
COARSE_LEN = 3 * COARSE_SIDE**2
NEXT_LEN = 3 * NEXT_SIDE**2

_MAGIC = b"WCS1"
_HEADER = struct.Struct("<4sIIBBBddQQII")
_MASK64 = (1 << 64) - 1

_FAMILY_IDS = {
    Family.BEYLKIN: 1,
    Family.COIFLET: 2,
    Family.DAUBECHIES: 3,
    Family.SYMMLET: 4,
    Family.VAIDYANATHAN: 5,
}
_FAMILY_FROM_ID = {v: k for k, v in _FAMILY_IDS.items()}


class PayloadFormatError(ValueError):
    """Raised for corrupt or inconsistent .wcs data."""


def _round_half_away(x: float) -> int:
    """round() with halves away from zero, for nonnegative x."""
    return int(math.floor(x + 0.5))


def _check_rr(value: float, label: str) -> float:
    value = float(value)
    if not 0.0 < value <= 1.0:
        raise ValueError(f"{label} must lie in (0, 1], got {value}")
    return value


@dataclass(frozen=True)
class ReductionPlan:
    """Which scales of the pyramid are kept, compressed or discarded."""

    levels: int
    kept_scales: tuple[int, int]       # detail sides (coarse, next) = (16, 32)
    discarded_scales: tuple[int, ...]  # finer detail sides, zero-filled at decode


def plan_reduction(image_side: int) -> ReductionPlan:
    """Decomposition plan for a square image: approximation down to 16x16."""
    n = int(image_side)
    if n < 64 or n & (n - 1):
        raise ValueError("image side must be a power of two >= 64")
    levels = n.bit_length() - 1 - 4  # log2(n) - 4
    discarded = tuple(n >> (lvl + 1) for lvl in range(levels - 2))
    return ReductionPlan(levels=levels, kept_scales=(COARSE_SIDE, NEXT_SIDE), discarded_scales=discarded)


def flatten_details(pyramid: SubbandPyramid, scale_side: int) -> np.ndarray:
    """Concatenate (horizontal, vertical, diagonal) of one scale, row-major."""
    for i, bands in enumerate(pyramid.details):
        if pyramid.detail_side(i + 1) == scale_side:
            return np.concatenate([np.asarray(b, dtype=np.float64).ravel() for b in bands])
    raise ValueError(f"pyramid has no detail scale with side {scale_side}")


def unflatten_details(vector, scale_side: int) -> DetailBands:
    """Inverse of flatten_details for one scale."""
    v = np.asarray(vector, dtype=np.float64).ravel()
    count = scale_side * scale_side
    if v.size != 3 * count:
        raise ValueError(f"expected {3 * count} values for side {scale_side}, got {v.size}")
    shape = (scale_side, scale_side)
    return DetailBands(
        v[:count].reshape(shape), v[count : 2 * count].reshape(shape), v[2 * count :].reshape(shape)
    )


def compute_ics(rr_coarse: float, rr_next: float) -> int:
    """Stored coefficient count: 256 + round(rr_coarse*768) + round(rr_next*3072)."""
    rr_coarse = _check_rr(rr_coarse, "rr_coarse")
    rr_next = _check_rr(rr_next, "rr_next")
    return APPROX_SIDE**2 + _round_half_away(rr_coarse * COARSE_LEN) + _round_half_away(rr_next * NEXT_LEN)


@dataclass
class CsPayload:
    """A compressed image: header metadata plus the stored coefficients."""

    width: int
    height: int
    wavelet: WaveletFilter
    levels: int
    rr_coarse: float
    rr_next: float
    seed_coarse: int
    seed_next: int
    approx: np.ndarray    # 16x16
    y_coarse: np.ndarray  # round(rr_coarse * 768) values
    y_next: np.ndarray    # round(rr_next * 3072) values

    @property
    def ics(self) -> int:
        """Total stored coefficient count."""
        return self.approx.size + self.y_coarse.size + self.y_next.size

    def validate(self) -> None:
        if self.width != self.height:
            raise PayloadFormatError("payload image must be square")
        if self.width < 64 or self.width & (self.width - 1):
            raise PayloadFormatError("payload image side must be a power of two >= 64")
        if self.levels != self.width.bit_length() - 5:
            raise PayloadFormatError("payload levels do not match the image side")
        if self.approx.shape != (APPROX_SIDE, APPROX_SIDE):
            raise PayloadFormatError("approximation block must be 16x16")
        for rr, y, full, label in (
            (self.rr_coarse, self.y_coarse, COARSE_LEN, "coarse"),
            (self.rr_next, self.y_next, NEXT_LEN, "next"),
        ):
            if not 0.0 < rr <= 1.0:
                raise PayloadFormatError(f"{label} reduction rate out of range")
            if y.ndim != 1 or y.size != _round_half_away(rr * full):
                raise PayloadFormatError(f"{label} vector length does not match its reduction rate")


def encode(image, wavelet, rr_coarse: float = 0.75, rr_next: float = 0.75, seed: int = 0) -> CsPayload:
    """Compress a square dyadic grayscale image into a CsPayload.

    ``wavelet`` may be a WaveletFilter or a name like "symmlet8". The two kept
    scales use measurement matrices seeded ``seed`` (coarse) and ``seed + 1``
    (next), so a payload is reproducible from its header alone.
    """
    filt = filter_by_name(wavelet) if isinstance(wavelet, str) else wavelet
    pixels = np.asarray(image, dtype=np.float64)
    if pixels.ndim != 2 or pixels.shape[0] != pixels.shape[1]:
        raise ValueError("image must be a square matrix")
    rr_coarse = _check_rr(rr_coarse, "rr_coarse")
    rr_next = _check_rr(rr_next, "rr_next")
    plan = plan_reduction(pixels.shape[0])
    pyramid = dwt2d(pixels, filt, plan.levels)

    seed_coarse = int(seed) & _MASK64
    seed_next = (seed_coarse + 1) & _MASK64
    stored = []
    for side, length, rr, scale_seed in (
        (COARSE_SIDE, COARSE_LEN, rr_coarse, seed_coarse),
        (NEXT_SIDE, NEXT_LEN, rr_next, seed_next),
    ):
        x = flatten_details(pyramid, side)
        matrix = sample_sphere_matrix(_round_half_away(rr * length), length, scale_seed)
        stored.append(project(matrix, x))

    return CsPayload(
        width=pixels.shape[0],
        height=pixels.shape[1],
        wavelet=filt,
        levels=plan.levels,
        rr_coarse=rr_coarse,
        rr_next=rr_next,
        seed_coarse=seed_coarse,
        seed_next=seed_next,
        approx=np.array(pyramid.approx),
        y_coarse=stored[0],
        y_next=stored[1],
    )


def decode(
    payload: CsPayload, schedule: ThresholdSchedule | None = None
) -> tuple[np.ndarray, dict[str, RecoveryReport]]:
    """Reconstruct an image from a CsPayload.

    Regenerates each measurement matrix from its seed, recovers both kept
    detail scales independently with the HALS solver, zero-fills the discarded
    scales and inverts the transform. Returns the reconstruction and one
    RecoveryReport per scale ("coarse" and "next").
    """
    payload.validate()
    if schedule is None:
        schedule = ThresholdSchedule()
    n = payload.width

    recovered: dict[int, np.ndarray] = {}
    reports: dict[str, RecoveryReport] = {}
    for label, side, length, y, seed in (
        ("coarse", COARSE_SIDE, COARSE_LEN, payload.y_coarse, payload.seed_coarse),
        ("next", NEXT_SIDE, NEXT_LEN, payload.y_next, payload.seed_next),
    ):
        matrix = sample_sphere_matrix(y.size, length, seed)
        y_tilde = backproject(matrix, y)
        x_hat, report = hals_recover(y_tilde, gram(matrix), schedule)
        recovered[side] = x_hat
        reports[label] = report

    details = []
    for level in range(1, payload.levels + 1):
        side = n >> level
        if side in recovered:
            details.append(unflatten_details(recovered[side], side))
        else:
            zeros = np.zeros((side, side))
            details.append(DetailBands(zeros, zeros.copy(), zeros.copy()))
    pyramid = SubbandPyramid(
        levels=payload.levels, source_size=n, approx=np.array(payload.approx), details=details
    )
    return idwt2d(pyramid, payload.wavelet), reports


def payload_to_bytes(payload: CsPayload) -> bytes:
    """Serialize to the .wcs wire format."""
    payload.validate()
    header = _HEADER.pack(
        _MAGIC,
        payload.width,
        payload.height,
        _FAMILY_IDS[payload.wavelet.family],
        payload.wavelet.tap_count,
        payload.levels,
        payload.rr_coarse,
        payload.rr_next,
        payload.seed_coarse,
        payload.seed_next,
        payload.y_coarse.size,
        payload.y_next.size,
    )
    body = b"".join(
        np.ascontiguousarray(part, dtype="<f8").tobytes()
        for part in (payload.approx.ravel(), payload.y_coarse, payload.y_next)
    )
    return header + body + struct.pack("<I", zlib.crc32(body))


def payload_from_bytes(data: bytes) -> CsPayload:
    """Parse and fully validate a .wcs byte string."""
    if len(data) < _HEADER.size + 4:
        raise PayloadFormatError("truncated payload: header incomplete")
    (magic, width, height, family_id, tap_count, levels, rr_coarse, rr_next,
     seed_coarse, seed_next, len_coarse, len_next) = _HEADER.unpack_from(data)
    if magic != _MAGIC:
        raise PayloadFormatError("bad magic: not a .wcs payload")
    family = _FAMILY_FROM_ID.get(family_id)
    if family is None:
        raise PayloadFormatError(f"unknown wavelet family id {family_id}")
    try:
        filt = filter_coefficients(family, tap_count)
    except ValueError as exc:
        raise PayloadFormatError(str(exc)) from None

    count = APPROX_SIDE**2 + len_coarse + len_next
    expected = _HEADER.size + 8 * count + 4
    if len(data) < expected:
        raise PayloadFormatError("truncated payload: body incomplete")
    if len(data) > expected:
        raise PayloadFormatError("payload has trailing bytes")
    body = data[_HEADER.size : _HEADER.size + 8 * count]
    (stored_crc,) = struct.unpack_from("<I", data, _HEADER.size + 8 * count)
    if zlib.crc32(body) != stored_crc:
        raise PayloadFormatError("payload checksum mismatch")

    values = np.frombuffer(body, dtype="<f8").astype(np.float64)
    approx = values[: APPROX_SIDE**2].reshape(APPROX_SIDE, APPROX_SIDE)
    y_coarse = values[APPROX_SIDE**2 : APPROX_SIDE**2 + len_coarse]
    y_next = values[APPROX_SIDE**2 + len_coarse :]
    payload = CsPayload(
        width=width,
        height=height,
        wavelet=filt,
        levels=levels,
        rr_coarse=rr_coarse,
        rr_next=rr_next,
        seed_coarse=seed_coarse,
        seed_next=seed_next,
        approx=approx,
        y_coarse=y_coarse,
        y_next=y_next,
    )
    try:
        payload.validate()
    except PayloadFormatError:
        raise
    except ValueError as exc:
        raise PayloadFormatError(str(exc)) from None
    return payload


def write_payload(payload: CsPayload, path) -> None:
    Path(path).write_bytes(payload_to_bytes(payload))


def read_payload(path) -> CsPayload:
    return payload_from_bytes(Path(path).read_bytes())
