"""Orthonormal wavelet low-pass filters and their quadrature-mirror high-pass mates.

Seven classical filters are supported: Beylkin-18, Coiflet-6, Coiflet-30,
Daubechies-4, Daubechies-16, Symmlet-8 and Vaidyanathan-24. Tap values come
from the standard published tables (WaveLab-style, L2-normalized); the longer
tables are only accurate to their printed digits, so they have been projected
onto the exact orthogonality constraints offline (see
``scripts/refine_filter_tables.py``). Every filter is re-validated against the
orthonormality invariants at construction time rather than trusted.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Family",
    "UnknownFilterError",
    "WaveletFilter",
    "filter_coefficients",
    "filter_by_name",
    "available_filters",
    "SUM_TOL",
    "ENERGY_TOL",
    "SHIFT_ORTH_TOL",
]

SUM_TOL = 1e-8         # |sum(taps) - sqrt(2)|
ENERGY_TOL = 1e-10     # |sum(taps**2) - 1|
SHIFT_ORTH_TOL = 1e-8  # |<taps, taps shifted by 2k>|, k != 0


class Family(enum.Enum):
    """Wavelet family of an orthogonal low-pass filter."""

    BEYLKIN = "beylkin"
    COIFLET = "coiflet"
    DAUBECHIES = "daubechies"
    SYMMLET = "symmlet"
    VAIDYANATHAN = "vaidyanathan"


class UnknownFilterError(ValueError):
    """Raised for a (family, tap_count) pair outside the supported set."""


_TAPS: dict[tuple[Family, int], tuple[float, ...]] = {
    (Family.BEYLKIN, 18): (
        9.930576537400788e-02,
        4.242153608130337e-01,
        6.998252140570556e-01,
        4.497182511490357e-01,
        -1.1092759834800882e-01,
        -2.64497231446021e-01,
        2.6900308804002133e-02,
        1.5553873187701237e-01,
        -1.752074626700139e-02,
        -8.854363062300702e-02,
        1.967986604400156e-02,
        4.2916387274003404e-02,
        -1.7460408696001385e-02,
        -1.436580796900114e-02,
        1.0040411845000796e-02,
        1.4842347820001177e-03,
        -2.7360316260002173e-03,
        6.404853290000508e-04,
    ),
    (Family.COIFLET, 6): (
        3.8580777748005855e-02,
        -1.2696912539601926e-01,
        -7.716155549601171e-02,
        6.074916413860921e-01,
        7.456875589341131e-01,
        2.265842651970344e-01,
    ),
    (Family.COIFLET, 30): (
        -2.1209846631571537e-04,
        3.585717671867398e-04,
        2.178281237390344e-03,
        -4.1593651732175435e-03,
        -1.013111245560325e-02,
        2.3408137015677108e-02,
        2.8168047151119938e-02,
        -9.19200248217492e-02,
        -5.2043148196410385e-02,
        4.2156619100402004e-01,
        7.742896193174751e-01,
        4.3799161073192694e-01,
        -6.203594850461358e-02,
        -1.0557422402398385e-01,
        4.128922466035923e-02,
        3.268355796489166e-02,
        -1.9761765880388506e-02,
        -9.164242482504123e-03,
        6.764213408992309e-03,
        2.4333338123629406e-03,
        -1.6629733893832592e-03,
        -6.378827993635385e-04,
        3.021519688347995e-04,
        1.404695280606388e-04,
        -4.1277865760525504e-05,
        -2.129790220273243e-05,
        3.708518417066768e-06,
        2.065501256274913e-06,
        -1.6289782991841442e-07,
        -9.635555013886902e-08,
    ),
    (Family.DAUBECHIES, 4): (
        4.8296291314483153e-01,
        8.365163037377082e-01,
        2.2414386804192182e-01,
        -1.2940952255095486e-01,
    ),
    (Family.DAUBECHIES, 16): (
        5.441584224308553e-02,
        3.128715909140967e-01,
        6.756307362972567e-01,
        5.853546836542487e-01,
        -1.5829105255895707e-02,
        -2.840155429619121e-01,
        4.7248457421367315e-04,
        1.2874742662023908e-01,
        -1.7369301001829613e-02,
        -4.408825393071038e-02,
        1.39810279175076e-02,
        8.746094047243587e-03,
        -4.87035299341664e-03,
        -3.917403733366014e-04,
        6.754494064250204e-04,
        -1.1747678412030514e-04,
    ),
    (Family.SYMMLET, 8): (
        -7.576571478934067e-02,
        -2.963552764595414e-02,
        4.976186676324578e-01,
        8.037387518052163e-01,
        2.9785779560554215e-01,
        -9.921954357693541e-02,
        -1.260396726226117e-02,
        3.222310060407135e-02,
    ),
    (Family.VAIDYANATHAN, 24): (
        -6.254466873789994e-05,
        3.416993521962908e-04,
        -4.491480351880186e-04,
        -9.519995136962406e-04,
        2.8507089523380426e-03,
        7.029743138916365e-04,
        -8.834370527922417e-03,
        3.1479230341171682e-03,
        1.969373581030279e-02,
        -1.4859088478225589e-02,
        -3.546539319453089e-02,
        3.873686952192325e-02,
        5.589889609318458e-02,
        -7.77153209022529e-02,
        -8.39238008467285e-02,
        1.3196552657817662e-01,
        1.350903080946402e-01,
        -1.944554211564191e-01,
        -2.6348840052603734e-01,
        2.01607082985183e-01,
        6.356071309361991e-01,
        5.727918086800322e-01,
        2.5018965692675554e-01,
        4.5794728943893546e-02,
    ),
}

_NAME_RE = re.compile(r"^([a-z]+)[-_ ]?(\d+)$")


@dataclass(frozen=True, eq=False)
class WaveletFilter:
    """An orthonormal scaling (low-pass) filter.

    The taps define the analysis low-pass; the matching high-pass is the
    quadrature mirror g[n] = (-1)^n h[L-1-n].
    """

    family: Family
    tap_count: int
    taps: np.ndarray

    def __post_init__(self) -> None:
        taps = np.asarray(self.taps, dtype=np.float64)
        if taps.ndim != 1 or taps.size != self.tap_count:
            raise ValueError("taps must be a 1-D sequence of length tap_count")
        if self.tap_count % 2 != 0:
            raise ValueError("tap_count must be even")
        taps = taps.copy()
        taps.flags.writeable = False
        object.__setattr__(self, "taps", taps)
        self._validate()

    def _validate(self) -> None:
        h = self.taps
        if abs(h.sum() - math.sqrt(2.0)) > SUM_TOL:
            raise ValueError(f"filter {self.name}: tap sum deviates from sqrt(2)")
        if abs(np.dot(h, h) - 1.0) > ENERGY_TOL:
            raise ValueError(f"filter {self.name}: tap energy deviates from 1")
        for k in range(1, self.tap_count // 2):
            if abs(np.dot(h[: -2 * k], h[2 * k :])) > SHIFT_ORTH_TOL:
                raise ValueError(
                    f"filter {self.name}: even-shift orthogonality violated at shift {2 * k}"
                )

    @property
    def name(self) -> str:
        return f"{self.family.value}{self.tap_count}"

    def highpass(self) -> np.ndarray:
        """Quadrature-mirror high-pass taps g[n] = (-1)^n h[L-1-n]."""
        h = self.taps
        return (-1.0) ** np.arange(h.size) * h[::-1]


def filter_coefficients(family: Family | str, tap_count: int) -> WaveletFilter:
    """Look up one of the seven supported orthonormal filters.

    Raises UnknownFilterError for any unsupported (family, tap_count) pair.
    """
    if isinstance(family, str):
        try:
            family = Family(family.lower())
        except ValueError:
            raise UnknownFilterError(f"unknown filter family: {family!r}") from None
    key = (family, int(tap_count))
    taps = _TAPS.get(key)
    if taps is None:
        supported = ", ".join(sorted(f"{f.value}-{n}" for f, n in _TAPS))
        raise UnknownFilterError(
            f"unknown filter: {family.value}-{tap_count} (supported: {supported})"
        )
    return WaveletFilter(family=family, tap_count=key[1], taps=np.array(taps))


def filter_by_name(name: str) -> WaveletFilter:
    """Parse names like 'symmlet8', 'Symmlet-8' or 'daubechies_4'."""
    m = _NAME_RE.match(name.strip().lower())
    if not m:
        raise UnknownFilterError(f"unknown filter: {name!r}")
    return filter_coefficients(m.group(1), int(m.group(2)))


def available_filters() -> tuple[str, ...]:
    """Canonical names of the supported filters, in table order."""
    return tuple(f"{fam.value}{n}" for fam, n in _TAPS)
