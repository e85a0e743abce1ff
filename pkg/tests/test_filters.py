import math

import numpy as np
import pytest

from wavecs import Family, UnknownFilterError, WaveletFilter, available_filters, filter_by_name, filter_coefficients

from conftest import ALL_FILTERS


def test_catalog_lists_the_seven_filters():
    assert available_filters() == ALL_FILTERS


@pytest.mark.parametrize("name", ALL_FILTERS)
def test_tap_sum_is_sqrt2(name):
    filt = filter_by_name(name)
    assert abs(filt.taps.sum() - math.sqrt(2.0)) < 1e-8


@pytest.mark.parametrize("name", ALL_FILTERS)
def test_tap_energy_is_one(name):
    filt = filter_by_name(name)
    assert abs(filt.taps @ filt.taps - 1.0) < 1e-10


@pytest.mark.parametrize("name", ALL_FILTERS)
def test_even_shift_orthogonality(name):
    h = filter_by_name(name).taps
    for k in range(1, h.size // 2):
        assert abs(np.dot(h[: -2 * k], h[2 * k :])) < 1e-8


@pytest.mark.parametrize("name", ALL_FILTERS)
def test_tap_count_even_and_consistent(name):
    filt = filter_by_name(name)
    assert filt.tap_count % 2 == 0
    assert filt.taps.size == filt.tap_count
    assert filt.name == name


def test_daubechies4_basics():
    filt = filter_coefficients(Family.DAUBECHIES, 4)
    assert filt.taps.size == 4
    assert abs(filt.taps.sum() - math.sqrt(2.0)) < 1e-12
    # closed form (1+sqrt3, 3+sqrt3, 3-sqrt3, 1-sqrt3) / (4 sqrt2)
    s3 = math.sqrt(3.0)
    expected = np.array([1 + s3, 3 + s3, 3 - s3, 1 - s3]) / (4 * math.sqrt(2.0))
    np.testing.assert_allclose(filt.taps, expected, atol=1e-11)


def test_coiflet30_matches_published_table():
    filt = filter_coefficients("coiflet", 30)
    assert filt.taps.size == 30
    # anchor taps from the published 12-decimal table; the embedded values are
    # its projection onto exact orthogonality, within 3e-7 of every entry
    anchors = {9: 0.421566206729, 10: 0.774289603740, 11: 0.437991626228, 13: -0.105574208706}
    for idx, published in anchors.items():
        assert abs(filt.taps[idx] - published) < 3e-7


def test_unknown_pairs_raise():
    with pytest.raises(UnknownFilterError):
        filter_coefficients(Family.DAUBECHIES, 2)
    with pytest.raises(UnknownFilterError):
        filter_coefficients(Family.COIFLET, 12)
    with pytest.raises(UnknownFilterError):
        filter_coefficients("haar", 2)
    with pytest.raises(UnknownFilterError):
        filter_by_name("symmlet9")
    with pytest.raises(UnknownFilterError):
        filter_by_name("not a filter")


def test_name_parsing_variants():
    for name in ("Symmlet-8", "symmlet_8", "symmlet 8", "SYMMLET8"):
        assert filter_by_name(name).name == "symmlet8"


@pytest.mark.parametrize("name", ALL_FILTERS)
def test_highpass_is_quadrature_mirror(name):
    filt = filter_by_name(name)
    h, g = filt.taps, filt.highpass()
    size = h.size
    expected = np.array([(-1.0) ** n * h[size - 1 - n] for n in range(size)])
    np.testing.assert_array_equal(g, expected)
    # zero DC gain and cross-orthogonality to the low-pass at even shifts
    assert abs(g.sum()) < 1e-8
    for k in range(-(size // 2) + 1, size // 2):
        lo, hi = max(0, 2 * k), min(size, size + 2 * k)
        assert abs(np.dot(h[lo - 2 * k : hi - 2 * k], g[lo:hi])) < 1e-8


def test_invalid_taps_rejected():
    bad = np.full(4, 0.5)  # unit energy but wrong sum and correlations
    with pytest.raises(ValueError):
        WaveletFilter(family=Family.DAUBECHIES, tap_count=4, taps=bad)
    with pytest.raises(ValueError):
        WaveletFilter(family=Family.DAUBECHIES, tap_count=3, taps=np.ones(3) / math.sqrt(3))


def test_taps_are_immutable():
    filt = filter_by_name("daubechies4")
    with pytest.raises(ValueError):
        filt.taps[0] = 0.0
