import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from wavecs import GrayImage, idwt2d, filter_by_name, plan_reduction, unflatten_details, write_pgm
from wavecs.transform import DetailBands, SubbandPyramid

settings.register_profile(
    "suite", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

ALL_FILTERS = (
    "beylkin18",
    "coiflet6",
    "coiflet30",
    "daubechies4",
    "daubechies16",
    "symmlet8",
    "vaidyanathan24",
)


def zero_pyramid(n: int, levels: int) -> SubbandPyramid:
    details = []
    for level in range(1, levels + 1):
        side = n >> level
        zeros = np.zeros((side, side))
        details.append(DetailBands(zeros, zeros.copy(), zeros.copy()))
    return SubbandPyramid(
        levels=levels, source_size=n, approx=np.zeros((n >> levels, n >> levels)), details=details
    )


def sparse_pipeline_image(
    seed: int,
    n: int = 256,
    wavelet: str = "symmlet8",
    nonzeros: int = 20,
    lo: float = 20.0,
    hi: float = 200.0,
) -> np.ndarray:
    """Image whose coefficients live only in the approximation and kept scales.

    Both kept detail scales carry ``nonzeros`` coefficients with magnitudes in
    [lo, hi]; every finer scale is exactly zero, so the codec's discarded
    scales drop nothing.
    """
    rng = np.random.default_rng(seed)
    plan = plan_reduction(n)
    pyramid = zero_pyramid(n, plan.levels)
    pyramid.approx[:] = rng.uniform(0.0, 255.0, pyramid.approx.shape) * (n / 16.0)
    for side in plan.kept_scales:
        length = 3 * side * side
        vec = np.zeros(length)
        where = rng.choice(length, size=nonzeros, replace=False)
        vec[where] = rng.uniform(lo, hi, size=nonzeros) * rng.choice([-1.0, 1.0], size=nonzeros)
        level = plan.levels if side == 16 else plan.levels - 1
        pyramid.details[level - 1] = unflatten_details(vec, side)
    return idwt2d(pyramid, filter_by_name(wavelet))


def save_pgm(path, pixels) -> str:
    write_pgm(GrayImage.from_array(np.asarray(pixels, dtype=float)), path)
    return str(path)


@pytest.fixture(scope="session")
def camera_image() -> np.ndarray:
    data = pytest.importorskip("skimage.data", reason="scikit-image provides the reference image")
    return data.camera().astype(np.float64)
