"""wavecs: compressed-sensing codec for grayscale images in orthogonal wavelet domains."""

from .filters import (
    Family,
    UnknownFilterError,
    WaveletFilter,
    available_filters,
    filter_by_name,
    filter_coefficients,
)
from .transform import DetailBands, SubbandPyramid, dwt1d, dwt2d, idwt1d, idwt2d
from .sensing import GramOperator, SensingMatrix, backproject, gram, project, sample_sphere_matrix
from .solver import (
    DEFAULT_ALPHA_MAX,
    DEFAULT_ALPHA_MIN,
    DEFAULT_ITERATIONS,
    RecoveryReport,
    ThresholdSchedule,
    abramovich_shrink,
    eval_local_cost,
    hals_recover,
    mad,
    threshold_for,
)
from .codec import (
    CsPayload,
    PayloadFormatError,
    ReductionPlan,
    compute_ics,
    decode,
    encode,
    flatten_details,
    payload_from_bytes,
    payload_to_bytes,
    plan_reduction,
    read_payload,
    unflatten_details,
    write_payload,
)
from .metrics import QualityReport, detect_objects, irl_cs, irl_linear, mse, psnr, recover_error
from .pgm import GrayImage, crop_center, read_pgm, write_pgm

__version__ = "0.1.0"
