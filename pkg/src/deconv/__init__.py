"""Deconvolution of finitely supported measures and gaussian blurs.

The lattice half works with finite signed atomic measures on the 1D and
2D integer lattices, in exact rational or float arithmetic: convolution
algebra, truncated alternating-series inverses, windowed inverse
verification, and the variance bookkeeping for how truncation and noise
interact.  The continuous half samples the standard gaussian density on
float grids and studies blur and naive spectral deblurring there.
"""

from .errors import (
    DeconvError,
    DimensionMismatch,
    FormatError,
    GridTooCoarse,
    GridTooNarrow,
    InsufficientTruncation,
    ModeMismatch,
    NormNotLessThanOne,
    OrderCapExceeded,
    ParameterOutOfRange,
    ReciprocalUnderflow,
    UnsupportedKernel,
)
from .gaussian import (
    GaussianKernelSpec,
    ProbeReport,
    Spectrum,
    SpectrumDiagnostics,
    blur,
    dft_forward,
    dft_inverse,
    fourier_at,
    inverse_probe,
    kernel_spectrum,
    naive_deblur,
    noise_blowup_experiment,
    padded_for_blur,
    sample_gaussian,
    two_bump_signal,
)
from .grids import EXACT, FLOAT, GridSignal
from .measures import (
    AtomicMeasure,
    InversionReport,
    WindowSpec,
    apply_to_signal,
    dirac,
    from_atoms,
    is_inverse,
    is_zero_divisor_pair,
)
from .neumann import (
    NeumannConfig,
    NeumannReport,
    invert_three_point,
    neumann_inverse,
    three_point_kernel,
    van_cittert_deblur,
)
from .onesided import (
    MarginReport,
    PerturbationReport,
    Side,
    TruncatedSeries,
    binomial_inverse,
    binomial_kernel,
    cauchy_product,
    growth_table,
    half_pair_inverse,
    half_pair_kernel,
    pair_kernel,
    perturbation_response,
    reconstruct,
    unit_pair_inverse,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "DeconvError",
    "DimensionMismatch",
    "EXACT",
    "FLOAT",
    "FormatError",
    "GaussianKernelSpec",
    "GridSignal",
    "GridTooCoarse",
    "GridTooNarrow",
    "InsufficientTruncation",
    "InversionReport",
    "MarginReport",
    "ModeMismatch",
    "NeumannConfig",
    "NeumannReport",
    "NormNotLessThanOne",
    "OrderCapExceeded",
    "ParameterOutOfRange",
    "PerturbationReport",
    "ProbeReport",
    "ReciprocalUnderflow",
    "Side",
    "Spectrum",
    "SpectrumDiagnostics",
    "TruncatedSeries",
    "UnsupportedKernel",
    "WindowSpec",
    "apply_to_signal",
    "binomial_inverse",
    "binomial_kernel",
    "blur",
    "cauchy_product",
    "dft_forward",
    "dft_inverse",
    "dirac",
    "fourier_at",
    "from_atoms",
    "growth_table",
    "half_pair_inverse",
    "half_pair_kernel",
    "inverse_probe",
    "invert_three_point",
    "is_inverse",
    "is_zero_divisor_pair",
    "kernel_spectrum",
    "naive_deblur",
    "neumann_inverse",
    "noise_blowup_experiment",
    "padded_for_blur",
    "pair_kernel",
    "perturbation_response",
    "reconstruct",
    "sample_gaussian",
    "three_point_kernel",
    "two_bump_signal",
    "unit_pair_inverse",
    "van_cittert_deblur",
]
