"""Benford's-law detection of the quantum phase transition in the transverse XY chain."""
from .benford import (
    DigitHistogram,
    analyze_series,
    benford_pmf,
    first_significant_digit,
    histogram,
    shift_scale,
    violation_parameter,
)
from .exceptions import (
    BenfordQPTError,
    DegenerateSampleError,
    DomainError,
    EmptyHistogramError,
    InvalidMomentsError,
    QuadratureError,
)
from .quadrature import QuadratureConfig, integrate
from .quantum_state import TwoSiteState, log_negativity, negativity, pt_spectrum, reconstruct
from .scanner import (
    ScanResult,
    TransitionReport,
    WindowSpec,
    detect_transition,
    scan,
    window_delta,
    window_histogram,
)
from .xy_model import (
    FiniteChainSpec,
    ModelParams,
    ObservableKind,
    correlators,
    evaluate,
    magnetization_finite,
    magnetization_inf,
)

__version__ = "0.1.0"
