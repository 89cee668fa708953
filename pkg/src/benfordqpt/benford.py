"""First-significant-digit statistics and the Benford violation parameter."""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal

import numpy as np

from .exceptions import DegenerateSampleError, DomainError, EmptyHistogramError

__all__ = [
    "DIGITS",
    "BENFORD_PROBABILITIES",
    "DigitHistogram",
    "BenfordSample",
    "benford_pmf",
    "shift_scale",
    "first_significant_digit",
    "first_significant_digits",
    "histogram",
    "violation_parameter",
    "violation_from_counts",
    "analyze_series",
]

DIGITS = tuple(range(1, 10))
BENFORD_PROBABILITIES = np.log10(1.0 + 1.0 / np.arange(1, 10))

# mantissas (in [1, 10)) this close to an integer are re-derived exactly
_BOUNDARY_GUARD = 1e-11


def benford_pmf(digit: int) -> float:
    """Benford probability ``log10(1 + 1/D)`` of leading digit ``D``."""
    if int(digit) != digit or not 1 <= digit <= 9:
        raise DomainError(f"digit must be an integer in 1..9, got {digit!r}")
    return float(np.log10(1.0 + 1.0 / int(digit)))


@dataclass(frozen=True)
class BenfordSample:
    """Shift-scaled values, every one strictly inside (0, 1)."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if np.any((values <= 0) | (values >= 1)) or not np.all(np.isfinite(values)):
            raise DomainError("Benford sample values must lie strictly inside (0, 1)")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    @property
    def sample_size(self):
        return self.values.size


@dataclass(frozen=True)
class DigitHistogram:
    """Leading-digit counts for digits 1..9 and the sample size ``N``."""

    counts: dict = field(default_factory=lambda: {d: 0 for d in DIGITS})
    sample_size: int = 0

    def __post_init__(self):
        counts = {d: int(self.counts.get(d, 0)) for d in DIGITS}
        extra = set(self.counts) - set(DIGITS)
        if extra:
            raise DomainError(f"histogram keys must be digits 1..9, got {sorted(extra)}")
        if any(c < 0 for c in counts.values()):
            raise DomainError("histogram counts must be nonnegative")
        if sum(counts.values()) != self.sample_size:
            raise DomainError(
                f"counts sum to {sum(counts.values())} but sample_size is {self.sample_size}"
            )
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_array(cls, counts):
        counts = [int(c) for c in counts]
        if len(counts) != 9:
            raise DomainError(f"expected 9 counts, got {len(counts)}")
        return cls(dict(zip(DIGITS, counts)), sum(counts))

    def as_array(self):
        return np.array([self.counts[d] for d in DIGITS], dtype=np.int64)

    def relative_frequencies(self):
        if self.sample_size == 0:
            raise EmptyHistogramError("relative frequencies undefined for N = 0")
        return self.as_array() / self.sample_size

    def expected_counts(self):
        return self.sample_size * BENFORD_PROBABILITIES


def shift_scale(raw) -> BenfordSample:
    """Map a series onto [0, 1] by its own min and max, then drop the 0s and 1s.

    Every value landing exactly on an endpoint is removed (ties included), so
    a series with a unique minimum and maximum loses exactly two points.
    """
    raw = np.asarray(raw, dtype=float).ravel()
    if raw.size < 3:
        raise DomainError(f"need at least 3 values to shift-scale, got {raw.size}")
    if not np.all(np.isfinite(raw)):
        raise DomainError("series contains non-finite values")
    lo, hi = raw.min(), raw.max()
    if not hi > lo:
        raise DegenerateSampleError("series is constant; shift-scaling is undefined")
    scaled = (raw - lo) / (hi - lo)
    return BenfordSample(scaled[(scaled > 0) & (scaled < 1)])


def _exact_digit(x: float) -> int:
    # shortest round-trip decimal: 0.3 -> 3, 0.1 * (1 - 2**-53) -> 9
    return Decimal(repr(x)).as_tuple().digits[0]


def first_significant_digits(values) -> np.ndarray:
    """Vectorised :func:`first_significant_digit` for values in (0, 1)."""
    x = np.asarray(values, dtype=float).ravel()
    if np.any((x <= 0) | (x >= 1)) or not np.all(np.isfinite(x)):
        raise DomainError("first significant digit is defined here only on (0, 1)")
    if x.size == 0:
        return np.zeros(0, dtype=np.int64)
    mantissa = x * 10.0 ** (-np.floor(np.log10(x)))
    digits = np.floor(mantissa).astype(np.int64)
    suspect = (
        (np.abs(mantissa - np.rint(mantissa)) < _BOUNDARY_GUARD)
        | (digits < 1)
        | (digits > 9)
    )
    for i in np.flatnonzero(suspect):
        digits[i] = _exact_digit(float(x[i]))
    return digits


def first_significant_digit(x: float) -> int:
    """Leading nonzero decimal digit of ``x`` in (0, 1).

    >>> first_significant_digit(0.00234)
    2
    """
    return int(first_significant_digits([x])[0])


def histogram(sample) -> DigitHistogram:
    """Count leading digits of a :class:`BenfordSample` (or array-like in (0, 1))."""
    values = sample.values if isinstance(sample, BenfordSample) else sample
    digits = first_significant_digits(values)
    counts = np.bincount(digits, minlength=10)[1:10]
    return DigitHistogram.from_array(counts)


def violation_from_counts(observed, sample_size) -> float:
    """Violation parameter for an arbitrary (possibly fractional) count vector."""
    observed = np.asarray(observed, dtype=float)
    if observed.shape != (9,):
        raise DomainError(f"expected 9 counts, got shape {observed.shape}")
    if sample_size <= 0:
        raise EmptyHistogramError("violation parameter undefined for an empty histogram")
    expected = sample_size * BENFORD_PROBABILITIES
    return float(np.sum(np.abs(observed - expected) / expected))


def violation_parameter(hist: DigitHistogram) -> float:
    """``sum_D |O_D - E_D| / E_D`` with ``E_D = N log10(1 + 1/D)``."""
    return violation_from_counts(hist.as_array(), hist.sample_size)


def analyze_series(raw):
    """Shift-scale a raw series and return ``(histogram, delta)``."""
    hist = histogram(shift_scale(raw))
    return hist, violation_parameter(hist)
