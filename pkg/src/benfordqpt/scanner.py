"""Shifting field-window scans of the Benford violation parameter.

A window of width ``eps`` centred at ``c`` samples the field ratio on
``(c - eps/2, c + eps/2)``.  The chosen observable is evaluated on that
sample, shift-scaled by the window's own extremes, and reduced to a single
violation parameter.  Sliding the centre along the field axis gives a
delta-versus-field curve, and :func:`detect_transition` locates the
steepest excursion of that curve together with the plateaus flanking it.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import benford
from .exceptions import BenfordQPTError, DomainError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .xy_model import FiniteChainSpec, ObservableKind, evaluate_many, magnetization_finite_many

__all__ = [
    "WindowSpec",
    "ScanResult",
    "TransitionReport",
    "sample_window",
    "window_values",
    "window_delta",
    "scan",
    "window_histogram",
    "detect_transition",
    "excursion_amplitude",
]

logger = logging.getLogger(__name__)

_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class WindowSpec:
    """Window width ``eps``, raw points per window, and step between centres.

    With ``seed`` set, field values are drawn uniformly at random instead of
    on the interior grid; the draw for each window depends only on
    ``(seed, center)``.
    """

    width: float = 0.2
    sample_count: int = 1998
    shift: float = 0.05
    seed: int | None = None

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError(f"window width must be positive, got {self.width!r}")
        if not self.shift > 0:
            raise DomainError(f"window shift must be positive, got {self.shift!r}")
        if int(self.sample_count) != self.sample_count or self.sample_count < 3:
            raise DomainError(f"sample_count must be an integer >= 3, got {self.sample_count!r}")

    def bounds(self, center):
        return center - self.width / 2, center + self.width / 2


@dataclass(frozen=True)
class ScanResult:
    """One delta-versus-field curve.

    ``points`` holds ``(center, delta)`` pairs in ascending centre order;
    windows that could not be evaluated are listed in ``skipped`` as
    ``(center, reason)`` instead.
    """

    quantity: ObservableKind
    gamma: float
    points: tuple
    spec: WindowSpec = field(default_factory=WindowSpec)
    skipped: tuple = ()
    chain: FiniteChainSpec | None = None

    @property
    def centers(self):
        return np.array([c for c, _ in self.points], dtype=float)

    @property
    def deltas(self):
        return np.array([d for _, d in self.points], dtype=float)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class TransitionReport:
    candidate: float
    derivative_extremum: float
    plateau_before: float
    plateau_after: float
    plateau_distinct: bool
    excursion: float = math.nan

    @property
    def detected(self):
        return bool(self.plateau_distinct) and math.isfinite(self.candidate)


def _grid(lo, hi, count):
    return lo + (hi - lo) * np.arange(1, count + 1) / (count + 1)


def sample_window(center: float, spec: WindowSpec) -> np.ndarray:
    """Field values inside the open window around ``center``, ascending.

    >>> sample_window(1.0, WindowSpec(width=0.2, sample_count=3)).round(12).tolist()
    [0.95, 1.0, 1.05]
    """
    lo, hi = spec.bounds(center)
    if lo < -_EDGE_SLACK:
        raise DomainError(f"window around {center!r} extends below zero field")
    lo = max(lo, 0.0)
    if spec.seed is None:
        return _grid(lo, hi, spec.sample_count)
    rng = np.random.default_rng([int(spec.seed), int(round(center * 1e9))])
    values = np.sort(rng.uniform(lo, hi, spec.sample_count))
    # uniform() can return lo itself; keep the window open
    values[values <= lo] = np.nextafter(lo, hi)
    return values


def window_values(kind, gamma, fields, cfg=DEFAULT_CONFIG, chain: FiniteChainSpec | None = None):
    """Evaluate the scanned quantity on an array of fields."""
    kind = ObservableKind.parse(kind)
    if chain is None:
        return evaluate_many(kind, gamma, fields, cfg)
    if kind is not ObservableKind.MZ:
        raise DomainError("finite chains support only the transverse magnetization")
    return magnetization_finite_many(chain, gamma, fields)


def window_delta(
    kind,
    gamma: float,
    center: float,
    spec: WindowSpec,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    chain: FiniteChainSpec | None = None,
) -> float:
    """Violation parameter of one field window."""
    fields = sample_window(center, spec)
    return benford.analyze_series(window_values(kind, gamma, fields, cfg, chain))[1]


def _centers(field_range, shift):
    lo, hi = (float(v) for v in field_range)
    if hi < lo:
        return []
    count = int(math.floor((hi - lo) / shift + 1e-9)) + 1
    return [round(lo + k * shift, 12) for k in range(count)]


def scan(
    kind,
    gamma: float,
    field_range,
    spec: WindowSpec = WindowSpec(),
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    chain: FiniteChainSpec | None = None,
    n_jobs: int = 1,
) -> ScanResult:
    """Slide the window from ``field_range[0]`` to ``field_range[1]``.

    Centres are ``lo + k * shift`` for every ``k`` keeping the centre at or
    below ``hi``.  A window that fails (below zero field, constant sample,
    quadrature failure) becomes an entry of ``skipped`` and the scan
    continues.  ``n_jobs > 1`` evaluates windows on a thread pool; the result
    does not depend on it.
    """
    kind = ObservableKind.parse(kind)
    centers = _centers(field_range, spec.shift)

    def one(center):
        try:
            return center, window_delta(kind, gamma, center, spec, cfg, chain), None
        except BenfordQPTError as exc:
            return center, None, str(exc)

    if n_jobs and n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            outcomes = list(pool.map(one, centers))
    else:
        outcomes = [one(c) for c in centers]

    points, skipped = [], []
    for center, delta, reason in outcomes:
        if reason is None:
            points.append((center, delta))
        else:
            logger.info("skipping window at %.6g: %s", center, reason)
            skipped.append((center, reason))
    return ScanResult(kind, float(gamma), tuple(points), spec, tuple(skipped), chain)


def window_histogram(
    kind,
    gamma: float,
    interval,
    sample_count: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    chain: FiniteChainSpec | None = None,
) -> benford.DigitHistogram:
    """Leading-digit histogram for one explicit field interval ``(lo, hi)``."""
    lo, hi = (float(v) for v in interval)
    if not (0 <= lo < hi):
        raise DomainError(f"interval must satisfy 0 <= lo < hi, got ({lo!r}, {hi!r})")
    if int(sample_count) != sample_count or sample_count < 3:
        raise DomainError(f"sample_count must be an integer >= 3, got {sample_count!r}")
    values = window_values(kind, gamma, _grid(lo, hi, int(sample_count)), cfg, chain)
    return benford.analyze_series(values)[0]


def _steepest(centers, deltas):
    slopes = (deltas[2:] - deltas[:-2]) / (centers[2:] - centers[:-2])
    mags = np.abs(slopes)
    top = mags.max()
    if top == 0:
        return None, 0.0
    ties = np.flatnonzero(mags >= top * (1 - 1e-12))
    # a flat-topped maximum (e.g. a clean step) resolves to the middle of its first run
    run = [ties[0]]
    for i in ties[1:]:
        if i != run[-1] + 1:
            break
        run.append(i)
    candidate = float(np.mean(centers[1:-1][run]))
    return candidate, float(slopes[run[0]])


def excursion_amplitude(result: ScanResult, around: float, radius: float = 0.3) -> float:
    """Peak-to-trough spread of delta over centres within ``radius`` of ``around``."""
    centers, deltas = result.centers, result.deltas
    near = np.abs(centers - around) <= radius + _EDGE_SLACK
    if not np.any(near):
        return math.nan
    return float(deltas[near].max() - deltas[near].min())


def detect_transition(
    result: ScanResult,
    plateau_margin: float | None = None,
    edge_exclusion: float = 0.3,
) -> TransitionReport:
    """Locate the largest-modulus extremum of d(delta)/d(field).

    The candidate is the centre where the centred finite difference of the
    curve is largest in absolute value.  Plateaus are the mean delta over
    centres farther than ``edge_exclusion`` from the candidate on either side.
    They count as distinct when their difference exceeds ``plateau_margin``,
    which defaults to 10% of the larger plateau.
    """
    centers, deltas = result.centers, result.deltas
    if centers.size < 5:
        raise DomainError(f"transition detection needs at least 5 points, got {centers.size}")
    candidate, slope = _steepest(centers, deltas)
    if candidate is None:
        level = float(deltas.mean())
        return TransitionReport(math.nan, 0.0, level, level, False, 0.0)

    before = deltas[centers < candidate - edge_exclusion - _EDGE_SLACK]
    after = deltas[centers > candidate + edge_exclusion + _EDGE_SLACK]
    plateau_before = float(before.mean()) if before.size else math.nan
    plateau_after = float(after.mean()) if after.size else math.nan
    if plateau_margin is None:
        plateau_margin = 0.1 * max(abs(plateau_before), abs(plateau_after))
    distinct = bool(
        before.size
        and after.size
        and abs(plateau_before - plateau_after) > plateau_margin
    )
    return TransitionReport(
        candidate=candidate,
        derivative_extremum=slope,
        plateau_before=plateau_before,
        plateau_after=plateau_after,
        plateau_distinct=distinct,
        excursion=excursion_amplitude(result, candidate, edge_exclusion),
    )
