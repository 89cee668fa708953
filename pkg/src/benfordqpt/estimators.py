"""scikit-learn compatible wrappers around the Benford scan pipeline.

``BenfordViolation`` turns rows of raw series into digit-frequency and
violation features.  ``WindowScanner`` maps window centres to violation
parameters of the XY chain.  ``TransitionDetector`` fits a delta curve and
predicts on which side of the detected transition a field value lies.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, validate_data

from . import benford, scanner
from .quadrature import QuadratureConfig
from .xy_model import FiniteChainSpec, ObservableKind

__all__ = ["BenfordViolation", "WindowScanner", "TransitionDetector"]


class BenfordViolation(TransformerMixin, BaseEstimator):
    """Per-row leading-digit features of raw series.

    Each row of ``X`` is one series.  It is shift-scaled by its own extremes
    and reduced to the nine relative digit frequencies followed by the
    violation parameter, giving 10 output columns.

    Stateless: ``fit`` only validates the input and records its width.
    """

    def fit(self, X, y=None):
        validate_data(self, X, ensure_min_features=3)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = validate_data(self, X, reset=False, ensure_min_features=3)
        out = np.empty((X.shape[0], 10))
        for i, row in enumerate(X):
            hist, delta = benford.analyze_series(row)
            out[i, :9] = hist.relative_frequencies() if hist.sample_size else 0.0
            out[i, 9] = delta
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array([f"freq_{d}" for d in benford.DIGITS] + ["delta"], dtype=object)


class WindowScanner(TransformerMixin, BaseEstimator):
    """Violation parameter of the XY chain for each window centre in ``X``.

    Parameters
    ----------
    quantity : str
        One of ``mz, cxx, cyy, czz, entropy, logneg``.
    gamma : float
        Anisotropy; 1 is the transverse Ising chain.
    width, sample_count, shift, seed
        See :class:`benfordqpt.scanner.WindowSpec`.
    chain_length : int or None
        Scan the finite-chain magnetization of this many spins instead of
        the infinite chain.
    momenta : {"half", "full"}
        Momentum set for finite chains.
    abs_tol : float
        Quadrature error target.

    ``transform`` returns NaN for windows that cannot be evaluated.
    """

    def __init__(
        self,
        quantity="mz",
        gamma=1.0,
        width=0.2,
        sample_count=1998,
        shift=0.05,
        seed=None,
        chain_length=None,
        momenta="half",
        abs_tol=1e-10,
    ):
        self.quantity = quantity
        self.gamma = gamma
        self.width = width
        self.sample_count = sample_count
        self.shift = shift
        self.seed = seed
        self.chain_length = chain_length
        self.momenta = momenta
        self.abs_tol = abs_tol

    def fit(self, X=None, y=None):
        self.quantity_ = ObservableKind.parse(self.quantity)
        self.spec_ = scanner.WindowSpec(self.width, self.sample_count, self.shift, self.seed)
        self.cfg_ = QuadratureConfig(abs_tol=self.abs_tol)
        self.chain_ = (
            None
            if self.chain_length is None
            else FiniteChainSpec(self.chain_length, momenta=self.momenta, allow_odd=True)
        )
        return self

    def transform(self, X):
        check_is_fitted(self, "spec_")
        centers = check_array(X, ensure_2d=False).ravel()
        out = np.full(centers.shape, np.nan)
        for i, c in enumerate(centers):
            try:
                out[i] = scanner.window_delta(
                    self.quantity_, self.gamma, float(c), self.spec_, self.cfg_, self.chain_
                )
            except (ValueError, ArithmeticError):
                pass
        return out.reshape(-1, 1)


class TransitionDetector(ClassifierMixin, BaseEstimator):
    """Locate a transition on a delta curve and classify fields by side.

    ``fit(X, y)`` takes window centres ``X`` (one column) and violation
    parameters ``y``.  ``predict`` returns 1 for fields above the fitted
    candidate and 0 otherwise.
    """

    def __init__(self, plateau_margin=None, edge_exclusion=0.3):
        self.plateau_margin = plateau_margin
        self.edge_exclusion = edge_exclusion

    def fit(self, X, y):
        X, y = validate_data(self, X, y, y_numeric=True, ensure_min_samples=5)
        if X.shape[1] != 1:
            raise ValueError(f"expected one column of window centres, got {X.shape[1]}")
        order = np.argsort(X[:, 0], kind="stable")
        result = scanner.ScanResult(
            ObservableKind.MZ, float("nan"), tuple(zip(X[order, 0].tolist(), y[order].tolist()))
        )
        self.report_ = scanner.detect_transition(result, self.plateau_margin, self.edge_exclusion)
        self.candidate_ = self.report_.candidate
        self.detected_ = self.report_.detected
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X):
        check_is_fitted(self, "report_")
        X = validate_data(self, X, reset=False)
        if not self.detected_:
            raise ValueError("no transition was detected on the fitted curve")
        return (X[:, 0] > self.candidate_).astype(int)
