"""Two-site reduced state of the XY chain and its entanglement.

The nearest-neighbour state is fixed by four moments::

    rho = 1/4 [ II + mz (ZI + IZ) + cxx XX + cyy YY + czz ZZ ]

It is an X-state, so both its spectrum and that of its partial transpose
are available in closed form.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, InvalidMomentsError

__all__ = [
    "PHYSICALITY_TOL",
    "TwoSiteState",
    "PtSpectrum",
    "reconstruct",
    "pt_spectrum",
    "negativity",
    "log_negativity",
    "single_site_entropy",
    "state_eigenvalues_many",
    "pt_eigenvalues_many",
    "log_negativity_many",
    "single_site_entropy_many",
]

PHYSICALITY_TOL = 1e-9

_PAULI = {
    "I": np.eye(2),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "Y": np.array([[0.0, -1j], [1j, 0.0]]),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]]),
}


def state_eigenvalues_many(mz, cxx, cyy, czz):
    """Eigenvalues of rho, shape ``(..., 4)``."""
    mz, cxx, cyy, czz = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (mz, cxx, cyy, czz)))
    outer = np.sqrt(mz**2 / 4 + (cxx - cyy) ** 2 / 16)
    inner = (cxx + cyy) / 4
    return np.stack(
        [(1 + czz) / 4 + outer, (1 + czz) / 4 - outer, (1 - czz) / 4 + inner, (1 - czz) / 4 - inner],
        axis=-1,
    )


def pt_eigenvalues_many(mz, cxx, cyy, czz):
    """Eigenvalues of the partial transpose of rho, shape ``(..., 4)``.

    Transposing one site swaps the two coherences, which exchanges
    ``cxx - cyy`` and ``cxx + cyy`` between the outer and inner blocks.
    """
    mz, cxx, cyy, czz = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (mz, cxx, cyy, czz)))
    outer = np.sqrt(mz**2 / 4 + (cxx + cyy) ** 2 / 16)
    inner = np.abs(cxx - cyy) / 4
    return np.stack(
        [(1 + czz) / 4 + outer, (1 + czz) / 4 - outer, (1 - czz) / 4 + inner, (1 - czz) / 4 - inner],
        axis=-1,
    )


def _check_physical(mz, cxx, cyy, czz):
    lowest = state_eigenvalues_many(mz, cxx, cyy, czz).min(axis=-1)
    bad = lowest < -PHYSICALITY_TOL
    if np.any(bad):
        idx = np.flatnonzero(np.atleast_1d(bad))[0]
        raise InvalidMomentsError(
            f"moments do not define a density operator (lowest eigenvalue "
            f"{np.atleast_1d(lowest)[idx]:.3g} at index {idx})"
        )


@dataclass(frozen=True)
class TwoSiteState:
    """Translation-invariant two-site state with moments ``mz, cxx, cyy, czz``."""

    mz: float
    cxx: float
    cyy: float
    czz: float

    def __post_init__(self):
        _check_physical(self.mz, self.cxx, self.cyy, self.czz)

    def eigenvalues(self):
        return state_eigenvalues_many(self.mz, self.cxx, self.cyy, self.czz)

    def density_matrix(self):
        """The 4x4 operator in the ``sigma^z`` product basis."""
        def kron(a, b):
            return np.kron(_PAULI[a], _PAULI[b])

        rho = (
            kron("I", "I")
            + self.mz * (kron("Z", "I") + kron("I", "Z"))
            + self.cxx * kron("X", "X")
            + self.cyy * kron("Y", "Y")
            + self.czz * kron("Z", "Z")
        ) / 4
        return rho.real


@dataclass(frozen=True)
class PtSpectrum:
    """The four eigenvalues of the partially transposed two-site state."""

    eigenvalues: tuple

    def __iter__(self):
        return iter(self.eigenvalues)

    @property
    def negative_part(self):
        return float(sum(max(0.0, -lam) for lam in self.eigenvalues))


def reconstruct(mz, cxx, cyy, czz) -> TwoSiteState:
    """Build the two-site state; raises :class:`InvalidMomentsError` if unphysical."""
    values = [float(v) for v in (mz, cxx, cyy, czz)]
    if any(abs(v) > 1 for v in values):
        raise InvalidMomentsError(f"moments must lie in [-1, 1], got {tuple(values)}")
    return TwoSiteState(*values)


def pt_spectrum(state: TwoSiteState) -> PtSpectrum:
    eig = pt_eigenvalues_many(state.mz, state.cxx, state.cyy, state.czz)
    return PtSpectrum(tuple(float(v) for v in eig))


def negativity(state: TwoSiteState) -> float:
    """Absolute sum of the negative partial-transpose eigenvalues."""
    return pt_spectrum(state).negative_part


def log_negativity(state: TwoSiteState) -> float:
    """``log2(2 N + 1)`` with ``N`` the negativity."""
    return float(np.log2(2 * negativity(state) + 1))


def log_negativity_many(mz, cxx, cyy, czz):
    """Vectorised logarithmic negativity straight from the moments.

    Moments are checked for physicality first, as in :func:`reconstruct`.
    """
    _check_physical(mz, cxx, cyy, czz)
    eig = pt_eigenvalues_many(mz, cxx, cyy, czz)
    neg = np.maximum(-eig, 0.0).sum(axis=-1)
    return np.log2(2 * neg + 1)


def single_site_entropy_many(mz):
    mz = np.asarray(mz, dtype=float)
    if np.any(np.abs(mz) > 1):
        raise DomainError("|mz| must not exceed 1")
    out = np.zeros(np.broadcast(mz).shape)
    for p in ((1 + mz) / 2, (1 - mz) / 2):
        with np.errstate(divide="ignore", invalid="ignore"):
            out -= np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return out


def single_site_entropy(mz: float) -> float:
    """Von Neumann entropy, in bits, of the single-site state ``(I + mz Z)/2``."""
    return float(single_site_entropy_many(mz))
