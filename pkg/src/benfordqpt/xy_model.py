"""Ground-state observables of the one-dimensional transverse-field XY chain.

Infinite-chain quantities are single integrals over the half Brillouin zone
``[0, pi]``; finite chains use a momentum sum.  Every ``*_many`` function is
vectorised over an array of dimensionless fields ``a/J`` at fixed anisotropy
and is what the window scanner calls; the scalar functions wrap them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import quantum_state
from .exceptions import DomainError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate_many

__all__ = [
    "ModelParams",
    "ObservableKind",
    "FiniteChainSpec",
    "lambda_dispersion",
    "g_integral",
    "magnetization_inf",
    "correlators",
    "magnetization_finite",
    "evaluate",
    "moments_many",
    "magnetization_finite_many",
    "evaluate_many",
]


class ObservableKind(str, Enum):
    """The six quantities a field window can be scanned with."""

    MZ = "mz"
    CXX = "cxx"
    CYY = "cyy"
    CZZ = "czz"
    ENTROPY = "entropy"
    LOGNEG = "logneg"

    @classmethod
    def parse(cls, name):
        """Accept enum members, CLI names (``logneg``) or long names (``LogNegativity``)."""
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {
            "singlesiteentropy": "entropy",
            "single_site_entropy": "entropy",
            "lognegativity": "logneg",
            "log_negativity": "logneg",
        }
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise DomainError(f"unknown quantity {name!r}; choose from {choices}") from None


@dataclass(frozen=True)
class ModelParams:
    """One point of the XY chain: anisotropy ``gamma`` and field ratio ``a/J``."""

    gamma: float = 1.0
    field_ratio: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma!r}")
        if not math.isfinite(self.field_ratio):
            raise DomainError(f"field_ratio must be finite, got {self.field_ratio!r}")

    @classmethod
    def from_couplings(cls, field, coupling, gamma=1.0):
        """Build from the transverse field ``a`` and exchange coupling ``J``."""
        if coupling == 0:
            raise DomainError("coupling J must be nonzero")
        return cls(gamma=gamma, field_ratio=field / coupling)


_MOMENTA = ("full", "half")


@dataclass(frozen=True)
class FiniteChainSpec:
    """A periodic chain of ``n`` spins under c-cyclic boundary conditions.

    ``momenta="full"`` sums ``phi_p = 2 pi p / n`` over ``p = 1..n`` with a
    ``1/n`` prefactor, so the magnetization saturates at 1 and converges to
    the infinite chain.  ``momenta="half"`` keeps only ``p = 1..n//2`` with the
    same prefactor: it saturates at 1/2, but it contains no ``phi = 0`` mode
    and hence no level-crossing step at ``a/J = 1``.  Odd ``n`` needs
    ``allow_odd=True``.
    """

    n: int
    boundary: str = "c-cyclic"
    momenta: str = "full"
    allow_odd: bool = False

    def __post_init__(self):
        if int(self.n) != self.n:
            raise DomainError(f"chain length must be an integer, got {self.n!r}")
        if self.n < 4:
            raise DomainError(f"chain length must be at least 4, got {self.n}")
        if self.n % 2 and not self.allow_odd:
            raise DomainError(f"chain length must be even, got {self.n} (pass allow_odd=True)")
        if self.boundary != "c-cyclic":
            raise DomainError(f"unsupported boundary convention {self.boundary!r}")
        if self.momenta not in _MOMENTA:
            raise DomainError(f"momenta must be one of {_MOMENTA}, got {self.momenta!r}")

    def phases(self):
        last = self.n if self.momenta == "full" else self.n // 2
        return 2.0 * np.pi * np.arange(1, last + 1) / self.n


def _dispersion(gamma, field, phi):
    return np.sqrt(gamma * gamma * np.sin(phi) ** 2 + (field - np.cos(phi)) ** 2)


def lambda_dispersion(params: ModelParams, phi):
    """Quasi-particle dispersion ``sqrt(gamma^2 sin^2 phi + (a/J - cos phi)^2)``."""
    phi_arr = np.asarray(phi, dtype=float)
    if np.any((phi_arr < 0) | (phi_arr > np.pi)):
        raise DomainError("phi must lie in [0, pi]")
    out = _dispersion(params.gamma, params.field_ratio, phi_arr)
    return float(out) if out.ndim == 0 else out


# Integrand rows per field, in this order: M^z, G(-1), G(+1).
_ROWS = {"mz": 0, "g-": 1, "g+": 2}


def moments_many(gamma, fields, cfg: QuadratureConfig = DEFAULT_CONFIG, which=("mz", "g-", "g+")):
    """Evaluate the infinite-chain integrals for many fields at once.

    Returns a dict mapping each requested name (``"mz"``, ``"g-"``,
    ``"g+"``) to an array shaped like ``fields``.
    """
    fields = np.atleast_1d(np.asarray(fields, dtype=float))
    if not np.all(np.isfinite(fields)):
        raise DomainError("fields must be finite")
    names = [w for w in _ROWS if w in which]
    unknown = set(which) - set(_ROWS)
    if unknown:
        raise DomainError(f"unknown integral(s) {sorted(unknown)}")
    a = fields[:, None]

    def integrand(phi):
        cos, sin = np.cos(phi), np.sin(phi)
        lam = _dispersion(gamma, a, phi)
        rows = []
        for name in names:
            if name == "mz":
                rows.append(-(cos - a) / lam)
            else:
                r = -1.0 if name == "g-" else 1.0
                rows.append((gamma * np.sin(r * phi) * sin - cos * (cos - a)) / lam)
        return np.concatenate(rows, axis=0)

    # the batched integrand has at most 3 * len(fields) rows
    values = integrate_many(integrand, 0.0, np.pi, cfg) / np.pi
    m = fields.size
    return {name: values[i * m:(i + 1) * m] for i, name in enumerate(names)}


def g_integral(R: int, params: ModelParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """The nearest-neighbour correlation integral ``G(R, a/J)`` for ``R = +-1``."""
    if R not in (-1, 1):
        raise DomainError(f"R must be -1 or +1, got {R!r}")
    key = "g-" if R == -1 else "g+"
    return float(moments_many(params.gamma, [params.field_ratio], cfg, which=(key,))[key][0])


def magnetization_inf(params: ModelParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Transverse magnetization per site of the infinite chain."""
    return float(moments_many(params.gamma, [params.field_ratio], cfg, which=("mz",))["mz"][0])


def correlators(params: ModelParams, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Nearest-neighbour ``(C^xx, C^yy, C^zz)`` of the infinite chain."""
    m = moments_many(params.gamma, [params.field_ratio], cfg)
    cxx, cyy = float(m["g-"][0]), float(m["g+"][0])
    czz = float(m["mz"][0]) ** 2 - cyy * cxx
    return cxx, cyy, czz


def magnetization_finite_many(spec: FiniteChainSpec, gamma, fields):
    """Finite-chain transverse magnetization for an array of fields."""
    fields = np.atleast_1d(np.asarray(fields, dtype=float))
    phi = spec.phases()
    a = fields[:, None]
    terms = (np.cos(phi) - a) / _dispersion(gamma, a, phi)
    return -terms.sum(axis=1) / spec.n


def magnetization_finite(spec: FiniteChainSpec, params: ModelParams) -> float:
    """Transverse magnetization of an ``n``-spin chain (see :class:`FiniteChainSpec`)."""
    return float(magnetization_finite_many(spec, params.gamma, [params.field_ratio])[0])


_NEEDS = {
    ObservableKind.MZ: ("mz",),
    ObservableKind.ENTROPY: ("mz",),
    ObservableKind.CXX: ("g-",),
    ObservableKind.CYY: ("g+",),
    ObservableKind.CZZ: ("mz", "g-", "g+"),
    ObservableKind.LOGNEG: ("mz", "g-", "g+"),
}


def evaluate_many(kind, gamma, fields, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Evaluate one observable of the infinite chain on an array of fields."""
    kind = ObservableKind.parse(kind)
    m = moments_many(gamma, fields, cfg, which=_NEEDS[kind])
    if kind is ObservableKind.MZ:
        return m["mz"]
    if kind is ObservableKind.ENTROPY:
        return quantum_state.single_site_entropy_many(m["mz"])
    if kind is ObservableKind.CXX:
        return m["g-"]
    if kind is ObservableKind.CYY:
        return m["g+"]
    czz = m["mz"] ** 2 - m["g+"] * m["g-"]
    if kind is ObservableKind.CZZ:
        return czz
    return quantum_state.log_negativity_many(m["mz"], m["g-"], m["g+"], czz)


def evaluate(kind, params: ModelParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Evaluate one observable of the infinite chain at a single point."""
    return float(evaluate_many(kind, params.gamma, [params.field_ratio], cfg)[0])
