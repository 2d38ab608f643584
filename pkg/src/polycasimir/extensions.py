"""Product-space scaling, polygonal-cylinder mode sums, and TM resonator modes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .specfun import DomainError, bessel_j_zero, gamma_fn, integrate, kahan_sum
from .spectra import Mode, disk_frequencies, polygon_factor, polygon_frequencies

__all__ = [
    "CylinderConfig",
    "ProductSpaceSpec",
    "cylinder_energy_asymptotic",
    "cylinder_energy_exact",
    "dimensional_reduction_check",
    "rd_polygon_scale",
    "resonator_tm_mode",
]


@dataclass(frozen=True)
class ProductSpaceSpec:
    """R^D x polygon cross-section, regulated at s (s = -1/2 for the energy)."""

    D: int
    N: int
    s: float

    def __post_init__(self):
        if self.D < 0 or int(self.D) != self.D:
            raise DomainError("flat dimension count D must be a nonnegative integer")
        if self.N < 3:
            raise DomainError("polygon needs N >= 3")
        if not math.isfinite((self.D - 1) / 2.0 - self.s):
            raise DomainError("exponent must be finite")


@dataclass(frozen=True)
class CylinderConfig:
    """Polygonal cylinder: length a, N sides, K transverse modes, J series terms."""

    a: float
    N: int
    mode_truncation: int
    series_terms: int = 200

    def __post_init__(self):
        if self.a <= 0:
            raise DomainError("cylinder length must be positive")
        if self.N < 3:
            raise DomainError("polygon needs N >= 3")
        if self.mode_truncation < 1 or self.series_terms < 1:
            raise DomainError("mode and series truncations must be >= 1")


def rd_polygon_scale(spec: ProductSpaceSpec) -> float:
    """M_N^((D-1)/2 - s): the factor carrying E_C of R^D x B2 to R^D x P_N.

    At s = -1/2 the exponent is D/2, i.e. one factor of sqrt(M_N) per
    dimension of the product geometry.
    """
    exponent = (spec.D - 1) / 2.0 - spec.s
    return polygon_factor(spec.N).value ** exponent


def dimensional_reduction_check(s: float, A: float, d: int) -> tuple[float, float]:
    """Both sides of the flat-direction integral: closed Gamma-ratio form vs
    direct quadrature of the integral over R^d of (k^2 + A)^-s."""
    if d not in (1, 2):
        raise DomainError("d must be 1 or 2")
    if A <= 0:
        raise DomainError("A must be positive")
    if s <= d / 2.0:
        raise DomainError("integral diverges unless s > d/2")
    closed = math.pi ** (d / 2.0) * gamma_fn(s - d / 2.0) / gamma_fn(s) * A ** (d / 2.0 - s)
    if d == 1:
        quadrature = 2.0 * integrate(lambda k: (k * k + A) ** (-s), (0.0, math.inf),
                                     decay_exponent=2.0 * s)
    else:
        quadrature = 2.0 * math.pi * integrate(lambda k: k * (k * k + A) ** (-s), (0.0, math.inf),
                                               decay_exponent=2.0 * s - 1.0)
    return closed, quadrature


def _transverse_modes(cfg: CylinderConfig):
    """First K polygon frequencies (unit cross-section scale), ascending."""
    disk = disk_frequencies(a=1.0, count=cfg.mode_truncation)
    return polygon_frequencies(cfg.N, disk)


def cylinder_energy_exact(cfg: CylinderConfig) -> float:
    """Renormalized cylinder energy
    -(1/(2 pi)) sum_modes sum_j (1/j) omega K1(2 j omega a).

    The j-sum shares the single summation integer of the underlying
    expansion; terms below 1e-16 truncate it early.  K1 is evaluated in
    scaled form so deep-underflow terms vanish gracefully.
    """
    omega = _transverse_modes(cfg).omega
    total = []
    for j in range(1, cfg.series_terms + 1):
        z = 2.0 * j * omega * cfg.a
        terms = (omega / j) * _sp.k1e(z) * np.exp(-z)
        total.extend(terms[::-1])  # ascending magnitude within the mode block
        if terms.max() < 1e-16:
            break
    return -kahan_sum(sorted(total)) / (2.0 * math.pi)


def cylinder_energy_asymptotic(cfg: CylinderConfig) -> float:
    """Leading large-argument form: K1(z) -> sqrt(pi/(2z)) e^-z at j = 1.

    Valid when every retained mode satisfies 2 omega a >> 1; enforced as
    2 omega_min a >= 5, reported otherwise.
    """
    omega = _transverse_modes(cfg).omega
    gate = 2.0 * float(omega.min()) * cfg.a
    if gate < 5.0:
        raise DomainError(f"asymptotic regime requires 2 omega_min a >= 5, got {gate:.3f}")
    z = 2.0 * omega * cfg.a
    terms = omega * np.sqrt(math.pi / (2.0 * z)) * np.exp(-z)
    return -kahan_sum(sorted(terms)) / (2.0 * math.pi)


def resonator_tm_mode(k: int, mode: Mode, cfg: CylinderConfig) -> float:
    """TM eigenfrequency sqrt((k pi / a)^2 + omega_mn^2) of the closed
    polygonal resonator; omega_mn at unit cross-section scale.

    Summing the cylinder energy over these modes reproduces the scalar
    result: the longitudinal index plays the role of the series integer.
    """
    if k < 1:
        raise DomainError("longitudinal index k must be >= 1")
    m, n = mode
    factor = math.sqrt(polygon_factor(cfg.N).value)
    omega = factor * bessel_j_zero(m, n)
    return math.hypot(k * math.pi / cfg.a, omega)
