"""Special functions and quadrature shared by every other module.

Scalar special functions (J_m, modified Bessels, Gamma) are backed by
scipy.special behind narrow, contract-checked wrappers.  The pieces the
rest of the package actually leans on numerically -- the Bessel-zero
ladder, the Riemann zeta evaluations with explicit pole bookkeeping, the
compensated summation, and the semi-infinite quadrature driver -- are
implemented here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _integrate
from scipy import special as _sp

__all__ = [
    "AccuracyBudget",
    "BudgetError",
    "ConvergenceError",
    "DEFAULT_BUDGET",
    "DomainError",
    "EULER_GAMMA",
    "LaurentValue",
    "PoleError",
    "bessel_j",
    "bessel_j_zero",
    "bessel_j_zeros_row",
    "gamma_fn",
    "integrate",
    "kahan_sum",
    "mod_bessel",
    "riemann_zeta",
    "zeta_near_one",
]

EULER_GAMMA = 0.5772156649015328606

# Bernoulli numbers B_2, B_4, ... B_12 for Euler-Maclaurin corrections.
_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0)


class DomainError(ValueError):
    """Input outside the documented domain of an operation."""


class PoleError(ValueError):
    """Evaluation requested exactly at a pole."""


class ConvergenceError(RuntimeError):
    """An iteration failed to converge; never silently approximated."""


class BudgetError(ConvergenceError):
    """Accuracy budget exhausted; carries the best estimate and its error bound."""

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(f"{message} (best estimate {estimate:.17g}, bound {error_bound:.3g})")
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class AccuracyBudget:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_terms: int = 200_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_terms >= 1):
            raise DomainError("AccuracyBudget requires rel_tol > 0, abs_tol > 0, max_terms >= 1")


DEFAULT_BUDGET = AccuracyBudget()


@dataclass(frozen=True)
class LaurentValue:
    """Value of a quantity with an explicit simple pole in the regulator s.

    Represents finite + pole_residue/s as s -> 0.  Regular quantities carry
    pole_residue == 0.
    """

    finite: float
    pole_residue: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.finite) and math.isfinite(self.pole_residue)):
            raise DomainError("LaurentValue fields must be finite reals")

    def scaled(self, c: float) -> "LaurentValue":
        return LaurentValue(c * self.finite, c * self.pole_residue)

    def plus(self, other: "LaurentValue") -> "LaurentValue":
        return LaurentValue(self.finite + other.finite, self.pole_residue + other.pole_residue)

    def times_analytic(self, value: float, slope: float) -> "LaurentValue":
        """Multiply by an analytic factor value + slope*s, discarding O(s)."""
        return LaurentValue(
            self.finite * value + self.pole_residue * slope,
            self.pole_residue * value,
        )


def _require_finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


# ----------------------------------------------------------------------
# Bessel J and its zeros
# ----------------------------------------------------------------------

def bessel_j(m: int, x) -> float:
    """J_m(x) for integer order m >= 0 and x >= 0 (arrays accepted)."""
    if m < 0 or int(m) != m:
        raise DomainError(f"order must be a nonnegative integer, got {m!r}")
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError("argument must be finite and nonnegative")
    out = _sp.jv(int(m), arr)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def _mcmahon_j0(n: np.ndarray) -> np.ndarray:
    # Large-index expansion of the J0 zeros; relative error < 1e-8 already at n=3.
    beta = (n - 0.25) * math.pi
    b2 = 8.0 * beta
    return beta + 1.0 / b2 - 124.0 / (3.0 * b2 ** 3)


def _newton_j0_row(count: int) -> np.ndarray:
    n = np.arange(1, count + 1, dtype=float)
    x = _mcmahon_j0(n)
    for _ in range(4):
        step = _sp.j0(x) / _sp.j1(x)  # J0' = -J1
        x = x + step
    return x


def _newton_bracketed_row(m: int, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """All zeros of J_m inside the brackets (lo, hi), elementwise.

    The brackets come from interlacing with the previous row, so each
    interval contains exactly one simple zero and J_m has opposite signs at
    the ends.  Safeguarded Newton: any step leaving the bracket falls back
    to bisection; per-element convergence on the step size keeps every
    trajectory independent of how the row is chunked across threads.
    """
    lo = lo.copy()
    hi = hi.copy()
    x = 0.5 * (lo + hi)
    sign_lo = np.sign(_sp.jv(m, lo))
    active = np.ones(x.shape, dtype=bool)
    for _ in range(120):
        xa = x[active]
        f = _sp.jv(m, xa)
        fp = _sp.jv(m - 1, xa) - (m / xa) * f
        step = f / fp
        xn = xa - step
        bad = ~((xn > lo[active]) & (xn < hi[active]) & np.isfinite(xn))
        # Shrink the bracket around the current iterate before bisecting.
        neg = np.sign(f) == sign_lo[active]
        idx = np.flatnonzero(active)
        lo_idx = idx[neg]
        hi_idx = idx[~neg]
        lo[lo_idx] = np.maximum(lo[lo_idx], xa[neg])
        hi[hi_idx] = np.minimum(hi[hi_idx], xa[~neg])
        xn[bad] = 0.5 * (lo[idx[bad]] + hi[idx[bad]])
        done = np.abs(xn - xa) <= 4e-16 * xn
        x[idx] = xn
        active[idx[done]] = False
        if not active.any():
            return x
    raise ConvergenceError(f"Bessel zero refinement stalled for order {m}")


def bessel_j_zeros_row(m: int, count: int, _prev: np.ndarray | None = None) -> np.ndarray:
    """First `count` positive zeros of J_m, ascending.

    Row 0 starts from the McMahon estimate; row m is bracketed by row m-1
    through the interlacing x_{m-1,n} < x_{m,n} < x_{m-1,n+1}.  `_prev`
    lets grid builders reuse the previous row instead of recursing.
    """
    if m < 0 or count < 1:
        raise DomainError("need order >= 0 and count >= 1")
    if m == 0:
        return _newton_j0_row(count)
    if _prev is None:
        _prev = bessel_j_zeros_row(m - 1, count + 1)
    if len(_prev) < count + 1:
        raise DomainError("previous row too short to bracket the requested zeros")
    return _newton_bracketed_row(m, _prev[:count], _prev[1 : count + 1])


def bessel_j_zero(m: int, n: int) -> float:
    """n-th positive zero of J_m (n >= 1), bracketed and refined to ~1e-15 rel."""
    if n < 1 or int(n) != n:
        raise DomainError(f"zero index must be a positive integer, got {n!r}")
    return float(bessel_j_zeros_row(m, n)[n - 1])


# ----------------------------------------------------------------------
# Modified Bessel functions
# ----------------------------------------------------------------------

_MOD_BESSEL_KINDS = ("I0", "K0", "K1")


def mod_bessel(kind: str, z: float, order: float | None = None) -> float:
    """I0, K0, K1, or K of real order ('K_real_order', pass `order`) at z > 0.

    Supported for z in (0, 700]; outside that the exponential factors
    overflow/underflow float64 and the request is rejected rather than
    silently flushed.
    """
    z = _require_finite(z, "argument")
    if not 0 < z <= 700:
        raise DomainError(f"argument {z} outside supported range (0, 700]")
    if kind == "I0":
        return float(_sp.i0e(z) * math.exp(z))
    if kind == "K0":
        return float(_sp.k0e(z) * math.exp(-z))
    if kind == "K1":
        return float(_sp.k1e(z) * math.exp(-z))
    if kind == "K_real_order":
        if order is None:
            raise DomainError("K_real_order requires the order argument")
        return float(_sp.kv(float(order), z))
    raise DomainError(f"unknown kind {kind!r}; expected I0, K0, K1, or K_real_order")


def i0k0_product(y) -> np.ndarray:
    """I0(y)*K0(y) without overflow: the exponential scalings cancel exactly."""
    return _sp.i0e(y) * _sp.k0e(y)


# ----------------------------------------------------------------------
# Gamma
# ----------------------------------------------------------------------

def gamma_fn(x: float) -> float:
    x = _require_finite(x, "argument")
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return float(_sp.gamma(x))


# ----------------------------------------------------------------------
# Riemann zeta
# ----------------------------------------------------------------------

def _zeta_em(s: float, n_direct: int = 24) -> float:
    """Euler-Maclaurin: direct sum over n < N plus tail corrections at N."""
    total = kahan_sum([n ** (-s) for n in range(1, n_direct)])
    N = float(n_direct)
    total += N ** (1.0 - s) / (s - 1.0) + 0.5 * N ** (-s)
    # Tail: sum_k B_2k/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
    factor = s * N ** (-s - 1.0)
    total += _BERNOULLI[0] / 2.0 * factor
    poch = s
    for k in range(2, len(_BERNOULLI) + 1):
        poch *= (s + 2 * k - 3) * (s + 2 * k - 2)
        factor = poch * N ** (-s - 2 * k + 1.0)
        total += _BERNOULLI[k - 1] / math.factorial(2 * k) * factor
    return total


def riemann_zeta(s: float) -> float:
    """Riemann zeta on the real line, s != 1.

    Direct summation with Euler-Maclaurin tail for s >= 0.5; the reflection
    formula maps s < 0.5 back to that region.
    """
    s = _require_finite(s, "argument")
    if s == 1.0:
        raise PoleError("zeta has its pole at s = 1")
    if s >= 0.5:
        return _zeta_em(s)
    # zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    return (
        2.0 ** s
        * math.pi ** (s - 1.0)
        * math.sin(math.pi * s / 2.0)
        * _sp.gamma(1.0 - s)
        * _zeta_em(1.0 - s)
    )


def zeta_near_one(s_offset: float) -> LaurentValue:
    """Laurent data of zeta(1 + s) at s = s_offset: pole residue 1, finite part
    zeta(1+s) - 1/s evaluated stably (equals Euler's gamma at s = 0)."""
    d = _require_finite(s_offset, "offset")
    if abs(d) > 0.1:
        raise DomainError("zeta_near_one expects |offset| <= 0.1")
    N = 24
    total = kahan_sum([n ** (-1.0 - d) for n in range(1, N)])
    lnN = math.log(N)
    # N^{-d}/d - 1/d = expm1(-d ln N)/d, finite and smooth through d = 0.
    total += math.expm1(-d * lnN) / d if d != 0.0 else -lnN
    s = 1.0 + d
    total += 0.5 * N ** (-s)
    factor = s * float(N) ** (-s - 1.0)
    total += _BERNOULLI[0] / 2.0 * factor
    poch = s
    for k in range(2, len(_BERNOULLI) + 1):
        poch *= (s + 2 * k - 3) * (s + 2 * k - 2)
        total += _BERNOULLI[k - 1] / math.factorial(2 * k) * poch * float(N) ** (-s - 2 * k + 1.0)
    return LaurentValue(finite=total, pole_residue=1.0)


# ----------------------------------------------------------------------
# Summation and quadrature
# ----------------------------------------------------------------------

def kahan_sum(values) -> float:
    """Compensated summation in the given order; deterministic by construction."""
    total = 0.0
    comp = 0.0
    for v in values:
        y = float(v) - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def integrate(f, domain, budget: AccuracyBudget = DEFAULT_BUDGET, decay_exponent: float | None = None) -> float:
    """Adaptive integral of f over [a, b] or [a, inf).

    Semi-infinite domains require `decay_exponent` p > 1 such that
    f(y) ~ C/y^p for large y; the integral is a finite adaptive panel plus
    the analytic power-law tail, with the panel end pushed out until the
    first neglected correction is inside the budget.
    """
    a, b = domain
    a = _require_finite(a, "lower limit")
    if math.isfinite(b):
        val, err = _integrate.quad(f, a, b, epsabs=budget.abs_tol, epsrel=budget.rel_tol, limit=200)
        if err > max(budget.abs_tol, abs(val) * budget.rel_tol) * 50:
            raise BudgetError("quadrature budget exhausted", val, err)
        return val
    if decay_exponent is None or decay_exponent <= 1:
        raise DomainError("semi-infinite domain needs a decay exponent > 1")
    p = float(decay_exponent)
    Y = max(a + 1.0, 30.0)
    prev = None
    for _ in range(12):
        panel, err = _integrate.quad(f, a, Y, epsabs=budget.abs_tol, epsrel=budget.rel_tol, limit=400)
        tail = f(Y) * Y / (p - 1.0)  # == C Y^{1-p}/(p-1) with C = f(Y) Y^p
        est = panel + tail
        if prev is not None and abs(est - prev) <= max(budget.abs_tol, abs(est) * budget.rel_tol):
            return est
        prev = est
        Y *= 2.0
        if Y > 1e8:
            break
    raise BudgetError("semi-infinite quadrature did not stabilize", prev if prev is not None else 0.0, float("nan"))
