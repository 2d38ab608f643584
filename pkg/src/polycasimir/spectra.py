"""Dirichlet frequency spectra for the disk, the square, and regular polygons.

Frequencies are stored as omega with units 1/a, where the Laplacian
eigenvalue is omega^2.  The polygon correction multiplies eigenvalues by
M_N, hence frequencies by sqrt(M_N).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .specfun import (
    ConvergenceError,
    DomainError,
    bessel_j_zeros_row,
    kahan_sum,
    riemann_zeta,
)

__all__ = [
    "Mode",
    "PolygonFactor",
    "Spectrum",
    "disk_frequencies",
    "inflate_disk",
    "inflate_energy_factor",
    "partial_casimir_sum",
    "polygon_factor",
    "polygon_frequencies",
    "resolve_threads",
    "sqrt_factor_series",
    "sqrt_factor_value",
    "square_frequencies",
]

THREADS_ENV = "POLYCASIMIR_THREADS"
_ROW_CHUNK = 256  # fixed chunk size so results never depend on the pool width


class Mode(NamedTuple):
    m: int
    n: int


@dataclass
class Spectrum:
    """Ordered set of Dirichlet frequencies with its provenance.

    `modes_m`, `modes_n`, and `omega` are parallel arrays; `truncation` is
    either ("grid", G) or ("global", K); `is_sorted` records whether the
    entries are globally ascending (grid spectra are row-major instead).
    """

    domain: str
    a: float
    modes_m: np.ndarray
    modes_n: np.ndarray
    omega: np.ndarray
    truncation: tuple[str, int]
    is_sorted: bool = False

    def __post_init__(self):
        if self.a <= 0:
            raise DomainError("scale a must be positive")
        if len(self.omega) and not np.all(self.omega > 0):
            raise DomainError("frequencies must be strictly positive")

    def __len__(self) -> int:
        return len(self.omega)

    def entries(self):
        for m, n, w in zip(self.modes_m, self.modes_n, self.omega):
            yield Mode(int(m), int(n)), float(w)

    def sorted_copy(self) -> "Spectrum":
        """Globally ascending copy; ties broken by (m, n) for determinism."""
        order = np.lexsort((self.modes_n, self.modes_m, self.omega))
        return Spectrum(
            self.domain,
            self.a,
            self.modes_m[order],
            self.modes_n[order],
            self.omega[order],
            self.truncation,
            is_sorted=True,
        )


@dataclass(frozen=True)
class PolygonFactor:
    N: int
    order: int
    value: float

    def __post_init__(self):
        if self.value < 1.0:
            raise DomainError("polygon factor must be >= 1")


def polygon_factor(N: int, order: int = 4) -> PolygonFactor:
    """Eigenvalue ratio M_N = 1 + 4 zeta(2)/N^2 + 4 zeta(3)/N^3 + 28 zeta(4)/N^4.

    `order` truncates the series after the 1/N^order term (order in {2,3,4}).
    """
    if N < 3 or int(N) != N:
        raise DomainError(f"polygon needs N >= 3 sides, got {N!r}")
    if order not in (2, 3, 4):
        raise DomainError(f"series order must be 2, 3, or 4, got {order!r}")
    value = 1.0 + 4.0 * riemann_zeta(2.0) / N ** 2
    if order >= 3:
        value += 4.0 * riemann_zeta(3.0) / N ** 3
    if order >= 4:
        value += 28.0 * riemann_zeta(4.0) / N ** 4
    return PolygonFactor(int(N), order, value)


def sqrt_factor_series(terms: int = 3) -> list[float]:
    """Taylor coefficients of sqrt(M_N) in powers of 1/N.

    `terms` counts correction orders beyond the constant: terms=3 returns
    [1, 0, 2 zeta(2), 2 zeta(3), 14 zeta(4) - 2 zeta(2)^2] for powers
    N^0 .. N^-4.  The 1/N coefficient is exactly zero.
    """
    if not 1 <= terms <= 3:
        raise DomainError("terms must be 1, 2, or 3")
    z2 = riemann_zeta(2.0)
    coeffs = [1.0, 0.0, 2.0 * z2]
    if terms >= 2:
        coeffs.append(2.0 * riemann_zeta(3.0))
    if terms >= 3:
        coeffs.append(14.0 * riemann_zeta(4.0) - 2.0 * z2 * z2)
    return coeffs


def sqrt_factor_value(N: int, terms: int = 3) -> float:
    """The sqrt(M_N) Taylor series evaluated at 1/N."""
    x = 1.0 / N
    return kahan_sum(c * x ** k for k, c in enumerate(sqrt_factor_series(terms)))


def resolve_threads(threads: int | None) -> int:
    if threads is not None:
        if threads < 1:
            raise DomainError("threads must be >= 1")
        return int(threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _zeros_row_threaded(m: int, prev: np.ndarray, count: int, pool: ThreadPoolExecutor | None) -> np.ndarray:
    """One ladder row, split into fixed chunks; identical output for any pool."""
    if pool is None or count < 2 * _ROW_CHUNK:
        return bessel_j_zeros_row(m, count, _prev=prev)
    spans = [(i, min(i + _ROW_CHUNK, count)) for i in range(0, count, _ROW_CHUNK)]
    parts = pool.map(
        lambda span: bessel_j_zeros_row(m, span[1] - span[0], _prev=prev[span[0] : span[1] + 1]),
        spans,
    )
    return np.concatenate(list(parts))


def _disk_zero_grid(G: int, threads: int | None = None) -> np.ndarray:
    """x_{m,n} for m in [0, G-1], n in [1, G], built row by row via interlacing."""
    pool = None
    nthreads = resolve_threads(threads)
    if nthreads > 1 and G >= 2 * _ROW_CHUNK:
        pool = ThreadPoolExecutor(max_workers=nthreads)
    try:
        grid = np.empty((G, G))
        # Row 0 carries G-1 spare zeros so every later row stays bracketed.
        prev = bessel_j_zeros_row(0, 2 * G - 1)
        grid[0] = prev[:G]
        for m in range(1, G):
            prev = _zeros_row_threaded(m, prev, 2 * G - 1 - m, pool)
            grid[m] = prev[:G]
        return grid
    finally:
        if pool is not None:
            pool.shutdown()


def _disk_global(K: int, a: float) -> Spectrum:
    """K smallest disk frequencies, ascending, via a certified ladder triangle.

    A triangle of rows m = 0..M-1 (row m holding L+M-1-m leading zeros) is
    enlarged geometrically until the provisional K-th smallest value X is
    certified complete: x_{m,1} > m for every order, so M > X rules out all
    uncomputed rows, and each computed row's last zero exceeding X rules out
    its uncomputed columns.
    """
    L = max(8, 2 * math.isqrt(K) + 8)
    for _ in range(10):
        M = L
        rows = [bessel_j_zeros_row(0, L + M - 1)]
        for m in range(1, M):
            rows.append(bessel_j_zeros_row(m, len(rows[-1]) - 1, _prev=rows[-1]))
        flat = np.concatenate(rows)
        if len(flat) >= K:
            X = np.partition(flat, K - 1)[K - 1]
            if M > X and all(row[-1] > X for row in rows):
                ms = np.concatenate([np.full(len(r), m) for m, r in enumerate(rows)])
                ns = np.concatenate([np.arange(1, len(r) + 1) for r in rows])
                pool = Spectrum("disk", a, ms, ns, flat / a, ("global", K)).sorted_copy()
                return Spectrum(
                    "disk", a,
                    pool.modes_m[:K], pool.modes_n[:K], pool.omega[:K],
                    ("global", K), is_sorted=True,
                )
        L *= 2
    raise ConvergenceError(f"global enumeration failed to certify K={K}")


def disk_frequencies(a: float = 1.0, grid: int | None = None, count: int | None = None,
                     threads: int | None = None) -> Spectrum:
    """Disk Dirichlet frequencies x_{m,n}/a.

    Exactly one of `grid` (G x G block, m in [0, G-1], n in [1, G], row-major)
    or `count` (K globally smallest, ascending) must be given.
    """
    if a <= 0:
        raise DomainError("radius must be positive")
    if (grid is None) == (count is None):
        raise DomainError("specify exactly one of grid or count")
    if grid is not None:
        if grid < 1:
            raise DomainError("grid side must be >= 1")
        z = _disk_zero_grid(int(grid), threads)
        mm, nn = np.meshgrid(np.arange(grid), np.arange(1, grid + 1), indexing="ij")
        return Spectrum("disk", a, mm.ravel(), nn.ravel(), z.ravel() / a, ("grid", int(grid)))
    if count < 1:
        raise DomainError("count must be >= 1")
    return _disk_global(int(count), a)


def square_frequencies(a: float = 1.0, grid: int = 1) -> Spectrum:
    """Square frequencies (pi/a) sqrt(m^2 + n^2), m, n in [1, G], row-major."""
    if a <= 0:
        raise DomainError("side length must be positive")
    if grid < 1:
        raise DomainError("grid side must be >= 1")
    mm, nn = np.meshgrid(np.arange(1, grid + 1), np.arange(1, grid + 1), indexing="ij")
    omega = (math.pi / a) * np.sqrt(mm ** 2 + nn ** 2)
    return Spectrum("square", a, mm.ravel(), nn.ravel(), omega.ravel(), ("grid", int(grid)))


def polygon_frequencies(N: int, base: Spectrum, order: int = 4) -> Spectrum:
    """Regular N-gon spectrum: every disk frequency times sqrt(M_N)."""
    if base.domain != "disk":
        raise DomainError("polygon perturbation applies to a disk spectrum")
    factor = math.sqrt(polygon_factor(N, order).value)
    return Spectrum(
        f"polygon({N})",
        base.a,
        base.modes_m.copy(),
        base.modes_n.copy(),
        base.omega * factor,
        base.truncation,
        is_sorted=base.is_sorted,
    )


def partial_casimir_sum(spectrum: Spectrum) -> float:
    """Half-sum of frequencies, compensated, in ascending order.

    A truncation of a divergent sum: meaningful only when comparing spectra
    at identical truncation.
    """
    if len(spectrum) == 0:
        raise DomainError("spectrum is empty")
    source = spectrum if spectrum.is_sorted else spectrum.sorted_copy()
    return 0.5 * kahan_sum(source.omega)


def _check_inflation(delta_r: float) -> None:
    if abs(delta_r) >= 0.2:
        raise DomainError("inflation parameter outside the perturbative regime |dR| < 0.2")
    if 1.0 - 2.0 * delta_r + 3.0 * delta_r ** 2 <= 0:
        raise DomainError("inflation factor not positive")


def inflate_disk(eigenvalue: float, delta_r: float) -> float:
    """Disk eigenvalue after a radial perturbation R -> R(1 + dR), through dR^2."""
    if eigenvalue <= 0:
        raise DomainError("Dirichlet eigenvalues are positive")
    _check_inflation(delta_r)
    return eigenvalue * (1.0 - 2.0 * delta_r + 3.0 * delta_r ** 2)


def inflate_energy_factor(delta_r: float, simplified: bool = False) -> float:
    """Casimir-energy ratio under inflation: sqrt(1 - 2 dR + 3 dR^2),
    or the leading sqrt(1 - 2 dR) when `simplified`."""
    _check_inflation(delta_r)
    if simplified:
        return math.sqrt(1.0 - 2.0 * delta_r)
    return math.sqrt(1.0 - 2.0 * delta_r + 3.0 * delta_r ** 2)
