"""Dirichlet drum spectra for disks, squares, and regular polygons, with
zeta-regularized Casimir energies and their product-space extensions."""

__version__ = "0.1.0"

from .extensions import (
    CylinderConfig,
    ProductSpaceSpec,
    cylinder_energy_asymptotic,
    cylinder_energy_exact,
    dimensional_reduction_check,
    rd_polygon_scale,
    resonator_tm_mode,
)
from .regularization import (
    CircleZetaParts,
    LaurentEnergy,
    circle_casimir_energy,
    circle_zeta_parts,
    epstein_hurwitz_zeta,
    polygon_casimir_energy,
    reconciliation,
    square_casimir_energy,
    square_energy_epsilon_check,
    square_energy_terms,
    square_polygon_energy_gap,
)
from .report import ComparisonGrid, RegimeReport, compare_grid, emit, parse, regime_table
from .service import create_app
from .specfun import (
    AccuracyBudget,
    BudgetError,
    ConvergenceError,
    DomainError,
    LaurentValue,
    PoleError,
    bessel_j,
    bessel_j_zero,
    bessel_j_zeros_row,
    riemann_zeta,
)
from .spectra import (
    PolygonFactor,
    Spectrum,
    disk_frequencies,
    inflate_disk,
    inflate_energy_factor,
    partial_casimir_sum,
    polygon_factor,
    polygon_frequencies,
    sqrt_factor_series,
    sqrt_factor_value,
    square_frequencies,
)

__all__ = [
    "AccuracyBudget",
    "BudgetError",
    "CircleZetaParts",
    "ComparisonGrid",
    "ConvergenceError",
    "CylinderConfig",
    "DomainError",
    "LaurentEnergy",
    "LaurentValue",
    "PoleError",
    "PolygonFactor",
    "ProductSpaceSpec",
    "RegimeReport",
    "Spectrum",
    "__version__",
    "bessel_j",
    "bessel_j_zero",
    "bessel_j_zeros_row",
    "circle_casimir_energy",
    "circle_zeta_parts",
    "compare_grid",
    "create_app",
    "cylinder_energy_asymptotic",
    "cylinder_energy_exact",
    "dimensional_reduction_check",
    "disk_frequencies",
    "emit",
    "epstein_hurwitz_zeta",
    "inflate_disk",
    "inflate_energy_factor",
    "parse",
    "partial_casimir_sum",
    "polygon_casimir_energy",
    "polygon_factor",
    "polygon_frequencies",
    "rd_polygon_scale",
    "reconciliation",
    "regime_table",
    "resonator_tm_mode",
    "riemann_zeta",
    "square_casimir_energy",
    "square_energy_epsilon_check",
    "square_energy_terms",
    "square_frequencies",
    "square_polygon_energy_gap",
    "sqrt_factor_series",
    "sqrt_factor_value",
]
