"""Product-space scaling, cylinder mode sums, TM resonator modes."""

import math

import pytest

from polycasimir.extensions import (
    CylinderConfig,
    ProductSpaceSpec,
    cylinder_energy_asymptotic,
    cylinder_energy_exact,
    dimensional_reduction_check,
    rd_polygon_scale,
    resonator_tm_mode,
)
from polycasimir.specfun import DomainError, bessel_j_zero
from polycasimir.spectra import polygon_factor

M4 = polygon_factor(4).value
OMEGA_MIN_4 = math.sqrt(M4) * 2.404825557695773


class TestProductSpaceScale:
    def test_exponent_convention(self):
        for d in range(5):
            for s in (-0.5, 0.0, 1.0):
                spec = ProductSpaceSpec(D=d, N=4, s=s)
                assert rd_polygon_scale(spec) == pytest.approx(
                    M4 ** ((d - 1) / 2.0 - s), rel=1e-14)

    def test_energy_point_gives_root_per_dimension(self):
        # at s = -1/2 the factor is sqrt(M_N)^D; each added flat dimension
        # contributes one more square root
        prev = rd_polygon_scale(ProductSpaceSpec(D=0, N=4, s=-0.5))
        assert prev == pytest.approx(1.0, rel=1e-15)
        for d in range(1, 5):
            cur = rd_polygon_scale(ProductSpaceSpec(D=d, N=4, s=-0.5))
            assert cur == pytest.approx(prev * math.sqrt(M4), rel=1e-14)
            prev = cur

    def test_large_n_limit(self):
        assert rd_polygon_scale(ProductSpaceSpec(D=3, N=10_000_000, s=-0.5)) == pytest.approx(
            1.0, abs=1e-12)

    def test_validation(self):
        with pytest.raises(DomainError):
            ProductSpaceSpec(D=-1, N=4, s=0.0)
        with pytest.raises(DomainError):
            ProductSpaceSpec(D=3, N=2, s=0.0)
        with pytest.raises(DomainError):
            ProductSpaceSpec(D=3, N=4, s=math.nan)


class TestDimensionalReduction:
    def test_one_dimensional_reference(self):
        closed, quad = dimensional_reduction_check(2.0, 1.0, 1)
        assert closed == pytest.approx(math.pi / 2.0, rel=1e-12)
        assert abs(closed - quad) < 1e-10

    @pytest.mark.parametrize("s,A,d", [
        (2.0, 1.0, 1), (2.0, 3.0, 1), (1.5, 0.7, 1),
        (2.5, 1.0, 2), (3.0, 2.0, 2), (1.6, 5.0, 2),
    ])
    def test_closed_form_equals_quadrature(self, s, A, d):
        closed, quad = dimensional_reduction_check(s, A, d)
        assert abs(closed - quad) < 1e-8

    def test_divergent_parameters_rejected(self):
        with pytest.raises(DomainError):
            dimensional_reduction_check(0.5, 1.0, 1)
        with pytest.raises(DomainError):
            dimensional_reduction_check(1.0, 1.0, 2)
        with pytest.raises(DomainError):
            dimensional_reduction_check(2.0, -1.0, 1)
        with pytest.raises(DomainError):
            dimensional_reduction_check(2.0, 1.0, 3)


class TestCylinderEnergy:
    def test_frozen_reference_point(self):
        cfg = CylinderConfig(a=2.0, N=4, mode_truncation=10)
        # frozen from an independent 50-digit Bessel-K evaluation
        assert cylinder_energy_exact(cfg) == pytest.approx(
            -9.15927572897644e-07, rel=1e-12)
        assert cylinder_energy_asymptotic(cfg) == pytest.approx(
            -8.892262276805448e-07, rel=1e-12)

    def test_strictly_negative(self):
        for a in (0.9, 1.5, 3.0):
            for n in (3, 4, 6):
                cfg = CylinderConfig(a=a, N=n, mode_truncation=6)
                assert cylinder_energy_exact(cfg) < 0.0

    def test_magnitude_decreases_with_length(self):
        vals = [abs(cylinder_energy_exact(CylinderConfig(a=a, N=4, mode_truncation=8)))
                for a in (1.0, 1.5, 2.0, 3.0, 4.0)]
        assert all(x > y for x, y in zip(vals, vals[1:]))

    def test_asymptotic_agreement_over_gate_sweep(self):
        for gate in (5.0, 7.5, 10.0, 14.0, 20.0):
            a = gate / (2.0 * OMEGA_MIN_4)
            cfg = CylinderConfig(a=a, N=4, mode_truncation=10)
            exact = cylinder_energy_exact(cfg)
            asym = cylinder_energy_asymptotic(cfg)
            assert abs(exact / asym - 1.0) <= 3.0 / gate

    def test_asymptotic_gate_enforced(self):
        cfg = CylinderConfig(a=0.5, N=4, mode_truncation=4)
        with pytest.raises(DomainError):
            cylinder_energy_asymptotic(cfg)

    def test_truncation_settles(self):
        lo = cylinder_energy_exact(CylinderConfig(a=2.0, N=4, mode_truncation=10))
        hi = cylinder_energy_exact(CylinderConfig(a=2.0, N=4, mode_truncation=40))
        # frequencies above the first few contribute exponentially little
        assert abs(lo - hi) < 1e-15

    def test_config_validation(self):
        with pytest.raises(DomainError):
            CylinderConfig(a=0.0, N=4, mode_truncation=4)
        with pytest.raises(DomainError):
            CylinderConfig(a=1.0, N=2, mode_truncation=4)
        with pytest.raises(DomainError):
            CylinderConfig(a=1.0, N=4, mode_truncation=0)
        with pytest.raises(DomainError):
            CylinderConfig(a=1.0, N=4, mode_truncation=4, series_terms=0)


class TestResonatorModes:
    def test_pythagorean_combination(self):
        cfg = CylinderConfig(a=math.pi, N=4, mode_truncation=5)
        x01 = bessel_j_zero(0, 1)
        got = resonator_tm_mode(1, (0, 1), cfg)
        assert got == pytest.approx(math.sqrt(1.0 + M4 * x01**2), rel=1e-14)

    def test_monotone_in_axial_index(self):
        cfg = CylinderConfig(a=1.0, N=4, mode_truncation=5)
        vals = [resonator_tm_mode(k, (0, 1), cfg) for k in (1, 2, 3)]
        assert vals[0] < vals[1] < vals[2]

    def test_axial_index_positive(self):
        cfg = CylinderConfig(a=1.0, N=4, mode_truncation=5)
        with pytest.raises(DomainError):
            resonator_tm_mode(0, (0, 1), cfg)
