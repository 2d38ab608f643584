"""Comparison grids, regime table, and byte-deterministic emit/parse."""

import math

import numpy as np
import pytest

from polycasimir.regularization import LaurentEnergy, reconciliation
from polycasimir.report import (
    ComparisonGrid,
    RegimeReport,
    compare_grid,
    emit,
    parse,
    regime_table,
)
from polycasimir.specfun import DomainError
from polycasimir.spectra import disk_frequencies, polygon_factor

SQRT_M4 = math.sqrt(polygon_factor(4).value)


class TestCompareGrid:
    def test_shapes_and_pair_count(self):
        g = compare_grid(20)
        assert g.G == 20 and g.N == 4 and g.pairing == "rank"
        for arr in (g.modes_m, g.modes_n, g.omega_polygon, g.omega_square, g.rel_diff):
            assert arr.shape == (400,)

    def test_rel_diff_definition(self):
        g = compare_grid(15)
        np.testing.assert_allclose(
            g.rel_diff, np.abs(g.omega_polygon - g.omega_square) / g.omega_square,
            rtol=1e-15)

    def test_rank_pairing_sorts_both_spectra(self):
        g = compare_grid(15)
        assert np.all(np.diff(g.omega_polygon) >= 0)
        assert np.all(np.diff(g.omega_square) >= 0)

    def test_index_pairing_aligns_rows(self):
        g = compare_grid(10, pairing="index")
        # polygon row m against square row m+1, same column: first entry is
        # (m=0, n=1) against square (1, 1)
        assert g.modes_m[0] == 0 and g.modes_n[0] == 1
        assert g.omega_square[0] == pytest.approx(math.pi * math.hypot(1, 1), rel=1e-14)
        assert g.omega_polygon[0] == pytest.approx(SQRT_M4 * 2.404825557695773, rel=1e-14)

    def test_level_difference_band(self):
        g = compare_grid(100)
        assert 0.13 <= g.summary["mean_rel_diff"] <= 0.19
        gi = compare_grid(100, pairing="index")
        assert gi.summary["mean_rel_diff"] > 0.25  # the rejected estimator reading

    def test_cumulative_ratio_pairing_invariant(self):
        a = compare_grid(40).summary["cumulative_sum_ratio"]
        b = compare_grid(40, pairing="index").summary["cumulative_sum_ratio"]
        assert a == pytest.approx(b, rel=1e-13)

    def test_cumulative_ratio_cauchy_in_grid(self):
        r50 = compare_grid(50).summary["cumulative_sum_ratio"]
        r100 = compare_grid(100).summary["cumulative_sum_ratio"]
        r200 = compare_grid(200).summary["cumulative_sum_ratio"]
        assert abs(r200 - r100) < abs(r100 - r50)
        # bounded by the analytic large-grid scale sqrt(M4) from above
        assert r50 < r100 < r200 < SQRT_M4

    def test_thread_counts_agree_bitwise(self):
        a, b = compare_grid(50, threads=1), compare_grid(50, threads=8)
        assert a == b

    def test_validation(self):
        with pytest.raises(DomainError):
            compare_grid(1)
        with pytest.raises(DomainError):
            compare_grid(10, pairing="nearest")


class TestRegimeTable:
    def test_three_regimes_quoted_arithmetic(self):
        rows = {r.regime: r for r in regime_table()}
        assert set(rows) == {"n>>m", "m~n", "m>>n"}
        # the published percentage arithmetic, at integer granularity
        assert round(rows["n>>m"].published_diff * 100) in (20, 21)
        assert round(rows["m~n"].published_diff * 100) in (4, 5, 6)
        assert round(rows["m>>n"].published_diff * 100) in (57, 58)

    def test_exact_square_coefficients(self):
        rows = {r.regime: r for r in regime_table()}
        assert rows["m~n"].exact_square_coeff == pytest.approx(
            math.sqrt(2.0) * math.pi, rel=1e-15)
        assert rows["m~n"].square_coeff == pytest.approx(2.0 * math.pi, rel=1e-15)
        # the quoted diagonal coefficient 2pi is not what the closed form gives
        assert rows["m~n"].exact_diff == pytest.approx(0.2557, abs=1e-3)

    def test_polygon_coefficients_scale_with_sqrt_m(self):
        rows = {r.regime: r for r in regime_table()}
        assert rows["n>>m"].polygon_coeff == pytest.approx(SQRT_M4 * math.pi, rel=1e-14)
        assert rows["m~n"].polygon_coeff == pytest.approx(1.5 * SQRT_M4 * math.pi, rel=1e-14)
        assert rows["m>>n"].polygon_coeff == pytest.approx(0.5 * SQRT_M4 * math.pi, rel=1e-14)


class TestEmitParse:
    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_comparison_round_trip(self, fmt):
        g = compare_grid(12)
        payload = emit(g, fmt)
        back = parse(payload, "comparison", fmt)
        assert back == g
        assert emit(back, fmt) == payload

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_regimes_round_trip(self, fmt):
        t = regime_table()
        assert parse(emit(t, fmt), "regimes", fmt) == t

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_energy_round_trip(self, fmt):
        e = LaurentEnergy(0.12384661172848788, 0.008815462242933692, "formula")
        assert parse(emit(e, fmt), "energy", fmt) == e

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_reconciliation_round_trip(self, fmt):
        rec = reconciliation()
        assert parse(emit(rec, fmt), "reconciliation", fmt) == rec

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_spectrum_round_trip(self, fmt):
        s = disk_frequencies(grid=7)
        back = parse(emit(s, fmt), "spectrum", fmt)
        assert back.domain == s.domain and back.a == s.a
        assert back.truncation == s.truncation and back.is_sorted == s.is_sorted
        assert np.array_equal(back.omega, s.omega)
        assert np.array_equal(back.modes_m, s.modes_m)

    def test_csv_schema(self):
        g = compare_grid(5)
        lines = emit(g, "csv").decode().splitlines()
        assert lines[0] == "m,n,omega_polygon,omega_square,rel_diff"
        assert len([ln for ln in lines if not ln.startswith("#")]) == 1 + 25
        summary = [ln for ln in lines if ln.startswith("#")]
        assert any("mean_rel_diff" in ln for ln in summary)
        assert any("cumulative_sum_ratio" in ln for ln in summary)

    def test_newlines_are_lf_only(self):
        payload = emit(compare_grid(5), "csv")
        assert b"\r" not in payload
        assert payload.endswith(b"\n")

    def test_seventeen_digit_round_trip_preserves_bits(self):
        g = compare_grid(9)
        back = parse(emit(g, "csv"), "comparison", "csv")
        assert np.array_equal(back.omega_polygon, g.omega_polygon)
        assert np.array_equal(back.rel_diff, g.rel_diff)

    def test_unknown_kind_and_format(self):
        with pytest.raises(DomainError):
            parse(b"{}", "novel", "json")
        with pytest.raises(DomainError):
            emit(compare_grid(3), "xml")
        with pytest.raises(DomainError):
            emit(3.14, "json")
