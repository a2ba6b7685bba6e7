"""Design module: grating solver, separability diagnostics, optimizer, sweeps."""

import numpy as np
import pytest

from counterpdc.design import (
    golden_section_max,
    grating_period,
    idler_wavelength_nm,
    optimize_pump_width,
    separability_residual,
    sweep_degenerate,
    sweep_tuning,
)
from counterpdc.dispersion import omega_from_wavelength_um
from counterpdc.errors import NonPositiveDenominatorError
from counterpdc.jsa import (
    PhasematchingShape,
    ProcessConfig,
    delta_k,
    pump_sigma,
)
from counterpdc.waveguide import WaveguideGeometry

from oracles import ConstantIndexModel, PiecewiseLinearKModel, two_band_model

BULKLIKE = WaveguideGeometry(index_step=1e-5)
GAMMA = 0.193


def separable_stub():
    """Photon band slower than the pump: the separability root is real.

    k'_s = k'_i = 8.0e-15 > k'_p = 7.5e-15 s/um, so
    (k'_p - k'_s)(k'_p + k'_i) < 0 and the root pump width sits near
    0.123 nm, inside the usual optimizer bounds.
    """
    return two_band_model(
        1.0,
        pump_anchor=(0.775, 17.0, 7.5e-15),
        photon_anchor=(1.55, 8.5, 8.0e-15),
    )


class TestGratingPeriod:
    def test_telecom_reference_value(self, geometry):
        """Degenerate telecom source in LN: 0.35 um grating, sub-micron."""
        period = grating_period("LN_e", geometry, 775.0, 1550.0, 1550.0)
        assert 0.33 <= period <= 0.37
        assert period == pytest.approx(0.356179, abs=1e-4)  # regression pin

    def test_constant_stub_closed_form(self):
        """k_s and k_i cancel at degeneracy: grating = lambda_p / n."""
        period = grating_period(
            ConstantIndexModel(index=2.0), BULKLIKE, 775.0, 1550.0, 1550.0
        )
        assert period == pytest.approx(0.775 / 2.0, rel=1e-4)

    def test_ktp_telecom_reference_value(self, geometry):
        """Same design point in KTP: longer period, still sub-micron."""
        period = grating_period("KTP_z", geometry, 775.0, 1550.0, 1550.0)
        assert period == pytest.approx(0.42016, abs=1e-4)  # regression pin

    def test_sub_micron_across_sweep_range(self, geometry):
        """Degenerate 800-1600 nm pairs need sub-micron poling periods."""
        for material in ("LN_e", "KTP_z"):
            for lam in np.linspace(800.0, 1600.0, 9):
                period = grating_period(material, geometry, lam / 2, lam, lam)
                assert 0.1 < period < 1.0

    def test_energy_conservation_required(self, geometry):
        with pytest.raises(ValueError, match="energy conservation"):
            grating_period("LN_e", geometry, 775.0, 1500.0, 1550.0)

    def test_nonpositive_denominator(self):
        # nondegenerate pair with a signal wavevector exceeding k_p + k_i
        model = PiecewiseLinearKModel([
            (0.0, 1.0, (0.775, 1.0, 7.5e-15)),
            (1.0, 1.55, (1.50, 10.0, 8.0e-15)),
            (1.55, np.inf, (1.60, 2.0, 8.0e-15)),
        ])
        lam_i = idler_wavelength_nm(775.0, 1500.0)
        with pytest.raises(NonPositiveDenominatorError):
            grating_period(model, BULKLIKE, 775.0, 1500.0, lam_i)

    def test_idler_wavelength_helper(self):
        lam_i = idler_wavelength_nm(775.0, 1500.0)
        assert 1.0 / 775.0 == pytest.approx(1.0 / 1500.0 + 1.0 / lam_i, rel=1e-12)


class TestSeparabilityResidual:
    def test_equal_group_delays_leave_unit_residual(self):
        """With k'_p = k'_s the product term vanishes: no root at finite width."""
        model = two_band_model(
            1.0, pump_anchor=(0.775, 17.0, 7.5e-15), photon_anchor=(1.55, 8.5, 7.5e-15)
        )
        diag = separability_residual(model, BULKLIKE, 775.0, 1550.0, 1550.0, 2e11)
        assert diag.residual == pytest.approx(1.0, abs=1e-3)
        assert not diag.pump_faster_than_signal

    def test_constructed_root(self):
        model = separable_stub()
        diag0 = separability_residual(model, BULKLIKE, 775.0, 1550.0, 1550.0, 1e11)
        sigma_root = np.sqrt(
            -2.0 / (GAMMA * BULKLIKE.length_um**2 * diag0.tau_s * diag0.tau_i)
        )
        diag = separability_residual(model, BULKLIKE, 775.0, 1550.0, 1550.0, sigma_root)
        assert diag.pump_faster_than_signal
        assert diag.residual == pytest.approx(0.0, abs=1e-9)

    def test_telecom_pump_is_slower_than_signal(self, geometry):
        """In LN at 775 -> 1550 the pump group velocity is below the signal's,
        so the residual stays positive at any pump width."""
        for sigma in (1e11, 1e12, 1e13):
            diag = separability_residual(
                "LN_e", geometry, 775.0, 1550.0, 1550.0, sigma
            )
            assert not diag.pump_faster_than_signal
            assert diag.residual > 1.0


class TestGoldenSection:
    def test_quadratic_objective(self):
        argmax = golden_section_max(lambda x: -((x - 0.173) ** 2), 0.02, 0.35, 1e-4)
        assert argmax == pytest.approx(0.173, abs=1e-3)

    def test_boundary_maximum(self):
        argmax = golden_section_max(lambda x: -x, 0.22, 0.34, 1e-4)
        assert argmax == pytest.approx(0.22, abs=1e-3)


class TestOptimizePumpWidth:
    def test_telecom_interior_optimum(self, telecom_cfg_gauss):
        result = optimize_pump_width(
            telecom_cfg_gauss, bounds=(0.02, 0.35), n_grid=128,
            check_unimodal=True,
        )
        assert result.pump_fwhm_nm == pytest.approx(0.160, abs=0.01)  # regression pin
        assert result.lambda0 == pytest.approx(0.9794, abs=2e-3)  # regression pin
        assert not result.boundary_optimum
        assert not result.non_unimodal
        evaluated = dict(result.history)
        assert result.lambda0 >= max(v for v in evaluated.values()) - 1e-9

    def test_narrow_bounds_hit_boundary(self, telecom_cfg_gauss):
        result = optimize_pump_width(telecom_cfg_gauss, bounds=(0.22, 0.34), n_grid=96)
        assert 0.22 <= result.pump_fwhm_nm <= 0.34
        assert result.boundary_optimum  # true optimum sits below 0.22

    def test_certificate_records_evaluations(self, telecom_cfg_gauss):
        result = optimize_pump_width(telecom_cfg_gauss, bounds=(0.1, 0.3), n_grid=64)
        assert len(result.history) >= 10
        widths = [w for w, _ in result.history]
        assert all(0.1 <= w <= 0.3 for w in widths)

    def test_root_configuration_reaches_high_separability(self):
        """Where the residual has a root inside the bounds, the optimized
        leading coefficient must reach at least 0.98."""
        model = separable_stub()
        grating = grating_period(model, BULKLIKE, 775.0, 1550.0, 1550.0)
        cfg = ProcessConfig(
            material=model, geometry=BULKLIKE, pump_center_nm=775.0,
            pump_fwhm_nm=0.1, grating_period_um=grating,
            phasematching_shape=PhasematchingShape.GAUSSIAN_APPROX,
        )
        diag = separability_residual(model, BULKLIKE, 775.0, 1550.0, 1550.0, 1e11)
        sigma_root = np.sqrt(
            -2.0 / (GAMMA * BULKLIKE.length_um**2 * diag.tau_s * diag.tau_i)
        )
        result = optimize_pump_width(cfg, bounds=(0.02, 0.35), n_grid=128)
        assert result.lambda0 >= 0.98
        # the argmax should sit at the analytic root width
        base = ProcessConfig(
            material=model, geometry=BULKLIKE, pump_center_nm=775.0,
            pump_fwhm_nm=1.0, grating_period_um=grating,
        )
        root_width_nm = sigma_root / pump_sigma(base)
        assert result.pump_fwhm_nm == pytest.approx(root_width_nm, abs=0.01)


class TestSweepDegenerate:
    def test_grating_only_sweep(self, geometry):
        rows = sweep_degenerate(
            ("LN_e", "KTP_z"), geometry, steps=9, optimize=False,
        )
        assert len(rows) == 18
        for row in rows:
            assert row.status == "ok"
            assert 1.0 / row.lambda_p_nm == pytest.approx(
                1.0 / row.lambda_s_nm + 1.0 / row.lambda_i_nm, rel=1e-9
            )
            assert np.isnan(row.lambda0)
            assert np.isfinite(row.theta_deg)

    def test_solved_rows_rezero_the_mismatch(self, geometry):
        rows = sweep_degenerate(("LN_e",), geometry, steps=5, optimize=False)
        for row in rows:
            cfg = ProcessConfig(
                material=row.material_id, geometry=geometry,
                pump_center_nm=row.lambda_p_nm, pump_fwhm_nm=0.2,
                grating_period_um=row.grating_um,
            )
            om = float(omega_from_wavelength_um(2.0 * row.lambda_p_nm * 1e-3))
            assert abs(delta_k(om, om, cfg)) < 1e-9

    def test_failed_rows_are_kept(self, geometry):
        rows = sweep_degenerate(("LN_e",), geometry, start_nm=600.0, stop_nm=640.0,
                                steps=3, optimize=False)
        assert len(rows) == 3
        assert all(row.status.startswith("failed") for row in rows)

    def test_optimized_rows_fill_quality_columns(self, geometry):
        rows = sweep_degenerate(
            ("LN_e",), geometry, start_nm=1500.0, stop_nm=1600.0, steps=2,
            n_grid=96, optimize=True,
        )
        for row in rows:
            assert row.status == "ok"
            assert 0.0 < row.lambda0 <= 1.0
            assert 0.0 < row.purity <= row.lambda0 + 1e-12
            assert np.isfinite(row.separability_residual)
            assert 0.02 <= row.pump_fwhm_opt_nm <= 0.35


class TestSweepTuning:
    def test_reproduces_degenerate_point_at_center(self, geometry):
        rows = sweep_tuning("LN_e", geometry, start_nm=775.0, stop_nm=775.0, steps=2,
                            optimize=False)
        for row in rows:
            assert row.lambda_s_nm == pytest.approx(1550.0, abs=0.5)
            assert row.lambda_i_nm == pytest.approx(1550.0, abs=0.5)

    def test_idler_pinned_signal_follows_pump(self, geometry):
        rows = sweep_tuning("LN_e", geometry, start_nm=770.0, stop_nm=780.0, steps=9,
                            optimize=False)
        signals = [row.lambda_s_nm for row in rows]
        idlers = [row.lambda_i_nm for row in rows]
        assert all(abs(lam - 1550.0) < 2.0 for lam in idlers)
        assert np.all(np.diff(signals) > 0)
        assert signals[-1] - signals[0] > 20.0
