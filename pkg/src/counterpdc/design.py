"""Source design: grating solver, separability diagnostics and sweeps.

The quasi-phasematching period follows the counterpropagating momentum
balance, so ``Lambda = 2 pi / (k_p - k_s + k_i)`` with guided wavevectors:
almost all of the pump momentum is compensated by the poling, which is what
pushes the periods into the sub-micron range.  The group-velocity
separability diagnostic is reported in the normalized form

    residual = 1 + (sigma^2 / 2) * gamma * L^2 * (k'_p - k'_s)(k'_p + k'_i)

whose root (requires ``v_s < v_p``) is exactly the pump width at which the
Gaussian-model state factorizes.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import dispersion, jsa as jsa_mod, schmidt as schmidt_mod
from .dispersion import omega_from_wavelength_um, resolve_model
from .errors import CounterPdcError, NonPositiveDenominatorError
from .jsa import ProcessConfig, PhasematchingShape
from .waveguide import GuidedMode, WaveguideGeometry

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0

ENERGY_TOLERANCE = 1e-9


def check_energy_conservation(lambda_p_nm: float, lambda_s_nm: float, lambda_i_nm: float):
    """Require 1/lambda_p = 1/lambda_s + 1/lambda_i to 1e-9 relative."""
    lhs = 1.0 / lambda_p_nm
    rhs = 1.0 / lambda_s_nm + 1.0 / lambda_i_nm
    if abs(lhs - rhs) > ENERGY_TOLERANCE * lhs:
        raise ValueError(
            f"wavelengths violate energy conservation: 1/{lambda_p_nm} != "
            f"1/{lambda_s_nm} + 1/{lambda_i_nm}"
        )


def idler_wavelength_nm(lambda_p_nm: float, lambda_s_nm: float) -> float:
    """Idler wavelength fixed by energy conservation."""
    return 1.0 / (1.0 / lambda_p_nm - 1.0 / lambda_s_nm)


def grating_period(
    material,
    geometry: WaveguideGeometry,
    lambda_p_nm: float,
    lambda_s_nm: float,
    lambda_i_nm: float,
) -> float:
    """Poling period (um) that zeroes the momentum mismatch at the target point."""
    check_energy_conservation(lambda_p_nm, lambda_s_nm, lambda_i_nm)
    guided = GuidedMode(geometry, resolve_model(material))
    k_p = dispersion.wavevector(guided, omega_from_wavelength_um(lambda_p_nm * 1e-3))
    k_s = dispersion.wavevector(guided, omega_from_wavelength_um(lambda_s_nm * 1e-3))
    k_i = dispersion.wavevector(guided, omega_from_wavelength_um(lambda_i_nm * 1e-3))
    denominator = k_p - k_s + k_i
    if denominator <= 0:
        raise NonPositiveDenominatorError(
            f"k_p - k_s + k_i = {denominator:.6g} rad/um is not positive"
        )
    return 2.0 * np.pi / denominator


@dataclass(frozen=True)
class SeparabilityDiagnostic:
    """Root diagnostic of the group-velocity separability condition."""

    residual: float
    pump_faster_than_signal: bool
    tau_s: float  # k'_p - k'_s, s/um
    tau_i: float  # k'_p + k'_i, s/um


def separability_residual(
    material,
    geometry: WaveguideGeometry,
    lambda_p_nm: float,
    lambda_s_nm: float,
    lambda_i_nm: float,
    sigma: float,
    gamma: float = 0.193,
) -> SeparabilityDiagnostic:
    """Normalized separability residual at pump width ``sigma`` (rad/s).

    Zero means the Gaussian-model state is exactly separable; that requires
    the pump group velocity to exceed the signal group velocity
    (``tau_s < 0``), in which case the residual crosses zero at
    ``sigma^2 = -2 / (gamma L^2 tau_s tau_i)``.
    """
    check_energy_conservation(lambda_p_nm, lambda_s_nm, lambda_i_nm)
    cfg = ProcessConfig(
        material=material,
        geometry=geometry,
        pump_center_nm=lambda_p_nm,
        pump_fwhm_nm=1.0,  # irrelevant to the gradient
        grating_period_um=1.0,
        gaussian_gamma=gamma,
    )
    om_s = float(omega_from_wavelength_um(lambda_s_nm * 1e-3))
    om_i = float(omega_from_wavelength_um(lambda_i_nm * 1e-3))
    tau_s, tau_i = jsa_mod.delta_k_gradient(om_s, om_i, cfg)
    product = gamma * geometry.length_um**2 * tau_s * tau_i
    return SeparabilityDiagnostic(
        residual=float(1.0 + 0.5 * sigma**2 * product),
        pump_faster_than_signal=bool(tau_s < 0),
        tau_s=float(tau_s),
        tau_i=float(tau_i),
    )


@dataclass
class PumpWidthResult:
    """Outcome of the bounded pump-width optimization."""

    pump_fwhm_nm: float
    lambda0: float
    schmidt: schmidt_mod.SchmidtResult
    history: list[tuple[float, float]]
    boundary_optimum: bool
    non_unimodal: bool = False


def golden_section_max(objective, lo: float, hi: float, tol: float) -> float:
    """Argmax of a unimodal scalar function on [lo, hi] to interval width tol."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    f_c, f_d = objective(c), objective(d)
    while b - a > tol:
        if f_c > f_d:
            b, d, f_d = d, c, f_c
            c = b - _INV_PHI * (b - a)
            f_c = objective(c)
        else:
            a, c, f_c = c, d, f_d
            d = a + _INV_PHI * (b - a)
            f_d = objective(d)
    return 0.5 * (a + b)


def optimize_pump_width(
    cfg: ProcessConfig,
    bounds: tuple[float, float],
    n_grid: int = 256,
    tol_nm: float = 1e-3,
    max_modes: int = 64,
    check_unimodal: bool = False,
) -> PumpWidthResult:
    """Maximize the leading Schmidt coefficient over the pump width.

    Golden-section search over ``bounds`` (nm, intensity FWHM); every
    evaluation builds a freshly auto-ranged joint amplitude and decomposes
    it.  ``boundary_optimum`` flags an argmax within ``tol_nm`` of either
    bound, meaning the bounds may not bracket the true optimum.  With
    ``check_unimodal`` the objective is re-sampled at 16 interior points and
    ``non_unimodal`` is set if any beats the returned optimum.
    """
    lo, hi = bounds
    if not (0 < lo < hi):
        raise ValueError("bounds must satisfy 0 < lower < upper")
    history: list[tuple[float, float]] = []

    def objective(width_nm: float) -> float:
        trial = replace(cfg, pump_fwhm_nm=width_nm)
        grid = jsa_mod.auto_grid(trial, n_grid, n_grid)
        result = schmidt_mod.decompose(jsa_mod.build_jsa(grid, trial), max_modes)
        history.append((width_nm, result.lambda0))
        return result.lambda0

    final_nm = golden_section_max(objective, lo, hi, tol_nm)
    objective(final_nm)
    # argmax over everything evaluated (ties broken toward narrower pumps)
    best_nm = max(history, key=lambda entry: (entry[1], -entry[0]))[0]
    trial = replace(cfg, pump_fwhm_nm=best_nm)
    grid = jsa_mod.auto_grid(trial, n_grid, n_grid)
    best = schmidt_mod.decompose(jsa_mod.build_jsa(grid, trial), max_modes)

    non_unimodal = False
    if check_unimodal:
        probes = np.linspace(lo, hi, 18)[1:-1]
        non_unimodal = any(objective(float(x)) > best.lambda0 + 1e-9 for x in probes)

    return PumpWidthResult(
        pump_fwhm_nm=float(best_nm),
        lambda0=best.lambda0,
        schmidt=best,
        history=history,
        boundary_optimum=bool((best_nm - lo) <= tol_nm or (hi - best_nm) <= tol_nm),
        non_unimodal=non_unimodal,
    )


@dataclass
class SweepRow:
    """One solved operating point of a parameter sweep."""

    material_id: str
    lambda_p_nm: float
    lambda_s_nm: float
    lambda_i_nm: float
    grating_um: float = np.nan
    pump_fwhm_opt_nm: float = np.nan
    lambda0: float = np.nan
    purity: float = np.nan
    theta_deg: float = np.nan
    separability_residual: float = np.nan
    status: str = "ok"


def _solved_row(
    material_id: str,
    geometry: WaveguideGeometry,
    lambda_p_nm: float,
    grating_um: float,
    bounds: tuple[float, float],
    n_grid: int,
    shape: PhasematchingShape,
    optimize: bool,
) -> SweepRow:
    cfg = ProcessConfig(
        material=material_id,
        geometry=geometry,
        pump_center_nm=lambda_p_nm,
        pump_fwhm_nm=0.5 * (bounds[0] + bounds[1]),
        grating_period_um=grating_um,
        phasematching_shape=shape,
    )
    om_s, om_i = jsa_mod.solve_phasematched_pair(cfg)
    lam_s_nm = float(dispersion.wavelength_um_from_omega(om_s)) * 1e3
    lam_i_nm = float(dispersion.wavelength_um_from_omega(om_i)) * 1e3
    row = SweepRow(material_id, lambda_p_nm, lam_s_nm, lam_i_nm, grating_um)
    row.theta_deg = jsa_mod.phasematching_angle(cfg, om_s, om_i)
    if optimize:
        best = optimize_pump_width(cfg, bounds, n_grid=n_grid)
        row.pump_fwhm_opt_nm = best.pump_fwhm_nm
        row.lambda0 = best.lambda0
        row.purity = best.schmidt.purity
        sigma = jsa_mod.pump_sigma(replace(cfg, pump_fwhm_nm=best.pump_fwhm_nm))
        diag = separability_residual(
            material_id, geometry, lambda_p_nm, lam_s_nm, lam_i_nm, sigma,
            cfg.gaussian_gamma,
        )
        row.separability_residual = diag.residual
    return row


def sweep_degenerate(
    material_ids,
    geometry: WaveguideGeometry,
    start_nm: float = 800.0,
    stop_nm: float = 1600.0,
    steps: int = 17,
    bounds: tuple[float, float] = (0.02, 0.35),
    n_grid: int = 256,
    shape: PhasematchingShape = PhasematchingShape.GAUSSIAN_APPROX,
    optimize: bool = True,
) -> list[SweepRow]:
    """Degenerate-source sweep: for every degeneracy wavelength solve the
    grating and (optionally) the best pump width.

    Rows that fail to solve are kept with ``status="failed"`` so a long sweep
    never dies on one bad point.  Ordering is by material then wavelength.
    """
    rows = []
    for material_id in material_ids:
        for lam_nm in np.linspace(start_nm, stop_nm, steps):
            lam_p = float(lam_nm) / 2.0
            try:
                grating = grating_period(
                    material_id, geometry, lam_p, float(lam_nm), float(lam_nm)
                )
                row = _solved_row(
                    material_id, geometry, lam_p, grating, bounds, n_grid, shape,
                    optimize,
                )
            except (CounterPdcError, ValueError) as exc:
                row = SweepRow(
                    material_id, lam_p, float(lam_nm), float(lam_nm),
                    status=f"failed: {exc}",
                )
            rows.append(row)
    return rows


def sweep_tuning(
    material_id,
    geometry: WaveguideGeometry,
    grating_um: float | None = None,
    start_nm: float = 770.0,
    stop_nm: float = 780.0,
    steps: int = 11,
    bounds: tuple[float, float] = (0.22, 0.34),
    n_grid: int = 256,
    shape: PhasematchingShape = PhasematchingShape.GAUSSIAN_APPROX,
    optimize: bool = True,
) -> list[SweepRow]:
    """Pump-tuning sweep at a fixed grating period.

    Defaults to the grating that phasematches the degenerate 1550 nm pair,
    then scans the pump center: the backpropagating idler stays put while
    the signal follows the pump.
    """
    if grating_um is None:
        grating_um = grating_period(material_id, geometry, 775.0, 1550.0, 1550.0)
    rows = []
    for lam_p in np.linspace(start_nm, stop_nm, steps):
        try:
            row = _solved_row(
                material_id, geometry, float(lam_p), grating_um, bounds, n_grid,
                shape, optimize,
            )
        except (CounterPdcError, ValueError) as exc:
            row = SweepRow(
                material_id, float(lam_p), np.nan, np.nan, grating_um,
                status=f"failed: {exc}",
            )
        rows.append(row)
    return rows
