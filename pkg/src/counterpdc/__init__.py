"""Design and analysis toolkit for counterpropagating photon-pair sources.

Builds joint spectral amplitudes for quasi-phasematched downconversion in
periodically poled rectangular waveguides with a backpropagating idler,
quantifies heralded-photon separability through the Schmidt decomposition,
solves sub-micron grating periods, and optimizes the pump bandwidth.
"""

from .design import (
    PumpWidthResult,
    SeparabilityDiagnostic,
    SweepRow,
    grating_period,
    idler_wavelength_nm,
    optimize_pump_width,
    separability_residual,
    sweep_degenerate,
    sweep_tuning,
)
from .dispersion import (
    C_UM_PER_S,
    Material,
    SellmeierModel,
    available_materials,
    get_material,
    group_index,
    group_velocity,
    inverse_group_velocity,
    omega_from_wavelength_um,
    wavelength_um_from_omega,
    wavevector,
)
from .jsa import (
    FrequencyGrid,
    JointSpectralAmplitude,
    PhasematchingShape,
    ProcessConfig,
    Spectrum,
    auto_grid,
    build_jsa,
    delta_k,
    delta_k_gradient,
    fwhm,
    marginal_spectra,
    phasematching,
    phasematching_angle,
    pump_envelope,
    pump_sigma,
    solve_phasematched_pair,
    wavelength_fwhm_nm,
)
from .schmidt import SchmidtResult, decompose, purity, reconstruct
from .waveguide import GuidedMode, WaveguideGeometry, corrected_wavevector, effective_index

__version__ = "0.1.0"

__all__ = [
    "C_UM_PER_S",
    "FrequencyGrid",
    "GuidedMode",
    "JointSpectralAmplitude",
    "Material",
    "PhasematchingShape",
    "ProcessConfig",
    "PumpWidthResult",
    "SchmidtResult",
    "SellmeierModel",
    "SeparabilityDiagnostic",
    "Spectrum",
    "SweepRow",
    "WaveguideGeometry",
    "auto_grid",
    "available_materials",
    "build_jsa",
    "corrected_wavevector",
    "decompose",
    "delta_k",
    "delta_k_gradient",
    "effective_index",
    "fwhm",
    "get_material",
    "grating_period",
    "group_index",
    "group_velocity",
    "idler_wavelength_nm",
    "inverse_group_velocity",
    "marginal_spectra",
    "omega_from_wavelength_um",
    "optimize_pump_width",
    "phasematching",
    "phasematching_angle",
    "pump_envelope",
    "pump_sigma",
    "purity",
    "reconstruct",
    "separability_residual",
    "solve_phasematched_pair",
    "sweep_degenerate",
    "sweep_tuning",
    "wavelength_fwhm_nm",
    "wavelength_um_from_omega",
    "wavevector",
]
