"""Joint spectral amplitude of a counterpropagating downconversion process.

The two-photon amplitude is the product of a Gaussian pump envelope in
``omega_s + omega_i`` and a phasematching function of the momentum mismatch

    delta_k = k_p(omega_s + omega_i) - k_s(omega_s) + k_i(omega_i) - 2 pi / Lambda,

where the idler wavevector enters with a plus sign because the idler photon
travels against the pump.  All wavevectors are guided-mode (effective-index
corrected) wavevectors.  Frequencies are angular (rad/s) internally;
wavelengths appear only at configuration and I/O boundaries.
"""

import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import dispersion
from .dispersion import C_UM_PER_S, omega_from_wavelength_um, resolve_model
from .errors import GridTooCoarseWarning, NoPhasematchError
from .waveguide import GuidedMode, WaveguideGeometry

_TWO_ROOT_LN2 = 2.0 * np.sqrt(np.log(2.0))

#: Half-width of the signal-wavelength search window of the phasematch solver.
PHASEMATCH_WINDOW_UM = 0.1

#: Bisection tolerance of the phasematch solver, in um (1e-4 nm).
PHASEMATCH_TOL_UM = 1e-7


class PhasematchingShape(str, Enum):
    SINC_EXACT = "sinc_exact"
    GAUSSIAN_APPROX = "gaussian_approx"


@dataclass(frozen=True)
class ProcessConfig:
    """Complete description of one downconversion process.

    ``material`` is a shipped material id (``"LN_e"``, ``"KTP_z"``) or any
    dispersion-model-like object.  ``pump_fwhm_nm`` is the FWHM of the pump
    *intensity* spectrum in wavelength.  The signal photon copropagates with
    the pump, the idler photon counterpropagates; these are the only
    supported directions.
    """

    material: object = "LN_e"
    geometry: WaveguideGeometry = field(default_factory=WaveguideGeometry)
    pump_center_nm: float = 775.0
    pump_fwhm_nm: float = 0.58
    grating_period_um: float = 0.356
    phasematching_shape: PhasematchingShape = PhasematchingShape.SINC_EXACT
    gaussian_gamma: float = 0.193
    signal_direction: str = "forward"
    idler_direction: str = "backward"

    def __post_init__(self):
        if not self.pump_center_nm > 0:
            raise ValueError("ProcessConfig.pump_center_nm must be > 0")
        if not self.pump_fwhm_nm > 0:
            raise ValueError("ProcessConfig.pump_fwhm_nm must be > 0")
        if not self.grating_period_um > 0:
            raise ValueError("ProcessConfig.grating_period_um must be > 0")
        if not self.gaussian_gamma > 0:
            raise ValueError("ProcessConfig.gaussian_gamma must be > 0")
        if (self.signal_direction, self.idler_direction) != ("forward", "backward"):
            raise ValueError(
                "only forward signal with backward idler is supported"
            )
        object.__setattr__(
            self, "phasematching_shape", PhasematchingShape(self.phasematching_shape)
        )

    @property
    def pump_center_um(self) -> float:
        return self.pump_center_nm * 1e-3

    def guided(self) -> GuidedMode:
        """Waveguide-corrected dispersion for this process."""
        return GuidedMode(self.geometry, resolve_model(self.material))


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform rectangular grid over (omega_s, omega_i), rad/s."""

    signal: np.ndarray
    idler: np.ndarray

    def __post_init__(self):
        for name in ("signal", "idler"):
            axis = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, axis)
            if axis.ndim != 1 or axis.size < 2:
                raise ValueError(f"FrequencyGrid.{name} needs at least 2 points")
            steps = np.diff(axis)
            if np.any(steps <= 0):
                raise ValueError(f"FrequencyGrid.{name} must be strictly increasing")
            if np.ptp(steps) > 1e-9 * steps[0]:
                raise ValueError(f"FrequencyGrid.{name} must be uniform")

    @property
    def d_signal(self) -> float:
        return float(self.signal[1] - self.signal[0])

    @property
    def d_idler(self) -> float:
        return float(self.idler[1] - self.idler[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.signal.size, self.idler.size

    def mesh(self):
        return np.meshgrid(self.signal, self.idler, indexing="ij")


@dataclass
class JointSpectralAmplitude:
    """Unit-normalized complex amplitude on a frequency grid."""

    grid: FrequencyGrid
    amplitude: np.ndarray
    normalization_note: str = "unit L2 norm over the grid measure"

    def norm(self) -> float:
        return float(
            np.sum(np.abs(self.amplitude) ** 2) * self.grid.d_signal * self.grid.d_idler
        )


@dataclass(frozen=True)
class Spectrum:
    """Marginal intensity profile over one frequency axis."""

    omega: np.ndarray
    intensity: np.ndarray

    @property
    def wavelength_nm(self) -> np.ndarray:
        return 2.0 * np.pi * C_UM_PER_S / self.omega * 1e3


def pump_center_omega(cfg: ProcessConfig) -> float:
    return float(omega_from_wavelength_um(cfg.pump_center_um))


def pump_sigma(cfg: ProcessConfig) -> float:
    """Amplitude-Gaussian width sigma (rad/s) from the intensity FWHM in nm.

    The intensity FWHM in wavelength converts to an angular-frequency FWHM
    ``2 pi c d_lambda / lambda^2``; the amplitude Gaussian
    ``exp(-nu^2 / (2 sigma^2))`` has intensity FWHM ``2 sqrt(ln 2) sigma``.
    """
    dlam_um = cfg.pump_fwhm_nm * 1e-3
    dw_fwhm = 2.0 * np.pi * C_UM_PER_S * dlam_um / cfg.pump_center_um**2
    return dw_fwhm / _TWO_ROOT_LN2


def pump_envelope(omega_s, omega_i, cfg: ProcessConfig):
    """Gaussian pump amplitude at ``omega_s + omega_i``; peak 1 on the ridge."""
    sigma = pump_sigma(cfg)
    detune = np.asarray(omega_s, dtype=float) + np.asarray(omega_i, dtype=float)
    return np.exp(-((detune - pump_center_omega(cfg)) ** 2) / (2.0 * sigma**2))


def delta_k(omega_s, omega_i, cfg: ProcessConfig, guided: GuidedMode | None = None):
    """Momentum mismatch in rad/um, counterpropagating sign convention."""
    mode = cfg.guided() if guided is None else guided
    om_s = np.asarray(omega_s, dtype=float)
    om_i = np.asarray(omega_i, dtype=float)
    k_p = dispersion.wavevector(mode, om_s + om_i)
    k_s = dispersion.wavevector(mode, om_s)
    k_i = dispersion.wavevector(mode, om_i)
    return k_p - k_s + k_i - 2.0 * np.pi / cfg.grating_period_um


def phasematching(omega_s, omega_i, cfg: ProcessConfig, guided: GuidedMode | None = None):
    """Complex phasematching amplitude over the crystal length.

    ``sinc_exact`` evaluates ``sinc(L dk / 2) exp(-i L dk / 2)``;
    ``gaussian_approx`` replaces the sinc magnitude by
    ``exp(-gamma (L dk / 2)^2)`` with the configured gamma.
    """
    x = 0.5 * cfg.geometry.length_um * delta_k(omega_s, omega_i, cfg, guided)
    if cfg.phasematching_shape is PhasematchingShape.GAUSSIAN_APPROX:
        magnitude = np.exp(-cfg.gaussian_gamma * x**2)
    else:
        magnitude = np.sinc(x / np.pi)  # np.sinc(t) = sin(pi t)/(pi t)
    return magnitude * np.exp(-1j * x)


def delta_k_gradient(omega_s, omega_i, cfg: ProcessConfig):
    """Partial derivatives of delta_k w.r.t. (omega_s, omega_i), s/um.

    Equal to ``(k'_p - k'_s, k'_p + k'_i)`` with the pump group delay taken
    at ``omega_s + omega_i``.
    """
    mode = cfg.guided()
    kp_p = dispersion.inverse_group_velocity(mode, omega_s + omega_i)
    kp_s = dispersion.inverse_group_velocity(mode, omega_s)
    kp_i = dispersion.inverse_group_velocity(mode, omega_i)
    return kp_p - kp_s, kp_p + kp_i


def solve_phasematched_pair(
    cfg: ProcessConfig, window_um: float = PHASEMATCH_WINDOW_UM
) -> tuple[float, float]:
    """Signal/idler center frequencies with ``delta_k = 0`` at the pump center.

    Energy conservation fixes ``omega_i = omega_p - omega_s``; the remaining
    one-dimensional root in the signal wavelength is bracketed around the
    degenerate point ``2 lambda_p`` (window ±``window_um``) and solved by
    bisection to 1e-4 nm.  Raises :class:`NoPhasematchError` when the window
    does not bracket a root.
    """
    om_p = pump_center_omega(cfg)
    guided = cfg.guided()

    def mismatch(lam_s_um: float) -> float:
        om_s = float(omega_from_wavelength_um(lam_s_um))
        return float(delta_k(om_s, om_p - om_s, cfg, guided))

    lo = 2.0 * cfg.pump_center_um - window_um
    hi = 2.0 * cfg.pump_center_um + window_um
    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if f_lo == 0.0:
        root = lo
    elif f_hi == 0.0:
        root = hi
    elif f_lo * f_hi > 0:
        raise NoPhasematchError(
            f"no phasematched signal wavelength within ±{window_um * 1e3:.0f} nm of "
            f"{2 * cfg.pump_center_nm:.1f} nm (grating {cfg.grating_period_um:.4f} um)"
        )
    else:
        while hi - lo > PHASEMATCH_TOL_UM:
            mid = 0.5 * (lo + hi)
            if f_lo * mismatch(mid) <= 0:
                hi = mid
            else:
                lo = mid
        root = 0.5 * (lo + hi)
    om_s = float(omega_from_wavelength_um(root))
    return om_s, om_p - om_s


def _gaussian_model(cfg: ProcessConfig, omega_s0: float, omega_i0: float):
    """Quadratic-form coefficients (a, b, c) of the linearized amplitude.

    With detunings ``nu`` from the phasematched point the Gaussian-model
    amplitude is ``exp(-(a nu_s^2 + b nu_i^2 + 2 c nu_s nu_i))``; used for
    grid auto-ranging and width estimates.
    """
    sigma = pump_sigma(cfg)
    tau_s, tau_i = delta_k_gradient(omega_s0, omega_i0, cfg)
    p = 1.0 / (2.0 * sigma**2)
    quarter = cfg.gaussian_gamma * cfg.geometry.length_um**2 / 4.0
    return (
        p + quarter * tau_s**2,
        p + quarter * tau_i**2,
        p + quarter * tau_s * tau_i,
    )


def estimate_marginal_fwhms(
    cfg: ProcessConfig, omega_s0: float | None = None, omega_i0: float | None = None
) -> tuple[float, float]:
    """Analytic (Gaussian-model) marginal intensity FWHMs in rad/s."""
    if omega_s0 is None or omega_i0 is None:
        omega_s0, omega_i0 = solve_phasematched_pair(cfg)
    a, b, c = _gaussian_model(cfg, omega_s0, omega_i0)
    factor = 2.0 * np.sqrt(2.0 * np.log(2.0))
    width_s = factor / np.sqrt(4.0 * (a - c**2 / b))
    width_i = factor / np.sqrt(4.0 * (b - c**2 / a))
    return float(width_s), float(width_i)


def auto_grid(
    cfg: ProcessConfig,
    n_signal: int = 512,
    n_idler: int = 512,
    span_fwhms: float = 6.0,
) -> FrequencyGrid:
    """Grid centered on the phasematched point, sized from analytic widths.

    Each axis spans ``span_fwhms`` estimated marginal FWHMs; the two spans
    are strongly asymmetric here because the backpropagating photon is an
    order of magnitude narrower than the forward one.
    """
    om_s0, om_i0 = solve_phasematched_pair(cfg)
    width_s, width_i = estimate_marginal_fwhms(cfg, om_s0, om_i0)
    half_s = 0.5 * span_fwhms * width_s
    half_i = 0.5 * span_fwhms * width_i
    return FrequencyGrid(
        signal=np.linspace(om_s0 - half_s, om_s0 + half_s, n_signal),
        idler=np.linspace(om_i0 - half_i, om_i0 + half_i, n_idler),
    )


def _undersampling_check(jsa: JointSpectralAmplitude) -> None:
    # at least 8 samples across the narrower marginal FWHM
    signal, idler = marginal_spectra(jsa)
    counts = []
    for spectrum in (signal, idler):
        counts.append(int(np.count_nonzero(spectrum.intensity >= 0.5 * spectrum.intensity.max())))
    if min(counts) < 8:
        warnings.warn(
            f"grid undersamples the narrower marginal ({min(counts)} samples across "
            "the FWHM, need >= 8); increase the point count or shrink the span",
            GridTooCoarseWarning,
            stacklevel=2,
        )


def build_jsa(grid: FrequencyGrid, cfg: ProcessConfig) -> JointSpectralAmplitude:
    """Evaluate and unit-normalize the joint amplitude on ``grid``.

    Deterministic for identical inputs: the grid is evaluated vectorized and
    the norm uses numpy's pairwise summation.  Emits
    :class:`GridTooCoarseWarning` when the narrower marginal FWHM covers
    fewer than 8 grid steps.
    """
    guided = cfg.guided()
    om_s, om_i = grid.mesh()
    amplitude = pump_envelope(om_s, om_i, cfg) * phasematching(om_s, om_i, cfg, guided)
    if not np.all(np.isfinite(amplitude)):
        raise FloatingPointError("joint amplitude contains non-finite values")
    norm = np.sqrt(np.sum(np.abs(amplitude) ** 2) * grid.d_signal * grid.d_idler)
    if norm == 0.0:
        raise NoPhasematchError("joint amplitude vanishes on the grid")
    result = JointSpectralAmplitude(grid=grid, amplitude=amplitude / norm)
    _undersampling_check(result)
    return result


def marginal_spectra(jsa: JointSpectralAmplitude) -> tuple[Spectrum, Spectrum]:
    """Signal and idler marginal intensities; each integrates to one."""
    density = np.abs(jsa.amplitude) ** 2
    signal = Spectrum(jsa.grid.signal, density.sum(axis=1) * jsa.grid.d_idler)
    idler = Spectrum(jsa.grid.idler, density.sum(axis=0) * jsa.grid.d_signal)
    return signal, idler


def half_max_crossings(axis, values) -> tuple[float, float]:
    """Interpolated half-maximum crossings left and right of the peak."""
    x = np.asarray(axis, dtype=float)
    y = np.asarray(values, dtype=float)
    peak = int(np.argmax(y))
    half = y[peak] / 2.0

    def interp(j_out, j_in):
        return x[j_out] + (half - y[j_out]) * (x[j_in] - x[j_out]) / (y[j_in] - y[j_out])

    left = None
    for j in range(peak - 1, -1, -1):
        if y[j] < half:
            left = interp(j, j + 1)
            break
    right = None
    for j in range(peak + 1, y.size):
        if y[j] < half:
            right = interp(j, j - 1)
            break
    if left is None or right is None:
        side = "left" if left is None else "right"
        raise ValueError(f"profile never falls below half maximum on the {side} side")
    return left, right


def fwhm(axis, values) -> float:
    """Linear-interpolated full width at half maximum, in axis units."""
    left, right = half_max_crossings(axis, values)
    return right - left


def wavelength_fwhm_nm(spectrum: Spectrum) -> float:
    """Marginal FWHM converted to wavelength (nm) via the crossing points."""
    left, right = half_max_crossings(spectrum.omega, spectrum.intensity)
    lam = lambda om: 2.0 * np.pi * C_UM_PER_S / om * 1e3
    return abs(lam(left) - lam(right))


def phasematching_angle(
    cfg: ProcessConfig,
    omega_s: float | None = None,
    omega_i: float | None = None,
) -> float:
    """Angle (degrees) of the phasematching ridge against the signal axis.

    ``theta = -arctan[(k'_p - k'_s) / (k'_p + k'_i)]`` evaluated at the
    phasematched point by default.  Positive angles below 90 degrees are the
    regime where an exactly separable state is possible.
    """
    if omega_s is None or omega_i is None:
        omega_s, omega_i = solve_phasematched_pair(cfg)
    tau_s, tau_i = delta_k_gradient(omega_s, omega_i, cfg)
    return float(np.degrees(-np.arctan(tau_s / tau_i)))
