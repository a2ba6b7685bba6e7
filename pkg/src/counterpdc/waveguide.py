"""Guided-mode dispersion of a buried rectangular channel waveguide.

The channel is a step-index core (bulk index from the dispersion model) in a
uniform cladding at ``n_core - index_step``.  The fundamental-mode effective
index comes from the separable effective-index method: the symmetric-slab
transcendental equation is solved once per transverse axis and the two
confinement factors are combined.  That keeps the correction analytic and
cheap enough to sit inside optimizer loops; a finite-difference eigenmode
solver in the test suite pins its accuracy.
"""

import threading
from dataclasses import dataclass

import numpy as np

from . import dispersion
from .errors import ModeCutoffError

_SLAB_BISECTIONS = 64  # interval (pi/2) / 2^64 ~ 1e-19, well below the 1e-12 target


@dataclass(frozen=True)
class WaveguideGeometry:
    """Rectangular channel cross-section and length.

    Defaults are the reference geometry used throughout: a 4 um x 4 um
    channel, 5 mm long, with an index step of 0.01 to the surrounding
    material.
    """

    width_um: float = 4.0
    height_um: float = 4.0
    length_mm: float = 5.0
    index_step: float = 0.01

    def __post_init__(self):
        for name in ("width_um", "height_um", "length_mm", "index_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"WaveguideGeometry.{name} must be > 0")

    @property
    def length_um(self) -> float:
        return self.length_mm * 1e3


def _slab_confinement(v):
    """Normalized guided fraction b of the fundamental even slab mode.

    Solves ``u tan u = sqrt(V^2 - u^2)`` on (0, min(V, pi/2)) by bisection
    with a fixed iteration count (deterministic) and returns
    ``b = 1 - (u/V)^2``.  The fundamental symmetric-slab mode has no cutoff,
    so a solution exists for every V > 0.
    """
    v = np.asarray(v, dtype=float)
    if np.any(v <= 0):
        raise ValueError("slab V parameter must be positive")
    lo = np.zeros_like(v)
    hi = np.minimum(v, np.pi / 2 - 1e-15)
    for _ in range(_SLAB_BISECTIONS):
        mid = 0.5 * (lo + hi)
        residual = mid * np.tan(mid) - np.sqrt(np.maximum(v * v - mid * mid, 0.0))
        below = residual < 0
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    u = 0.5 * (lo + hi)
    return 1.0 - (u / v) ** 2


def effective_index(geometry: WaveguideGeometry, model, wavelength_um):
    """Fundamental-mode effective index of the channel at ``wavelength_um``.

    Always satisfies ``n_core - index_step < n_eff < n_core``; violation of
    the lower bound raises :class:`ModeCutoffError`.
    """
    lam = np.asarray(wavelength_um, dtype=float)
    n_core = model.refractive_index(lam)
    n_clad = n_core - geometry.index_step
    na2 = n_core**2 - n_clad**2
    v_x = np.pi * geometry.width_um / lam * np.sqrt(na2)
    b_x = _slab_confinement(v_x)
    v_y = np.pi * geometry.height_um / lam * np.sqrt(b_x * na2)
    b_y = _slab_confinement(v_y)
    n_eff = np.sqrt(n_clad**2 + b_x * b_y * na2)
    if np.any(n_eff <= n_clad) or np.any(n_eff >= n_core):
        raise ModeCutoffError(
            f"fundamental mode not guided for {getattr(model, 'material_id', model)!r} "
            f"at {np.min(lam):.6g} um"
        )
    return float(n_eff) if np.isscalar(wavelength_um) else n_eff


class GuidedMode:
    """Waveguide-corrected dispersion with the bulk-model interface.

    Exposes ``refractive_index`` / ``valid_range_um`` like a Sellmeier model,
    so every bulk operation (wavevector, group velocity) works unchanged on
    guided dispersion.  Scalar evaluations are memoized behind a lock; the
    cache is keyed by the exact wavelength float so cached and uncached
    evaluations agree bit-for-bit.
    """

    def __init__(self, geometry: WaveguideGeometry, model, memoize: bool = True):
        self.geometry = geometry
        self.model = model
        self.material_id = getattr(model, "material_id", "custom")
        self.valid_range_um = getattr(model, "valid_range_um", (0.0, np.inf))
        self._memoize = memoize
        self._cache: dict[float, float] = {}
        self._lock = threading.Lock()

    def refractive_index(self, wavelength_um):
        if np.isscalar(wavelength_um) and self._memoize:
            key = float(wavelength_um)
            with self._lock:
                hit = self._cache.get(key)
            if hit is not None:
                return hit
            value = effective_index(self.geometry, self.model, key)
            with self._lock:
                self._cache[key] = value
            return value
        return effective_index(self.geometry, self.model, wavelength_um)


def corrected_wavevector(geometry: WaveguideGeometry, model, omega):
    """Guided-mode wavevector ``n_eff * omega / c`` in rad/um."""
    return dispersion.wavevector(GuidedMode(geometry, model), omega)
