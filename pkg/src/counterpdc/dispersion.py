"""Bulk-material dispersion: refractive index, wavevector and group velocity.

All wavelengths are vacuum wavelengths in micrometres, angular frequencies in
rad/s and wavevectors in rad/um, so that ``k = n(lambda) * omega / c`` with
``c`` in um/s.  Any object exposing ``refractive_index(wavelength_um)`` and
``valid_range_um`` can stand in for a :class:`SellmeierModel`; the waveguide
module and the test suite rely on that to swap in corrected or synthetic
dispersion.
"""

from dataclasses import dataclass
from enum import Enum
from importlib import resources

import numpy as np
import yaml

from .errors import OutOfRangeError

#: Speed of light in um/s (exact).
C_UM_PER_S = 2.99792458e14

#: Default wavelength step of the central difference behind ``dk/domega``.
GROUP_VELOCITY_STEP_UM = 1e-5  # 0.01 nm


class Material(str, Enum):
    """Identifiers of the coefficient sets shipped with the toolkit."""

    LN_E = "LN_e"
    KTP_Z = "KTP_z"


@dataclass(frozen=True)
class SellmeierModel:
    """One published Sellmeier coefficient set for a material/polarization.

    Evaluates ``n^2 = constant + sum_j b_j l2/(l2 - c_j) + d * l2`` with
    ``l2 = lambda^2`` in um^2.
    """

    material_id: str
    constant: float
    resonances: tuple[tuple[float, float], ...]
    lambda2_coefficient: float
    valid_range_um: tuple[float, float]
    source_note: str

    def check_range(self, wavelength_um) -> None:
        lam = np.asarray(wavelength_um, dtype=float)
        lo, hi = self.valid_range_um
        if np.any(lam < lo) or np.any(lam > hi):
            bad = lam[(lam < lo) | (lam > hi)]
            raise OutOfRangeError(
                f"wavelength {np.min(bad):.6g} um outside validity window "
                f"[{lo}, {hi}] um of {self.material_id}"
            )

    def refractive_index(self, wavelength_um):
        """Refractive index at a vacuum wavelength (scalar or array, um)."""
        self.check_range(wavelength_um)
        l2 = np.square(np.asarray(wavelength_um, dtype=float))
        n2 = self.constant + self.lambda2_coefficient * l2
        for b, c in self.resonances:
            n2 = n2 + b * l2 / (l2 - c)
        n = np.sqrt(n2)
        return float(n) if np.isscalar(wavelength_um) else n


def _load_catalog() -> dict[str, SellmeierModel]:
    text = resources.files("counterpdc.data").joinpath("materials.yaml").read_text()
    raw = yaml.safe_load(text)
    catalog = {}
    for rec in raw["materials"]:
        model = SellmeierModel(
            material_id=rec["id"],
            constant=float(rec["constant"]),
            resonances=tuple((float(r["b"]), float(r["c"])) for r in rec["resonances"]),
            lambda2_coefficient=float(rec["lambda2_coefficient"]),
            valid_range_um=(
                float(rec["valid_range_um"]["min"]),
                float(rec["valid_range_um"]["max"]),
            ),
            source_note=str(rec["citation"]).strip(),
        )
        catalog[model.material_id] = model
    return catalog


_CATALOG: dict[str, SellmeierModel] | None = None


def available_materials() -> tuple[str, ...]:
    """Identifiers of all shipped coefficient sets."""
    return tuple(_catalog())


def get_material(material_id: str | Material) -> SellmeierModel:
    """Look up a shipped coefficient set by identifier."""
    key = material_id.value if isinstance(material_id, Material) else material_id
    try:
        return _catalog()[key]
    except KeyError:
        raise KeyError(
            f"unknown material {key!r}; available: {', '.join(_catalog())}"
        ) from None


def _catalog() -> dict[str, SellmeierModel]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _load_catalog()
    return _CATALOG


def resolve_model(material) -> object:
    """Return a dispersion model from an id, enum or model-like object."""
    if isinstance(material, (str, Material)):
        return get_material(material)
    if hasattr(material, "refractive_index"):
        return material
    raise TypeError(f"not a material id or dispersion model: {material!r}")


def omega_from_wavelength_um(wavelength_um):
    """Angular frequency (rad/s) of a vacuum wavelength in um."""
    return 2.0 * np.pi * C_UM_PER_S / np.asarray(wavelength_um, dtype=float)


def wavelength_um_from_omega(omega):
    """Vacuum wavelength (um) of an angular frequency in rad/s."""
    return 2.0 * np.pi * C_UM_PER_S / np.asarray(omega, dtype=float)


def wavevector(model, omega):
    """Wavevector ``k = n * omega / c`` in rad/um.

    ``model`` is anything exposing ``refractive_index(wavelength_um)``.
    """
    lam = wavelength_um_from_omega(omega)
    k = model.refractive_index(lam) * np.asarray(omega, dtype=float) / C_UM_PER_S
    return float(k) if np.isscalar(omega) else k


def inverse_group_velocity(model, omega, step_um: float = GROUP_VELOCITY_STEP_UM):
    """Group delay per unit length ``k' = dk/domega`` in s/um.

    Central finite difference of :func:`wavevector` with a wavelength step of
    ``step_um`` (default 0.01 nm) translated to frequency at the evaluation
    point.  Raises :class:`OutOfRangeError` when the stencil leaves the
    model's validity window.
    """
    om = np.asarray(omega, dtype=float)
    lam = wavelength_um_from_omega(om)
    dom = 2.0 * np.pi * C_UM_PER_S / lam**2 * step_um
    kp = (wavevector(model, om + dom) - wavevector(model, om - dom)) / (2.0 * dom)
    return float(kp) if np.isscalar(omega) else kp


def group_velocity(model, omega, step_um: float = GROUP_VELOCITY_STEP_UM):
    """Group velocity ``v = 1 / k'`` in um/s."""
    kp = inverse_group_velocity(model, omega, step_um)
    return 1.0 / kp


def group_index(model, omega, step_um: float = GROUP_VELOCITY_STEP_UM):
    """Dimensionless group index ``c / v``."""
    return C_UM_PER_S * inverse_group_velocity(model, omega, step_um)
