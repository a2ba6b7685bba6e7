"""CSV/JSON emission with atomic writes and pinned column schemas.

Every file is written to a temporary sibling and renamed into place, so an
emitted file is either complete or absent.  Floats are serialized with
``repr`` (shortest round-trip form), which makes repeated runs byte-identical.
"""

import hashlib
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .dispersion import C_UM_PER_S
from .jsa import FrequencyGrid, JointSpectralAmplitude, Spectrum
from .schmidt import SchmidtResult

JSA_HEADER = "omega_s_rad_s,omega_i_rad_s,re,im"
MARGINAL_HEADER = "wavelength_nm,intensity"
SCHMIDT_HEADER = "n,lambda_n"
SWEEP_HEADER = ("lambda_p_nm,lambda_s_nm,lambda_i_nm,grating_um,pump_fwhm_opt_nm,"
                "lambda0,purity,theta_deg,eq4_residual,status")
HISTORY_HEADER = "pump_fwhm_nm,lambda0"


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    return repr(value)


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", dir=path.parent, prefix=f".{path.name}.", delete=False
    )
    try:
        with handle as fh:
            fh.write(text)
        os.chmod(handle.name, 0o644)
        os.replace(handle.name, path)
    except BaseException:
        os.unlink(handle.name)
        raise


def write_csv(path: Path, header: str, rows) -> None:
    lines = [header]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    lines.append("")
    atomic_write_text(path, "\n".join(lines))


def write_json(path: Path, payload) -> None:
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def grid_csv_rows(grid: FrequencyGrid, values: np.ndarray):
    """Long-format rows ``omega_s, omega_i, re, im`` in row-major order."""
    values = np.asarray(values, dtype=complex)
    for i, om_s in enumerate(grid.signal):
        row_re = values[i].real
        row_im = values[i].imag
        for j, om_i in enumerate(grid.idler):
            yield om_s, om_i, row_re[j], row_im[j]


def write_grid_csv(path: Path, grid: FrequencyGrid, values: np.ndarray) -> None:
    write_csv(path, JSA_HEADER, grid_csv_rows(grid, values))


def write_jsa_csv(path: Path, jsa: JointSpectralAmplitude) -> None:
    write_grid_csv(path, jsa.grid, jsa.amplitude)


def marginal_rows(spectrum: Spectrum):
    """Wavelength-ascending rows with the density converted to per-nm."""
    lam_nm = spectrum.wavelength_nm
    jacobian = 2.0 * np.pi * C_UM_PER_S * 1e3 / lam_nm**2  # d omega / d lambda_nm
    order = np.argsort(lam_nm)
    for idx in order:
        yield lam_nm[idx], spectrum.intensity[idx] * jacobian[idx]


def write_marginal_csv(path: Path, spectrum: Spectrum) -> None:
    write_csv(path, MARGINAL_HEADER, marginal_rows(spectrum))


def write_schmidt_csv(path: Path, result: SchmidtResult) -> None:
    write_csv(
        path, SCHMIDT_HEADER,
        ((n, value) for n, value in enumerate(result.coefficients)),
    )


def schmidt_summary(result: SchmidtResult) -> dict:
    return {
        "lambda0": result.lambda0,
        "purity": result.purity,
        "schmidt_number": result.schmidt_number,
        "tail_mass": result.tail_mass,
        "retained_modes": int(result.coefficients.size),
    }


def sweep_rows(rows):
    for row in rows:
        yield (
            row.lambda_p_nm, row.lambda_s_nm, row.lambda_i_nm, row.grating_um,
            row.pump_fwhm_opt_nm, row.lambda0, row.purity, row.theta_deg,
            row.separability_residual, row.status,
        )


def write_sweep_csv(path: Path, rows) -> None:
    write_csv(path, SWEEP_HEADER, sweep_rows(rows))


def sweep_json(rows) -> list[dict]:
    header = SWEEP_HEADER.split(",")
    return [dict(zip(header, map(_json_cell, row))) for row in sweep_rows(rows)]


def _json_cell(value):
    if isinstance(value, str):
        return value
    value = float(value)
    return None if math.isnan(value) else value


def sha256_of(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(path: Path, command: str, version: str, config_echo: dict,
                   outputs: list[Path], created_utc: str) -> None:
    write_json(path, {
        "tool": "counterpdc",
        "version": version,
        "command": command,
        "created_utc": created_utc,
        "deterministic": True,
        "config": config_echo,
        "outputs": [
            {"file": Path(p).name, "sha256": sha256_of(p)} for p in outputs
        ],
    })
