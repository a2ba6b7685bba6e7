import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from counterpdc import ProcessConfig, WaveguideGeometry, grating_period
from counterpdc.jsa import PhasematchingShape


@pytest.fixture(scope="session")
def geometry():
    return WaveguideGeometry()


@pytest.fixture(scope="session")
def telecom_grating(geometry):
    """Solved poling period of the degenerate 1550 nm source in LN."""
    return grating_period("LN_e", geometry, 775.0, 1550.0, 1550.0)


@pytest.fixture(scope="session")
def telecom_cfg(geometry, telecom_grating):
    """Degenerate 1550 nm LN source, exact sinc phasematching."""
    return ProcessConfig(
        material="LN_e",
        geometry=geometry,
        pump_center_nm=775.0,
        pump_fwhm_nm=0.58,
        grating_period_um=telecom_grating,
        phasematching_shape=PhasematchingShape.SINC_EXACT,
    )


@pytest.fixture(scope="session")
def telecom_cfg_gauss(telecom_cfg):
    from dataclasses import replace

    return replace(telecom_cfg, phasematching_shape=PhasematchingShape.GAUSSIAN_APPROX)
