import numpy as np
import pytest

from pblab.hilbert import SpaceConfig
from pblab.lindblad import build_liouvillian, steady_state
from pblab.model import DriveSpec, ModelParams, hamiltonian_rotating


def solve(params: ModelParams, drive: DriveSpec, n_cav_max: int = 12):
    """Steady state of the rotating-frame master equation (shared shortcut)."""
    space = SpaceConfig(n_cav_max)
    h = hamiltonian_rotating(params, drive, space)
    return steady_state(build_liouvillian(h, params))


@pytest.fixture
def resonant_params() -> ModelParams:
    """The resonant reference point: omega_0 = 2 omega_c, J = 0.01, kappa = gamma = 1e-3."""
    return ModelParams(omega_c=1.0, omega_0=2.0, J=0.01, kappa=1e-3, gamma=1e-3)


@pytest.fixture
def resonant_drive() -> DriveSpec:
    """Cavity drive at the single-photon resonance with strength 0.4 kappa."""
    return DriveSpec(kind="cavity_1photon", strength=0.4e-3, frequency=1.0)


def assert_allclose(actual, desired, rtol=1e-12, atol=0.0):
    np.testing.assert_allclose(actual, desired, rtol=rtol, atol=atol)
