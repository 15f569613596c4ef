import math

import numpy as np
import pytest

from collapse_sim import IntegratorConfig, simulate_model, spin_half_scenario

ALPHA_S = 0.37 * math.pi
ALPHA_A = 0.65 * math.pi
GAMMA = 5.0
OMEGA = 1.0
EPSILON = 1e-4


@pytest.fixture(scope="session")
def two_level_model():
    """The reference two-level scenario used across the suite."""
    return spin_half_scenario(ALPHA_S, ALPHA_A, GAMMA, OMEGA, EPSILON)


@pytest.fixture(scope="session")
def two_level_trajectory(two_level_model):
    return simulate_model(two_level_model, IntegratorConfig(t_max=1.0), mode="full")


def random_state(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_density_matrix(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_hermitian_unit_trace(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = 0.5 * (a + a.conj().T)
    h += (1.0 - np.trace(h).real) / n * np.eye(n)
    return h


def random_unitary(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
