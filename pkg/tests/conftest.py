import math

import numpy as np
import pytest
from scipy.linalg import expm


def ladder_matrix(dim):
    """Truncated annihilation operator."""
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def fock_state(R, phi, alpha0, dim=160):
    """D(alpha0) S(z) |0> by matrix exponentials, z = R e^{i phi}.

    S(z) = exp[(conj(z) a^2 - z a^dag^2) / 2]; independent of the Hermite route.
    """
    a = ladder_matrix(dim)
    ad = a.conj().T
    z = R * np.exp(1j * phi)
    S = expm(0.5 * (np.conj(z) * a @ a - z * ad @ ad))
    D = expm(alpha0 * ad - np.conj(alpha0) * a)
    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1
    return D @ (S @ vac)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
