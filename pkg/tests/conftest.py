import numpy as np
import pytest

from dynmaps.kernel.linalg import kron, partial_trace
from dynmaps.maps.dynmap import AMap, BMatrix, DensityMatrix, realign_to_a


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (m + m.conj().T)


def random_density_matrix(rng: np.random.Generator, n: int, rank: int | None = None) -> DensityMatrix:
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = g @ g.conj().T
    return DensityMatrix.from_matrix(rho / np.trace(rho))


def random_amap(rng: np.random.Generator, n: int = 2) -> AMap:
    """Random trace- and hermiticity-preserving A-map (generally NCP)."""
    h = random_hermitian(rng, n * n)
    m = partial_trace(h, (n, n), keep=1)
    b = h - kron(np.eye(n), (m - np.eye(n)) / n)
    return AMap.from_matrix(realign_to_a(BMatrix(matrix=b)).matrix)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def qubit_state(rng):
    return random_density_matrix(rng, 2)


@pytest.fixture
def amap(rng):
    return random_amap(rng)
