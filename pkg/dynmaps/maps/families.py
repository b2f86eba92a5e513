"""One-parameter map and state families t -> A(t), t -> rho(t)."""

from collections.abc import Callable
from functools import partial

import numpy as np
import scipy.linalg

from dynmaps.maps.dynmap import AMap, DensityMatrix, apply_map

MapFamily = Callable[[float], AMap]
StateFamily = Callable[[float], DensityMatrix]


def identity_family(t: float, n: int = 2) -> AMap:
    return AMap.identity(n)


def depolarizing_generator(n: int = 2, rate: float = 1.0) -> np.ndarray:
    """L with L vec(ρ) = rate (Tr[ρ] I/n − ρ)."""
    vec_identity = np.eye(n, dtype=np.complex128).reshape(n * n, 1)
    projector = vec_identity @ vec_identity.conj().T / n
    return rate * (projector - np.eye(n * n, dtype=np.complex128))


def depolarizing_amap(t: float, rate: float = 1.0, n: int = 2) -> AMap:
    """A(t) = exp(tL): ρ(t) = e^{-rate t} ρ(0) + (1 - e^{-rate t}) I/n.

    A CP semigroup, so it satisfies A(t+τ) = A(t)A(τ) and never registers a
    non-Markovian witness.
    """
    return AMap(matrix=scipy.linalg.expm(t * depolarizing_generator(n, rate)))


def _evolved(family: MapFamily, rho0: DensityMatrix, t: float) -> DensityMatrix:
    return apply_map(family(t), rho0)


def state_family(family: MapFamily, rho0: DensityMatrix) -> StateFamily:
    """t -> A(t) ρ(0)."""
    return partial(_evolved, family, rho0)
