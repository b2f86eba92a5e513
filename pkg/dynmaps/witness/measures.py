"""Distinguishability measures between two density matrices (natural log throughout).

Matrix functions of a state are built from its cached ``spectrum``, so a state reused
across several measures is diagonalized once.
"""

import math

import numpy as np

from dynmaps.errors import DimensionMismatch
from dynmaps.kernel.linalg import psd_eigenvalues, spectral_log, spectral_sqrt
from dynmaps.maps.dynmap import DensityMatrix

SUPPORT_WEIGHT_TOL = 1e-10
ROUNDOFF_TOL = 1e-12


def _require_same_dim(rho: DensityMatrix, gamma: DensityMatrix) -> None:
    if rho.dim != gamma.dim:
        raise DimensionMismatch(f"States have dimensions {rho.dim} and {gamma.dim}")


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-Tr[ρ ln ρ] with 0 ln 0 = 0."""
    log = spectral_log(rho.spectrum).log
    value = -float(np.trace(rho.matrix @ log).real)
    return max(value, 0.0)


def relative_entropy(rho: DensityMatrix, gamma: DensityMatrix) -> float:
    """S(ρ‖γ) = Tr[ρ(ln ρ − ln γ)]; +inf when supp ρ is not inside supp γ."""
    _require_same_dim(rho, gamma)
    log_rho = spectral_log(rho.spectrum)
    log_gamma = spectral_log(gamma.spectrum)

    outside = float(np.trace(rho.matrix @ (np.eye(gamma.dim) - log_gamma.support)).real)
    if outside > SUPPORT_WEIGHT_TOL:
        return math.inf

    value = float(np.trace(rho.matrix @ (log_rho.log - log_gamma.log)).real)
    if -ROUNDOFF_TOL <= value < 0.0:
        return 0.0
    return value


def fidelity(rho: DensityMatrix, gamma: DensityMatrix) -> float:
    """F = (Tr √(√ρ γ √ρ))², clipped to [0, 1]."""
    _require_same_dim(rho, gamma)
    root = spectral_sqrt(rho.spectrum)
    inner = root @ gamma.matrix @ root
    value = float(np.sum(np.sqrt(psd_eigenvalues(inner)))) ** 2
    return min(max(value, 0.0), 1.0)


def fidelity_qubit(rho: DensityMatrix, gamma: DensityMatrix) -> float:
    """Qubit shortcut F = Tr[ργ] + 2√(det ρ det γ)."""
    _require_same_dim(rho, gamma)
    if rho.dim != 2:
        raise DimensionMismatch(f"Qubit fidelity needs 2×2 states, got dimension {rho.dim}")
    overlap = float(np.trace(rho.matrix @ gamma.matrix).real)
    det_rho = max(float(np.linalg.det(rho.matrix).real), 0.0)
    det_gamma = max(float(np.linalg.det(gamma.matrix).real), 0.0)
    value = overlap + 2.0 * math.sqrt(det_rho * det_gamma)
    return min(max(value, 0.0), 1.0)
