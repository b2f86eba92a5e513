"""Two qubits under H = ½ħω σ1z⊗σ2x and the reduced A-map of the first qubit.

Units: ħ = ω = 1, so every time argument is the dimensionless phase ωt. Basis
ordering is |00>, |01>, |10>, |11> with qubit 1 as the left tensor factor.
"""

from dataclasses import dataclass
from functools import partial

import numpy as np
import scipy.linalg

from dynmaps.errors import DimensionMismatch, InvalidSpec
from dynmaps.kernel.linalg import ComplexMatrix, as_matrix, kron, partial_trace_second
from dynmaps.maps.dynmap import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    STATE_TOL,
    AMap,
    DensityMatrix,
)
from dynmaps.maps.families import MapFamily

PARAM_TOL = 1e-12

SIGMA_1Y_2X = kron(PAULI_Y, PAULI_X)
SIGMA_1X_2X = kron(PAULI_X, PAULI_X)


@dataclass(frozen=True, eq=False)
class TwoQubitState(DensityMatrix):
    @classmethod
    def from_matrix(cls, m, tol: float = STATE_TOL, allow_negative: bool = False) -> "TwoQubitState":
        m = as_matrix(m)
        if m.shape != (4, 4):
            raise DimensionMismatch(f"Two-qubit state must be 4×4, got {m.shape}")
        return super().from_matrix(m, tol=tol, allow_negative=allow_negative)

    @classmethod
    def from_vector(cls, psi) -> "TwoQubitState":
        psi = np.asarray(psi, dtype=np.complex128).reshape(4)
        norm = np.linalg.norm(psi)
        if norm == 0.0:
            raise InvalidSpec("State vector is zero")
        psi = psi / norm
        return cls.from_matrix(np.outer(psi, psi.conj()))


@dataclass(frozen=True)
class InitParams:
    """Initial-state correlators a1 = -<σ1y σ2x>, a2 = <σ1x σ2x>."""

    a1: float
    a2: float

    def __post_init__(self):
        if abs(self.a1) > 1 + PARAM_TOL or abs(self.a2) > 1 + PARAM_TOL:
            raise InvalidSpec(f"Initial-state parameters must satisfy |a1|, |a2| <= 1, got ({self.a1}, {self.a2})")

    @property
    def a(self) -> complex:
        return complex(self.a1, self.a2)

    @property
    def abs_a(self) -> float:
        return abs(self.a)


def hamiltonian() -> ComplexMatrix:
    """H/ħω = ½ σ1z⊗σ2x."""
    return 0.5 * kron(PAULI_Z, PAULI_X)


def unitary(omega_t: float) -> ComplexMatrix:
    """U(t) = exp(-iHt/ħ), block diagonal in the qubit-1 basis."""
    c = np.cos(omega_t / 2)
    s = np.sin(omega_t / 2)
    u = np.zeros((4, 4), dtype=np.complex128)
    u[:2, :2] = [[c, -1j * s], [-1j * s, c]]
    u[2:, 2:] = [[c, 1j * s], [1j * s, c]]
    return u


def unitary_expm(omega_t: float) -> ComplexMatrix:
    """Same propagator via the matrix exponential."""
    return scipy.linalg.expm(-1j * omega_t * hamiltonian())


def extract_params(rho12: DensityMatrix) -> InitParams:
    if rho12.dim != 4:
        raise DimensionMismatch(f"Two-qubit state must be 4×4, got dimension {rho12.dim}")
    a1 = -np.trace(rho12.matrix @ SIGMA_1Y_2X).real
    a2 = np.trace(rho12.matrix @ SIGMA_1X_2X).real
    return InitParams(a1=float(a1), a2=float(a2))


def reduced_dynamics(rho12: DensityMatrix, omega_t: float) -> DensityMatrix:
    """ρ1(t) = Tr_2[U(t) ρ12(0) U(t)†]."""
    if rho12.dim != 4:
        raise DimensionMismatch(f"Two-qubit state must be 4×4, got dimension {rho12.dim}")
    u = unitary(omega_t)
    return DensityMatrix.from_matrix(partial_trace_second(u @ rho12.matrix @ u.conj().T))


def initial_reduced_state(rho12: DensityMatrix) -> DensityMatrix:
    return DensityMatrix.from_matrix(partial_trace_second(rho12.matrix))


def pair_amap(params: InitParams, omega_t: float) -> AMap:
    """Reduced A-map for fixed a1, a2, acting on (ρ00, ρ01, ρ10, ρ11)."""
    c = np.cos(omega_t)
    s = np.sin(omega_t)
    a = params.a
    half = 0.5 * s
    matrix = np.array(
        [
            [1, 0, 0, 0],
            [half * a.conjugate(), c, 0, half * a.conjugate()],
            [half * a, 0, c, half * a],
            [0, 0, 0, 1],
        ],
        dtype=np.complex128,
    )
    return AMap(matrix=matrix)


def pair_family(params: InitParams) -> MapFamily:
    return partial(pair_amap, params)


def coefficient_matrix_closed(params: InitParams, omega_t: float) -> ComplexMatrix:
    """Coefficient matrix of pair_amap in the normalized Pauli basis."""
    c = np.cos(omega_t)
    s = np.sin(omega_t)
    a1s = params.a1 * s
    a2s = params.a2 * s
    matrix = np.array(
        [
            [2 * (1 + c), a1s, a2s, 0],
            [a1s, 0, 0, 1j * a2s],
            [a2s, 0, 0, -1j * a1s],
            [0, -1j * a2s, 1j * a1s, 2 * (1 - c)],
        ],
        dtype=np.complex128,
    )
    return 0.5 * matrix


def eigenvalues_closed(params: InitParams, omega_t: float) -> np.ndarray:
    """λ1±, λ2± of the coefficient matrix, sorted descending."""
    c = np.cos(omega_t)
    s = np.sin(omega_t)
    spread = params.abs_a**2 * s**2
    values = []
    for diag in (1 + c, 1 - c):
        root = np.sqrt(diag**2 + spread)
        values.extend([0.5 * (diag + root), 0.5 * (diag - root)])
    return np.sort(np.array(values))[::-1]


def bloch_vector(rho: DensityMatrix) -> np.ndarray:
    """(<σx>, <σy>, <σz>) of a qubit state."""
    if rho.dim != 2:
        raise DimensionMismatch(f"Bloch vector needs a qubit state, got dimension {rho.dim}")
    m = rho.matrix
    return np.array([2 * m[0, 1].real, -2 * m[0, 1].imag, (m[0, 0] - m[1, 1]).real])


def state_from_bloch(r) -> DensityMatrix:
    x, y, z = r
    return DensityMatrix.from_matrix(0.5 * (np.eye(2) + x * PAULI_X + y * PAULI_Y + z * PAULI_Z))


def evolve_bloch(bloch0, params: InitParams, omega_t: float) -> np.ndarray:
    """Heisenberg-picture expectations of qubit 1 at ωt."""
    x, y, z = bloch0
    c = np.cos(omega_t)
    s = np.sin(omega_t)
    return np.array([x * c + params.a1 * s, y * c + params.a2 * s, z])
