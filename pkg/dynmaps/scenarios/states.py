"""The three correlated two-qubit initial states and their reduced state families."""

import logging
from enum import Enum
from functools import partial

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from dynmaps.errors import InvalidSpec, NotPSD
from dynmaps.kernel.linalg import eig_hermitian, kron
from dynmaps.maps.dynmap import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, DensityMatrix, apply_canonical, canonical_decompose
from dynmaps.maps.families import StateFamily, state_family
from dynmaps.maps.qubitpair import (
    InitParams,
    TwoQubitState,
    extract_params,
    initial_reduced_state,
    pair_amap,
    pair_family,
    reduced_dynamics,
)

logger = logging.getLogger(__name__)

WERNER_X_MAX = 4.0 / 3.0


class ScenarioKind(str, Enum):
    PURE_ENTANGLED = "pure"
    WERNER = "werner"
    SEPARABLE_MIXED = "separable"


class Via(str, Enum):
    """How ρ1(t) is computed: joint unitary, A-map, or canonical A-map."""

    UNITARY = "unitary"
    AMAP = "amap"
    CANONICAL = "canonical"


class ScenarioSpec(BaseModel):
    """One of the three initial states plus its free parameters."""

    model_config = ConfigDict(frozen=True)

    kind: ScenarioKind
    phi: float = 0.0
    x: float = 0.0
    s_x: float = 0.0
    s_y: float = 0.0
    s_z: float = 0.0
    d: float = 0.0
    allow_any_psd: bool = False

    @model_validator(mode="after")
    def check_state_region(self) -> "ScenarioSpec":
        if self.kind is ScenarioKind.WERNER and not 0.0 <= self.x <= WERNER_X_MAX:
            raise ValueError(f"Werner parameter x must lie in [0, 4/3], got {self.x}")
        if self.kind is ScenarioKind.SEPARABLE_MIXED and not self.allow_any_psd:
            radius = self.s_x**2 + self.s_y**2 + self.s_z**2 + self.d**2
            if radius > 1.0 + 1e-12:
                raise ValueError(
                    f"Separable state needs s_x²+s_y²+s_z²+d² <= 1 (got {radius:.6g}); "
                    "pass allow_any_psd to accept any positive state"
                )
        return self

    @property
    def param_name(self) -> str:
        return {
            ScenarioKind.PURE_ENTANGLED: "phi",
            ScenarioKind.WERNER: "x",
            ScenarioKind.SEPARABLE_MIXED: "d",
        }[self.kind]

    @property
    def param_value(self) -> float:
        return getattr(self, self.param_name)

    def with_param(self, value: float) -> "ScenarioSpec":
        """Copy with the scenario's sweep parameter replaced (re-validated)."""
        return ScenarioSpec(**{**self.model_dump(), self.param_name: value})


def _pure_entangled(phi: float) -> np.ndarray:
    # (e^{-iφ}|01> + e^{iφ}|10> + |11>)/√3
    psi = np.array([0, np.exp(-1j * phi), np.exp(1j * phi), 1], dtype=np.complex128) / np.sqrt(3.0)
    return np.outer(psi, psi.conj())


def _werner(x: float) -> np.ndarray:
    singlet = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2.0)
    return x / 4 * np.eye(4) + (1 - x) * np.outer(singlet, singlet.conj())


def _separable(s_x: float, s_y: float, s_z: float, d: float) -> np.ndarray:
    local = s_x * PAULI_X + s_y * PAULI_Y + s_z * PAULI_Z
    return 0.25 * (np.eye(4) + kron(local, PAULI_I) + d * kron(PAULI_Y, PAULI_X))


def joint_matrix(spec: ScenarioSpec) -> np.ndarray:
    if spec.kind is ScenarioKind.PURE_ENTANGLED:
        return _pure_entangled(spec.phi)
    if spec.kind is ScenarioKind.WERNER:
        return _werner(spec.x)
    return _separable(spec.s_x, spec.s_y, spec.s_z, spec.d)


def initial_joint_state(spec: ScenarioSpec) -> TwoQubitState:
    try:
        return TwoQubitState.from_matrix(joint_matrix(spec))
    except NotPSD as e:
        lowest = float(eig_hermitian(joint_matrix(spec)).eigenvalues[-1])
        raise InvalidSpec(f"{spec.kind.value} state is not positive (min eigenvalue {lowest:.3e})") from e


def scenario_params(spec: ScenarioSpec) -> InitParams:
    return extract_params(initial_joint_state(spec))


def _canonical_evolved(params: InitParams, rho0: DensityMatrix, omega_t: float) -> DensityMatrix:
    return apply_canonical(canonical_decompose(pair_amap(params, omega_t)), rho0)


def scenario_family(spec: ScenarioSpec, via: Via = Via.UNITARY) -> StateFamily:
    """t -> ρ1(t) for the scenario, built from module-level callables so it pickles."""
    rho12 = initial_joint_state(spec)
    logger.debug(f"{spec.kind.value} state family via {via.value}")
    if via is Via.UNITARY:
        return partial(reduced_dynamics, rho12)

    params = extract_params(rho12)
    rho0 = initial_reduced_state(rho12)
    if via is Via.AMAP:
        return state_family(pair_family(params), rho0)
    return partial(_canonical_evolved, params, rho0)
