"""Analytic reduced states and witnesses of the three scenarios.

Each scenario's ρ1(t) is a qubit state whose eigenvalues and eigenvector overlaps
have closed forms, so S[ρ1(t)‖ρ1(t+τ)] reduces to

    Σ_i p_i ln p_i − Σ_ij p_i w_ij ln q_j

with p, q the eigenvalues at t and t+τ and w the doubly stochastic overlap matrix
[[δ, ν], [ν, δ]]. These evaluations are independent of the matrix path and serve as
its oracle.
"""

import logging
import math

import numpy as np

from dynmaps.flags import Flag
from dynmaps.kernel.linalg import SUPPORT_TOL
from dynmaps.maps.dynmap import DensityMatrix
from dynmaps.scenarios.states import ScenarioKind, ScenarioSpec
from dynmaps.witness.differences import WitnessSample, combine_fidelities, combine_relative_entropies
from dynmaps.witness.measures import ROUNDOFF_TOL, SUPPORT_WEIGHT_TOL, fidelity_qubit, relative_entropy

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-9


def reduced_state_closed(spec: ScenarioSpec, omega_t: float) -> DensityMatrix:
    c, s = math.cos(omega_t), math.sin(omega_t)
    if spec.kind is ScenarioKind.PURE_ENTANGLED:
        phi = spec.phi
        off = c * np.exp(-1j * phi) - 1j * s * np.exp(-2j * phi)
        m = np.array([[1, off], [np.conj(off), 2]]) / 3
    elif spec.kind is ScenarioKind.WERNER:
        off = 1j * (1 - spec.x) * s
        m = 0.5 * np.array([[1, off], [np.conj(off), 1]])
    else:
        off = (spec.s_x - 1j * spec.s_y) * c - spec.d * s
        m = 0.5 * np.array([[1 + spec.s_z, off], [np.conj(off), 1 - spec.s_z]])
    return DensityMatrix.from_matrix(m)


def qubit_relative_entropy(p: tuple[float, float], q: tuple[float, float], overlap: float) -> float:
    """Relative entropy from eigenvalues and the overlap weight w_{++} = w_{--}."""
    weights = ((overlap, 1.0 - overlap), (1.0 - overlap, overlap))
    value = 0.0
    outside = 0.0
    for i, p_i in enumerate(p):
        if p_i > SUPPORT_TOL:
            value += p_i * math.log(p_i)
        for j, q_j in enumerate(q):
            mass = max(p_i, 0.0) * weights[i][j]
            if q_j > SUPPORT_TOL:
                value -= mass * math.log(q_j)
            else:
                outside += mass
    if outside > SUPPORT_WEIGHT_TOL:
        return math.inf
    return 0.0 if -ROUNDOFF_TOL <= value < 0.0 else value


# ── Pure entangled state ────────────────────────────────────────────────────────


def _kappa(t: float, phi: float) -> float:
    return math.sqrt(5 - 4 * math.sin(2 * t) * math.sin(phi))


def _cross_pure(t: float, tau: float, phi: float) -> float:
    return math.cos(tau) - math.sin(2 * t + tau) * math.sin(phi)


def pure_lambdas(t: float, phi: float) -> tuple[float, float]:
    kappa = _kappa(t, phi)
    return (3 + kappa) / 6, (3 - kappa) / 6


def pure_weights(t: float, tau: float, phi: float) -> tuple[float, float]:
    """δ(t), ν(t); ν is written so that δ + ν = 1."""
    k1, k2 = _kappa(t, phi), _kappa(t + tau, phi)
    cross = 4 * _cross_pure(t, tau, phi)
    delta = ((k1 * k2 + 1) + cross) / (2 * k1 * k2)
    nu = (k1 * k2 - 1 - cross) / (2 * k1 * k2)
    return delta, nu


def _pure_terms(t: float, tau: float, phi: float) -> tuple[float, float] | None:
    if min(_kappa(t, phi), _kappa(t + tau, phi)) < SINGULAR_TOL:
        return None
    delta, _ = pure_weights(t, tau, phi)
    s_term = qubit_relative_entropy(pure_lambdas(t, phi), pure_lambdas(t + tau, phi), delta)
    sp = math.sin(phi)
    root = math.sqrt(max((1 + math.sin(2 * t) * sp) * (1 + math.sin(2 * (t + tau)) * sp), 0.0))
    f_term = (5 + 2 * math.cos(tau) - 2 * math.sin(2 * t + tau) * sp + 2 * root) / 9
    return s_term, f_term


# ── Werner state ────────────────────────────────────────────────────────────────


def werner_p(t: float, x: float) -> tuple[float, float]:
    shift = (1 - x) * math.sin(t)
    return 0.5 * (1 + shift), 0.5 * (1 - shift)


def _werner_terms(t: float, tau: float, x: float) -> tuple[float, float]:
    p = werner_p(t, x)
    q = werner_p(t + tau, x)
    s_term = qubit_relative_entropy(p, q, 1.0)
    product = max(p[0] * p[1] * q[0] * q[1], 0.0)
    f_term = p[0] * q[0] + p[1] * q[1] + 2 * math.sqrt(product)
    return s_term, f_term


# ── Separable mixed state ───────────────────────────────────────────────────────


def _chi(t: float, spec: ScenarioSpec) -> float:
    return (spec.s_x * math.cos(t) - spec.d * math.sin(t)) ** 2 + spec.s_y**2 * math.cos(t) ** 2


def _zeta(t: float, spec: ScenarioSpec) -> float:
    return math.sqrt(spec.s_z**2 + _chi(t, spec))


def separable_omegas(t: float, spec: ScenarioSpec) -> tuple[float, float]:
    zeta = _zeta(t, spec)
    return 0.5 * (1 + zeta), 0.5 * (1 - zeta)


def separable_r(t: float, tau: float, spec: ScenarioSpec) -> float:
    return (
        (spec.s_x**2 + spec.s_y**2) * math.cos(t) * math.cos(t + tau)
        + spec.d**2 * math.sin(t) * math.sin(t + tau)
        - spec.d * spec.s_x * math.sin(2 * t + tau)
    )


def separable_weights(t: float, tau: float, spec: ScenarioSpec) -> tuple[float, float]:
    """μ(t), η(t): squared overlaps of the eigenvectors at t and t+τ."""
    z1, z2 = _zeta(t, spec), _zeta(t + tau, spec)
    mu = (z1 * z2 + spec.s_z**2 + separable_r(t, tau, spec)) / (2 * z1 * z2)
    return mu, 1.0 - mu


def _separable_terms(t: float, tau: float, spec: ScenarioSpec) -> tuple[float | None, float]:
    z1, z2 = _zeta(t, spec), _zeta(t + tau, spec)
    r = separable_r(t, tau, spec)
    f_term = 0.5 * (1 + spec.s_z**2 + math.sqrt(max((1 - z1**2) * (1 - z2**2), 0.0)) + r)

    if min(z1, z2, z1 - spec.s_z, z2 - spec.s_z) < SINGULAR_TOL:
        return None, f_term
    mu, _ = separable_weights(t, tau, spec)
    s_term = qubit_relative_entropy(separable_omegas(t, spec), separable_omegas(t + tau, spec), mu)
    return s_term, f_term


# ── Witnesses ───────────────────────────────────────────────────────────────────


def _terms(spec: ScenarioSpec, t: float, tau: float) -> tuple[float, float, bool]:
    """(S[ρ(t)‖ρ(t+τ)], F[ρ(t), ρ(t+τ)], fell_back)."""
    if spec.kind is ScenarioKind.WERNER:
        s_term, f_term = _werner_terms(t, tau, spec.x)
        return s_term, f_term, False

    if spec.kind is ScenarioKind.PURE_ENTANGLED:
        terms = _pure_terms(t, tau, spec.phi)
        if terms is not None:
            return terms[0], terms[1], False
        s_term, f_term = None, None
    else:
        s_term, f_term = _separable_terms(t, tau, spec)
        if s_term is not None:
            return s_term, f_term, False

    logger.warning(f"Closed form singular for {spec.kind.value} at t={t:.6g}, tau={tau:.6g}; using matrix path")
    s_term = relative_entropy(reduced_state_closed(spec, t), reduced_state_closed(spec, t + tau))
    if f_term is None:
        f_term = fidelity_qubit(reduced_state_closed(spec, t), reduced_state_closed(spec, t + tau))
    return s_term, f_term, True


def witnesses_closed(spec: ScenarioSpec, omega_t: float, omega_tau: float) -> WitnessSample:
    """S(t,τ) and G(t,τ) from the scenario's closed-form expressions."""
    if omega_t < 0 or omega_tau < 0:
        raise ValueError(f"Witnesses need t, tau >= 0, got t={omega_t}, tau={omega_tau}")
    if omega_t == 0.0:
        return WitnessSample(omega_t, omega_tau, 0.0, 0.0, frozenset(), spec.param_value)

    s0, f0, fb0 = _terms(spec, 0.0, omega_tau)
    s1, f1, fb1 = _terms(spec, omega_t, omega_tau)
    s_diff, s_flags = combine_relative_entropies(s0, s1)
    g_diff, g_flags = combine_fidelities(f0, f1)
    flags = s_flags | g_flags
    if fb0 or fb1:
        flags |= {Flag.FALLBACK_USED}
    return WitnessSample(omega_t, omega_tau, s_diff, g_diff, frozenset(flags), spec.param_value)
