"""Relative-entropy and fidelity differences of a state family ρ(t).

    S(t,τ) = S[ρ(0)‖ρ(τ)] − S[ρ(t)‖ρ(t+τ)]
    G(t,τ) = (F[ρ(t),ρ(t+τ)] − F[ρ(0),ρ(τ)]) / F[ρ(0),ρ(τ)]

Both are non-negative along a CP semigroup; a negative value witnesses
non-Markovian dynamics. Divergences are returned as ±inf/nan with flags.
"""

import logging
import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from functools import cache

from dynmaps.flags import Flag
from dynmaps.maps.dynmap import DensityMatrix
from dynmaps.witness.measures import fidelity, relative_entropy

logger = logging.getLogger(__name__)

BASELINE_TOL = 1e-12

StateFamily = Callable[[float], DensityMatrix]
FidelityFn = Callable[[DensityMatrix, DensityMatrix], float]


@dataclass(frozen=True)
class WitnessSample:
    omega_t: float
    omega_tau: float
    rel_entropy_diff: float
    fidelity_diff: float
    flags: frozenset[Flag] = field(default_factory=frozenset)
    param: float | None = None


def combine_relative_entropies(baseline: float, later: float) -> tuple[float, frozenset[Flag]]:
    """S(t,τ) from its two terms, propagating infinities."""
    if math.isinf(baseline) or math.isinf(later):
        if math.isinf(baseline) and math.isinf(later):
            return math.nan, frozenset({Flag.SUPPORT_VIOLATION})
        return baseline - later, frozenset({Flag.SUPPORT_VIOLATION})
    return baseline - later, frozenset()


def combine_fidelities(baseline: float, later: float) -> tuple[float, frozenset[Flag]]:
    """G(t,τ) from its two fidelities; undefined when the baseline vanishes."""
    if baseline <= BASELINE_TOL:
        return math.nan, frozenset({Flag.BASELINE_DEGENERATE})
    return (later - baseline) / baseline, frozenset()


def _check_times(t: float, tau: float) -> None:
    if t < 0 or tau < 0:
        raise ValueError(f"Witnesses need t, tau >= 0, got t={t}, tau={tau}")


def _positivity_flags(*states: DensityMatrix) -> frozenset[Flag]:
    if any(Flag.POSITIVITY_VIOLATION in s.flags for s in states):
        return frozenset({Flag.POSITIVITY_VIOLATION})
    return frozenset()


def rel_entropy_difference(family: StateFamily, t: float, tau: float) -> float:
    """S(t,τ) as a bare number; +inf, -inf or nan on support failure.

    The matching flags are carried by ``witness_sample``.
    """
    _check_times(t, tau)
    if t == 0.0:
        return 0.0
    value, _ = combine_relative_entropies(
        relative_entropy(family(0.0), family(tau)),
        relative_entropy(family(t), family(t + tau)),
    )
    return value


def fidelity_difference(family: StateFamily, t: float, tau: float, fidelity_fn: FidelityFn = fidelity) -> float:
    """G(t,τ) as a bare number; nan when F[ρ(0),ρ(τ)] vanishes. See ``witness_sample`` for flags."""
    _check_times(t, tau)
    if t == 0.0:
        return 0.0
    value, _ = combine_fidelities(
        fidelity_fn(family(0.0), family(tau)),
        fidelity_fn(family(t), family(t + tau)),
    )
    return value


@dataclass(frozen=True)
class _Baseline:
    relative_entropy: float
    fidelity: float
    flags: frozenset[Flag]


def _baseline(family: StateFamily, tau: float, fidelity_fn: FidelityFn) -> _Baseline:
    rho0, rho_tau = family(0.0), family(tau)
    flags = _positivity_flags(rho0, rho_tau)
    if flags:
        return _Baseline(math.nan, math.nan, flags)
    return _Baseline(relative_entropy(rho0, rho_tau), fidelity_fn(rho0, rho_tau), flags)


def _sample(
    family: StateFamily,
    t: float,
    tau: float,
    baseline: _Baseline,
    fidelity_fn: FidelityFn,
    param: float | None,
) -> WitnessSample:
    if t == 0.0:
        return WitnessSample(t, tau, 0.0, 0.0, frozenset(), param)

    rho_t, rho_later = family(t), family(t + tau)
    flags = baseline.flags | _positivity_flags(rho_t, rho_later)
    if flags:
        logger.warning(f"Witness at t={t:.6g}, tau={tau:.6g} evaluated on a non-positive state")
        return WitnessSample(t, tau, math.nan, math.nan, flags, param)

    s_diff, s_flags = combine_relative_entropies(baseline.relative_entropy, relative_entropy(rho_t, rho_later))
    g_diff, g_flags = combine_fidelities(baseline.fidelity, fidelity_fn(rho_t, rho_later))
    return WitnessSample(t, tau, s_diff, g_diff, s_flags | g_flags, param)


def witness_sample(
    family: StateFamily,
    t: float,
    tau: float,
    fidelity_fn: FidelityFn = fidelity,
    param: float | None = None,
) -> WitnessSample:
    """S(t,τ) and G(t,τ) at one point, with divergence flags."""
    _check_times(t, tau)
    return _sample(family, t, tau, _baseline(family, tau, fidelity_fn), fidelity_fn, param)


def witness_series(
    family: StateFamily,
    omega_ts: Iterable[float],
    tau: float,
    fidelity_fn: FidelityFn = fidelity,
    param: float | None = None,
) -> list[WitnessSample]:
    """Witness samples along a time axis at fixed τ; the t=0 terms are computed once."""
    family = cache(family)
    times = [float(t) for t in omega_ts]
    for t in times:
        _check_times(t, tau)
    baseline = _baseline(family, tau, fidelity_fn)
    return [_sample(family, t, tau, baseline, fidelity_fn, param) for t in times]
