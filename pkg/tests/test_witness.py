import math

import numpy as np
import pytest

from dynmaps.errors import DimensionMismatch
from dynmaps.flags import Flag, join_flags
from dynmaps.maps.dynmap import DensityMatrix
from dynmaps.maps.families import depolarizing_amap, state_family
from dynmaps.witness.differences import (
    combine_fidelities,
    combine_relative_entropies,
    fidelity_difference,
    rel_entropy_difference,
    witness_sample,
    witness_series,
)
from dynmaps.witness.measures import fidelity, fidelity_qubit, relative_entropy, von_neumann_entropy

from conftest import random_density_matrix


def _diag(*p):
    return DensityMatrix.from_matrix(np.diag(p))


def test_von_neumann_entropy():
    assert von_neumann_entropy(_diag(1.0, 0.0)) == 0.0
    assert von_neumann_entropy(_diag(0.5, 0.5)) == pytest.approx(math.log(2))


def test_relative_entropy_basic(qubit_state):
    assert relative_entropy(qubit_state, qubit_state) == pytest.approx(0.0, abs=1e-12)
    p, q = 0.7, 0.4
    expected = p * math.log(p / q) + (1 - p) * math.log((1 - p) / (1 - q))
    assert relative_entropy(_diag(p, 1 - p), _diag(q, 1 - q)) == pytest.approx(expected)


def test_relative_entropy_support_violation():
    assert relative_entropy(_diag(0.5, 0.5), _diag(1.0, 0.0)) == math.inf
    # supp ρ ⊂ supp γ is fine
    assert relative_entropy(_diag(1.0, 0.0), _diag(0.5, 0.5)) == pytest.approx(math.log(2))


def test_relative_entropy_non_negative(rng):
    for _ in range(20):
        rho, gamma = random_density_matrix(rng, 3), random_density_matrix(rng, 3)
        assert relative_entropy(rho, gamma) >= 0.0


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        relative_entropy(_diag(0.5, 0.5), _diag(1 / 3, 1 / 3, 1 / 3))


def test_fidelity_values(qubit_state):
    assert fidelity(qubit_state, qubit_state) == pytest.approx(1.0, abs=1e-10)
    assert fidelity(_diag(1.0, 0.0), _diag(0.0, 1.0)) == pytest.approx(0.0, abs=1e-12)
    p, q = 0.7, 0.4
    expected = (math.sqrt(p * q) + math.sqrt((1 - p) * (1 - q))) ** 2
    assert fidelity(_diag(p, 1 - p), _diag(q, 1 - q)) == pytest.approx(expected)


def test_fidelity_symmetric_and_qubit_shortcut(rng):
    for _ in range(20):
        rho, gamma = random_density_matrix(rng, 2), random_density_matrix(rng, 2)
        f = fidelity(rho, gamma)
        assert f == pytest.approx(fidelity(gamma, rho), abs=1e-10)
        assert f == pytest.approx(fidelity_qubit(rho, gamma), abs=1e-10)
        assert 0.0 <= f <= 1.0


def test_combine_relative_entropies():
    assert combine_relative_entropies(0.3, 0.1) == (pytest.approx(0.2), frozenset())
    assert combine_relative_entropies(0.3, math.inf) == (-math.inf, frozenset({Flag.SUPPORT_VIOLATION}))
    assert combine_relative_entropies(math.inf, 0.2) == (math.inf, frozenset({Flag.SUPPORT_VIOLATION}))
    value, flags = combine_relative_entropies(math.inf, math.inf)
    assert math.isnan(value)
    assert flags == {Flag.SUPPORT_VIOLATION}


def test_combine_fidelities():
    assert combine_fidelities(0.5, 0.25) == (pytest.approx(-0.5), frozenset())
    value, flags = combine_fidelities(0.0, 0.5)
    assert math.isnan(value)
    assert flags == {Flag.BASELINE_DEGENERATE}


def test_differences_zero_at_origin(qubit_state):
    family = state_family(depolarizing_amap, qubit_state)
    assert rel_entropy_difference(family, 0.0, 0.7) == 0.0
    assert fidelity_difference(family, 0.0, 0.7) == 0.0
    with pytest.raises(ValueError):
        rel_entropy_difference(family, -0.1, 0.7)
    with pytest.raises(ValueError):
        fidelity_difference(family, 0.1, -0.7)


def test_markovian_family_never_witnesses(rng):
    rho0 = random_density_matrix(rng, 2)
    family = state_family(depolarizing_amap, rho0)
    for tau in np.linspace(0.0, 3.0, 12):
        for sample in witness_series(family, np.linspace(0.0, 3.0, 12), tau):
            assert sample.rel_entropy_diff >= -1e-10
            assert sample.fidelity_diff >= -1e-10
            assert not sample.flags


def test_witness_sample_matches_single_differences(qubit_state):
    family = state_family(depolarizing_amap, qubit_state)
    sample = witness_sample(family, 0.8, 0.5, param=1.5)
    assert sample.rel_entropy_diff == pytest.approx(rel_entropy_difference(family, 0.8, 0.5))
    assert sample.fidelity_diff == pytest.approx(fidelity_difference(family, 0.8, 0.5))
    assert sample.param == 1.5


def test_witness_sample_carries_flags_of_bare_differences():
    mixed, pure = _diag(0.5, 0.5), _diag(1.0, 0.0)

    def family(t):
        return pure if t == 2.0 else mixed

    assert rel_entropy_difference(family, 1.5, 0.5) == -math.inf
    assert fidelity_difference(family, 1.5, 0.5) == pytest.approx(-0.5)
    sample = witness_sample(family, 1.5, 0.5)
    assert sample.rel_entropy_diff == -math.inf
    assert sample.fidelity_diff == pytest.approx(-0.5)
    assert sample.flags == {Flag.SUPPORT_VIOLATION}


def test_witness_series_evaluates_each_time_once(qubit_state):
    calls = []
    inner = state_family(depolarizing_amap, qubit_state)

    def family(t):
        calls.append(t)
        return inner(t)

    times = np.linspace(0.0, 2.0, 5)
    samples = witness_series(family, times, 0.5)
    assert len(samples) == 5
    assert sorted(calls) == sorted(set(calls))
    assert set(calls) == {0.0, 0.5} | set(times[1:]) | {t + 0.5 for t in times[1:]}


def test_witness_detects_oscillating_family():
    # ρ(t) rotating about y; a unitary rotation keeps both terms equal, an accelerating one does not
    def family(t):
        c, s = math.cos(t), math.sin(t)
        return DensityMatrix.from_matrix(0.5 * np.array([[1 + 0.9 * c, 0.9 * s], [0.9 * s, 1 - 0.9 * c]]))

    sample = witness_sample(family, math.pi / 2, 0.3)
    assert sample.rel_entropy_diff == pytest.approx(0.0, abs=1e-10)
    sample = witness_sample(lambda t: family(t * (1 + t)), 0.5, 0.3)
    assert sample.rel_entropy_diff < 0
    assert sample.fidelity_diff < 0


def test_join_flags_order():
    flags = {Flag.FALLBACK_USED, Flag.POSITIVITY_VIOLATION, Flag.SUPPORT_VIOLATION}
    assert join_flags(flags) == "PositivityViolation;SupportViolation;FallbackUsed"
    assert join_flags(frozenset()) == ""
