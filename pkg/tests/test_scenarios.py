import math

import numpy as np
import pytest
from pydantic import ValidationError

from dynmaps.errors import InvalidSpec
from dynmaps.flags import Flag
from dynmaps.maps.dynmap import canonical_decompose
from dynmaps.maps.qubitpair import eigenvalues_closed, pair_amap, reduced_dynamics
from dynmaps.scenarios import closed_forms
from dynmaps.scenarios.closed_forms import reduced_state_closed, witnesses_closed
from dynmaps.scenarios.grid import (
    GridConfig,
    Method,
    RowTask,
    evaluate_row,
    evaluate_surface,
    figure_surface,
    figure_tasks,
    sweep_tasks,
)
from dynmaps.scenarios.states import (
    ScenarioKind,
    ScenarioSpec,
    Via,
    initial_joint_state,
    scenario_family,
    scenario_params,
)
from dynmaps.witness.differences import witness_series

PURE = ScenarioKind.PURE_ENTANGLED
WERNER = ScenarioKind.WERNER
SEPARABLE = ScenarioKind.SEPARABLE_MIXED
SIXTH = 1 / math.sqrt(6)

SPECS = [
    ScenarioSpec(kind=PURE, phi=0.0),
    ScenarioSpec(kind=PURE, phi=1.3),
    ScenarioSpec(kind=WERNER, x=0.5),
    ScenarioSpec(kind=WERNER, x=4 / 3),
    ScenarioSpec(kind=SEPARABLE, s_x=SIXTH, s_y=SIXTH, s_z=SIXTH, d=SIXTH),
    ScenarioSpec(kind=SEPARABLE, s_x=0.3, s_y=-0.2, s_z=0.5, d=0.6),
]


def test_werner_bounds():
    ScenarioSpec(kind=WERNER, x=4 / 3)
    with pytest.raises(ValidationError):
        ScenarioSpec(kind=WERNER, x=1.5)
    with pytest.raises(ValueError):
        ScenarioSpec(kind=WERNER, x=-0.1)


def test_separable_ball_and_override():
    with pytest.raises(ValueError, match="allow_any_psd"):
        ScenarioSpec(kind=SEPARABLE, s_x=0.8, d=0.8)
    # the override skips the ball check but positivity is still verified
    with pytest.raises(InvalidSpec):
        initial_joint_state(ScenarioSpec(kind=SEPARABLE, s_x=0.8, d=0.8, allow_any_psd=True))
    # inside the ball yet not positive: s_x² + (|s_y| + |d|)² + s_z² > 1
    with pytest.raises(InvalidSpec):
        initial_joint_state(ScenarioSpec(kind=SEPARABLE, s_y=0.6, d=0.6))
    assert initial_joint_state(ScenarioSpec(kind=SEPARABLE, s_z=0.6, d=0.7)).min_eigenvalue >= -1e-12


def test_initial_states():
    assert np.allclose(initial_joint_state(ScenarioSpec(kind=WERNER, x=1.0)).matrix, np.eye(4) / 4)
    assert np.allclose(initial_joint_state(ScenarioSpec(kind=SEPARABLE)).matrix, np.eye(4) / 4)
    pure = initial_joint_state(ScenarioSpec(kind=PURE, phi=0.0)).matrix
    psi = np.array([0, 1, 1, 1]) / np.sqrt(3)
    assert np.allclose(pure, np.outer(psi, psi))
    assert np.linalg.matrix_rank(pure, tol=1e-10) == 1


def test_pure_state_modulus_independent_of_phi():
    for phi in np.linspace(0, 2 * np.pi, 9):
        assert scenario_params(ScenarioSpec(kind=PURE, phi=phi)).abs_a == pytest.approx(2 / 3)


@pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 4 / 3])
def test_werner_params_from_singlet(x):
    params = scenario_params(ScenarioSpec(kind=WERNER, x=x))
    assert params.a1 == pytest.approx(0.0, abs=1e-12)
    assert params.a2 == pytest.approx(-(1 - x), abs=1e-12)
    assert params.abs_a == pytest.approx(abs(1 - x), abs=1e-12)


def test_spec_param_helpers():
    spec = ScenarioSpec(kind=WERNER, x=0.2)
    assert spec.param_name == "x"
    assert spec.with_param(0.9).x == 0.9
    assert ScenarioSpec(kind=SEPARABLE, d=0.3).param_value == 0.3
    assert ScenarioSpec(kind=PURE, phi=1.0).param_name == "phi"


@pytest.mark.parametrize("spec", SPECS)
def test_reduced_state_closed_matches_unitary(spec):
    rho12 = initial_joint_state(spec)
    for t in np.linspace(0, 2 * np.pi, 25):
        closed = reduced_state_closed(spec, t).matrix
        assert np.allclose(closed, reduced_dynamics(rho12, t).matrix, rtol=0, atol=1e-12)


def test_reduced_state_closed_examples():
    spec = ScenarioSpec(kind=SEPARABLE, s_x=0.3, s_y=-0.2, s_z=0.5, d=0.1)
    expected = 0.5 * np.array([[1.5, 0.3 + 0.2j], [0.3 - 0.2j, 0.5]])
    assert np.allclose(reduced_state_closed(spec, 0.0).matrix, expected)
    werner = reduced_state_closed(ScenarioSpec(kind=WERNER, x=0.5), np.pi / 2).matrix
    assert np.allclose(werner, 0.5 * np.array([[1, 0.5j], [-0.5j, 1]]))
    pure = reduced_state_closed(ScenarioSpec(kind=PURE, phi=0.7), np.pi).matrix
    assert pure[0, 1] == pytest.approx(-np.exp(-0.7j) / 3)


@pytest.mark.parametrize("spec", SPECS)
@pytest.mark.parametrize("via", [Via.AMAP, Via.CANONICAL])
def test_three_way_dynamics(spec, via):
    unitary_path = scenario_family(spec, Via.UNITARY)
    other = scenario_family(spec, via)
    for t in np.linspace(0, 2 * np.pi, 50):
        assert np.allclose(other(t).matrix, unitary_path(t).matrix, rtol=0, atol=1e-10)


def test_canonical_spectrum_of_pure_scenario():
    spec = ScenarioSpec(kind=PURE, phi=2.1)
    params = scenario_params(spec)
    for t in np.linspace(0, 2 * np.pi, 13):
        assert np.allclose(canonical_decompose(pair_amap(params, t)).eigenvalues, eigenvalues_closed(params, t), atol=1e-10)


def test_closed_form_weights_normalized():
    spec = SPECS[-1]
    for t in np.linspace(0, 2 * np.pi, 20):
        for tau in (0.4, math.pi):
            delta, nu = closed_forms.pure_weights(t, tau, 1.3)
            assert delta + nu == pytest.approx(1.0, abs=1e-10)
            assert 0.0 <= delta <= 1.0 + 1e-12
            mu, eta = closed_forms.separable_weights(t, tau, spec)
            assert mu + eta == pytest.approx(1.0, abs=1e-10)
        assert sum(closed_forms.pure_lambdas(t, 1.3)) == pytest.approx(1.0, abs=1e-12)
        assert sum(closed_forms.werner_p(t, 0.4)) == pytest.approx(1.0, abs=1e-12)
        assert sum(closed_forms.separable_omegas(t, spec)) == pytest.approx(1.0, abs=1e-12)


def test_pure_kappa_constant_at_phi_zero():
    lambdas = {closed_forms.pure_lambdas(t, 0.0) for t in np.linspace(0, 6, 7)}
    kappa = math.sqrt(5)
    for plus, minus in lambdas:
        assert plus == pytest.approx((3 + kappa) / 6)
        assert minus == pytest.approx((3 - kappa) / 6)


def test_werner_point_values():
    spec = ScenarioSpec(kind=WERNER, x=0.0)
    sample = witnesses_closed(spec, math.pi / 2, math.pi)
    assert sample.fidelity_diff == pytest.approx(-1.0, abs=1e-9)
    assert sample.rel_entropy_diff == -math.inf
    assert Flag.SUPPORT_VIOLATION in sample.flags

    sample = witnesses_closed(spec, math.pi / 4, math.pi)
    assert sample.rel_entropy_diff == pytest.approx(-math.sqrt(2) * math.log(1 + math.sqrt(2)), abs=1e-9)


def test_frozen_werner_state():
    spec = ScenarioSpec(kind=WERNER, x=1.0)
    for t in np.linspace(0.1, 6, 8):
        sample = witnesses_closed(spec, t, 1.7)
        assert sample.rel_entropy_diff == pytest.approx(0.0, abs=1e-12)
        assert sample.fidelity_diff == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("spec", SPECS)
def test_origin_is_exactly_zero(spec):
    closed = witnesses_closed(spec, 0.0, 1.0)
    numeric = witness_series(scenario_family(spec), [0.0], 1.0)[0]
    for sample in (closed, numeric):
        assert sample.rel_entropy_diff == 0.0
        assert sample.fidelity_diff == 0.0
        assert not sample.flags


def test_closed_rejects_negative_time():
    with pytest.raises(ValueError):
        witnesses_closed(SPECS[0], -1.0, 1.0)


@pytest.mark.parametrize("spec", SPECS)
def test_closed_matches_numerical_on_tau_grid(spec):
    family = scenario_family(spec)
    times = np.linspace(0, 2 * np.pi, 20)
    for tau in np.linspace(0.1, 2 * np.pi, 20):
        numeric = witness_series(family, times, tau)
        for t, sample in zip(times, numeric):
            closed = witnesses_closed(spec, t, tau)
            assert closed.flags == sample.flags
            assert closed.rel_entropy_diff == pytest.approx(sample.rel_entropy_diff, abs=1e-8)
            assert closed.fidelity_diff == pytest.approx(sample.fidelity_diff, abs=1e-8)


def test_fallback_when_bloch_vector_along_z(caplog):
    # s_x = s_y = d = 0: ζ = s_z, so ζ - s_z vanishes and the matrix path takes over
    spec = ScenarioSpec(kind=SEPARABLE, s_z=0.4)
    sample = witnesses_closed(spec, 1.0, 0.5)
    assert Flag.FALLBACK_USED in sample.flags
    assert sample.rel_entropy_diff == pytest.approx(0.0, abs=1e-12)
    assert sample.fidelity_diff == pytest.approx(0.0, abs=1e-12)
    assert "singular" in caplog.text


def test_grid_config_validation():
    grid = GridConfig(t_steps=5)
    assert grid.omega_ts()[0] == 0.0
    assert grid.omega_ts()[-1] == pytest.approx(2 * math.pi)
    assert grid.param_values() == []
    with pytest.raises(ValueError):
        GridConfig(t_min=1.0, t_max=0.5)
    with pytest.raises(ValueError):
        GridConfig(t_steps=1)
    with pytest.raises(ValueError):
        GridConfig(param_min=0.0, param_max=1.0)
    with pytest.raises(ValueError):
        GridConfig(t_min=-1.0)


def test_sweep_tasks_rows():
    grid = GridConfig(t_steps=4, param_min=0.0, param_max=1.0, param_steps=3)
    tasks = sweep_tasks(ScenarioSpec(kind=WERNER), grid)
    assert [task.spec.x for task in tasks] == [0.0, 0.5, 1.0]
    assert all(len(task.omega_ts) == 4 for task in tasks)
    single = sweep_tasks(ScenarioSpec(kind=WERNER, x=0.3), GridConfig(t_steps=4))
    assert len(single) == 1 and single[0].spec.x == 0.3


def test_evaluate_row_methods_agree():
    times = tuple(np.linspace(0, 2 * np.pi, 9))
    spec = SPECS[2]
    numeric = evaluate_row(RowTask(spec, times, 1.0))
    closed = evaluate_row(RowTask(spec, times, 1.0, Method.CLOSED))
    for a, b in zip(numeric, closed):
        assert a.param == b.param == 0.5
        assert a.rel_entropy_diff == pytest.approx(b.rel_entropy_diff, abs=1e-8)


def test_evaluate_surface_parallel_matches_sequential():
    tasks = sweep_tasks(
        ScenarioSpec(kind=PURE),
        GridConfig(t_steps=6, param_min=0.0, param_max=3.0, param_steps=4),
    )
    sequential = evaluate_surface(tasks, jobs=1)
    parallel = evaluate_surface(tasks, jobs=2)
    assert [[s.rel_entropy_diff for s in row] for row in parallel] == [[s.rel_entropy_diff for s in row] for row in sequential]


def test_figure_tasks_axes():
    axis, values, tasks = figure_tasks(3, 5)
    assert axis == "omega_tau"
    assert [task.omega_tau for task in tasks] == list(values)
    assert tasks[0].spec.d == pytest.approx(SIXTH)
    axis, values, _ = figure_tasks(2, 5)
    assert axis == "x" and values == (0.0, 0.25, 0.5, 0.75, 1.0)
    with pytest.raises(ValueError):
        figure_tasks(4, 5)


def test_figure_surface_shape():
    surface = figure_surface(2, 6, jobs=1)
    assert surface.s_diff().shape == (6, 6)
    assert surface.g_diff().shape == (6, 6)
    assert np.allclose(surface.g_diff()[-1], 0.0, atol=1e-12)
