"""Witness surfaces over (ωt, parameter) grids and the three figure settings.

Rows are independent and fan out to a process pool; results come back through
``executor.map`` so the merged surface is in grid order regardless of scheduling.
"""

import logging
import math
from concurrent.futures import BrokenExecutor, ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from dynmaps.config import settings
from dynmaps.scenarios.closed_forms import witnesses_closed
from dynmaps.scenarios.states import ScenarioKind, ScenarioSpec, Via, scenario_family
from dynmaps.witness.differences import WitnessSample, witness_series

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi
FIGURE_SEPARABLE_COMPONENT = 1 / math.sqrt(6.0)


class Method(str, Enum):
    NUMERICAL = "numerical"
    CLOSED = "closed"


class GridConfig(BaseModel):
    """ωt axis, fixed ωτ and an optional sweep of the scenario parameter."""

    model_config = ConfigDict(frozen=True)

    t_min: float = Field(default=0.0, ge=0.0)
    t_max: float = TWO_PI
    t_steps: int = Field(default=200, ge=2)
    omega_tau: float = Field(default=math.pi, ge=0.0)
    param_min: float | None = None
    param_max: float | None = None
    param_steps: int | None = Field(default=None, ge=2)

    @model_validator(mode="after")
    def check_ranges(self) -> "GridConfig":
        if self.t_max <= self.t_min:
            raise ValueError(f"t_max ({self.t_max}) must exceed t_min ({self.t_min})")
        bounds = (self.param_min, self.param_max, self.param_steps)
        if any(b is not None for b in bounds):
            if any(b is None for b in bounds):
                raise ValueError("A parameter sweep needs param_min, param_max and param_steps together")
            if self.param_max <= self.param_min:
                raise ValueError(f"param_max ({self.param_max}) must exceed param_min ({self.param_min})")
        return self

    @property
    def sweeps_param(self) -> bool:
        return self.param_steps is not None

    def omega_ts(self) -> list[float]:
        return [float(t) for t in np.linspace(self.t_min, self.t_max, self.t_steps)]

    def param_values(self) -> list[float]:
        if not self.sweeps_param:
            return []
        return [float(p) for p in np.linspace(self.param_min, self.param_max, self.param_steps)]


@dataclass(frozen=True)
class RowTask:
    """One row of a surface: every ωt at a single scenario and ωτ."""

    spec: ScenarioSpec
    omega_ts: tuple[float, ...]
    omega_tau: float
    method: Method = Method.NUMERICAL
    via: Via = Via.UNITARY


def evaluate_row(task: RowTask) -> list[WitnessSample]:
    if task.method is Method.CLOSED:
        return [witnesses_closed(task.spec, t, task.omega_tau) for t in task.omega_ts]
    family = scenario_family(task.spec, task.via)
    return witness_series(family, task.omega_ts, task.omega_tau, param=task.spec.param_value)


def _evaluate_sequential(tasks: list[RowTask]) -> list[list[WitnessSample]]:
    rows = []
    for i, task in enumerate(tasks):
        rows.append(evaluate_row(task))
        logger.debug(f"Row {i + 1}/{len(tasks)} done")
    return rows


def evaluate_surface(tasks: list[RowTask], jobs: int | None = None) -> list[list[WitnessSample]]:
    """Evaluate rows in order, in parallel when more than one worker is available."""
    workers = min(settings.worker_count(jobs), len(tasks))
    logger.info(f"Evaluating {len(tasks)} rows with {workers} worker(s)")
    if workers <= 1:
        return _evaluate_sequential(tasks)

    try:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            chunksize = max(1, len(tasks) // (4 * workers))
            return list(executor.map(evaluate_row, tasks, chunksize=chunksize))
    except (OSError, BrokenExecutor) as e:
        logger.warning(f"Worker pool unavailable ({e!r}); evaluating sequentially")
        return _evaluate_sequential(tasks)


def sweep_tasks(
    spec: ScenarioSpec,
    grid: GridConfig,
    method: Method = Method.NUMERICAL,
    via: Via = Via.UNITARY,
) -> list[RowTask]:
    """One row per parameter value, or a single row at the scenario's own value."""
    times = tuple(grid.omega_ts())
    specs = [spec.with_param(p) for p in grid.param_values()] or [spec]
    return [RowTask(s, times, grid.omega_tau, method, via) for s in specs]


# ── Figures ─────────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class FigureSurface:
    which: int
    axis: str
    axis_values: tuple[float, ...]
    omega_ts: tuple[float, ...]
    rows: list[list[WitnessSample]]

    def s_diff(self) -> np.ndarray:
        """S(t,τ) with shape (len(axis_values), len(omega_ts))."""
        return np.array([[s.rel_entropy_diff for s in row] for row in self.rows])

    def g_diff(self) -> np.ndarray:
        return np.array([[s.fidelity_diff for s in row] for row in self.rows])


FIGURE_AXES = {1: "phi", 2: "x", 3: "omega_tau"}


def figure_tasks(which: int, resolution: int) -> tuple[str, tuple[float, ...], list[RowTask]]:
    """Axis name, axis values and rows for figure 1, 2 or 3."""
    if which not in FIGURE_AXES:
        raise ValueError(f"Figure must be 1, 2 or 3, got {which}")
    if resolution < 2:
        raise ValueError(f"Resolution must be at least 2, got {resolution}")

    times = tuple(float(t) for t in np.linspace(0.0, TWO_PI, resolution))
    if which == 2:
        axis = tuple(float(v) for v in np.linspace(0.0, 1.0, resolution))
    else:
        axis = times

    if which == 1:
        tasks = [RowTask(ScenarioSpec(kind=ScenarioKind.PURE_ENTANGLED, phi=phi), times, math.pi) for phi in axis]
    elif which == 2:
        tasks = [RowTask(ScenarioSpec(kind=ScenarioKind.WERNER, x=x), times, math.pi) for x in axis]
    else:
        c = FIGURE_SEPARABLE_COMPONENT
        spec = ScenarioSpec(kind=ScenarioKind.SEPARABLE_MIXED, s_x=c, s_y=c, s_z=c, d=c)
        tasks = [RowTask(spec, times, tau) for tau in axis]
    return FIGURE_AXES[which], axis, tasks


def figure_surface(which: int, resolution: int, jobs: int | None = None) -> FigureSurface:
    axis_name, axis, tasks = figure_tasks(which, resolution)
    logger.info(f"Figure {which}: {len(axis)}×{resolution} grid over (omega_t, {axis_name})")
    rows = evaluate_surface(tasks, jobs)
    return FigureSurface(which, axis_name, axis, tasks[0].omega_ts, rows)
