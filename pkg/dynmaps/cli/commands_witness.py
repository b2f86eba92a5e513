"""witness: S(t,τ) and G(t,τ) along ωt, optionally swept over the scenario parameter."""

import argparse
import logging

from dynmaps.cli.formatting import open_output, write_csv
from dynmaps.cli.options import grid_from_args, method_choices, spec_from_args
from dynmaps.flags import join_flags
from dynmaps.scenarios.grid import Method, evaluate_surface, sweep_tasks
from dynmaps.scenarios.states import Via
from dynmaps.witness.differences import WitnessSample

logger = logging.getLogger(__name__)

HEADER = ("omega_t", "param", "S_diff", "G_diff", "flags")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("witness", parents=parents, help="Non-Markovianity witnesses on a grid")
    parser.add_argument(
        "--method",
        choices=method_choices(),
        default=Method.NUMERICAL.value,
        help="Matrix path or closed-form expressions",
    )
    parser.set_defaults(handler=handle)


def sample_row(sample: WitnessSample) -> tuple:
    return (
        sample.omega_t,
        sample.param,
        sample.rel_entropy_diff,
        sample.fidelity_diff,
        join_flags(sample.flags),
    )


def handle(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    grid = grid_from_args(args)
    tasks = sweep_tasks(spec, grid, Method(args.method), Via(args.via))
    logger.info(f"Witness grid: {len(tasks)} row(s) × {grid.t_steps} points, omega_tau={grid.omega_tau:.6g}")
    rows = evaluate_surface(tasks, args.jobs)

    with open_output(args.output) as out:
        write_csv(out, HEADER, (sample_row(s) for row in rows for s in row))
    return 0
