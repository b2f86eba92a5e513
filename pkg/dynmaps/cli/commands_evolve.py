"""evolve: trace of the reduced state ρ1(t) along an ωt grid."""

import argparse
import logging

from dynmaps.cli.formatting import open_output, write_csv
from dynmaps.cli.options import grid_from_args, spec_from_args
from dynmaps.maps.dynmap import DensityMatrix
from dynmaps.maps.qubitpair import bloch_vector
from dynmaps.scenarios.states import Via, scenario_family

logger = logging.getLogger(__name__)

HEADER = ("omega_t", "rho00_re", "rho01_re", "rho01_im", "rho11_re", "bloch_x", "bloch_y", "bloch_z", "min_eig")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("evolve", parents=parents, help="Reduced state of qubit 1 along ωt")
    parser.set_defaults(handler=handle)


def state_row(omega_t: float, rho: DensityMatrix) -> tuple[float, ...]:
    m = rho.matrix
    bx, by, bz = bloch_vector(rho)
    return (
        omega_t,
        float(m[0, 0].real),
        float(m[0, 1].real),
        float(m[0, 1].imag),
        float(m[1, 1].real),
        float(bx),
        float(by),
        float(bz),
        rho.min_eigenvalue,
    )


def handle(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    grid = grid_from_args(args)
    family = scenario_family(spec, Via(args.via))
    times = grid.omega_ts()
    logger.info(f"Evolving {spec.kind.value} state over {len(times)} points via {args.via}")

    with open_output(args.output) as out:
        write_csv(out, HEADER, (state_row(t, family(t)) for t in times))
    return 0
