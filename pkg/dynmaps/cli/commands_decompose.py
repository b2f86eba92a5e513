"""decompose: canonical decomposition report of the two-qubit reduced A-map."""

import argparse
import logging

from dynmaps.cli.formatting import DecompositionReport, open_output
from dynmaps.cli.options import spec_from_args
from dynmaps.config import settings
from dynmaps.maps.dynmap import amap_to_dict, canonical_decompose, decomposition_to_dict
from dynmaps.maps.qubitpair import InitParams, pair_amap
from dynmaps.scenarios.states import scenario_params

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "decompose",
        parents=parents,
        help="Canonical decomposition and CP/NCP classification at one ωt",
    )
    parser.add_argument("--a1", type=float, default=None, help="-<σ1y σ2x> of the initial state")
    parser.add_argument("--a2", type=float, default=None, help="<σ1x σ2x> of the initial state")
    parser.add_argument("--omega-t", type=float, required=True)
    parser.set_defaults(handler=handle)


def resolve_params(args: argparse.Namespace) -> InitParams:
    """Explicit --a1/--a2 win over --scenario."""
    if args.a1 is not None or args.a2 is not None:
        return InitParams(a1=args.a1 or 0.0, a2=args.a2 or 0.0)
    if args.scenario is None:
        raise ValueError("decompose needs --scenario or --a1/--a2")
    return scenario_params(spec_from_args(args))


def build_report(params: InitParams, omega_t: float) -> DecompositionReport:
    amap = pair_amap(params, omega_t)
    decomposition = canonical_decompose(amap, tol=settings.cp_tol)
    logger.info(
        f"omega_t={omega_t:.6g}, |a|={params.abs_a:.6g}: {decomposition.classification.value}, "
        f"min eigenvalue {decomposition.min_eigenvalue:.6g}"
    )
    return DecompositionReport(
        omega_t=omega_t,
        a1=params.a1,
        a2=params.a2,
        **{**decomposition_to_dict(decomposition), **amap_to_dict(amap)},
    )


def handle(args: argparse.Namespace) -> int:
    report = build_report(resolve_params(args), args.omega_t)
    with open_output(args.output) as out:
        out.write(report.to_json())
    return 0
