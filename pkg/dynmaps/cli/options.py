"""Parent parsers shared by the subcommands and their conversion to models."""

import argparse
import math

from dynmaps.config import settings
from dynmaps.scenarios.grid import GridConfig, Method
from dynmaps.scenarios.states import ScenarioKind, ScenarioSpec, Via


def common_parser(suppress_defaults: bool = False) -> argparse.ArgumentParser:
    """Flags accepted before and after the subcommand.

    The copy attached to the subcommands uses ``suppress_defaults`` so a flag given
    only before the subcommand is not reset by the subcommand's defaults.
    """

    def default(value):
        return argparse.SUPPRESS if suppress_defaults else value

    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--output", "-o", default=default(None), help="Output path (default: stdout)")
    parser.add_argument(
        "--jobs", type=int, default=default(None), help="Worker processes (default: one per processor)"
    )
    parser.add_argument(
        "--resolution",
        type=int,
        default=default(None),
        help=f"Grid points per axis (default: {settings.resolution})",
    )
    parser.add_argument("--verbose", "-v", action="count", default=default(0), help="-v for INFO, -vv for DEBUG")
    return parser


def scenario_parser(required: bool = True) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--scenario",
        choices=[k.value for k in ScenarioKind],
        required=required,
        default=None,
        help="Initial two-qubit state",
    )
    parser.add_argument("--phi", type=float, default=0.0, help="Phase of the pure entangled state")
    parser.add_argument("--x", type=float, default=0.0, help="Werner mixing parameter in [0, 4/3]")
    parser.add_argument("--sx", type=float, default=0.0)
    parser.add_argument("--sy", type=float, default=0.0)
    parser.add_argument("--sz", type=float, default=0.0)
    parser.add_argument("--d", type=float, default=0.0, help="Correlation <σ1y σ2x> of the separable state")
    parser.add_argument(
        "--allow-any-psd",
        action="store_true",
        help="Accept any positive separable state instead of the unit-ball check",
    )
    return parser


def grid_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--t-min", type=float, default=0.0)
    parser.add_argument("--t-max", type=float, default=2 * math.pi)
    parser.add_argument("--t-steps", type=int, default=None, help="ωt points (default: --resolution)")
    parser.add_argument("--omega-tau", type=float, default=math.pi)
    parser.add_argument("--param-min", type=float, default=None, help="Sweep start of phi, x or d")
    parser.add_argument("--param-max", type=float, default=None)
    parser.add_argument("--param-steps", type=int, default=None)
    parser.add_argument("--via", choices=[v.value for v in Via], default=Via.UNITARY.value)
    return parser


def method_choices() -> list[str]:
    return [m.value for m in Method]


def resolution(args: argparse.Namespace) -> int:
    return settings.resolution if args.resolution is None else args.resolution


def spec_from_args(args: argparse.Namespace) -> ScenarioSpec:
    return ScenarioSpec(
        kind=ScenarioKind(args.scenario),
        phi=args.phi,
        x=args.x,
        s_x=args.sx,
        s_y=args.sy,
        s_z=args.sz,
        d=args.d,
        allow_any_psd=args.allow_any_psd,
    )


def grid_from_args(args: argparse.Namespace) -> GridConfig:
    return GridConfig(
        t_min=args.t_min,
        t_max=args.t_max,
        t_steps=args.t_steps if args.t_steps is not None else resolution(args),
        omega_tau=args.omega_tau,
        param_min=args.param_min,
        param_max=args.param_max,
        param_steps=args.param_steps,
    )
