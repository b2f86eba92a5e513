"""figure: S_diff and G_diff surfaces of the three figure settings as long-format CSV."""

import argparse
import logging
from pathlib import Path

from dynmaps.cli.formatting import open_output, write_csv
from dynmaps.cli.options import resolution
from dynmaps.config import settings
from dynmaps.flags import join_flags
from dynmaps.scenarios.grid import FigureSurface, figure_surface

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "figure",
        parents=parents,
        help="Figure 1 (ωt, φ), 2 (ωt, x) or 3 (ωt, ωτ) surfaces",
    )
    parser.add_argument("which", type=int, choices=[1, 2, 3])
    parser.set_defaults(handler=handle)


def output_paths(prefix: str | Path) -> tuple[Path, Path]:
    prefix = str(prefix)
    return Path(f"{prefix}_S_diff.csv"), Path(f"{prefix}_G_diff.csv")


def write_surface(surface: FigureSurface, prefix: str | Path) -> tuple[Path, Path]:
    s_path, g_path = output_paths(prefix)
    header = ("omega_t", surface.axis)
    for path, column, attr in (
        (s_path, "S_diff", "rel_entropy_diff"),
        (g_path, "G_diff", "fidelity_diff"),
    ):
        rows = (
            (sample.omega_t, axis_value, getattr(sample, attr), join_flags(sample.flags))
            for axis_value, row in zip(surface.axis_values, surface.rows)
            for sample in row
        )
        with open_output(path) as out:
            count = write_csv(out, (*header, column, "flags"), rows)
        logger.info(f"Wrote {count} rows to {path}")
    return s_path, g_path


def handle(args: argparse.Namespace) -> int:
    prefix = args.output or settings.ensure_output_dir() / f"figure{args.which}"
    surface = figure_surface(args.which, resolution(args), args.jobs)
    for path in write_surface(surface, prefix):
        print(path)
    return 0
