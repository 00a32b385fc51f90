"""Command-line front end.

Subcommands map one-to-one onto library capabilities:

- ``spectrum``: exact levels along an axial-field sweep, with a sidecar
  file of semiclassical transition fields when the field stays in the
  bx-bz plane.
- ``potential``: both branches of the reduced polar potential on a
  theta grid.
- ``separatrix``: bifurcation and degeneracy curves in a two-parameter
  window.
- ``fidelity-map``: ground-state fidelity on a (bz, bx) grid.
- ``heatcap-map``: heat capacity on a (bz, bx) grid, one file per
  temperature.
- ``compounds``: list the built-in parameter sets or export one to the
  plain-text exchange format.

Exit codes: 0 success, 2 configuration problem (bad flags, unknown
compound, unreadable input), 3 numerical failure. All field inputs are
kelvin by default; ``--tesla`` rescales field-like inputs (fixed field
components, field ranges, the fidelity increment) by the g=2 conversion
factor. Anisotropy-style inputs such as ``--r-params`` stay in kelvin
either way.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .compounds import Compound, catalog, dump_compound, load_compound, lookup
from .eig import ConvergenceError, eigh
from .landscape import ReducedParams, potential_reduced, reduce_params
from .observables import fidelity_map, heatcap_map
from .separatrix import PlaneSpec, classify_cell_edges, sweep_crossings
from .spin import (
    G_FACTOR,
    MU_B_OVER_KB,
    AnisotropyParams,
    FieldVector,
    SpinSystem,
    build_hamiltonian,
)
from . import writers

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_AXIS_ALIASES = {"bz": "r2", "bx": "r1"}
_R_NAMES = ("r1", "r2", "r3", "r4", "r5")
#: range flag that feeds each canonical axis
_RANGE_FLAG = {"r1": "bx_range", "r2": "bz_range", "r3": "r3_range", "r4": "r4_range", "r5": "r5_range"}


class CliError(Exception):
    """A configuration problem the user can fix (exit code 2)."""


def _parse_range(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise CliError(f"{flag} expects LO:HI, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise CliError(f"{flag}: {exc}") from None
    if not lo < hi:
        raise CliError(f"{flag} needs LO < HI, got {text!r}")
    return lo, hi


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        if len(parts) == 1:
            n = int(parts[0])
            pair = (n, n)
        elif len(parts) == 2:
            pair = (int(parts[0]), int(parts[1]))
        else:
            raise ValueError(text)
    except ValueError:
        raise CliError(f"--grid expects N or N1xN2, got {text!r}") from None
    if pair[0] < 2 or pair[1] < 2:
        raise CliError(f"--grid values must be at least 2, got {text!r}")
    return pair


def _parse_temps(text: str) -> tuple[float, ...]:
    try:
        temps = tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(f"--temps: {exc}") from None
    if not temps or any(not t > 0.0 for t in temps):
        raise CliError(f"--temps needs positive values, got {text!r}")
    return temps


def _parse_r_params(text: str) -> dict[str, float]:
    out: dict[str, float] = {}
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        key, sep, value = chunk.partition("=")
        if not sep:
            raise CliError(f"--r-params entries look like key=value, got {chunk!r}")
        name = _AXIS_ALIASES.get(key.strip(), key.strip())
        if name not in _R_NAMES:
            raise CliError(f"--r-params: unknown parameter {key.strip()!r}")
        if name in out:
            raise CliError(f"--r-params sets {name} twice")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise CliError(f"--r-params {name}: {exc}") from None
    if not out:
        raise CliError("--r-params was given but empty")
    return out


def _resolve_compound(args: argparse.Namespace) -> Compound | None:
    if getattr(args, "compound", None) and getattr(args, "compound_file", None):
        raise CliError("give either --compound or --compound-file, not both")
    if getattr(args, "compound", None):
        try:
            return lookup(args.compound)
        except KeyError as exc:
            raise CliError(str(exc.args[0])) from None
    if getattr(args, "compound_file", None):
        path = Path(args.compound_file)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}") from None
        try:
            return load_compound(text)
        except ValueError as exc:
            raise CliError(f"{path}: {exc}") from None
    return None


def _require_compound(args: argparse.Namespace) -> Compound:
    compound = _resolve_compound(args)
    if compound is None:
        raise CliError("this command needs --compound or --compound-file")
    return compound


def _field_unit(args: argparse.Namespace) -> float:
    return MU_B_OVER_KB if getattr(args, "tesla", False) else 1.0


def _out_path(args: argparse.Namespace) -> Path:
    if not args.out:
        raise CliError("--out is required")
    return Path(args.out)


def _header(command: str, settings: Sequence[tuple[str, str]]) -> list[tuple[str, str]]:
    head = [("tool", f"spinscape {__version__}"), ("command", command)]
    head.extend(settings)
    return head


def _compound_settings(compound: Compound) -> list[tuple[str, str]]:
    a = compound.aniso
    return [
        ("compound", compound.id),
        ("two_s", str(compound.system.two_s)),
        ("d", repr(a.d)),
        ("e", repr(a.e)),
        ("b40", repr(a.b40)),
        ("b42", repr(a.b42)),
        ("b43", repr(a.b43)),
        ("b44", repr(a.b44)),
    ]


def _reduced_settings(rp: ReducedParams) -> list[tuple[str, str]]:
    return [
        ("r1", repr(rp.r1)),
        ("r2", repr(rp.r2)),
        ("r3", repr(rp.r3)),
        ("r4", repr(rp.r4)),
        ("r5", repr(rp.r5)),
        ("offset", repr(rp.offset)),
    ]


def _write_plot_script(args: argparse.Namespace, out: Path, script: str) -> None:
    if getattr(args, "plot_script", False):
        out.with_suffix(".gp").write_text(script, encoding="utf-8", newline="\n")


def _reduced_from_args(args: argparse.Namespace, compound: Compound | None) -> ReducedParams:
    """Fixed reduced parameters from compound, fixed fields, and overrides."""
    unit = _field_unit(args)
    bx = getattr(args, "bx", 0.0) * unit
    bz = getattr(args, "bz", 0.0) * unit
    if compound is not None:
        rp = reduce_params(compound.system, compound.aniso, FieldVector(bx=bx, bz=bz))
    else:
        system = SpinSystem(getattr(args, "two_s", 10))
        rp = ReducedParams(r1=bx, r2=bz, r3=0.0, r4=0.0, r5=0.0, system=system)
    overrides = getattr(args, "r_params", None)
    if overrides:
        rp = replace(rp, **_parse_r_params(overrides))
    return rp


# ---------------------------------------------------------------- spectrum


def _cmd_spectrum(args: argparse.Namespace) -> int:
    compound = _require_compound(args)
    unit = _field_unit(args)
    lo, hi = _parse_range(args.bz_range, "--bz-range")
    lo, hi = lo * unit, hi * unit
    n = _parse_grid(args.grid)[0]
    bx, by = args.bx * unit, args.by * unit
    out = _out_path(args)

    system, aniso = compound.system, compound.aniso
    bz_values = np.linspace(lo, hi, n)
    dim = system.dim
    rows = []
    for z in bz_values:
        spec = eigh(build_hamiltonian(system, aniso, FieldVector(bx=bx, by=by, bz=float(z))))
        rows.append([float(z)] + [float(v) for v in spec.eigenvalues])

    settings = _compound_settings(compound) + [
        ("bx", repr(bx)),
        ("by", repr(by)),
        ("bz_range", f"{lo!r}:{hi!r}"),
        ("grid", str(n)),
        ("units", "kelvin"),
    ]
    columns = ["bz"] + [f"e{i}" for i in range(dim)]
    writers.write_table(out, args.format, _header("spectrum", settings), columns, rows)
    _write_plot_script(args, out, writers.gnuplot_lines_script(out.name, dim, "energy levels"))

    if by == 0.0:
        rp = _reduced_from_args(args, compound)
        sweep = sweep_crossings(rp, "r2", (lo, hi))
        cross_rows: list[list[object]] = []
        for value in sweep.bifurcation_values:
            cross_rows.append(["bifurcation", float(value)])
        for value in sweep.maxwell_values:
            cross_rows.append(["maxwell_minima", float(value)])
        for value in sweep.maxwell_maxima_values:
            cross_rows.append(["maxwell_maxima", float(value)])
        sidecar = out.with_name(out.stem + ".crossings" + out.suffix)
        writers.write_table(
            sidecar,
            args.format,
            _header("spectrum.crossings", settings + _reduced_settings(rp)),
            ["kind", "bz"],
            cross_rows,
        )
    return EXIT_OK


# ---------------------------------------------------------------- potential


def _cmd_potential(args: argparse.Namespace) -> int:
    compound = _resolve_compound(args)
    rp = _reduced_from_args(args, compound)
    n = _parse_grid(args.grid)[0]
    out = _out_path(args)

    thetas = np.linspace(0.0, np.pi, n)
    v_plus = potential_reduced(thetas, rp, branch=1)
    v_minus = potential_reduced(thetas, rp, branch=-1)
    rows = [
        [float(t), float(vp), float(vm)]
        for t, vp, vm in zip(thetas, np.atleast_1d(v_plus), np.atleast_1d(v_minus))
    ]

    settings = (_compound_settings(compound) if compound else [("two_s", str(rp.system.two_s))])
    settings += _reduced_settings(rp) + [("grid", str(n))]
    writers.write_table(
        out, args.format, _header("potential", settings), ["theta", "v_plus", "v_minus"], rows
    )
    _write_plot_script(args, out, writers.gnuplot_lines_script(out.name, 2, "reduced potential"))
    return EXIT_OK


# --------------------------------------------------------------- separatrix


def _cmd_separatrix(args: argparse.Namespace) -> int:
    compound = _resolve_compound(args)
    rp = _reduced_from_args(args, compound)
    out = _out_path(args)

    names = [part.strip() for part in args.axes.split(",")]
    if len(names) != 2:
        raise CliError(f"--axes expects two comma-separated names, got {args.axes!r}")
    canon = []
    for name in names:
        axis = _AXIS_ALIASES.get(name, name)
        if axis not in _R_NAMES:
            raise CliError(f"--axes: unknown axis {name!r}")
        canon.append(axis)
    unit = _field_unit(args)
    ranges = []
    for name, axis in zip(names, canon):
        flag = _RANGE_FLAG[axis]
        text = getattr(args, flag, None)
        if text is None:
            raise CliError(f"axis {name!r} needs --{flag.replace('_', '-')}")
        lo, hi = _parse_range(text, f"--{flag.replace('_', '-')}")
        if axis in ("r1", "r2"):
            lo, hi = lo * unit, hi * unit
        ranges.append((lo, hi))
    n1, n2 = _parse_grid(args.grid)

    plane = PlaneSpec(
        axis1=canon[0],
        axis2=canon[1],
        range1=ranges[0],
        range2=ranges[1],
        resolution=(n1, n2),
        fixed=rp,
    )
    result = classify_cell_edges(plane)

    rows: list[list[object]] = []
    for kind in ("bifurcation", "maxwell_minima", "maxwell_maxima"):
        for p, line in enumerate(getattr(result, kind)):
            for v, (a1, a2) in enumerate(line):
                rows.append([kind, p, v, float(a1), float(a2)])

    settings = (_compound_settings(compound) if compound else [("two_s", str(rp.system.two_s))])
    settings += _reduced_settings(rp) + [
        ("axis1", names[0]),
        ("axis2", names[1]),
        ("range1", f"{ranges[0][0]!r}:{ranges[0][1]!r}"),
        ("range2", f"{ranges[1][0]!r}:{ranges[1][1]!r}"),
        ("grid", f"{n1}x{n2}"),
    ]
    columns = ["kind", "polyline", "vertex", names[0], names[1]]
    writers.write_table(out, args.format, _header("separatrix", settings), columns, rows)
    _write_plot_script(args, out, writers.gnuplot_separatrix_script(out.name, "separatrix"))
    return EXIT_OK


# ------------------------------------------------------------- fidelity map


def _grid_axes(args: argparse.Namespace) -> tuple[np.ndarray, np.ndarray, dict[str, str]]:
    unit = _field_unit(args)
    z_lo, z_hi = _parse_range(args.bz_range, "--bz-range")
    x_lo, x_hi = _parse_range(args.bx_range, "--bx-range")
    z_lo, z_hi, x_lo, x_hi = z_lo * unit, z_hi * unit, x_lo * unit, x_hi * unit
    n_z, n_x = _parse_grid(args.grid)
    meta = {
        "bz_range": f"{z_lo!r}:{z_hi!r}",
        "bx_range": f"{x_lo!r}:{x_hi!r}",
        "grid": f"{n_z}x{n_x}",
    }
    return np.linspace(z_lo, z_hi, n_z), np.linspace(x_lo, x_hi, n_x), meta


def _map_rows(bz: np.ndarray, bx: np.ndarray, values: np.ndarray) -> list[list[float]]:
    rows = []
    for j in range(bx.size):
        for i in range(bz.size):
            rows.append([float(bz[i]), float(bx[j]), float(values[i, j])])
    return rows


def _cmd_fidelity_map(args: argparse.Namespace) -> int:
    compound = _require_compound(args)
    out = _out_path(args)
    unit = _field_unit(args)
    bz, bx, meta = _grid_axes(args)
    d = args.d_increment * unit
    if not d > 0.0:
        raise CliError(f"--d-increment must be positive, got {args.d_increment!r}")
    by = args.by * unit

    fmap = fidelity_map(
        compound.system, compound.aniso, bz, bx, by=by, axis=args.scan_axis, d=d
    )
    settings = _compound_settings(compound) + [
        ("by", repr(by)),
        ("scan_axis", args.scan_axis),
        ("d_increment", repr(d)),
        *meta.items(),
    ]
    writers.write_table(
        out,
        args.format,
        _header("fidelity-map", settings),
        ["bz", "bx", "fidelity"],
        _map_rows(bz, bx, fmap.values),
    )
    _write_plot_script(args, out, writers.gnuplot_map_script(out.name, "ground-state fidelity"))
    return EXIT_OK


# ------------------------------------------------------------ heat capacity


def _cmd_heatcap_map(args: argparse.Namespace) -> int:
    compound = _require_compound(args)
    out = _out_path(args)
    unit = _field_unit(args)
    bz, bx, meta = _grid_axes(args)
    temps = _parse_temps(args.temps)
    by = args.by * unit

    for t in temps:
        values = heatcap_map(compound.system, compound.aniso, bz, bx, t, by=by)
        if len(temps) == 1:
            path = out
        else:
            path = out.with_name(f"{out.stem}-T{t!r}{out.suffix}")
        settings = _compound_settings(compound) + [
            ("by", repr(by)),
            ("temperature", repr(float(t))),
            *meta.items(),
        ]
        writers.write_table(
            path,
            args.format,
            _header("heatcap-map", settings),
            ["bz", "bx", "heat_capacity"],
            _map_rows(bz, bx, values),
        )
        _write_plot_script(args, path, writers.gnuplot_map_script(path.name, f"heat capacity, T={t!r} K"))
    return EXIT_OK


# ---------------------------------------------------------------- compounds


def _cmd_compounds(args: argparse.Namespace) -> int:
    if args.export:
        try:
            compound = lookup(args.export)
        except KeyError as exc:
            raise CliError(str(exc.args[0])) from None
        out = _out_path(args)
        out.write_text(dump_compound(compound), encoding="utf-8", newline="\n")
        return EXIT_OK

    fmt = "{:<12} {:>3} {:>9} {:>8} {:>12} {:>12} {:>8} {:>12}  {}"
    print(fmt.format("id", "2S", "d/K", "e/K", "b40/K", "b42/K", "b43/K", "b44/K", "source"))
    for c in catalog():
        a = c.aniso
        print(
            fmt.format(
                c.id,
                c.system.two_s,
                f"{a.d:g}",
                f"{a.e:g}",
                f"{a.b40:g}",
                f"{a.b42:g}",
                f"{a.b43:g}",
                f"{a.b44:g}",
                c.source,
            )
        )
    return EXIT_OK


# ------------------------------------------------------------------ parser


def _add_output_flags(p: argparse.ArgumentParser, out_required: bool = True) -> None:
    p.add_argument("--out", required=out_required, help="output file path")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument(
        "--plot-script",
        action="store_true",
        help="also write a gnuplot script next to the output (same stem, .gp)",
    )


def _add_compound_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--compound", help="id of a built-in parameter set (see the compounds command)")
    p.add_argument("--compound-file", help="path to a key=value parameter file")


def _add_tesla_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--tesla",
        action="store_true",
        help="field inputs are tesla instead of kelvin (g=2 conversion)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinscape",
        description="Spin Hamiltonian spectra, semiclassical landscapes, and transition maps.",
        epilog=(
            "Range values that start with a minus sign must use the = form, "
            "e.g. --bz-range=-4:4."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("spectrum", help="energy levels along an axial-field sweep")
    _add_compound_flags(p)
    p.add_argument("--bx", type=float, default=0.0, help="fixed transverse field (kelvin)")
    p.add_argument("--by", type=float, default=0.0, help="fixed transverse field (kelvin)")
    p.add_argument("--bz-range", required=True, help="axial sweep window LO:HI")
    p.add_argument("--grid", default="201", help="number of sweep points")
    p.add_argument("--r-params", help="override reduced parameters for the crossings sidecar")
    _add_tesla_flag(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("potential", help="reduced polar potential on a theta grid")
    _add_compound_flags(p)
    p.add_argument("--two-s", type=int, default=10, help="2S when no compound is given")
    p.add_argument("--bx", type=float, default=0.0, help="transverse field (kelvin)")
    p.add_argument("--bz", type=float, default=0.0, help="axial field (kelvin)")
    p.add_argument("--r-params", help="set reduced parameters directly, e.g. r3=-0.679,r4=0.0008")
    p.add_argument("--grid", default="721", help="number of theta samples on [0, pi]")
    _add_tesla_flag(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_potential)

    p = sub.add_parser("separatrix", help="transition curves in a two-parameter window")
    _add_compound_flags(p)
    p.add_argument("--two-s", type=int, default=10, help="2S when no compound is given")
    p.add_argument("--axes", default="bz,r3", help="the two swept axes, e.g. bz,r3 or bz,bx")
    p.add_argument("--bx", type=float, default=0.0, help="fixed transverse field when bx is not swept")
    p.add_argument("--bz", type=float, default=0.0, help="fixed axial field when bz is not swept")
    p.add_argument("--bz-range", help="window for a swept bz axis, LO:HI")
    p.add_argument("--bx-range", help="window for a swept bx axis, LO:HI")
    p.add_argument("--r3-range", help="window for a swept r3 axis, LO:HI")
    p.add_argument("--r4-range", help="window for a swept r4 axis, LO:HI")
    p.add_argument("--r5-range", help="window for a swept r5 axis, LO:HI")
    p.add_argument("--r-params", help="override fixed reduced parameters")
    p.add_argument("--grid", default="200", help="grid resolution N or N1xN2")
    _add_tesla_flag(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_separatrix)

    p = sub.add_parser("fidelity-map", help="ground-state fidelity on a (bz, bx) grid")
    _add_compound_flags(p)
    p.add_argument("--bz-range", required=True, help="axial window LO:HI")
    p.add_argument("--bx-range", required=True, help="transverse window LO:HI")
    p.add_argument("--grid", default="101", help="grid resolution N or Nz x Nx (NzxNx)")
    p.add_argument("--by", type=float, default=0.0, help="fixed out-of-plane field (kelvin)")
    p.add_argument("--scan-axis", choices=("bx", "by", "bz"), default="bz", help="fidelity increment axis")
    p.add_argument("--d-increment", type=float, default=0.001, help="half-step of the fidelity stencil")
    _add_tesla_flag(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_fidelity_map)

    p = sub.add_parser("heatcap-map", help="heat capacity on a (bz, bx) grid")
    _add_compound_flags(p)
    p.add_argument("--bz-range", required=True, help="axial window LO:HI")
    p.add_argument("--bx-range", required=True, help="transverse window LO:HI")
    p.add_argument("--grid", default="101", help="grid resolution N or NzxNx")
    p.add_argument("--by", type=float, default=0.0, help="fixed out-of-plane field (kelvin)")
    p.add_argument("--temps", required=True, help="comma-separated temperatures in kelvin")
    _add_tesla_flag(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_heatcap_map)

    p = sub.add_parser("compounds", help="list built-in parameter sets or export one")
    p.add_argument("--export", metavar="ID", help="write this compound as a key=value file")
    _add_output_flags(p, out_required=False)
    p.set_defaults(handler=_cmd_compounds)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        code = exc.code
        return int(code) if isinstance(code, int) else EXIT_CONFIG
    try:
        return int(args.handler(args))
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
