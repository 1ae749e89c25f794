"""
Command-line front end.

``asibeam expand``      grow a protoarray with its ASI companions
``asibeam pattern``     evaluate per-polarization and total power patterns
``asibeam synthesize``  design an SPBF or DPBF cell-specific beam
``asibeam simulate``    compare beams in the multi-cell simulator

Exit status: 0 on success, 2 for invalid arguments or configuration, 3 for
file system errors. Every run writes ``<command>_manifest.json`` into
``--out-dir``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__, fixtures, svg
from .asi import expand_ula, expand_ura
from .geometry import UlaGeometry, UraGeometry, angle_grid, azimuth_cut, elevation_cut
from .netsim import DeploymentConfig, attach_and_run, write_cdf_csv, write_results_csv
from .patterns import ElementPattern, array_factor_total, to_db, total_pattern, write_pattern_csv
from .synthesis import (
    ArraySetup,
    InfeasibleTargetError,
    OptimizerConfig,
    SynthesisTarget,
    assemble_dpbf,
    assemble_spbf,
    design_dpbf,
    design_spbf,
    measured_hpbw,
    normalize_power,
    printed_dpbf,
    printed_spbf,
    taper_loss_db,
)
from .weights import DualPolWeights, read_weights_csv, write_weights_csv

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunManifest:
    command: str
    config_digest: str
    seed: Optional[int]
    version: str
    outputs: list = field(default_factory=list)
    arguments: dict = field(default_factory=dict)

    def write(self, out_dir: Path) -> Path:
        path = out_dir / f"{self.command}_manifest.json"
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")
        return path


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


# -- builtin fixtures --------------------------------------------------------

PROTOS = {
    "single": fixtures.single_element,
    "ula8": fixtures.ula8,
    "ura8x8": fixtures.ura8x8,
    "dpbf-azimuth-proto": fixtures.dpbf_azimuth_proto,
    "dpbf-elevation-sub": fixtures.dpbf_elevation_sub,
}

DESIGNS = {
    "printed-dpbf": printed_dpbf,
    "printed-spbf": printed_spbf,
    "dpbf": design_dpbf,
    "spbf": design_spbf,
}


def _load_weights(args) -> tuple[DualPolWeights, str]:
    if getattr(args, "weights", None):
        return read_weights_csv(args.weights), str(args.weights)
    name = getattr(args, "proto", None) or getattr(args, "fixture", None)
    if name in PROTOS:
        return PROTOS[name](), name
    if name in DESIGNS:
        return DESIGNS[name]().weights, name
    raise ConfigError("give --weights FILE or a builtin --proto/--fixture")


def _geometry_for(w: DualPolWeights, args):
    if w.is_vector:
        return UlaGeometry(w.shape[0], spacing_y=args.spacing_y)
    m, n = w.shape
    return UraGeometry(m, n, spacing_y=args.spacing_y, spacing_z=args.spacing_z,
                       z_phase_factor=args.z_phase_factor)


def _element(args) -> ElementPattern:
    if args.element == "isotropic":
        return ElementPattern.isotropic()
    return ElementPattern.gaussian(args.element_hpbw_az, args.element_hpbw_el)


# -- expand ------------------------------------------------------------------


def cmd_expand(args, out_dir: Path) -> RunManifest:
    w, source = _load_weights(args)
    if args.k < 0 or (args.l is not None and args.l < 0):
        raise ConfigError("--k and --l must be non-negative")
    if w.is_vector and args.l is None:
        out = expand_ula(w, args.k)
    else:
        out = expand_ura(w, args.k, args.l or 0, order=args.order)
    g = _geometry_for(out, args)
    grid = angle_grid(args.grid_deg)
    af = array_factor_total(out, g, grid)
    ripple = float(10 * np.log10(af.max() / af.min())) if af.min() > 0 else float("inf")
    mods = np.abs(np.concatenate([out.w_a.ravel(), out.w_b.ravel()]))
    print(f"shape {out.shape}  ripple {ripple:.3e} dB  "
          f"|w| in [{mods.min():.12g}, {mods.max():.12g}]  mean AF {af.mean():.6g}")
    path = write_weights_csv(out, out_dir / args.output)
    arguments = {"source": source, "k": args.k, "l": args.l, "order": args.order,
                 "grid_deg": args.grid_deg, "spacing_y": args.spacing_y, "spacing_z": args.spacing_z}
    return RunManifest("expand", digest(_canonical(arguments)), args.seed, __version__,
                       [path.name], arguments)


# -- pattern -----------------------------------------------------------------


def cmd_pattern(args, out_dir: Path) -> RunManifest:
    w, source = _load_weights(args)
    g = _geometry_for(w, args)
    p = _element(args)
    res = total_pattern(w, g, p, angle_grid(args.grid_deg))
    outputs = [write_pattern_csv(res, out_dir / args.output).name]
    if args.cuts:
        az = azimuth_cut(args.grid_deg)
        el = elevation_cut(args.grid_deg)
        r_az, r_el = total_pattern(w, g, p, az), total_pattern(w, g, p, el)
        for tag, r, x, lab in (("azimuth", r_az, np.rad2deg(az.phi), "azimuth [deg]"),
                               ("elevation", r_el, 90.0 - np.rad2deg(el.theta), "elevation [deg]")):
            series = {"pol A": (x, to_db(r.power_a)), "pol B": (x, to_db(r.power_b)),
                      "total": (x, to_db(r.total_power))}
            top = float(np.max(to_db(r.total_power)))
            path = svg.line_plot(out_dir / f"{tag}_cut.svg", series, title=f"{tag} cut",
                                 xlabel=lab, ylabel="power [dB]", ylim=(top - 40.0, top + 3.0))
            outputs.append(path.name)
    if args.polar:
        front = angle_grid(args.grid_deg, phi_range=(-90.0, 90.0))
        r = total_pattern(w, g, p, front)
        path = svg.polar_heatmap(out_dir / "polar.svg", np.rad2deg(front.theta), np.rad2deg(front.phi),
                                 r.total_db(), title="total power")
        outputs.append(path.name)
    arguments = {"source": source, "grid_deg": args.grid_deg, "element": args.element,
                 "element_hpbw": [args.element_hpbw_az, args.element_hpbw_el],
                 "spacing_y": args.spacing_y, "spacing_z": args.spacing_z,
                 "z_phase_factor": args.z_phase_factor, "cuts": args.cuts, "polar": args.polar}
    return RunManifest("pattern", digest(_canonical(arguments)), args.seed, __version__, outputs, arguments)


# -- synthesize --------------------------------------------------------------


@dataclass(frozen=True)
class SynthesisConfig:
    """Every field is required; unknown keys are rejected."""

    mode: str
    hpbw_az_deg: float
    hpbw_el_deg: float
    tilt_deg: float
    m_rows: int
    n_cols: int
    spacing_y: float
    spacing_z: float
    element_hpbw_az_deg: float
    element_hpbw_el_deg: float
    subarray_rows: int
    subarray_tilt_deg: float
    p_bs_dbm: float
    iterations: int
    population: int
    initial: str

    @classmethod
    def from_dict(cls, data) -> "SynthesisConfig":
        if not isinstance(data, dict):
            raise ConfigError("synthesis config must be a JSON object")
        names = [f.name for f in fields(cls)]
        unknown = sorted(set(data) - set(names))
        missing = [n for n in names if n not in data]
        if unknown:
            raise ConfigError(f"unknown synthesis fields: {unknown}")
        if missing:
            raise ConfigError(f"missing synthesis fields: {missing}")
        cfg = cls(**data)
        if cfg.mode not in ("dpbf", "spbf"):
            raise ConfigError("mode must be 'dpbf' or 'spbf'")
        if cfg.initial not in ("optimize", "printed"):
            raise ConfigError("initial must be 'optimize' or 'printed'")
        return cfg

    def setup(self) -> ArraySetup:
        g = UraGeometry(self.m_rows, self.n_cols, spacing_y=self.spacing_y, spacing_z=self.spacing_z)
        el = ElementPattern.gaussian(self.element_hpbw_az_deg, self.element_hpbw_el_deg)
        return ArraySetup(g, el, self.subarray_rows, self.subarray_tilt_deg, self.p_bs_dbm)

    def target(self) -> SynthesisTarget:
        return SynthesisTarget(self.hpbw_az_deg, self.hpbw_el_deg, self.tilt_deg)


def cmd_synthesize(args, out_dir: Path) -> RunManifest:
    raw = Path(args.config).read_bytes()
    try:
        cfg = SynthesisConfig.from_dict(json.loads(raw))
        setup, target = cfg.setup(), cfg.target()
    except (TypeError, json.JSONDecodeError) as exc:
        raise ConfigError(str(exc)) from exc
    seed = 0 if args.seed is None else args.seed
    opt = OptimizerConfig(seed, cfg.iterations, cfg.population)
    if cfg.initial == "printed":
        if cfg.mode == "dpbf":
            design = assemble_dpbf(setup, target, fixtures.dpbf_elevation_sub(), fixtures.dpbf_azimuth_proto())
        else:
            design = assemble_spbf(setup, target, fixtures.SPBF_WZ_SUB, fixtures.SPBF_WY, name="spbf")
    else:
        design = (design_dpbf if cfg.mode == "dpbf" else design_spbf)(setup, target, opt)
    hpbw = measured_hpbw(design, setup)
    report = {
        "mode": cfg.mode,
        "initial": cfg.initial,
        "pattern_variance_db2": design.report.pattern_variance_db2,
        "taper_loss_db": design.report.taper_loss_db,
        "radiated_power_dbm": 10 * np.log10(np.sum(np.abs(design.weights.stacked()) ** 2)),
        **hpbw,
    }
    w_path = write_weights_csv(design.weights, out_dir / args.output)
    r_path = out_dir / "synthesis_report.json"
    r_path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"{cfg.mode}: taper loss {report['taper_loss_db']:.4f} dB, "
          f"HPBW az {hpbw['azimuth_hpbw_deg']:.2f} deg, el {hpbw['elevation_hpbw_deg']:.2f} deg")
    return RunManifest("synthesize", digest(raw), seed, __version__, [w_path.name, r_path.name],
                       {"config": str(args.config)})


# -- simulate ----------------------------------------------------------------


def _beam_inputs(args) -> list[tuple[str, DualPolWeights]]:
    beams = []
    for item in args.weights or []:
        name, sep, path = item.partition("=")
        if not sep:
            name, path = Path(item).stem, item
        beams.append((name, read_weights_csv(path)))
    for name in args.fixture or []:
        if name not in DESIGNS:
            raise ConfigError(f"unknown design fixture {name!r}; choose from {sorted(DESIGNS)}")
        beams.append((name, DESIGNS[name]().weights))
    if not beams:
        raise ConfigError("simulate needs at least one --weights or --fixture")
    if len({n for n, _ in beams}) != len(beams):
        raise ConfigError("beam names must be unique")
    return beams


def cmd_simulate(args, out_dir: Path) -> RunManifest:
    raw = Path(args.config).read_bytes()
    try:
        data = json.loads(raw)
        if not isinstance(data, dict):
            raise ConfigError("deployment config must be a JSON object")
        if args.seed is not None:
            data["seed"] = args.seed
        cfg = DeploymentConfig.from_dict(data)
    except (TypeError, json.JSONDecodeError) as exc:
        raise ConfigError(str(exc)) from exc
    p = _element(args)
    beams = {}
    geometry = None
    for name, w in _beam_inputs(args):
        if w.is_vector:
            raise ConfigError(f"beam {name!r} is not a 2D weight matrix")
        g = _geometry_for(w, args)
        if geometry is not None and g != geometry:
            raise ConfigError("all beams must use the same array size")
        geometry = g
        beams[name], _ = normalize_power(w, cfg.bs_power_dbm)
    result = attach_and_run(cfg, beams, geometry, p, workers=args.workers)
    outputs = [write_results_csv(result, out_dir / "results.csv").name,
               write_cdf_csv(result, out_dir / "cdf.csv").name]
    outputs.append(svg.cdf_plot(out_dir / "cdf.svg", {n: c.values for n, c in result.cdfs.items()}).name)
    names = list(beams)
    summary = {"n_ues": len(result.drops), "median_dbm": {n: result.cdfs[n].median for n in names},
               "taper_loss_db": {n: taper_loss_db(beams[n]) for n in names}}
    for n in names:
        print(f"{n}: median {summary['median_dbm'][n]:.3f} dBm over {len(result.drops)} UEs")
    if len(names) >= 2:
        gap = result.median_gap_db(names[0], names[1])
        summary["median_gap_db"] = {"better": names[0], "worse": names[1], "value": gap}
        print(f"median gap {names[0]} - {names[1]}: {gap:.3f} dB")
    s_path = out_dir / "simulation_summary.json"
    s_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    outputs.append(s_path.name)
    arguments = {"config": str(args.config), "weights": args.weights, "fixture": args.fixture,
                 "element": args.element, "spacing_y": args.spacing_y, "spacing_z": args.spacing_z}
    return RunManifest("simulate", digest(raw), cfg.seed, __version__, outputs, arguments)


# -- parser ------------------------------------------------------------------


def _add_array_args(p: argparse.ArgumentParser, spacing_z: float = 0.5) -> None:
    p.add_argument("--spacing-y", type=float, default=0.5, help="column spacing in wavelengths")
    p.add_argument("--spacing-z", type=float, default=spacing_z, help="row spacing in wavelengths")
    p.add_argument("--z-phase-factor", type=float, default=2.0)


def _add_element_args(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--element", choices=("isotropic", "gaussian"), default=default)
    p.add_argument("--element-hpbw-az", type=float, default=90.0)
    p.add_argument("--element-hpbw-el", type=float, default=90.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asibeam", description="ASI broad-beam design tools")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=None, help="random seed (synthesize, simulate)")
    parser.add_argument("--out-dir", type=Path, default=Path("."), help="directory for all outputs")
    parser.add_argument("--grid-deg", type=float, default=1.0, help="angular grid step in degrees")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a protoarray")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--proto", choices=sorted(PROTOS))
    src.add_argument("--weights", type=Path)
    p.add_argument("--k", type=int, default=0, help="horizontal doublings")
    p.add_argument("--l", type=int, default=None, help="vertical doublings (forces a URA)")
    p.add_argument("--order", choices=("vertical_first", "horizontal_first"), default="vertical_first")
    p.add_argument("--output", default="expanded_weights.csv")
    _add_array_args(p)

    p = sub.add_parser("pattern", help="evaluate power patterns")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--fixture", choices=sorted(PROTOS) + sorted(DESIGNS))
    src.add_argument("--weights", type=Path)
    p.add_argument("--output", default="pattern.csv")
    p.add_argument("--cuts", action="store_true", help="write azimuth/elevation cut SVGs")
    p.add_argument("--polar", action="store_true", help="write a half-sphere heatmap SVG")
    _add_array_args(p)
    _add_element_args(p, "isotropic")

    p = sub.add_parser("synthesize", help="design a cell-specific beam")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--output", default="weights.csv")

    p = sub.add_parser("simulate", help="multi-cell received power comparison")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--weights", action="append", metavar="[NAME=]FILE")
    p.add_argument("--fixture", action="append", metavar="DESIGN", help=f"one of {sorted(DESIGNS)}")
    p.add_argument("--workers", type=int, default=1)
    _add_array_args(p, spacing_z=0.6)
    _add_element_args(p, "gaussian")
    return parser


COMMANDS = {"expand": cmd_expand, "pattern": cmd_pattern, "synthesize": cmd_synthesize,
            "simulate": cmd_simulate}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.grid_deg <= 0:
        print("error: --grid-deg must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        manifest = COMMANDS[args.command](args, out_dir)
        manifest.write(out_dir)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, InfeasibleTargetError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
