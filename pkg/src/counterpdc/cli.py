"""Command-line front end.

Every command reads one YAML configuration (``--config``), applies
``--set section.key=value`` overrides, computes, then writes its outputs
atomically into ``--out`` together with a run manifest.  Exit codes:
0 success, 1 configuration error, 2 numerical/solver failure.
"""

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, design, exporters, jsa as jsa_mod, schmidt as schmidt_mod
from .config import RunConfig, load_config, resolved_parameters, to_dict
from .dispersion import wavelength_um_from_omega
from .errors import ConfigError, CounterPdcError

COMMANDS = ("validate", "grating", "angle", "jsa", "schmidt", "optimize-pump",
            "sweep-degenerate", "sweep-tuning")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="counterpdc",
        description="design counterpropagating photon-pair sources in poled waveguides",
    )
    parser.add_argument("--version", action="version", version=f"counterpdc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("validate", "parse the configuration and list every resolved parameter"),
        ("grating", "solve the poling period for the degenerate point"),
        ("angle", "phasematching-ridge angle at the phasematched point"),
        ("jsa", "build the joint spectral amplitude and its marginals"),
        ("schmidt", "decompose the joint amplitude into Schmidt modes"),
        ("optimize-pump", "maximize the leading Schmidt coefficient over pump width"),
        ("sweep-degenerate", "degenerate-source sweep over a wavelength range"),
        ("sweep-tuning", "pump-tuning sweep at fixed grating period"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", type=Path, default=None,
                         help="YAML configuration file (defaults are built in)")
        cmd.add_argument("--out", type=Path, default=Path("out"),
                         help="output directory (default: ./out)")
        cmd.add_argument("--set", dest="overrides", action="append", default=[],
                         metavar="KEY=VALUE",
                         help="override a configuration entry, repeatable")
        cmd.add_argument("--format", choices=("csv", "json"), default="csv",
                         help="data file format (default csv)")
    return parser


def _grating_period(cfg: RunConfig) -> float:
    if cfg.grating_mode == "fixed":
        return cfg.grating_period_um
    degenerate = 2.0 * cfg.pump_center_nm
    return design.grating_period(
        cfg.material_id, cfg.waveguide, cfg.pump_center_nm, degenerate, degenerate
    )


def _finish(out_dir: Path, command: str, cfg: RunConfig, outputs: list[Path]) -> int:
    exporters.write_manifest(
        out_dir / "manifest.json", command, __version__, to_dict(cfg), outputs,
        datetime.now(timezone.utc).isoformat(),
    )
    return 0


def _cmd_validate(cfg: RunConfig, args) -> int:
    for key, value in resolved_parameters(cfg):
        print(f"{key} = {value}")
    return 0


def _cmd_grating(cfg: RunConfig, args) -> int:
    period = _grating_period(cfg)
    degenerate = 2.0 * cfg.pump_center_nm
    print(f"grating_period_um = {period:.6f}")
    out = args.out / "grating.json"
    exporters.write_json(out, {
        "lambda_p_nm": cfg.pump_center_nm,
        "lambda_s_nm": degenerate,
        "lambda_i_nm": degenerate,
        "grating_period_um": period,
        "material": cfg.material_id,
    })
    return _finish(args.out, "grating", cfg, [out])


def _cmd_angle(cfg: RunConfig, args) -> int:
    process = cfg.process_config(_grating_period(cfg))
    om_s, om_i = jsa_mod.solve_phasematched_pair(process)
    theta = jsa_mod.phasematching_angle(process, om_s, om_i)
    lam = wavelength_um_from_omega
    print(f"theta_deg = {theta:.6f}")
    out = args.out / "angle.json"
    exporters.write_json(out, {
        "theta_deg": theta,
        "lambda_s_nm": float(lam(om_s)) * 1e3,
        "lambda_i_nm": float(lam(om_i)) * 1e3,
        "grating_period_um": process.grating_period_um,
    })
    return _finish(args.out, "angle", cfg, [out])


def _build_state(cfg: RunConfig):
    process = cfg.process_config(_grating_period(cfg))
    grid = jsa_mod.auto_grid(
        process, cfg.grid.n_signal, cfg.grid.n_idler, cfg.grid.span_fwhms
    )
    return process, jsa_mod.build_jsa(grid, process)


def _cmd_jsa(cfg: RunConfig, args) -> int:
    process, state = _build_state(cfg)
    signal, idler = jsa_mod.marginal_spectra(state)
    grid = state.grid
    om_s, om_i = grid.mesh()
    pump = jsa_mod.pump_envelope(om_s, om_i, process).astype(complex)
    matching = jsa_mod.phasematching(om_s, om_i, process)
    outputs = []
    if args.format == "csv":
        for name, values in (
            ("jsa", state.amplitude), ("pump_envelope", pump), ("phasematching", matching),
        ):
            path = args.out / f"{name}.csv"
            exporters.write_grid_csv(path, grid, values)
            outputs.append(path)
        for name, spectrum in (("marginal_signal", signal), ("marginal_idler", idler)):
            path = args.out / f"{name}.csv"
            exporters.write_marginal_csv(path, spectrum)
            outputs.append(path)
    else:
        path = args.out / "jsa.json"
        exporters.write_json(path, {
            "omega_s_rad_s": grid.signal.tolist(),
            "omega_i_rad_s": grid.idler.tolist(),
            "re": state.amplitude.real.tolist(),
            "im": state.amplitude.imag.tolist(),
        })
        outputs.append(path)
        for name, spectrum in (("marginal_signal", signal), ("marginal_idler", idler)):
            path = args.out / f"{name}.json"
            rows = list(exporters.marginal_rows(spectrum))
            exporters.write_json(path, {
                "wavelength_nm": [r[0] for r in rows],
                "intensity": [r[1] for r in rows],
            })
            outputs.append(path)
    meta = args.out / "jsa_meta.json"
    exporters.write_json(meta, {
        "config": to_dict(cfg),
        "grating_period_um": process.grating_period_um,
        "grid_shape": list(grid.shape),
        "norm": state.norm(),
        "marginal_fwhm_nm": {
            "signal": jsa_mod.wavelength_fwhm_nm(signal),
            "idler": jsa_mod.wavelength_fwhm_nm(idler),
        },
    })
    outputs.append(meta)
    print(f"jsa: grid {grid.shape[0]}x{grid.shape[1]}, "
          f"marginal FWHM {jsa_mod.wavelength_fwhm_nm(signal):.4f} nm (signal) / "
          f"{jsa_mod.wavelength_fwhm_nm(idler):.4f} nm (idler)")
    return _finish(args.out, "jsa", cfg, outputs)


def _cmd_schmidt(cfg: RunConfig, args) -> int:
    process, state = _build_state(cfg)
    result = schmidt_mod.decompose(state)
    outputs = []
    if args.format == "csv":
        path = args.out / "schmidt.csv"
        exporters.write_schmidt_csv(path, result)
    else:
        path = args.out / "schmidt.json"
        exporters.write_json(path, {
            "n": list(range(result.coefficients.size)),
            "lambda_n": result.coefficients.tolist(),
        })
    outputs.append(path)
    summary = args.out / "schmidt_summary.json"
    exporters.write_json(summary, exporters.schmidt_summary(result))
    outputs.append(summary)
    print(f"schmidt: lambda0 = {result.lambda0:.6f}, purity = {result.purity:.6f}, "
          f"K = {result.schmidt_number:.4f}")
    return _finish(args.out, "schmidt", cfg, outputs)


def _cmd_optimize_pump(cfg: RunConfig, args) -> int:
    process = cfg.process_config(_grating_period(cfg))
    result = design.optimize_pump_width(
        process,
        bounds=(cfg.optimize.min_fwhm_nm, cfg.optimize.max_fwhm_nm),
        n_grid=cfg.optimize.n_grid,
        tol_nm=cfg.optimize.tol_nm,
    )
    history = args.out / "optimize_history.csv"
    exporters.write_csv(history, exporters.HISTORY_HEADER, result.history)
    summary = args.out / "optimize_result.json"
    exporters.write_json(summary, {
        "pump_fwhm_nm": result.pump_fwhm_nm,
        "lambda0": result.lambda0,
        "purity": result.schmidt.purity,
        "schmidt_number": result.schmidt.schmidt_number,
        "boundary_optimum": result.boundary_optimum,
        "bounds_nm": [cfg.optimize.min_fwhm_nm, cfg.optimize.max_fwhm_nm],
        "evaluations": len(result.history),
    })
    print(f"optimize-pump: best pump FWHM {result.pump_fwhm_nm:.4f} nm, "
          f"lambda0 = {result.lambda0:.6f}"
          + (" (boundary optimum)" if result.boundary_optimum else ""))
    return _finish(args.out, "optimize-pump", cfg, [history, summary])


def _write_sweep_outputs(args, stem: str, material: str, rows) -> Path:
    if args.format == "csv":
        path = args.out / f"{stem}_{material}.csv"
        exporters.write_sweep_csv(path, rows)
    else:
        path = args.out / f"{stem}_{material}.json"
        exporters.write_json(path, exporters.sweep_json(rows))
    return path


def _cmd_sweep_degenerate(cfg: RunConfig, args) -> int:
    rows = design.sweep_degenerate(
        cfg.sweep.materials, cfg.waveguide,
        start_nm=cfg.sweep.start_nm, stop_nm=cfg.sweep.stop_nm, steps=cfg.sweep.steps,
        bounds=(cfg.optimize.min_fwhm_nm, cfg.optimize.max_fwhm_nm),
        n_grid=cfg.sweep.n_grid, shape=cfg.phasematching_shape,
        optimize=cfg.sweep.optimize,
    )
    outputs = []
    for material in cfg.sweep.materials:
        chunk = [row for row in rows if row.material_id == material]
        outputs.append(_write_sweep_outputs(args, "sweep_degenerate", material, chunk))
        print(f"sweep-degenerate[{material}]: {len(chunk)} rows, "
              f"{sum(r.status != 'ok' for r in chunk)} failed")
    return _finish(args.out, "sweep-degenerate", cfg, outputs)


def _cmd_sweep_tuning(cfg: RunConfig, args) -> int:
    grating = cfg.grating_period_um if cfg.grating_mode == "fixed" else None
    rows = design.sweep_tuning(
        cfg.material_id, cfg.waveguide, grating_um=grating,
        start_nm=cfg.tuning.start_nm, stop_nm=cfg.tuning.stop_nm,
        steps=cfg.tuning.steps,
        bounds=(cfg.tuning.min_fwhm_nm, cfg.tuning.max_fwhm_nm),
        n_grid=cfg.tuning.n_grid, shape=cfg.phasematching_shape,
    )
    path = _write_sweep_outputs(args, "sweep_tuning", cfg.material_id, rows)
    print(f"sweep-tuning[{cfg.material_id}]: {len(rows)} rows, "
          f"{sum(r.status != 'ok' for r in rows)} failed")
    return _finish(args.out, "sweep-tuning", cfg, [path])


_HANDLERS = {
    "validate": _cmd_validate,
    "grating": _cmd_grating,
    "angle": _cmd_angle,
    "jsa": _cmd_jsa,
    "schmidt": _cmd_schmidt,
    "optimize-pump": _cmd_optimize_pump,
    "sweep-degenerate": _cmd_sweep_degenerate,
    "sweep-tuning": _cmd_sweep_tuning,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.overrides)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    try:
        return _HANDLERS[args.command](cfg, args)
    except (CounterPdcError, FloatingPointError, ValueError) as exc:
        print(f"{args.command} failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
