"""Run configuration: one YAML file drives every command.

Units in the file are human-facing (nm, um, mm); conversion to internal
units happens here at parse time only.  Unknown keys are rejected with their
full dotted path, and the loaded configuration round-trips losslessly
through :func:`to_yaml` / :func:`load_config`.  The schema is documented in
``docs/config.md``.
"""

from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from .dispersion import available_materials, get_material
from .errors import ConfigError
from .jsa import PhasematchingShape, ProcessConfig
from .waveguide import WaveguideGeometry


@dataclass(frozen=True)
class GridSettings:
    n_signal: int = 512
    n_idler: int = 512
    span_fwhms: float = 6.0


@dataclass(frozen=True)
class OptimizeSettings:
    min_fwhm_nm: float = 0.02
    max_fwhm_nm: float = 0.35
    tol_nm: float = 1e-3
    n_grid: int = 256


@dataclass(frozen=True)
class SweepSettings:
    materials: tuple[str, ...] = ("LN_e", "KTP_z")
    start_nm: float = 800.0
    stop_nm: float = 1600.0
    steps: int = 17
    optimize: bool = True
    n_grid: int = 256


@dataclass(frozen=True)
class TuningSettings:
    start_nm: float = 770.0
    stop_nm: float = 780.0
    steps: int = 11
    min_fwhm_nm: float = 0.22
    max_fwhm_nm: float = 0.34
    n_grid: int = 256


@dataclass(frozen=True)
class RunConfig:
    """Validated content of one configuration file."""

    material_id: str = "LN_e"
    waveguide: WaveguideGeometry = field(default_factory=WaveguideGeometry)
    pump_center_nm: float = 775.0
    pump_fwhm_nm: float = 0.58
    grating_mode: str = "solve"
    grating_period_um: float | None = None
    phasematching_shape: PhasematchingShape = PhasematchingShape.SINC_EXACT
    gaussian_gamma: float = 0.193
    grid: GridSettings = field(default_factory=GridSettings)
    optimize: OptimizeSettings = field(default_factory=OptimizeSettings)
    sweep: SweepSettings = field(default_factory=SweepSettings)
    tuning: TuningSettings = field(default_factory=TuningSettings)

    def process_config(self, grating_period_um: float) -> ProcessConfig:
        """Internal process description at a concrete grating period."""
        return ProcessConfig(
            material=self.material_id,
            geometry=self.waveguide,
            pump_center_nm=self.pump_center_nm,
            pump_fwhm_nm=self.pump_fwhm_nm,
            grating_period_um=grating_period_um,
            phasematching_shape=self.phasematching_shape,
            gaussian_gamma=self.gaussian_gamma,
        )


def _require(condition: bool, key: str, message: str) -> None:
    if not condition:
        raise ConfigError(f"{key}: {message}")


def _section(raw: dict, name: str, known: tuple[str, ...]) -> dict:
    section = raw.get(name, {})
    if section is None:
        section = {}
    if not isinstance(section, dict):
        raise ConfigError(f"{name}: expected a mapping")
    for key in section:
        if key not in known:
            raise ConfigError(f"{name}.{key}: unknown key")
    return section


def _number(section: dict, section_name: str, key: str, default, *, positive=True):
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section_name}.{key}: expected a number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(f"{section_name}.{key}: must be > 0, got {value!r}")
    return float(value)


def _integer(section: dict, section_name: str, key: str, default, minimum=1) -> int:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{section_name}.{key}: expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{section_name}.{key}: must be >= {minimum}")
    return value


_TOP_LEVEL = ("material", "waveguide", "pump", "grating", "phasematching",
              "grid", "optimize", "sweep", "tuning")


def from_dict(raw: dict) -> RunConfig:
    """Build a validated :class:`RunConfig` from a parsed mapping."""
    if not isinstance(raw, dict):
        raise ConfigError("configuration root: expected a mapping")
    for key in raw:
        if key not in _TOP_LEVEL:
            raise ConfigError(f"{key}: unknown key")

    material = _section(raw, "material", ("id",))
    material_id = material.get("id", "LN_e")
    _require(isinstance(material_id, str), "material.id", "expected a string")
    _require(
        material_id in available_materials(),
        "material.id",
        f"unknown material {material_id!r}; available: {', '.join(available_materials())}",
    )

    wg = _section(raw, "waveguide", ("width_um", "height_um", "length_mm", "index_step"))
    try:
        geometry = WaveguideGeometry(
            width_um=_number(wg, "waveguide", "width_um", 4.0),
            height_um=_number(wg, "waveguide", "height_um", 4.0),
            length_mm=_number(wg, "waveguide", "length_mm", 5.0),
            index_step=_number(wg, "waveguide", "index_step", 0.01),
        )
    except ValueError as exc:
        raise ConfigError(f"waveguide: {exc}") from exc

    pump = _section(raw, "pump", ("center_nm", "fwhm_nm"))
    pump_center_nm = _number(pump, "pump", "center_nm", 775.0)
    pump_fwhm_nm = _number(pump, "pump", "fwhm_nm", 0.58)

    grating = _section(raw, "grating", ("mode", "period_um"))
    grating_mode = grating.get("mode", "solve")
    _require(
        grating_mode in ("solve", "fixed"),
        "grating.mode",
        f"expected 'solve' or 'fixed', got {grating_mode!r}",
    )
    grating_period_um = None
    if grating_mode == "fixed":
        _require("period_um" in grating, "grating.period_um",
                 "required when grating.mode is 'fixed'")
        grating_period_um = _number(grating, "grating", "period_um", None)
    elif "period_um" in grating and grating["period_um"] is not None:
        grating_period_um = _number(grating, "grating", "period_um", None)

    pm = _section(raw, "phasematching", ("shape", "gamma"))
    shape_raw = pm.get("shape", "sinc_exact")
    try:
        shape = PhasematchingShape(shape_raw)
    except ValueError:
        raise ConfigError(
            f"phasematching.shape: expected 'sinc_exact' or 'gaussian_approx', "
            f"got {shape_raw!r}"
        ) from None
    gamma = _number(pm, "phasematching", "gamma", 0.193)

    grid_raw = _section(raw, "grid", ("n_signal", "n_idler", "span_fwhms"))
    grid = GridSettings(
        n_signal=_integer(grid_raw, "grid", "n_signal", 512, minimum=2),
        n_idler=_integer(grid_raw, "grid", "n_idler", 512, minimum=2),
        span_fwhms=_number(grid_raw, "grid", "span_fwhms", 6.0),
    )

    opt_raw = _section(raw, "optimize", ("min_fwhm_nm", "max_fwhm_nm", "tol_nm", "n_grid"))
    optimize = OptimizeSettings(
        min_fwhm_nm=_number(opt_raw, "optimize", "min_fwhm_nm", 0.02),
        max_fwhm_nm=_number(opt_raw, "optimize", "max_fwhm_nm", 0.35),
        tol_nm=_number(opt_raw, "optimize", "tol_nm", 1e-3),
        n_grid=_integer(opt_raw, "optimize", "n_grid", 256, minimum=2),
    )
    _require(optimize.min_fwhm_nm < optimize.max_fwhm_nm, "optimize.min_fwhm_nm",
             "must be below optimize.max_fwhm_nm")

    sweep_raw = _section(raw, "sweep",
                         ("materials", "start_nm", "stop_nm", "steps", "optimize",
                          "n_grid"))
    sweep_materials = sweep_raw.get("materials", ["LN_e", "KTP_z"])
    _require(
        isinstance(sweep_materials, (list, tuple)) and len(sweep_materials) > 0,
        "sweep.materials", "expected a non-empty list of material ids",
    )
    for mat in sweep_materials:
        _require(mat in available_materials(), "sweep.materials",
                 f"unknown material {mat!r}")
    sweep_optimize = sweep_raw.get("optimize", True)
    _require(isinstance(sweep_optimize, bool), "sweep.optimize", "expected a boolean")
    sweep = SweepSettings(
        materials=tuple(sweep_materials),
        start_nm=_number(sweep_raw, "sweep", "start_nm", 800.0),
        stop_nm=_number(sweep_raw, "sweep", "stop_nm", 1600.0),
        steps=_integer(sweep_raw, "sweep", "steps", 17, minimum=2),
        optimize=sweep_optimize,
        n_grid=_integer(sweep_raw, "sweep", "n_grid", 256, minimum=2),
    )
    _require(sweep.start_nm < sweep.stop_nm, "sweep.start_nm",
             "must be below sweep.stop_nm")

    tuning_raw = _section(raw, "tuning",
                          ("start_nm", "stop_nm", "steps", "min_fwhm_nm",
                           "max_fwhm_nm", "n_grid"))
    tuning = TuningSettings(
        start_nm=_number(tuning_raw, "tuning", "start_nm", 770.0),
        stop_nm=_number(tuning_raw, "tuning", "stop_nm", 780.0),
        steps=_integer(tuning_raw, "tuning", "steps", 11, minimum=2),
        min_fwhm_nm=_number(tuning_raw, "tuning", "min_fwhm_nm", 0.22),
        max_fwhm_nm=_number(tuning_raw, "tuning", "max_fwhm_nm", 0.34),
        n_grid=_integer(tuning_raw, "tuning", "n_grid", 256, minimum=2),
    )
    _require(tuning.start_nm < tuning.stop_nm, "tuning.start_nm",
             "must be below tuning.stop_nm")
    _require(tuning.min_fwhm_nm < tuning.max_fwhm_nm, "tuning.min_fwhm_nm",
             "must be below tuning.max_fwhm_nm")

    cfg = RunConfig(
        material_id=material_id,
        waveguide=geometry,
        pump_center_nm=pump_center_nm,
        pump_fwhm_nm=pump_fwhm_nm,
        grating_mode=grating_mode,
        grating_period_um=grating_period_um,
        phasematching_shape=shape,
        gaussian_gamma=gamma,
        grid=grid,
        optimize=optimize,
        sweep=sweep,
        tuning=tuning,
    )
    _check_dispersion_validity(cfg)
    return cfg


def _check_dispersion_validity(cfg: RunConfig) -> None:
    model = get_material(cfg.material_id)
    lo, hi = model.valid_range_um
    pump_um = cfg.pump_center_nm * 1e-3
    if not (lo <= pump_um <= hi):
        raise ConfigError(
            f"pump.center_nm: {cfg.pump_center_nm} nm is outside the dispersion "
            f"validity window [{lo}, {hi}] um of {cfg.material_id}"
        )
    degenerate_um = 2.0 * pump_um
    if not (lo <= degenerate_um <= hi):
        raise ConfigError(
            f"pump.center_nm: degenerate photons at {degenerate_um:.4g} um fall "
            f"outside the dispersion validity window [{lo}, {hi}] um of "
            f"{cfg.material_id}"
        )


def apply_overrides(raw: dict, overrides: list[str]) -> dict:
    """Apply repeatable ``section.key=value`` overrides to a raw mapping."""
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r}: expected key=value")
        path, _, text = item.partition("=")
        keys = path.strip().split(".")
        if not all(keys):
            raise ConfigError(f"override {item!r}: empty key component")
        try:
            value = yaml.safe_load(text)
        except yaml.YAMLError:
            raise ConfigError(f"override {item!r}: unparseable value") from None
        node = raw
        for key in keys[:-1]:
            node = node.setdefault(key, {})
            if not isinstance(node, dict):
                raise ConfigError(f"override {item!r}: {key} is not a section")
        node[keys[-1]] = value
    return raw


def load_config(path: str | Path | None, overrides: list[str] | None = None) -> RunConfig:
    """Load, override and validate a configuration file.

    ``path=None`` starts from the built-in defaults (the reference telecom
    source).
    """
    if path is None:
        raw: dict = {}
    else:
        text = Path(path).read_text()
        try:
            raw = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path}: not valid YAML: {exc}") from exc
        if raw is None:
            raw = {}
    raw = apply_overrides(raw, list(overrides or []))
    return from_dict(raw)


def to_dict(cfg: RunConfig) -> dict:
    """Nested plain-type mapping mirroring the file schema."""
    return {
        "material": {"id": cfg.material_id},
        "waveguide": {
            "width_um": cfg.waveguide.width_um,
            "height_um": cfg.waveguide.height_um,
            "length_mm": cfg.waveguide.length_mm,
            "index_step": cfg.waveguide.index_step,
        },
        "pump": {"center_nm": cfg.pump_center_nm, "fwhm_nm": cfg.pump_fwhm_nm},
        "grating": {"mode": cfg.grating_mode, "period_um": cfg.grating_period_um},
        "phasematching": {
            "shape": cfg.phasematching_shape.value,
            "gamma": cfg.gaussian_gamma,
        },
        "grid": asdict(cfg.grid),
        "optimize": asdict(cfg.optimize),
        "sweep": {**asdict(cfg.sweep), "materials": list(cfg.sweep.materials)},
        "tuning": asdict(cfg.tuning),
    }


def to_yaml(cfg: RunConfig) -> str:
    return yaml.safe_dump(to_dict(cfg), sort_keys=False)


def resolved_parameters(cfg: RunConfig) -> list[tuple[str, object]]:
    """Flat ``(dotted key, value)`` listing of every resolved parameter."""
    out: list[tuple[str, object]] = []

    def walk(prefix: str, node):
        if isinstance(node, dict):
            for key, value in node.items():
                walk(f"{prefix}.{key}" if prefix else key, value)
        else:
            out.append((prefix, node))

    walk("", to_dict(cfg))
    return out
