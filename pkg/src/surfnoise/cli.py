"""Command-line sweeps: ``surfnoise run --config FILE [options]``.

A run evaluates every (model, channel, D0, grid point) combination, writes
one table per (model, channel) and optionally fits power laws.  Config files
are INI style::

    [run]
    mode = dimensionless          ; or physical
    models = local, charge_layer
    channels = alpha_zz
    format = csv

    [grid]
    variable = z0_over_delta      ; k_delta | z0 | omega
    start = 0.01
    stop = 100
    count = 41

    [dimensionless]
    omega_delta_over_c = 1e-6
    d0 = 0, 10, 100
    ; d0_bulk = 1                 ; bulk D/(omega delta^2), defaults to d0

    [physical]
    units = si                    ; si (S/m, m^2/s, m) or gaussian (1/s, cm^2/s, cm)
    sigma = 5.8e7
    diffusion = 0
    surface_diffusion = 0
    omega = 6.28e6                ; fixed when the grid runs over z0
    z0 = 1e-4                     ; fixed when the grid runs over omega
    temperature = 300

    [quadrature]
    rtol = 1e-9
    kappa = 40

Flags override the file.  In dimensionless mode the skin depth is set to
1 cm, so ``im_raw_cgs`` holds Gaussian values for that normalization.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import kernels as kn
from .quadrature import QuadSpec
from .response import Channel, _response, fdt_noise, response_reduced, scaled_from_reduced
from .scales import (
    C_LIGHT,
    MediumSpec,
    ModelKind,
    ParameterDomainError,
    ProbeSpec,
    derive_scales,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARTIAL = 3

NONCONVERGED = "NONCONVERGED"
REFLECTION = "im_eps_im_r"

ELECTRIC_COLUMNS = (
    "z0_over_delta", "model", "D0", "channel",
    "im_scaled", "im_raw_cgs", "quad_rel_err", "local_slope",
)
NOISE_COLUMNS = ("occupation", "heating_factor", "spectral_density", "spectral_density_classical")

GRID_VARIABLES = {
    "dimensionless": ("z0_over_delta", "k_delta"),
    "physical": ("z0", "omega"),
}


class ConfigError(ValueError):
    """Invalid run configuration; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class RunConfig:
    mode: str = "dimensionless"
    models: tuple = (ModelKind.LOCAL,)
    channels: tuple = (Channel.ALPHA_ZZ.value,)
    grid_variable: str = "z0_over_delta"
    grid_start: float = 0.01
    grid_stop: float = 100.0
    grid_count: int = 41
    d0: tuple = (0.0,)
    d0_bulk: float | None = None
    omega_delta_over_c: float = 1e-6
    units: str = "si"
    sigma: float | None = None
    diffusion: float = 0.0
    surface_diffusion: float = 0.0
    omega: float | None = None
    z0: float | None = None
    temperature: float | None = None
    format: str = "csv"
    out: str = "surfnoise_out"
    rtol: float = 1e-9
    kappa: float = 40.0
    figure: str = "none"
    fit: tuple | None = None
    jobs: int = field(default=0, compare=False)

    def grid(self) -> np.ndarray:
        return np.logspace(math.log10(self.grid_start), math.log10(self.grid_stop), self.grid_count)

    def quad(self) -> QuadSpec:
        return QuadSpec(rtol=self.rtol, kappa=self.kappa)

    def d0_values(self, model: ModelKind) -> tuple:
        if self.mode == "physical" or model is ModelKind.LOCAL:
            return (0.0,)
        return self.d0

    def meta(self) -> dict:
        """Resolved config for the output header.

        The worker count and output directory decide how and where a table is
        produced, not what it contains, so they are left out.
        """
        out = {}
        for f in dataclasses.fields(self):
            if f.name in ("jobs", "out"):
                continue
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = [x.value if isinstance(x, ModelKind) else x for x in v]
            out[f.name] = v
        return out


@dataclass
class SweepTable:
    """One (model, channel) table; ``rows`` are dicts keyed by ``columns``."""

    meta: dict
    columns: tuple
    rows: list

    @property
    def primary(self) -> str:
        return self.columns[0]

    def select(self, **match) -> "SweepTable":
        rows = [r for r in self.rows if all(r[k] == v for k, v in match.items())]
        return SweepTable(dict(self.meta), self.columns, rows)


# --------------------------------------------------------------------------
# configuration


def _split(text) -> list[str]:
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        items = []
        for t in text:
            items += _split(t)
        return items
    return [t.strip() for t in str(text).replace(";", ",").split(",") if t.strip()]


def _float(name, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(name, f"expected a number, got {value!r}") from None


def _optional_float(name, value):
    if value is None or str(value).strip() == "":
        return None
    return _float(name, value)


def _figure_preset(name: str) -> dict:
    if name == "fig1":
        return dict(
            mode="dimensionless",
            models="local, charge_layer, continuous_charge",
            channels=REFLECTION,
            grid_variable="k_delta",
            grid_start="1e-2",
            grid_stop="1e4",
            grid_count="61",
            omega_delta_over_c="0.02",
            d0="1",
        )
    if name == "fig2":
        return dict(
            mode="dimensionless",
            models="local, charge_layer",
            channels="alpha_zz",
            grid_variable="z0_over_delta",
            grid_start="1e-2",
            grid_stop="1e2",
            grid_count="41",
            omega_delta_over_c="1e-6",
            d0="0, 10, 100",
        )
    if name in ("none", ""):
        return {}
    raise ConfigError("figure", f"unknown preset {name!r}; use fig1 or fig2")


_FILE_KEYS = {
    ("run", "mode"): "mode",
    ("run", "models"): "models",
    ("run", "channels"): "channels",
    ("run", "format"): "format",
    ("run", "out"): "out",
    ("run", "figure"): "figure",
    ("run", "fit"): "fit",
    ("grid", "variable"): "grid_variable",
    ("grid", "start"): "grid_start",
    ("grid", "stop"): "grid_stop",
    ("grid", "count"): "grid_count",
    ("dimensionless", "omega_delta_over_c"): "omega_delta_over_c",
    ("dimensionless", "d0"): "d0",
    ("dimensionless", "d0_bulk"): "d0_bulk",
    ("physical", "units"): "units",
    ("physical", "sigma"): "sigma",
    ("physical", "diffusion"): "diffusion",
    ("physical", "surface_diffusion"): "surface_diffusion",
    ("physical", "omega"): "omega",
    ("physical", "z0"): "z0",
    ("physical", "temperature"): "temperature",
    ("quadrature", "rtol"): "rtol",
    ("quadrature", "kappa"): "kappa",
}


def read_config_file(path) -> dict:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    except configparser.Error as exc:
        raise ConfigError("config", str(exc)) from None
    raw = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            name = _FILE_KEYS.get((section, key))
            if name is None:
                raise ConfigError(f"{section}.{key}", "unknown setting")
            raw[name] = value
    return raw


def resolve_config(file_values: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """Merge defaults < figure preset < config file < flags and validate."""
    file_values = dict(file_values or {})
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    figure = overrides.get("figure", file_values.get("figure", "none")) or "none"
    raw = _figure_preset(str(figure).strip().lower())
    raw.update(file_values)
    raw.update(overrides)
    raw["figure"] = str(figure).strip().lower()
    return _build(raw)


def _build(raw: dict) -> RunConfig:
    d = RunConfig()
    mode = str(raw.get("mode", d.mode)).strip().lower()
    if mode not in GRID_VARIABLES:
        raise ConfigError("mode", f"must be dimensionless or physical, got {mode!r}")

    models = _split(raw.get("models", "local"))
    if not models:
        raise ConfigError("models", "at least one model is required")
    try:
        models = tuple(dict.fromkeys(ModelKind.parse(m) for m in models))
    except ValueError as exc:
        raise ConfigError("models", str(exc)) from None

    channels = tuple(dict.fromkeys(c.lower() for c in _split(raw.get("channels", ""))))
    if not channels:
        raise ConfigError("channels", "at least one channel is required")
    known = {c.value for c in Channel} | {REFLECTION}
    for c in channels:
        if c not in known:
            raise ConfigError("channels", f"unknown channel {c!r}; choose from {sorted(known)}")

    variable = str(raw.get("grid_variable", d.grid_variable if mode == "dimensionless" else "z0"))
    variable = variable.strip().lower()
    if variable not in GRID_VARIABLES[mode]:
        raise ConfigError("grid.variable", f"{variable!r} is not valid in {mode} mode")
    if (REFLECTION in channels) != (variable == "k_delta") or (
        variable == "k_delta" and len(channels) > 1
    ):
        raise ConfigError("channels", f"{REFLECTION} is the only channel on a k_delta grid")

    start = _float("grid.start", raw.get("grid_start", d.grid_start))
    stop = _float("grid.stop", raw.get("grid_stop", d.grid_stop))
    try:
        count = int(str(raw.get("grid_count", d.grid_count)))
    except ValueError:
        raise ConfigError("grid.count", "expected an integer") from None
    if count < 2:
        raise ConfigError("grid.count", "a log grid needs at least 2 points")
    if not (0 < start < stop and math.isfinite(stop)):
        raise ConfigError("grid.start", "need 0 < start < stop")

    d0 = tuple(_float("d0", x) for x in _split(raw.get("d0", "0")))
    if not d0 or any(x < 0 for x in d0):
        raise ConfigError("d0", "need one or more values >= 0")
    d0 = tuple(sorted(dict.fromkeys(d0)))
    d0_bulk = _optional_float("d0_bulk", raw.get("d0_bulk"))
    if d0_bulk is not None and d0_bulk < 0:
        raise ConfigError("d0_bulk", "must be >= 0")
    w = _float("omega_delta_over_c", raw.get("omega_delta_over_c", d.omega_delta_over_c))
    if not w > 0:
        raise ConfigError("omega_delta_over_c", "must be positive")

    units = str(raw.get("units", d.units)).strip().lower()
    if units not in ("si", "gaussian"):
        raise ConfigError("physical.units", "must be si or gaussian")
    sigma = _optional_float("physical.sigma", raw.get("sigma"))
    diffusion = _float("physical.diffusion", raw.get("diffusion", 0.0))
    surface = _float("physical.surface_diffusion", raw.get("surface_diffusion", 0.0))
    omega = _optional_float("physical.omega", raw.get("omega"))
    z0 = _optional_float("physical.z0", raw.get("z0"))
    temperature = _optional_float("physical.temperature", raw.get("temperature"))
    if temperature is not None and not temperature > 0:
        raise ConfigError("physical.temperature", "must be positive")

    fmt = str(raw.get("format", d.format)).strip().lower()
    if fmt not in ("csv", "json"):
        raise ConfigError("format", "must be csv or json")
    rtol = _float("quadrature.rtol", raw.get("rtol", d.rtol))
    kappa = _float("quadrature.kappa", raw.get("kappa", d.kappa))
    try:
        QuadSpec(rtol=rtol, kappa=kappa)
    except ValueError as exc:
        raise ConfigError("quadrature", str(exc)) from None

    fit = raw.get("fit")
    if fit is not None and not isinstance(fit, tuple):
        parts = _split(str(fit).replace(" ", ","))
        fit = tuple(parts) if parts else None
    if fit is not None:
        if len(fit) != 2:
            raise ConfigError("fit", "needs START STOP")
        fit = (_float("fit", fit[0]), _float("fit", fit[1]))
        if not 0 < fit[0] < fit[1]:
            raise ConfigError("fit", "need 0 < START < STOP")

    try:
        jobs = int(raw.get("jobs") or 0)
    except ValueError:
        raise ConfigError("jobs", "expected an integer") from None
    if jobs < 0:
        raise ConfigError("jobs", "must be >= 1")

    cfg = RunConfig(
        mode=mode, models=models, channels=channels, grid_variable=variable,
        grid_start=start, grid_stop=stop, grid_count=count, d0=d0, d0_bulk=d0_bulk,
        omega_delta_over_c=w, units=units, sigma=sigma, diffusion=diffusion,
        surface_diffusion=surface, omega=omega, z0=z0, temperature=temperature,
        format=fmt, out=str(raw.get("out", d.out)), rtol=rtol, kappa=kappa,
        figure=raw.get("figure", "none"), fit=fit, jobs=jobs,
    )
    _check_combinations(cfg)
    return cfg


def _check_combinations(cfg: RunConfig):
    if Channel.DELTA_B_XX.value in cfg.channels and any(
        m is not ModelKind.CHARGE_LAYER for m in cfg.models
    ):
        raise ConfigError("channels", "delta_b_xx is defined for the charge_layer model only")
    if cfg.mode == "dimensionless":
        if ModelKind.CONTINUOUS_CHARGE in cfg.models:
            bulk = [cfg.d0_bulk] if cfg.d0_bulk is not None else list(cfg.d0)
            if any(b <= 0 for b in bulk):
                raise ConfigError(
                    "d0_bulk" if cfg.d0_bulk is not None else "d0",
                    "the continuous-charge model needs bulk diffusion > 0",
                )
        return
    if cfg.sigma is None or not cfg.sigma > 0:
        raise ConfigError("physical.sigma", "physical mode requires a positive conductivity")
    if cfg.grid_variable == "z0" and (cfg.omega is None or not cfg.omega > 0):
        raise ConfigError("physical.omega", "a z0 sweep requires a positive omega")
    if cfg.grid_variable == "omega" and (cfg.z0 is None or not cfg.z0 > 0):
        raise ConfigError("physical.z0", "an omega sweep requires a positive z0")
    if ModelKind.CONTINUOUS_CHARGE in cfg.models and not cfg.diffusion > 0:
        raise ConfigError("physical.diffusion", "the continuous-charge model needs D > 0")
    if ModelKind.CHARGE_LAYER in cfg.models and cfg.diffusion < 0:
        raise ConfigError("physical.diffusion", "must be >= 0")


# --------------------------------------------------------------------------
# evaluation


def _columns(cfg: RunConfig) -> tuple:
    if cfg.grid_variable == "k_delta":
        return ("k_delta",) + ELECTRIC_COLUMNS[1:]
    if cfg.mode == "physical":
        cols = ("z0_cm", "omega") + ELECTRIC_COLUMNS
        if cfg.temperature is not None:
            cols += NOISE_COLUMNS
        return cols
    return ELECTRIC_COLUMNS


def _task_list(cfg: RunConfig):
    tasks = []
    for model in cfg.models:
        for channel in cfg.channels:
            for d0 in cfg.d0_values(model):
                for x in cfg.grid():
                    tasks.append((cfg, model, channel, d0, float(x)))
    return tasks


def _reflection_row(cfg, model, d0, x):
    bulk = cfg.d0_bulk if cfg.d0_bulk is not None else d0
    p = kn.ReducedMedium.skin_units(cfg.omega_delta_over_c, d0, bulk, model)
    r = complex(kn.r_tm_z_reduced(np.array([x]), p)[0])
    return {
        "k_delta": x, "im_scaled": p.eps.imag * r.imag, "im_raw_cgs": r.imag,
        "quad_rel_err": 0.0, "converged": True,
    }


def _dimensionless_row(cfg, model, channel, d0, x):
    bulk = cfg.d0_bulk if cfg.d0_bulk is not None else d0
    p = kn.ReducedMedium.skin_units(cfg.omega_delta_over_c, d0, bulk, model)
    res = response_reduced(channel, p, x, cfg.quad())
    raw = res.value.imag
    if not Channel(channel).electric:
        raw /= C_LIGHT
    return {
        "z0_over_delta": x, "im_scaled": scaled_from_reduced(channel, p, res.value),
        "im_raw_cgs": raw, "quad_rel_err": res.rel_error, "converged": res.converged,
    }


def _physical_row(cfg, model, channel, x):
    make_medium = MediumSpec.from_si if cfg.units == "si" else MediumSpec
    make_probe = ProbeSpec.from_si if cfg.units == "si" else ProbeSpec
    medium = make_medium(cfg.sigma, cfg.diffusion, cfg.surface_diffusion, kind=model)
    if cfg.grid_variable == "z0":
        probe = make_probe(cfg.omega, x)
    else:
        probe = make_probe(x, cfg.z0)
    scales = derive_scales(medium, probe)
    resp = _response(channel, medium, probe, cfg.quad())
    row = {
        "z0_cm": probe.z0, "omega": probe.omega,
        "z0_over_delta": probe.z0 / scales.skin_depth, "D0": scales.d0,
        "im_scaled": resp.scaled, "im_raw_cgs": resp.value.imag,
        "quad_rel_err": resp.quad.rel_error, "converged": resp.converged,
    }
    if cfg.temperature is not None:
        noise = fdt_noise(resp, cfg.temperature)
        for name in NOISE_COLUMNS:
            row[name] = getattr(noise, name)
    return row


def evaluate_task(task) -> dict:
    cfg, model, channel, d0, x = task
    if channel == REFLECTION:
        row = _reflection_row(cfg, model, d0, x)
    elif cfg.mode == "physical":
        row = _physical_row(cfg, model, channel, x)
    else:
        row = _dimensionless_row(cfg, model, channel, d0, x)
    row.setdefault("D0", d0)
    row["model"] = model.value
    row["channel"] = channel
    return row


def _map(tasks, jobs: int):
    if jobs == 1 or len(tasks) < 2:
        return [evaluate_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps submission order, so the reduction is order-independent of scheduling
        return list(pool.map(evaluate_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def _sort_key(cfg):
    if cfg.mode == "physical":
        key = "z0_cm" if cfg.grid_variable == "z0" else "omega"
        return lambda r: (r[key], r["D0"])
    primary = "k_delta" if cfg.grid_variable == "k_delta" else "z0_over_delta"
    return lambda r: (r[primary], r["D0"])


def _grid_key(cfg):
    if cfg.mode == "physical":
        return "z0_cm" if cfg.grid_variable == "z0" else "omega"
    return "k_delta" if cfg.grid_variable == "k_delta" else "z0_over_delta"


def local_slopes(x, y) -> np.ndarray:
    """Centered d ln|y| / d ln x (one-sided at the ends)."""
    x = np.asarray(x, float)
    y = np.abs(np.asarray(y, float))
    if len(x) < 2:
        return np.zeros(len(x))
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.gradient(np.log(y), np.log(x))
    return np.where(np.isfinite(s), s, 0.0)


def _attach_slopes(rows, grid_key):
    by_d0 = {}
    for r in rows:
        by_d0.setdefault(r["D0"], []).append(r)
    for series in by_d0.values():
        s = local_slopes([r[grid_key] for r in series], [r["im_scaled"] for r in series])
        for r, v in zip(series, s):
            r["local_slope"] = float(v)


def run_sweep(cfg: RunConfig) -> list[SweepTable]:
    jobs = cfg.jobs or os.cpu_count() or 1
    rows = _map(_task_list(cfg), jobs)
    columns = _columns(cfg)
    grid_key = _grid_key(cfg)
    meta = {
        "config": cfg.meta(),
        "units": "gaussian-cgs" + (" (delta = 1 cm)" if cfg.mode == "dimensionless" else ""),
        "scaling": "electric: im_scaled = (8 pi sigma/omega) delta^3 Im alpha; "
        "magnetic: im_scaled = c delta^3 Im B; im_eps_im_r: Im eps * Im r_p",
        "version": __version__,
    }
    tables = []
    for model in cfg.models:
        for channel in cfg.channels:
            sel = [r for r in rows if r["model"] == model.value and r["channel"] == channel]
            sel.sort(key=_sort_key(cfg))
            _attach_slopes(sel, grid_key)
            tables.append(SweepTable(dict(meta, model=model.value, channel=channel), columns, sel))
    return tables


# --------------------------------------------------------------------------
# fitting


def window_indices(table: SweepTable, lo: float, hi: float, key: str | None = None) -> tuple:
    """Index range [i0, i1) of rows whose grid value lies in [lo, hi]."""
    key = key or table.primary
    idx = [i for i, r in enumerate(table.rows) if lo * (1 - 1e-12) <= r[key] <= hi * (1 + 1e-12)]
    if not idx:
        return (0, 0)
    return (idx[0], idx[-1] + 1)


def fit_power_law(table: SweepTable, column: str, window: tuple, x_column: str | None = None):
    """Least-squares slope of ln(value) against ln(x) over rows window[0]:window[1].

    Returns ``(exponent, stderr)``.  Pointwise slopes are in the
    ``local_slope`` column of tables built by :func:`run_sweep`.
    """
    x_column = x_column or table.primary
    rows = table.rows[window[0]:window[1]]
    if len(rows) < 3:
        raise ParameterDomainError(f"fit window needs >= 3 points, got {len(rows)}")
    x = np.array([r[x_column] for r in rows], float)
    y = np.array([r[column] for r in rows], float)
    if np.any(~(y > 0)) or np.any(~(x > 0)):
        raise ParameterDomainError(f"non-positive values in fit window of column {column!r}")
    lx, ly = np.log(x), np.log(y)
    A = np.vstack([lx, np.ones_like(lx)]).T
    coef, *_ = np.linalg.lstsq(A, ly, rcond=None)
    resid = ly - A @ coef
    dof = len(x) - 2
    sxx = np.sum((lx - lx.mean()) ** 2)
    stderr = math.sqrt(float(resid @ resid) / dof / sxx) if dof > 0 else 0.0
    return float(coef[0]), stderr


def _fits(table: SweepTable, window) -> list[dict]:
    out = []
    for d0 in sorted({r["D0"] for r in table.rows}):
        series = table.select(D0=d0)
        key = "z0_over_delta" if "z0_over_delta" in table.columns else table.primary
        lo, hi = window
        idx = window_indices(series, lo, hi, key)
        try:
            e, s = fit_power_law(series, "im_scaled", idx, key)
            out.append({"D0": d0, "exponent": e, "stderr": s, "points": idx[1] - idx[0]})
        except ParameterDomainError as exc:
            out.append({"D0": d0, "error": str(exc)})
    return out


# --------------------------------------------------------------------------
# output


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return "%.17g" % value


def format_csv(table: SweepTable) -> str:
    lines = [f"# surfnoise {table.meta['version']}"]
    for key in ("units", "scaling", "model", "channel"):
        lines.append(f"# {key}: {table.meta[key]}")
    lines.append("# config: " + json.dumps(table.meta["config"], sort_keys=True))
    for fit in table.meta.get("fits", []):
        lines.append("# fit: " + json.dumps(fit, sort_keys=True))
    lines.append(",".join(table.columns))
    for r in table.rows:
        cells = []
        for c in table.columns:
            v = r[c]
            if not r["converged"] and c in ("im_scaled", "im_raw_cgs", "local_slope") + NOISE_COLUMNS:
                v = NONCONVERGED
            cells.append(_fmt(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def format_json(table: SweepTable) -> str:
    rows = []
    for r in table.rows:
        row = {}
        for c in table.columns:
            v = r[c]
            if not r["converged"] and c in ("im_scaled", "im_raw_cgs", "local_slope") + NOISE_COLUMNS:
                v = NONCONVERGED
            row[c] = v
        rows.append(row)
    return json.dumps({"meta": table.meta, "rows": rows}, indent=1, sort_keys=True) + "\n"


def write_tables(tables, cfg: RunConfig) -> list[Path]:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for t in tables:
        path = out / f"{t.meta['model']}_{t.meta['channel']}.{cfg.format}"
        text = format_csv(t) if cfg.format == "csv" else format_json(t)
        path.write_text(text)
        paths.append(path)
    return paths


def run(cfg: RunConfig) -> int:
    tables = run_sweep(cfg)
    if cfg.fit is not None:
        for t in tables:
            t.meta["fits"] = _fits(t, cfg.fit)
    paths = write_tables(tables, cfg)
    partial = 0
    for t, path in zip(tables, paths):
        bad = sum(not r["converged"] for r in t.rows)
        partial += bad
        print(f"wrote {path} ({len(t.rows)} rows{', %d non-converged' % bad if bad else ''})")
        for fit in t.meta.get("fits", []):
            if "error" in fit:
                print(f"  fit D0={fit['D0']:g}: {fit['error']}")
            else:
                print(f"  fit D0={fit['D0']:g}: exponent {fit['exponent']:.4f} +- {fit['stderr']:.2g}")
    return EXIT_PARTIAL if partial else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfnoise", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="evaluate a sweep and write tables")
    r.add_argument("--config", help="INI run configuration")
    r.add_argument("--model", action="append", help="model(s), repeatable or comma separated")
    r.add_argument("--channel", action="append", help="channel(s), repeatable or comma separated")
    r.add_argument("--figure", choices=("fig1", "fig2", "none"))
    r.add_argument("--fit", nargs=2, metavar=("START", "STOP"), help="fit window in grid units")
    r.add_argument("--format", choices=("csv", "json"))
    r.add_argument("--out", help="output directory")
    r.add_argument("--jobs", type=int, help="worker processes (default: all CPUs)")
    r.add_argument("--tol", help="relative quadrature tolerance")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config is None and args.figure in (None, "none"):
            raise ConfigError("config", "give --config FILE or --figure")
        file_values = read_config_file(args.config) if args.config else {}
        overrides = {
            "models": ",".join(args.model) if args.model else None,
            "channels": ",".join(args.channel) if args.channel else None,
            "figure": args.figure,
            "fit": tuple(args.fit) if args.fit else None,
            "format": args.format,
            "out": args.out,
            "jobs": args.jobs,
            "rtol": args.tol,
        }
        cfg = resolve_config(file_values, overrides)
    except ConfigError as exc:
        print(f"surfnoise: config error in '{exc.field}': {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
