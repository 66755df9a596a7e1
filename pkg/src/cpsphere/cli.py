"""Command-line front end: single-point runs, sweeps, and figure presets.

Configuration arrives from a line-based ``key = value`` file and/or
command-line flags (flags win).  Scalar values carry unit suffixes
(``10um``, ``9eV``, ``35meV``, ``300K``); energies are converted to
angular frequencies via hbar.  Results are written as CSV with a single
``# cp-sphere v1`` header line carrying the column names, every value in
fixed 17-significant-digit scientific notation so identical configs give
byte-identical files.  Exit status: 0 success, 2 regime error, 3
convergence error, 1 configuration/usage error.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.constants import c as c_light, eV, epsilon_0, hbar

from . import materials, potential
from .errors import ConvergenceError, CpSphereError, RegimeError
from .greens import SphereSystem
from .potential import ThermalState, TransitionSpec

CSV_MAGIC = "# cp-sphere v1"

_LENGTH_UNITS = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "nm": 1e-9}
_ENERGY_UNITS = {"eV": eV / hbar, "meV": 1e-3 * eV / hbar,
                 "ueV": 1e-6 * eV / hbar}

_METHODS = ("exact", "zero-t", "invariant", "closed-form", "spectroscopic",
            "dielectric", "compare")
_SWEEP_VARS = ("T", "r", "R", "x")

#: config keys, with the kind used to parse their values
_KEYS = {
    "R": "length", "r": "length",
    "material": "str", "omega_p": "energy", "gamma": "energy",
    "eps": "float",
    "transition_energy": "energy_signed", "x": "float", "d2": "float",
    "temperature": "temperature",
    "var": "str", "from": "raw", "to": "raw", "points": "int",
    "log": "bool",
    "method": "str", "tol": "float",
    "out": "str", "plot": "str", "workers": "int",
}


class ConfigError(CpSphereError, ValueError):
    """Invalid or inconsistent run configuration."""


def _split_unit(text):
    """Split '10um' into ('10', 'um'); bare numbers get an empty unit."""
    i = len(text)
    while i > 0 and (text[i - 1].isalpha() or text[i - 1] == "µ"):
        i -= 1
    return text[:i].strip(), text[i:].replace("µ", "u")


def parse_quantity(text, kind, key="value"):
    """Parse a unit-suffixed scalar into SI (lengths m, energies rad/s, K)."""
    text = text.strip()
    if kind == "str" or kind == "raw":
        return text
    if kind == "bool":
        if text.lower() in ("1", "true", "yes", "on"):
            return True
        if text.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {text!r}")
    num, unit = _split_unit(text)
    try:
        if kind == "int":
            return int(num) if not unit else int(float(num))
        value = float(num)
    except ValueError:
        raise ConfigError(f"{key}: malformed number {text!r}") from None
    if kind == "float":
        if unit:
            raise ConfigError(f"{key}: unexpected unit {unit!r} on "
                              f"dimensionless value {text!r}")
        return value
    if kind == "length":
        if unit not in _LENGTH_UNITS:
            raise ConfigError(f"{key}: unknown length unit {unit!r} "
                              f"(use m, mm, um, nm)")
        return value * _LENGTH_UNITS[unit]
    if kind in ("energy", "energy_signed"):
        if unit not in _ENERGY_UNITS:
            raise ConfigError(f"{key}: unknown energy unit {unit!r} "
                              f"(use eV, meV, ueV)")
        omega = value * _ENERGY_UNITS[unit]
        if kind == "energy" and omega <= 0:
            raise ConfigError(f"{key}: must be positive, got {text!r}")
        return omega
    if kind == "temperature":
        if unit not in ("", "K"):
            raise ConfigError(f"{key}: unknown temperature unit {unit!r}")
        return value
    raise ConfigError(f"{key}: unhandled kind {kind!r}")


def _read_config_file(path):
    """Read a line-based key = value file into a raw-string dict."""
    raw = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', "
                                  f"got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            raw[key] = value.strip()
    return raw


class RunConfig:
    """Validated run parameters assembled from config file and flags."""

    def __init__(self, raw, mode):
        self.mode = mode  # "compute" or "sweep"
        values = {}
        for key, text in raw.items():
            values[key] = parse_quantity(text, _KEYS[key], key=key)
        self.values = values
        self._validate()

    def _req(self, key):
        if key not in self.values:
            raise ConfigError(f"missing required key {key!r}")
        return self.values[key]

    def _validate(self):
        v = self.values
        radius, dist = self._req("R"), self._req("r")
        try:
            self.system = SphereSystem(radius, dist)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

        kind = v.get("material")
        if kind is None:
            raise ConfigError("missing required key 'material' "
                              "(pc, drude or dielectric)")
        if kind == "pc":
            self.model = materials.PermittivityModel.perfect_conductor()
        elif kind == "drude":
            if "omega_p" not in v or "gamma" not in v:
                raise ConfigError("material = drude requires keys "
                                  "'omega_p' and 'gamma'")
            self.model = materials.PermittivityModel.drude(
                v["omega_p"], v["gamma"])
        elif kind == "dielectric":
            if "eps" not in v:
                raise ConfigError("material = dielectric requires key 'eps'")
            self.model = materials.PermittivityModel.dielectric(v["eps"])
        else:
            raise ConfigError(f"unknown material {kind!r} "
                              f"(use pc, drude or dielectric)")

        if ("transition_energy" in v) == ("x" in v):
            raise ConfigError("give exactly one of 'transition_energy' "
                              "(signed eV) or 'x' (retardation parameter)")
        self.omega = v.get("transition_energy")
        self.x = v.get("x")
        if self.omega is not None and self.omega == 0:
            raise ConfigError("transition_energy must be nonzero")
        if self.x is not None and self.x == 0:
            raise ConfigError("x must be nonzero")

        self.d2 = v.get("d2")
        if self.d2 is not None and self.d2 <= 0:
            raise ConfigError("d2 must be > 0")
        self.reduced = self.d2 is None

        self.method = v.get("method", "exact")
        if self.method not in _METHODS:
            raise ConfigError(f"unknown method {self.method!r} "
                              f"(use one of {', '.join(_METHODS)})")
        self.tol = v.get("tol", 1e-8)
        if not 1e-12 <= self.tol <= 1e-3:
            raise ConfigError("tol must lie in [1e-12, 1e-3]")
        self.out = v.get("out")
        self.plot = v.get("plot")
        self.workers = v.get("workers", _default_workers())
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

        if self.mode == "compute":
            self.temperature = v.get("temperature", 0.0)
            if self.temperature < 0:
                raise ConfigError("temperature must be >= 0")
            return

        var = v.get("var")
        if var not in _SWEEP_VARS:
            raise ConfigError(f"sweep requires var in {_SWEEP_VARS}, "
                              f"got {var!r}")
        self.var = var
        kind = {"T": "temperature", "r": "length",
                "R": "length", "x": "float"}[var]
        lo = parse_quantity(str(self._req("from")), kind, key="from")
        hi = parse_quantity(str(self._req("to")), kind, key="to")
        if not lo < hi:
            raise ConfigError(f"sweep requires from < to, "
                              f"got {lo!r} >= {hi!r}")
        points = self._req("points")
        if points < 2:
            raise ConfigError("sweep requires points >= 2")
        self.log = v.get("log", False)
        if self.log and lo <= 0:
            raise ConfigError("log-spaced sweep requires from > 0")
        if self.log:
            self.grid = np.geomspace(lo, hi, points)
        else:
            self.grid = np.linspace(lo, hi, points)
        self.temperature = v.get("temperature", 0.0)
        if var != "T" and self.temperature < 0:
            raise ConfigError("temperature must be >= 0")


def _default_workers():
    env = os.environ.get("CP_SPHERE_WORKERS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def _point_inputs(cfg, var=None, value=None):
    """Resolve (system, transition, state) for one evaluation point."""
    radius, dist = cfg.system.radius, cfg.system.distance
    temperature = cfg.temperature
    if var == "T":
        temperature = float(value)
    elif var == "r":
        dist = float(value)
    elif var == "R":
        radius = float(value)
    sys_ = SphereSystem(radius, dist)
    if var == "x":
        omega = float(value) * c_light / sys_.distance
    elif cfg.omega is not None:
        omega = cfg.omega
    else:
        omega = cfg.x * c_light / sys_.distance
    d2 = cfg.d2 if cfg.d2 is not None else 1.0
    return sys_, TransitionSpec(d2, omega), ThermalState(temperature)


def _evaluate_point(cfg, sys_, tr, state):
    """One evaluation; returns an ordered (column, value) row."""
    suffix = "red" if cfg.reduced else "J"

    def out(u):
        if cfg.reduced:
            return u * 24.0 * np.pi * epsilon_0 * sys_.distance**3 / tr.d2
        return u

    if cfg.method == "compare":
        exact = potential.u_exact(tr, sys_, cfg.model, state, tol=cfg.tol).total
        if cfg.model.kind == materials.DIELECTRIC:
            closed = potential.u_approx_dielectric(
                tr, sys_, cfg.model.eps_static, state, tol=cfg.tol)
        else:
            closed = potential.u_approx_metal(tr, sys_, cfg.model, state).total
        u0 = potential.u_invariant(tr, sys_)
        return [
            (f"U_exact_{suffix}", out(exact)),
            (f"U_closed_{suffix}", out(closed)),
            (f"U0_{suffix}", out(u0)),
            ("rel_closed", (closed - exact) / abs(exact)),
            ("rel_U0", (u0 - exact) / abs(exact)),
        ]
    value = potential._evaluate(tr, sys_, cfg.model, state, cfg.method,
                                cfg.tol)
    return [(f"U_{suffix}", out(value))]


def run(cfg):
    """Execute a validated config; returns the list of CSV rows."""
    if cfg.mode == "compute":
        sys_, tr, state = _point_inputs(cfg)
        row = [("T_K", state.T), ("x", abs(sys_.x_of(tr.omega)))]
        row += _evaluate_point(cfg, sys_, tr, state)
        rows = [row]
    else:
        def eval_one(value):
            sys_, tr, state = _point_inputs(cfg, cfg.var, value)
            label = "T_K" if cfg.var == "T" else cfg.var
            row = [(label, float(value))]
            if cfg.var != "x":
                row.append(("x", abs(sys_.x_of(tr.omega))))
            row += _evaluate_point(cfg, sys_, tr, state)
            return row

        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                rows = list(pool.map(eval_one, cfg.grid))
        else:
            rows = [eval_one(v) for v in cfg.grid]
    if cfg.out:
        emit_csv(rows, cfg.out)
    else:
        _write_csv(rows, sys.stdout)
    if cfg.plot:
        emit_plot(rows, cfg.plot, logx=getattr(cfg, "log", False))
    return rows


def _write_csv(rows, fh):
    if rows:
        columns = [k for k, _ in rows[0]]
        fh.write(f"{CSV_MAGIC} {','.join(columns)}\n")
    else:
        fh.write(f"{CSV_MAGIC}\n")
    for row in rows:
        fh.write(",".join("%.16e" % v for _, v in row) + "\n")


def emit_csv(rows, path):
    """Write rows as CSV: one header line with the column names, then data."""
    with open(path, "w") as fh:
        _write_csv(rows, fh)


def read_csv(path):
    """Read an emit_csv file back into (columns, list-of-row-dicts)."""
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith(CSV_MAGIC):
            raise ConfigError(f"{path}: not a cp-sphere CSV file")
        tail = header[len(CSV_MAGIC):].strip()
        columns = tail.split(",") if tail else []
        rows = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            values = [float(tok) for tok in line.split(",")]
            rows.append(dict(zip(columns, values)))
    return columns, rows


def emit_plot(rows, path, logx=False):
    """Minimal SVG line chart of every U column against the first column."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not rows:
        return
    columns = [k for k, _ in rows[0]]
    xcol = columns[0]
    xs = [dict(row)[xcol] for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for col in columns[1:]:
        if not (col.startswith("U") or col.startswith("rel")
                or col.startswith("ratio")):
            continue
        ax.plot(xs, [dict(row)[col] for row in rows], label=col)
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel(xcol)
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


# ---------------------------------------------------------------------------
# figure presets

_PRESET_T_GRID = tuple(float(t) for t in range(0, 601, 50))
_PRESET_X_VALUES = (0.1, 0.01, 0.001)


def _preset_metal(radius, distance, tol, workers):
    """Gold sphere sweep: exact vs closed form vs invariant term."""
    model = materials.PermittivityModel.drude(9.0 * eV / hbar,
                                              35e-3 * eV / hbar)
    sys_ = SphereSystem(radius, distance)

    def eval_one(args):
        x, temperature = args
        omega = x * c_light / distance
        tr = TransitionSpec(1.0, omega)
        state = ThermalState(temperature)
        exact = potential.u_exact(tr, sys_, model, state, tol=tol).total
        try:
            closed = potential.u_approx_metal(tr, sys_, model, state).total
        except RegimeError:
            # the perturbative form has no validity claim here; keep the
            # exact row and mark the closed-form columns as missing
            closed = float("nan")
        u0 = potential.u_invariant(tr, sys_)
        return [
            ("T_K", temperature), ("x", x),
            ("U_exact_J", exact), ("U_closed_J", closed), ("U0_J", u0),
            ("ratio_exact_closed", exact / closed),
            ("ratio_exact_U0", exact / u0),
        ]

    points = [(x, t) for x in _PRESET_X_VALUES for t in _PRESET_T_GRID]
    return _map_points(eval_one, points, workers)


def _preset_dielectric(radius, distance, eps, x, tol, workers):
    """Dielectric sphere sweep: exact vs multipole series with/without
    the quadratic frequency correction."""
    model = materials.PermittivityModel.dielectric(eps)
    sys_ = SphereSystem(radius, distance)

    def eval_one(temperature):
        omega = x * c_light / distance
        tr = TransitionSpec(1.0, omega)
        state = ThermalState(temperature)
        exact = potential.u_exact(tr, sys_, model, state, tol=tol).total
        series = potential.u_approx_dielectric(tr, sys_, eps, state, tol=tol)
        static = potential.u_approx_dielectric(tr, sys_, eps, state, tol=tol,
                                               correction=False)
        return [
            ("T_K", temperature), ("x", x),
            ("U_exact_J", exact), ("U_series_J", series),
            ("U_static_J", static),
            ("ratio_exact_series", exact / series),
            ("ratio_exact_static", exact / static),
        ]

    return _map_points(eval_one, list(_PRESET_T_GRID), workers)


def _map_points(fn, points, workers):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, points))
    return [fn(p) for p in points]


def run_preset(name, out, plot, tol, workers):
    if name == "fig2":
        rows = _preset_metal(10e-6, 20e-6, tol, workers)
    elif name == "fig3":
        rows = _preset_metal(1e-6, 2e-6, tol, workers)
    elif name == "fig5":
        rows = _preset_dielectric(10e-6, 20e-6, 6.0, 0.01, tol, workers)
    else:
        raise ConfigError(f"unknown preset {name!r}")
    if out:
        emit_csv(rows, out)
    else:
        _write_csv(rows, sys.stdout)
    if plot:
        emit_plot(rows, plot)
    return rows


# ---------------------------------------------------------------------------
# argument parsing

def _add_common_flags(p):
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--R", dest="R", help="sphere radius, e.g. 10um")
    p.add_argument("--r", dest="r", help="particle-center distance, e.g. 20um")
    p.add_argument("--material", choices=("pc", "drude", "dielectric"))
    p.add_argument("--omega-p", dest="omega_p",
                   help="Drude plasma frequency, e.g. 9eV")
    p.add_argument("--gamma", help="Drude damping, e.g. 35meV")
    p.add_argument("--eps", help="static permittivity (dielectric)")
    p.add_argument("--transition-energy", dest="transition_energy",
                   help="signed transition energy, e.g. -1meV")
    p.add_argument("--x", help="retardation parameter (alternative to "
                               "--transition-energy)")
    p.add_argument("--d2", help="squared dipole element (C^2 m^2); "
                               "omit for reduced output")
    p.add_argument("--temperature", help="temperature, e.g. 300K")
    p.add_argument("--method", choices=_METHODS)
    p.add_argument("--tol", help="relative tolerance (default 1e-8)")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--plot", help="SVG plot output path")
    p.add_argument("--workers", help="concurrent sweep workers "
                                     "(default $CP_SPHERE_WORKERS or 1)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cp-sphere",
        description="Thermal Casimir-Polder potential outside a sphere")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="single-point potential")
    _add_common_flags(p)

    p = sub.add_parser("sweep", help="parameter sweep")
    _add_common_flags(p)
    p.add_argument("--var", choices=_SWEEP_VARS)
    p.add_argument("--from", dest="sweep_from", help="sweep start")
    p.add_argument("--to", dest="sweep_to", help="sweep end")
    p.add_argument("--points", help="number of sweep points (>= 2)")
    p.add_argument("--log", action="store_true", default=None,
                   help="logarithmic sweep spacing")

    p = sub.add_parser("compare",
                       help="sweep with exact/closed-form/invariant columns")
    _add_common_flags(p)
    p.add_argument("--var", choices=_SWEEP_VARS)
    p.add_argument("--from", dest="sweep_from", help="sweep start")
    p.add_argument("--to", dest="sweep_to", help="sweep end")
    p.add_argument("--points", help="number of sweep points (>= 2)")
    p.add_argument("--log", action="store_true", default=None,
                   help="logarithmic sweep spacing")

    for name in ("fig2", "fig3", "fig5"):
        p = sub.add_parser(name, help=f"{name} preset sweep")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--plot", help="SVG plot output path")
        p.add_argument("--tol", help="relative tolerance (default 1e-8)")
        p.add_argument("--workers", help="concurrent workers")

    return parser


_FLAG_KEYS = ("R", "r", "material", "omega_p", "gamma", "eps",
              "transition_energy", "x", "d2", "temperature", "method",
              "tol", "out", "plot", "workers")


def _merge_config(args, mode):
    raw = {}
    if args.config:
        raw.update(_read_config_file(args.config))
    for key in _FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = str(value)
    if mode in ("sweep", "compare"):
        for key, attr in (("var", "var"), ("from", "sweep_from"),
                          ("to", "sweep_to"), ("points", "points")):
            value = getattr(args, attr, None)
            if value is not None:
                raw[key] = str(value)
        if getattr(args, "log", None) is not None:
            raw["log"] = "true" if args.log else "false"
    if mode == "compare":
        raw["method"] = "compare"
    run_mode = "compute" if mode == "compute" else "sweep"
    return RunConfig(raw, run_mode)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command in ("fig2", "fig3", "fig5"):
            tol = float(args.tol) if args.tol else 1e-8
            workers = int(args.workers) if args.workers else _default_workers()
            run_preset(args.command, args.out, args.plot, tol, workers)
        else:
            cfg = _merge_config(args, args.command)
            run(cfg)
    except ConfigError as exc:
        print(f"cp-sphere: configuration error: {exc}", file=sys.stderr)
        return 1
    except RegimeError as exc:
        print(f"cp-sphere: regime error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"cp-sphere: convergence error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"cp-sphere: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
