"""Command-line front end: ``squeezeforce <subcommand> [options]``.

Parameter precedence is flag > ``SQUEEZEFORCE_WORKERS`` (workers only) >
``--config`` file > built-in default. Config files hold ``key = value``
lines; keys are the long flag names with or without the leading dashes, and
``#`` starts a comment.

Exit codes: 0 success, 2 usage, 3 I/O, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
from dataclasses import dataclass, field

from .bloch import Config, Quadrature
from .errors import DomainError, GridPointError, NumericalError
from .force import AveragingMode, doppler_limit_temperature
from .squeeze import OpoConfig, opo_spectrum
from .sweep import Axis, SweepGrid, find_crossover, fig1_curves, fig2_surface, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERICAL = 0, 2, 3, 4
WORKERS_ENV = "SQUEEZEFORCE_WORKERS"

SUMMARIES = {
    "fig1": "averaged force against Rabi frequency, three curves",
    "fig2": "signed averaged F_sv over degree of squeezing and phase",
    "sweep": "force over an arbitrary parameter grid",
    "crossover": "Rabi frequency where F_sv and F cross",
    "opo-spectrum": "N(omega) and M(omega) of an ideal OPO",
    "doppler": "Doppler-limit temperature for a decay rate",
}
CSV_HEADER = "config,quadrature,degree,phi,delta,beta,averaging,force_unit,force"
UNIT_SCALE = {"half": 1.0, "full": 0.5}


class UsageError(Exception):
    pass


# -- value parsers -----------------------------------------------------------

_ANGLE = re.compile(r"^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:e[+-]?\d+)?)?\s*\*?\s*pi\s*$")


def parse_angle(text) -> float:
    """Radians, or a multiple of pi written ``0.8pi``, ``pi``, ``-0.5pi``."""
    if isinstance(text, (int, float)):
        return float(text)
    match = _ANGLE.match(str(text).lower())
    if not match:
        return _finite(text)
    sign, coef = match.groups()
    value = float(coef or 1.0) * math.pi
    return -value if sign == "-" else value


def _finite(text) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def _nonneg(text) -> float:
    value = _finite(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return value


def _positive(text) -> float:
    value = _finite(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return value


def _degree(text) -> float:
    value = _finite(text)
    if not 0 <= value < 1:
        raise argparse.ArgumentTypeError(f"degree of squeezing must lie in [0, 1): {text!r}")
    return value


def _count(text) -> int:
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"count must be >= 1: {text!r}")
    return value


def _float_list(text) -> tuple:
    if isinstance(text, (tuple, list)):
        return tuple(float(v) for v in text)
    items = [s for s in str(text).split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return tuple(_finite(s) for s in items)


def _enum_parser(enum_cls):
    lookup = {m.value.lower(): m for m in enum_cls}

    def parse(text):
        if isinstance(text, enum_cls):
            return text
        try:
            return lookup[str(text).strip().lower()]
        except KeyError:
            choices = ", ".join(m.value for m in enum_cls)
            raise argparse.ArgumentTypeError(f"{text!r} is not one of {choices}") from None

    return parse


def _enum_list(enum_cls):
    one = _enum_parser(enum_cls)

    def parse(text):
        if isinstance(text, (tuple, list)):
            return tuple(one(v) for v in text)
        items = [s for s in str(text).split(",") if s.strip()]
        if not items:
            raise argparse.ArgumentTypeError("empty list")
        return tuple(dict.fromkeys(one(s) for s in items))

    return parse


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


def _workers(text):
    if isinstance(text, int) and not isinstance(text, bool):
        value = text
    elif str(text).strip().lower() == "auto":
        return "auto"
    else:
        value = _count(text)
    if value < 1:
        raise argparse.ArgumentTypeError("workers must be positive")
    return value


def _unit(text):
    if text not in UNIT_SCALE:
        raise argparse.ArgumentTypeError(f"unit must be 'half' or 'full', got {text!r}")
    return text


# -- parameter table -----------------------------------------------------------

_mode = _enum_parser(AveragingMode)
TWO_PI = 2 * math.pi

# name -> (parser, default, help)
PARAMS = {
    "fig1": {
        "delta": (_finite, 0.0, "normalized detuning"),
        "phi": (parse_angle, 0.8 * math.pi, "squeezed-coherent phase (radians or <x>pi)"),
        "degree": (_degree, 0.75, "degree of squeezing in [0, 1)"),
        "beta-min": (_nonneg, 0.0, "smallest Rabi frequency"),
        "beta-max": (_nonneg, 20.0, "largest Rabi frequency"),
        "beta-count": (_count, 200, "number of Rabi frequencies"),
        "mode": (_mode, AveragingMode.ABS_MEAN, "spatial averaging mode"),
    },
    "fig2": {
        "delta": (_finite, 0.0, "normalized detuning"),
        "beta": (_nonneg, 10.0, "Rabi frequency"),
        "degree-min": (_degree, 0.0, "smallest degree of squeezing"),
        "degree-max": (_degree, 0.95, "largest degree of squeezing"),
        "degree-count": (_count, 96, "number of squeezing degrees"),
        "phi-min": (parse_angle, 0.0, "first phase"),
        "phi-max": (parse_angle, TWO_PI, "phase upper bound (excluded)"),
        "phi-count": (_count, 128, "number of phases"),
        "mode": (_mode, AveragingMode.ABS_MEAN, "spatial averaging mode"),
    },
    "sweep": {
        "beta-min": (_nonneg, 0.0, "smallest Rabi frequency"),
        "beta-max": (_nonneg, 20.0, "largest Rabi frequency"),
        "beta-count": (_count, 200, "number of Rabi frequencies"),
        "delta": (_float_list, (0.0,), "comma-separated detunings"),
        "phi-min": (parse_angle, 0.8 * math.pi, "first phase"),
        "phi-max": (parse_angle, 0.8 * math.pi, "last phase (inclusive)"),
        "phi-count": (_count, 1, "number of phases"),
        "degree-min": (_degree, 0.75, "smallest degree of squeezing"),
        "degree-max": (_degree, 0.75, "largest degree of squeezing"),
        "degree-count": (_count, 1, "number of squeezing degrees"),
        "configs": (_enum_list(Config), (Config.SVSC, Config.SC), "comma-separated SC,SVSC"),
        "quadratures": (_enum_list(Quadrature), (Quadrature.NOISY,), "comma-separated Noisy,Quiet"),
        "mode": (_mode, AveragingMode.ABS_MEAN, "spatial averaging mode"),
        "signed": (_bool, False, "carry the sign of sigma_Y in the force column"),
    },
    "crossover": {
        "delta": (_finite, 0.0, "normalized detuning"),
        "phi": (parse_angle, 0.8 * math.pi, "squeezed-coherent phase"),
        "degree": (_degree, 0.75, "degree of squeezing in [0, 1)"),
        "beta-lo": (_nonneg, 0.5, "bracket lower end"),
        "beta-hi": (_nonneg, 10.0, "bracket upper end"),
        "mode": (_mode, AveragingMode.ABS_MEAN, "spatial averaging mode"),
    },
    "opo-spectrum": {
        "kappa": (_positive, 1.0, "cavity decay constant"),
        "epsilon": (_nonneg, 0.25, "amplification factor (< kappa/2)"),
        "omega-min": (_finite, -5.0, "first frequency offset"),
        "omega-max": (_finite, 5.0, "last frequency offset"),
        "omega-count": (_count, 101, "number of frequency offsets"),
    },
    "doppler": {
        "gamma-hz": (_positive, 5.22e6, "natural linewidth gamma/2pi in Hz"),
    },
}

GLOBAL = {
    "output": (str, "-", "output path, '-' for standard output"),
    "unit": (_unit, "half", "force unit: half = hbar k gamma/2, full = hbar k gamma"),
    "workers": (_workers, "auto", "worker threads or 'auto'"),
}


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    parameters: dict = field(default_factory=dict)
    output_path: str = "-"
    unit: str = "half"
    workers: object = "auto"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="squeezeforce", description="Laser-cooling force in squeezed light.")
    subs = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name, table in PARAMS.items():
        sub = subs.add_parser(name, help=SUMMARIES[name])
        sub.add_argument("--config", help="key = value parameter file")
        for key, (conv, default, text) in {**table, **GLOBAL}.items():
            names = [f"--{key}"] + (["-o"] if key == "output" else [])
            sub.add_argument(*names, dest=key, type=conv, default=argparse.SUPPRESS,
                             help=f"{text} (default: {_render_value(default)})")
    return parser


def read_config_file(path, subcommand) -> dict:
    """Parse a ``key = value`` file against the subcommand's parameters."""
    table = {**PARAMS[subcommand], **GLOBAL}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc.strerror}") from None
    values = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if key not in table:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r} for {subcommand}")
        try:
            values[key] = table[key][0](value)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{path}:{lineno}: {key}: {exc}") from None
    return values


def _check_ranges(sub, p):
    def ordered(lo, hi, count_key=None, strict=True):
        if count_key is not None and p[count_key] == 1:
            return
        if (p[lo] >= p[hi]) if strict else (p[lo] > p[hi]):
            raise UsageError(f"--{lo} must be below --{hi}")

    if sub == "fig1":
        ordered("beta-min", "beta-max", "beta-count")
    elif sub == "fig2":
        ordered("degree-min", "degree-max", "degree-count")
        ordered("phi-min", "phi-max", "phi-count")
    elif sub == "sweep":
        for axis in ("beta", "phi", "degree"):
            ordered(f"{axis}-min", f"{axis}-max", f"{axis}-count")
    elif sub == "crossover":
        ordered("beta-lo", "beta-hi")
    elif sub == "opo-spectrum":
        ordered("omega-min", "omega-max", "omega-count")
        if p["epsilon"] >= p["kappa"] / 2:
            raise UsageError("--epsilon must be below kappa/2 (OPO above threshold)")


def parse_args(argv, env=None) -> RunConfig:
    """Turn ``argv`` (without program name) into a validated :class:`RunConfig`."""
    env = os.environ if env is None else env
    ns = vars(build_parser().parse_args(list(argv)))
    sub = ns.pop("subcommand")
    table = {**PARAMS[sub], **GLOBAL}
    merged = {key: spec[1] for key, spec in table.items()}
    config_path = ns.pop("config", None)
    if config_path:
        merged.update(read_config_file(config_path, sub))
    if WORKERS_ENV in env and "workers" not in ns:
        try:
            merged["workers"] = _workers(env[WORKERS_ENV])
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{WORKERS_ENV}: {exc}") from None
    merged.update(ns)
    params = {key: merged[key] for key in PARAMS[sub]}
    _check_ranges(sub, params)
    return RunConfig(sub, params, merged["output"], merged["unit"], merged["workers"])


def _render_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "value"):
        return value.value
    if isinstance(value, tuple):
        return ",".join(_render_value(v) for v in value)
    return str(value)


def render_args(cfg: RunConfig) -> list[str]:
    """Inverse of :func:`parse_args`: an argv that reproduces ``cfg``."""
    # --key=value keeps negative numbers from reading as flags
    argv = [cfg.subcommand]
    for key, value in cfg.parameters.items():
        argv.append(f"--{key}={_render_value(value)}")
    argv += [f"--output={cfg.output_path}", f"--unit={cfg.unit}", f"--workers={_render_value(cfg.workers)}"]
    return argv


# -- output ----------------------------------------------------------------------

def _fmt(x) -> str:
    # shortest round-trip repr; + 0.0 folds -0.0 into 0.0
    return repr(float(x) + 0.0)


def render_csv(records, unit="half") -> bytes:
    """CSV bytes for a table of :class:`~squeezeforce.force.ForceRecord`."""
    if not records:
        raise ValueError("empty table")
    scale = UNIT_SCALE[unit]
    lines = [CSV_HEADER]
    for r in records:
        averaging = ("signed-" if r.signed else "") + r.averaging.value
        lines.append(",".join([
            r.config.value, r.quadrature.value, _fmt(r.degree), _fmt(r.phi), _fmt(r.delta),
            _fmt(r.beta), averaging, unit, _fmt(r.force * scale),
        ]))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _plain_csv(header, rows) -> bytes:
    lines = [",".join(header)] + [",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row)
                                  for row in rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_csv(records, destination="-", unit="half") -> bytes:
    """Write the table to ``destination`` ('-' is standard output); returns the bytes."""
    data = render_csv(records, unit)
    _write(data, destination)
    return data


def _write(data: bytes, destination):
    if destination in (None, "-"):
        sys.stdout.buffer.write(data) if hasattr(sys.stdout, "buffer") else sys.stdout.write(data.decode())
        sys.stdout.flush()
        return
    with open(destination, "wb") as fh:
        fh.write(data)


# -- subcommands -----------------------------------------------------------------

def produce(cfg: RunConfig) -> bytes:
    """Run the subcommand and return the bytes it would write."""
    p = cfg.parameters
    sub = cfg.subcommand
    if sub == "fig1":
        records = fig1_curves(p["delta"], p["phi"], p["degree"], _axis(p, "beta"), p["mode"], cfg.workers)
        return render_csv(records, cfg.unit)
    if sub == "fig2":
        records = fig2_surface(p["delta"], p["beta"], _axis(p, "degree"),
                               _axis(p, "phi", endpoint=False), p["mode"], cfg.workers)
        return render_csv(records, cfg.unit)
    if sub == "sweep":
        curves = tuple((c, q) for c in p["configs"] for q in p["quadratures"])
        grid = SweepGrid(beta=_axis(p, "beta"), delta=p["delta"], phi=_axis(p, "phi"),
                         degree=_axis(p, "degree"), curves=curves, averaging=p["mode"],
                         signed=p["signed"])
        return render_csv(run_sweep(grid, cfg.workers), cfg.unit)
    if sub == "crossover":
        res = find_crossover(p["delta"], p["phi"], p["degree"], (p["beta-lo"], p["beta-hi"]), p["mode"])
        return _plain_csv(["beta_star", "bracket_lo", "bracket_hi", "residual", "iterations"],
                          [[res.beta_star, res.bracket[0], res.bracket[1], res.residual, res.iterations]])
    if sub == "opo-spectrum":
        opo = OpoConfig(p["kappa"], p["epsilon"])
        omegas = _axis(p, "omega").values()
        n_w, m_w = opo_spectrum(opo, omegas)
        return _plain_csv(["omega", "N", "M"], zip(map(float, omegas), map(float, n_w), map(float, m_w)))
    if sub == "doppler":
        gamma = 2 * math.pi * p["gamma-hz"]
        return _plain_csv(["gamma_rad_s", "temperature_K"], [[gamma, doppler_limit_temperature(gamma)]])
    raise UsageError(f"unknown subcommand {sub!r}")


def _axis(p, name, endpoint=True) -> Axis:
    lo, hi, count = p[f"{name}-min"], p[f"{name}-max"], p[f"{name}-count"]
    if count == 1:
        hi = lo
    return Axis(lo, hi, count, endpoint)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"squeezeforce: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        data = produce(cfg)
    except GridPointError as exc:
        point = ", ".join(f"{k}={v}" for k, v in exc.point.items())
        print(f"squeezeforce: numerical failure at grid point ({point}): {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except NumericalError as exc:
        print(f"squeezeforce: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DomainError as exc:
        print(f"squeezeforce: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _write(data, cfg.output_path)
    except OSError as exc:
        print(f"squeezeforce: cannot write {cfg.output_path!r}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
