"""
Command-line front end.

    ambient-swipt expected-harvest --rho 0.1 --eta 0.5
    ambient-swipt power-outage --alpha -1 --eta 1 --rho 0.2 --regime worst-case
    ambient-swipt sweep --axis rho --min 0.01 --max 1 --steps 20 --log --metric expected-harvest
    ambient-swipt sample --trials 3 --rho 0.1 -o patterns.csv

Values are taken from flags, then from ``--config FILE`` (``key = value``
lines, ``#`` comments), then from the built-in defaults.  Powers accept
``W``/``mW``/``uW``/``nW``/``pW``/``dBm``/``dBW`` suffixes, frequencies
``Hz``/``kHz``/``MHz``/``GHz``.

Exit status: 0 success, 2 usage error, 3 I/O error, 4 computational
domain error.
"""
import argparse
import csv
from dataclasses import dataclass, field, fields
import re
import sys

import numpy as np

from . import bounds
from .errors import DomainError, SamplingError
from .montecarlo import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    Metric,
    Regime,
    SweepRow,
    analytic_value,
    run_trials,
    sweep,
    write_sweep_csv,
)
from .point_process import build_spectrum, sample_alpha_dpp
from .rf import SystemParams, harvest_from_access_point

SPEED_OF_LIGHT = 2.998e8

COMMANDS = ("expected-harvest", "power-outage", "transmission-outage", "sample", "sweep")

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DOMAIN = 4

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_POWER_UNITS = {"w": 1.0, "mw": 1e-3, "uw": 1e-6, "µw": 1e-6, "nw": 1e-9, "pw": 1e-12}
_FREQ_UNITS = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}


def parse_power(text):
    """Watts from ``'1W'``, ``'15.8uW'``, ``'-18dBm'``, ``'-48dBW'`` or a bare number (W)."""
    m = re.fullmatch(rf"\s*({_NUM})\s*([a-zA-Zµ]*)\s*", text)
    if not m:
        raise ValueError(f"cannot parse power {text!r}")
    value, unit = float(m.group(1)), m.group(2).lower()
    if unit == "dbm":
        return 10.0 ** ((value - 30.0) / 10.0)
    if unit == "dbw":
        return 10.0 ** (value / 10.0)
    if unit == "":
        return value
    if unit not in _POWER_UNITS:
        raise ValueError(f"unknown power unit {m.group(2)!r}")
    return value * _POWER_UNITS[unit]


def parse_frequency(text):
    m = re.fullmatch(rf"\s*({_NUM})\s*([a-zA-Z]*)\s*", text)
    if not m:
        raise ValueError(f"cannot parse frequency {text!r}")
    unit = m.group(2).lower() or "hz"
    if unit not in _FREQ_UNITS:
        raise ValueError(f"unknown frequency unit {m.group(2)!r}")
    return float(m.group(1)) * _FREQ_UNITS[unit]


def parse_length(text):
    m = re.fullmatch(rf"\s*({_NUM})\s*(m?)\s*", text)
    if not m:
        raise ValueError(f"cannot parse length {text!r} (metres)")
    return float(m.group(1))


def parse_bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"cannot parse boolean {text!r}")


def _wavelength_from_freq(text):
    return SPEED_OF_LIGHT / parse_frequency(text)


def _int(text):
    v = float(text)
    if v != int(v):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(v)


# option name -> (SystemParams field, parser)
PARAM_OPTIONS = {
    "eta": ("eta", float),
    "beta": ("beta", float),
    "pa": ("p_a", parse_power),
    "ps": ("p_s", parse_power),
    "ga": ("g_a", float),
    "gs": ("g_s", float),
    "gh": ("g_h", float),
    "lambda-a": ("wavelength_a", parse_length),
    "lambda": ("wavelength", parse_length),
    "freq-a": ("wavelength_a", _wavelength_from_freq),
    "freq": ("wavelength", _wavelength_from_freq),
    "da": ("d_a", parse_length),
    "ha": ("h_a", float),
    "friis-ha": ("friis_ha", parse_bool),
    "epsilon": ("epsilon", parse_length),
    "radius": ("radius", parse_length),
    "rho": ("rho", float),
    "alpha": ("alpha", float),
    "sigma2": ("sigma2", parse_power),
    "sigma-sp2": ("sigma_sp2", parse_power),
    "bandwidth": ("bandwidth", parse_frequency),
    "m": ("rate_min", float),
    "pc": ("p_c", parse_power),
    "xi": ("xi", _int),
}

RUN_OPTIONS = {
    "trials": _int,
    "seed": _int,
    "workers": _int,
    "regime": str,
    "metric": str,
    "axis": str,
    "min": float,
    "max": float,
    "steps": _int,
    "log": parse_bool,
    "grid": str,
    "output": str,
}

_FIELD_TO_OPTION = {}
for _opt, (_field, _) in PARAM_OPTIONS.items():
    _FIELD_TO_OPTION.setdefault(_field, _opt)


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: SystemParams = field(default_factory=SystemParams)
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    workers: int = 1
    regime: str = "general"
    metric: str = "expected-harvest"
    axis: str = "rho"
    min: float = 0.01
    max: float = 1.0
    steps: int = 20
    log: bool = False
    grid: str = ""
    output: str = ""

    def grid_values(self):
        if self.grid:
            return [float(g) for g in self.grid.split(",")]
        if self.log:
            return list(np.geomspace(self.min, self.max, self.steps))
        return list(np.linspace(self.min, self.max, self.steps))

    def to_config_text(self):
        """Config-file form; feeding it back through :func:`parse_config` gives an equal config."""
        lines = [f"# ambient-swipt {self.command}"]
        for f in fields(SystemParams):
            value = getattr(self.params, f.name)
            text = str(value).lower() if isinstance(value, bool) else repr(value)
            lines.append(f"{_FIELD_TO_OPTION[f.name]} = {text}")
        for name in RUN_OPTIONS:
            value = getattr(self, name)
            text = str(value).lower() if isinstance(value, bool) else (
                repr(value) if isinstance(value, float) else str(value))
            lines.append(f"{name} = {text}")
        return "\n".join(lines) + "\n"


class UsageError(Exception):
    pass


def read_config_file(path):
    """``{key: raw string}`` from a flat ``key = value`` file."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("_", "-")
            if key not in PARAM_OPTIONS and key not in RUN_OPTIONS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ambient-swipt",
        description="Harvest and outage analysis of a power-splitting SWIPT sensor "
                    "among Ginibre alpha-DPP ambient transmitters.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", metavar="FILE", help="key = value parameter file")
    g = parser.add_argument_group("system parameters")
    for opt in PARAM_OPTIONS:
        if opt == "friis-ha":
            g.add_argument("--friis-ha", dest="friis-ha", action="store_const", const="true",
                           help="use the Friis path gain of d_A as the downlink gain")
        else:
            g.add_argument(f"--{opt}", dest=opt, metavar="VALUE")
    r = parser.add_argument_group("run settings")
    r.add_argument("--trials", metavar="N")
    r.add_argument("--seed", metavar="N")
    r.add_argument("--workers", metavar="N")
    r.add_argument("--regime", metavar="general|worst-case")
    r.add_argument("--metric", metavar="NAME")
    r.add_argument("--axis", metavar="rho|d_A|eta|alpha")
    r.add_argument("--min")
    r.add_argument("--max")
    r.add_argument("--steps")
    r.add_argument("--log", action="store_const", const="true")
    r.add_argument("--grid", metavar="V1,V2,...", help="explicit sweep grid")
    r.add_argument("-o", "--output", metavar="PATH")
    return parser


def _join_negative_values(argv):
    # argparse reads "-18dBm" or "-1,-0.5" as an option; bind them to the preceding flag
    out = []
    for tok in argv:
        if (out and out[-1].startswith("--") and "=" not in out[-1]
                and re.match(r"-[\d.]", tok)):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def parse_config(argv):
    """Build a :class:`RunConfig`; raises :class:`UsageError` listing every bad field."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    ns = vars(parser.parse_args(_join_negative_values(argv)))
    raw = read_config_file(ns["config"]) if ns.get("config") else {}
    for key in list(PARAM_OPTIONS) + list(RUN_OPTIONS):
        if ns.get(key) is not None:
            raw[key] = ns[key]

    errors = []
    param_values = {}
    for opt, (fname, conv) in PARAM_OPTIONS.items():
        if opt in raw:
            try:
                param_values[fname] = conv(raw[opt])
            except ValueError as exc:
                errors.append(f"--{opt}: {exc}")
    run_values = {}
    for opt, conv in RUN_OPTIONS.items():
        if opt in raw:
            try:
                run_values[opt] = conv(raw[opt])
            except ValueError as exc:
                errors.append(f"--{opt}: {exc}")

    probe = SystemParams.__new__(SystemParams)
    for f in fields(SystemParams):
        object.__setattr__(probe, f.name, param_values.get(f.name, f.default))
    for fname, msg in probe.validation_errors():
        errors.append(f"--{_FIELD_TO_OPTION[fname]}: {msg}")

    command = ns["command"]
    if command == "sample" and "trials" not in run_values:
        run_values["trials"] = 1
    for key in ("regime", "metric"):
        if key in run_values:
            run_values[key] = run_values[key].replace("_", "-")
    if run_values.get("regime", "general") not in ("general", "worst-case"):
        errors.append(f"--regime: expected general or worst-case, got {run_values['regime']!r}")
    if run_values.get("metric", "expected-harvest") not in COMMANDS[:3]:
        errors.append(f"--metric: expected one of {', '.join(COMMANDS[:3])}")
    if run_values.get("axis", "rho") not in ("rho", "d_A", "eta", "alpha"):
        errors.append("--axis: expected rho, d_A, eta or alpha")
    for key in ("trials", "steps", "workers"):
        if key in run_values and run_values[key] < 1:
            errors.append(f"--{key}: must be at least 1")
    if run_values.get("grid"):
        try:
            [float(v) for v in run_values["grid"].split(",")]
        except ValueError:
            errors.append("--grid: expected comma-separated numbers")
    if run_values.get("log") and min(run_values.get("min", 0.01), run_values.get("max", 1.0)) <= 0:
        errors.append("--min/--max: log grids need positive bounds")
    if errors:
        raise UsageError("\n".join(errors))
    return RunConfig(command=command, params=SystemParams(**param_values), **run_values)


def _metric(name):
    return Metric(name.replace("-", "_"))


def _regime(name):
    return Regime(name.replace("-", "_"))


def _point_query(config, metric, out, log):
    p = config.params
    regime = _regime(config.regime) if metric is not Metric.EXPECTED_HARVEST else Regime.GENERAL
    est = run_trials(p, metric, regime, config.trials, config.seed, config.workers)
    value, raw, label = analytic_value(p, metric)
    row = SweepRow("none", "", est, regime, value, raw, label, config.seed)
    write_sweep_csv([row], out)
    print(f"{metric.value} ({regime.value}, {est.trials} trials, seed {config.seed})", file=log)
    print(f"  estimate   {est.mean:.6g} +/- {est.std_error:.3g}", file=log)
    if metric is Metric.EXPECTED_HARVEST:
        print(f"  closed form {value:.6g} W", file=log)
        ambient = bounds.expected_harvest_approx(p)
        print(f"  small-eps approximation (ambient + AP) "
              f"{ambient + harvest_from_access_point(p):.6g} W", file=log)
    else:
        print(f"  bound      {value:.6g} (raw {raw:.6g}, {label})", file=log)


def _sample(config, out, log):
    p = config.params
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["trial", "x", "y"])
    spectrum = build_spectrum(p.rho, p.radius) if p.rho > 0 else None
    counts = []
    for t in range(config.trials):
        rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(t,)))
        if spectrum is None:
            pts = np.empty((0, 2))
        else:
            pts = sample_alpha_dpp(spectrum, p.alpha, rng).points
        counts.append(len(pts))
        for x, y in pts:
            writer.writerow([t, repr(float(x)), repr(float(y))])
    print(f"sampled {config.trials} pattern(s), point counts {counts}", file=log)


def _sweep(config, out, log):
    rows = sweep(config.params, config.axis, config.grid_values(), _metric(config.metric),
                 _regime(config.regime), config.trials, config.seed, config.workers)
    write_sweep_csv(rows, out)
    for r in rows:
        print(f"{r.axis}={r.axis_value:.6g}  estimate {r.estimate.mean:.6g} "
              f"+/- {r.estimate.std_error:.3g}  analytic {r.bound_value:.6g}", file=log)


def execute(config):
    """Run ``config``; returns the process exit status."""
    log = sys.stdout if config.output else sys.stderr
    try:
        out = open(config.output, "w", encoding="utf-8", newline="") if config.output else sys.stdout
    except OSError as exc:
        print(f"error: cannot open output: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if config.command == "sample":
            _sample(config, out, log)
        elif config.command == "sweep":
            _sweep(config, out, log)
        else:
            _point_query(config, _metric(config.command), out, log)
    except DomainError as exc:
        name = f" [{exc.parameter}]" if exc.parameter else ""
        print(f"error{name}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (SamplingError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def main(argv=None):
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"usage error:\n{exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"usage error: cannot read config file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return execute(config)


if __name__ == "__main__":
    sys.exit(main())
