"""Command-line front end: figure datasets and ad-hoc bound queries.

Exit status: 0 on success, 2 on usage errors, 3 when ``verify`` finds a
deviation beyond tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .analysis import GammaKind, GammaModel, log_derivative, scaling_table
from .analytic import CurveFamily, check_size, eg_exact, pure_measure
from .errors import DomainError, NumericalError
from .geomeasure import (
    OptimizerOptions,
    bracket,
    lower_bound_fidelity,
    trial_upper_value,
    upper_bound_envelope,
)

log = logging.getLogger("geodecay")

OUTPUT_DIR_ENV = "GEODECAY_OUTPUT_DIR"
EXIT_USAGE = 2
EXIT_VERIFY = 3

# above this the numerical bounds use the closed-form fidelity and trial values
# instead of dense density matrices
MATRIX_MAX_QUBITS = 8

FOUR_QUBIT = ("ghz", "cl4", "w4", "d4")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "all4"
    n_qubits: int = 4
    gamma: float = 1.0
    gamma_model: str = "constant"
    t_max: float = 6.0
    dt: float = 0.01
    x: float | None = None
    t: float | None = None
    points: int = 101
    n_list: list = field(default_factory=list)
    gamma_const: float = 4.0
    gamma0: float = 1.0
    two_observable: bool = False
    two_observable_points: int = 21
    format: str = "csv"
    output: str | None = None
    restarts: int = 16
    max_sweeps: int = 2000
    tol: float = 1e-15
    seed: int = 0

    def validate(self):
        if self.t_max <= 0:
            raise UsageError("--t-max must be positive")
        if self.dt <= 0:
            raise UsageError("--dt must be positive")
        if self.gamma <= 0 or self.gamma_const <= 0 or self.gamma0 <= 0:
            raise UsageError("dephasing rates must be positive")
        if self.points < 2 or self.two_observable_points < 2:
            raise UsageError("grid sizes must be at least 2")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")

    def options(self):
        try:
            return OptimizerOptions(self.restarts, self.max_sweeps, self.tol, self.seed)
        except DomainError as exc:
            raise UsageError(str(exc)) from None

    def families(self):
        key = self.family.lower()
        if key == "all4":
            return [(CurveFamily.parse(f), 4) for f in FOUR_QUBIT]
        if key == "all":
            return [(CurveFamily.parse(f), 4) for f in FOUR_QUBIT] + [
                (CurveFamily.CL_N, n) for n in (2, 4, 6, 8)]
        fams = []
        for name in key.split(","):
            fam = CurveFamily.parse(name.strip())
            n = self.n_qubits if fam in (CurveFamily.GHZ_N, CurveFamily.CL_N) else 4
            try:
                check_size(fam, n)
            except DomainError as exc:
                raise UsageError(str(exc)) from None
            fams.append((fam, n))
        return fams


def _label(family, n):
    if family in (CurveFamily.GHZ_N, CurveFamily.CL_N):
        return f"{family.value}[{n}]"
    return family.value


def _time_grid(cfg, start_at_zero=True):
    steps = int(round(cfg.t_max / cfg.dt))
    ts = [k * cfg.dt for k in range(0 if start_at_zero else 1, steps + 1)]
    return ts


def _bounds(family, n, x, cfg, opts):
    if n <= MATRIX_MAX_QUBITS:
        b = bracket(family, n, x, opts, two_observable=cfg.two_observable)
        return b.lower, b.upper, b.lower_method, b.upper_method
    # fidelity of the cluster state after dephasing is x + (1 - x) 2^-n
    e = 2.0 ** -(n // 2) if family is CurveFamily.CL_N else 0.5
    F = x + (1.0 - x) * e
    return (lower_bound_fidelity(F, pure_measure(family, n)),
            trial_upper_value(family, n, x), "fidelity", "decomposition")


def cmd_decay(cfg):
    opts = cfg.options()
    cols = ["family", "t", "x", "E_lower", "E_upper", "E_exact"]
    rows = []
    for family, n in cfg.families():
        if family in (CurveFamily.W4, CurveFamily.D4):
            upper_bound_envelope(family, 4)
        for t in _time_grid(cfg):
            x = math.exp(-cfg.gamma * t)
            lo, up, _, _ = _bounds(family, n, x, cfg, opts)
            rows.append([_label(family, n), t, x, lo, up, eg_exact(family, n, x)])
    return cols, rows, {}


def cmd_logderiv(cfg):
    fams = cfg.families()
    cols = ["t"] + [f"eta_{_label(f, n)}" for f, n in fams]
    rows = []
    for t in _time_grid(cfg, start_at_zero=False):
        rows.append([t] + [log_derivative(f, n, cfg.gamma, t) for f, n in fams])
    return cols, rows, {}


def _n_list(cfg):
    ns = list(cfg.n_list) or list(range(2, 41, 2))
    bad = [n for n in ns if n < 2 or n % 2]
    if bad:
        raise UsageError(f"cluster half-lives need even N >= 2; got {bad}")
    return ns


def cmd_halflife(cfg):
    ns = _n_list(cfg)
    cols = ["model", "gamma0", "N", "t_half_ghz", "t_half_cluster", "ratio"]
    rows = []
    for model in (GammaModel(GammaKind.CONSTANT, cfg.gamma_const),
                  GammaModel(GammaKind.LINEAR_IN_N, cfg.gamma0)):
        for r in scaling_table(model, ns):
            rows.append([model.kind.value, model.gamma0, r.n_qubits, r.t_half_ghz,
                         r.t_half_cluster, r.ratio])
    return cols, rows, {}


def cmd_bounds(cfg):
    if (cfg.x is None) == (cfg.t is None):
        raise UsageError("bounds needs exactly one of --x or --t")
    x = cfg.x if cfg.x is not None else math.exp(-cfg.gamma * cfg.t)
    if not 0.0 <= x <= 1.0:
        raise UsageError("--x must lie in [0, 1]")
    opts = cfg.options()
    cols = ["family", "x", "E_lower", "E_upper", "E_exact", "lower_method", "upper_method"]
    rows = []
    for family, n in cfg.families():
        lo, up, lm, um = _bounds(family, n, x, cfg, opts)
        rows.append([_label(family, n), x, lo, up, eg_exact(family, n, x), lm, um])
    return cols, rows, {}


VERIFY_TOL = {"exact": 1e-8, "hull": 1e-6, "two_observable": 2e-3, "sandwich": 1e-9}


def cmd_verify(cfg):
    """Numerical bounds against the closed forms; exit status 3 on failure."""
    opts = cfg.options()
    fams = cfg.families()
    cols = ["family", "x", "E_lower", "E_upper", "E_exact", "deviation", "tolerance", "ok"]
    rows = []
    worst = 0.0
    failures = 0
    for family, n in fams:
        hulled = family in (CurveFamily.W4, CurveFamily.D4)
        use_two = hulled and cfg.two_observable
        points = cfg.two_observable_points if use_two else cfg.points
        for x in np.linspace(0.0, 1.0, points):
            x = float(x)
            b = bracket(family, n, x, opts, two_observable=use_two)
            exact = eg_exact(family, n, x)
            if hulled:
                dev_up = abs(b.upper - exact)
                tol = VERIFY_TOL["hull"]
                ok = dev_up <= tol and b.lower <= b.upper + VERIFY_TOL["sandwich"]
                dev = dev_up
                if use_two:
                    dev_lo = abs(b.lower - exact)
                    ok = ok and dev_lo <= VERIFY_TOL["two_observable"]
                    dev = max(dev, dev_lo)
            else:
                dev = max(abs(b.lower - exact), abs(b.upper - exact))
                tol = VERIFY_TOL["exact"]
                ok = dev <= tol
            worst = max(worst, dev)
            failures += not ok
            rows.append([_label(family, n), x, b.lower, b.upper, exact, dev, tol, int(ok)])
    summary = {"max_deviation": worst, "failures": failures, "passed": failures == 0}
    return cols, rows, summary


COMMANDS = {
    "decay": cmd_decay,
    "logderiv": cmd_logderiv,
    "halflife": cmd_halflife,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(cfg, cols, rows, summary):
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        return buf.getvalue()
    params = {k: v for k, v in asdict(cfg).items() if k not in ("command", "output")}
    doc = {"command": cfg.command, "parameters": params, "columns": cols,
           "rows": [[float(v) if isinstance(v, (float, np.floating)) else v for v in r]
                    for r in rows]}
    if summary:
        doc["summary"] = summary
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _read_config(path):
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _int_list(text):
    try:
        return [int(v) for v in str(text).replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _bool(text):
    if isinstance(text, bool):
        return text
    return str(text).strip().lower() in ("1", "true", "yes", "on")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="file of 'key = value' lines; flags override it")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", "-o", help=f"output file (default: ${OUTPUT_DIR_ENV}/<command>.<format> or stdout)")
    common.add_argument("--family",
                        help="ghz, cl4, w4, d4, cln, comma-separated list, all4 or all "
                             "(default: all for verify, all4 otherwise)")
    common.add_argument("--n", dest="n_qubits", type=int, default=4,
                        help="qubit number for ghz and cln")
    common.add_argument("--gamma", type=float, default=1.0, help="dephasing rate")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=16)
    common.add_argument("--max-sweeps", type=int, default=2000)
    common.add_argument("--tol", type=float, default=1e-15)
    common.add_argument("--two-observable", action="store_true",
                        help="W/Dicke lower bound from fidelity and excitation projector (slow)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="geodecay", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    timed = argparse.ArgumentParser(add_help=False)
    timed.add_argument("--t-max", type=float, default=6.0)
    timed.add_argument("--dt", type=float, default=0.01)

    subs["decay"] = sub.add_parser("decay", parents=[common, timed],
                                   help="E_G(t) curves with bounds")
    subs["logderiv"] = sub.add_parser("logderiv", parents=[common, timed],
                                      help="logarithmic derivative of E_G(t)")
    p = subs["halflife"] = sub.add_parser("halflife", parents=[common], help="half-life scaling with N")
    p.add_argument("--n-list", type=_int_list, default=[], help="comma-separated even N values")
    p.add_argument("--n-max", type=int, help="shorthand for N = 2, 4, ..., n-max")
    p.add_argument("--gamma-const", type=float, default=4.0, help="rate of the constant model")
    p.add_argument("--gamma0", type=float, default=1.0, help="per-qubit rate of the linear model")
    p = subs["bounds"] = sub.add_parser("bounds", parents=[common], help="lower/upper bound at one point")
    p.add_argument("--x", type=float)
    p.add_argument("--t", type=float)
    p = subs["verify"] = sub.add_parser("verify", parents=[common],
                                        help="numerical bounds vs closed forms")
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--two-observable-points", type=int, default=21)
    return parser, subs


_CONVERTERS = {"n_qubits": int, "seed": int, "restarts": int, "max_sweeps": int, "points": int,
               "two_observable_points": int, "n_max": int, "gamma": float, "tol": float,
               "t_max": float, "dt": float, "x": float, "t": float, "gamma_const": float,
               "gamma0": float, "two_observable": _bool, "n_list": _int_list, "verbose": _bool}


def parse_config(argv):
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            file_values = _read_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        except UsageError as exc:
            parser.error(str(exc))
        sub = subs[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(file_values) - known
        if unknown:
            parser.error(f"unknown config keys: {', '.join(sorted(unknown))}")
        try:
            defaults = {k: _CONVERTERS.get(k, str)(v) for k, v in file_values.items()}
        except (ValueError, argparse.ArgumentTypeError) as exc:
            parser.error(f"bad config value: {exc}")
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    values = vars(args)
    n_max = values.pop("n_max", None)
    if n_max is not None and not values.get("n_list"):
        values["n_list"] = list(range(2, n_max + 1, 2))
    values.pop("config", None)
    if values.get("family") is None:
        values["family"] = "all" if values["command"] == "verify" else "all4"
    verbose = values.pop("verbose", False)
    cfg = RunConfig(**values)
    return cfg, verbose


def _destination(cfg):
    if cfg.output:
        return Path(cfg.output)
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    if out_dir:
        return Path(out_dir) / f"{cfg.command}.{cfg.format}"
    return None


def main(argv=None):
    try:
        cfg, verbose = parse_config(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg.validate()
        cols, rows, summary = COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"geodecay {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"geodecay {cfg.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text = render(cfg, cols, rows, summary)
    dest = _destination(cfg)
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        with open(dest, "w", newline="") as fh:
            fh.write(text)
    if summary:
        print(f"max deviation {summary['max_deviation']:.3g}, failures {summary['failures']}",
              file=sys.stderr)
        if not summary["passed"]:
            return EXIT_VERIFY
    return 0


if __name__ == "__main__":
    sys.exit(main())
