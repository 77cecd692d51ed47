"""Command-line front end.

Every subcommand writes its outputs into ``--out`` (created if missing) and
prints a short summary.  A JSON file passed with ``--config`` supplies the same
keys as the long flags (dashes become underscores) and takes precedence over
them.  Exit status: 0 on success, 2 for bad input or configuration, 3 when a
numerical routine fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import (aaa, colehopf, generalbeta, inner, inviscid, largetime, poletrack, realline,
               render)
from .core import Method, PhysParams, build_grid
from .errors import BurgersError, ConfigError, InvalidInput, NumericalFailure

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

EVALUATORS = ("exact", "inner", "largetime", "aaa", "identity")


@dataclass
class RunConfig:
    """Validated parameters for one subcommand."""

    command: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready parameters; complex numbers become [re, im] pairs."""
        return {k: _jsonable(v) for k, v in self.params.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# ------------------------------------------------------------------ parser

def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _common(p):
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--config", default=None, help="JSON file overriding the flags")


def _grid_args(p, bounds):
    p.add_argument("--bounds", type=float, nargs=4, default=bounds, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p.add_argument("--nx", type=int, default=200)
    p.add_argument("--ny", type=int, default=200)
    p.add_argument("--eval", dest="evaluator", choices=EVALUATORS, default="exact")
    p.add_argument("--mu", type=float, default=0.1)
    p.add_argument("--t", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="complexburgers",
                                 description="Complex singularities of the viscous Burgers equation")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("portrait", help="phase portrait of u(z, t) as a binary PPM")
    _grid_args(p, [-3.0, 3.0, -3.0, 3.0])
    _common(p)

    p = sub.add_parser("landscape", help="|u| and arg u on a grid, as CSV")
    _grid_args(p, [-3.0, 3.0, -3.0, 3.0])
    _common(p)

    p = sub.add_parser("eval", help="evaluate u at given complex points")
    p.add_argument("--z", type=_complex, nargs="+", required=False, default=[0j])
    p.add_argument("--mu", type=float, default=0.1)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--eval", dest="evaluator", choices=EVALUATORS, default="exact")
    _common(p)

    p = sub.add_parser("inner", help="poles of the inner solution Phi0")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--n", type=int, default=5, help="number of poles per quadrant")
    _common(p)

    p = sub.add_parser("track-pole", help="trajectory of the pole closest to the real axis")
    p.add_argument("--method", choices=("exact", "saddle", "aaa"), default="exact")
    p.add_argument("--mu", type=float, default=0.05)
    p.add_argument("--t0", type=float, default=2.0)
    p.add_argument("--t1", type=float, default=0.3)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--seed", type=_complex, default=None)
    _common(p)

    p = sub.add_parser("similarity", help="large-time similarity profile and its poles")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--t", type=float, default=100.0)
    p.add_argument("--n", type=int, default=10)
    _common(p)

    for name, helptext in (("slope", "max |u_x| over time"), ("enstrophy", "enstrophy over time")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--mu", type=float, default=0.1)
        p.add_argument("--T", type=float, default=2.0)
        p.add_argument("--M", type=int, default=101)
        _common(p)

    p = sub.add_parser("inviscid", help="branch points of the inviscid solution")
    p.add_argument("--t", type=float, nargs="+", default=[0.5, 1.0, 1.5])
    _common(p)

    p = sub.add_parser("beta", help="pole predictions for data 1/(1+x^2)^beta")
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--t", type=float, default=1e-3)
    p.add_argument("--n", type=int, default=2)
    _common(p)

    p = sub.add_parser("critical-mu", help="borderline viscosities")
    p.add_argument("--which", choices=("inner", "tilde"), default="inner")
    _common(p)
    return ap


_META = {"command", "config", "out"}


def parse_config(argv) -> tuple[RunConfig, Path]:
    """Parse flags, apply a JSON override file, and validate the result."""
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:  # --help
            raise
        raise ConfigError("invalid command line") from exc
    params = {k: v for k, v in vars(ns).items() if k not in _META}
    if ns.config:
        try:
            data = json.loads(Path(ns.config).read_text())
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = sorted(set(data) - set(params))
        if unknown:
            raise ConfigError(f"unknown config keys for {ns.command}: {', '.join(unknown)}")
        for k, v in data.items():
            params[k] = _coerce(params[k], v, k)
    cfg = RunConfig(ns.command, params)
    _validate(cfg)
    return cfg, Path(ns.out)


def _coerce(default, value, key):
    if isinstance(default, complex) or (default is None and key == "seed"):
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(value[0], value[1])
        return _complex(str(value)) if value is not None else None
    if isinstance(default, list):
        if not isinstance(value, list):
            raise ConfigError(f"{key} must be a list")
        return [_coerce(default[0] if default else value[0], v, key) for v in value]
    if isinstance(default, bool):
        return bool(value)
    if isinstance(default, int) and not isinstance(default, bool):
        if int(value) != value:
            raise ConfigError(f"{key} must be an integer")
        return int(value)
    if isinstance(default, float):
        return float(value)
    return value


def _validate(cfg: RunConfig) -> None:
    p = cfg.params
    if "mu" in p and not p["mu"] > 0:
        raise ConfigError("mu must be positive")
    for key in ("t", "t0", "t1", "dt", "T"):
        if key in p and isinstance(p[key], float) and not p[key] > 0:
            raise ConfigError(f"{key} must be positive")
    if "nx" in p and (p["nx"] < 2 or p["ny"] < 2):
        raise ConfigError("nx and ny must be at least 2")
    if "evaluator" in p and p["evaluator"] not in EVALUATORS:
        raise ConfigError(f"unknown evaluator {p['evaluator']!r}")


# --------------------------------------------------------------- evaluators

def make_evaluator(name: str, mu: float, t: float):
    """A callable z -> u for the chosen model."""
    if name == "identity":
        return lambda z: z
    if name == "exact":
        p = PhysParams(mu, t)
        return lambda z: colehopf.evaluate_u(z, p)
    if name == "inner":
        rt = math.sqrt(t)
        return lambda z: inner.phi0((z - 1j) / rt, mu) / rt
    if name == "largetime":
        return lambda z: largetime.u_largetime(z, t, mu)
    if name == "aaa":
        snap = realline.solve_real(mu, realline.SolveConfig(T=t, M=2), times=[0.0, t])[-1]
        r = aaa.fit_snapshot(snap, rel_tol=1e-11)
        return lambda z: aaa.rational_eval(r, z)
    raise ConfigError(f"unknown evaluator {name!r}")


# ----------------------------------------------------------------- commands

def _g(x) -> str:
    return format(float(x), ".17g")


def _cmd_portrait(p, out):
    grid = build_grid(p["bounds"], p["nx"], p["ny"])
    f = make_evaluator(p["evaluator"], p["mu"], p["t"])
    path = out / f"portrait_{p['evaluator']}.ppm"
    img = render.write_portrait(path, grid, f, meta={"evaluator": p["evaluator"], "mu": p["mu"], "t": p["t"]})
    print(f"wrote {path} ({img.width}x{img.height}, {img.failures} failed pixels)")


def _cmd_landscape(p, out):
    grid = build_grid(p["bounds"], p["nx"], p["ny"])
    f = make_evaluator(p["evaluator"], p["mu"], p["t"])
    path = out / f"landscape_{p['evaluator']}.csv"
    n = render.write_landscape(path, grid, f)
    print(f"wrote {path} ({n} rows)")


def _cmd_eval(p, out):
    f = make_evaluator(p["evaluator"], p["mu"], p["t"])
    path = out / "eval.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "u_re", "u_im"])
        for z in p["z"]:
            u = complex(f(complex(z)))
            w.writerow([_g(z.real), _g(z.imag), _g(u.real), _g(u.imag)])
            print(f"u({z}) = {u}")


def _cmd_inner(p, out):
    mu, n = p["mu"], p["n"]
    path = out / "inner_poles.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["quadrant", "n", "pred_re", "pred_im", "pole_re", "pole_im"])
        for q in (inner.Quadrant.FIRST, inner.Quadrant.SECOND):
            for pole in inner.predicted_poles(mu, n, q):
                z = pole.xi
                try:
                    zr = inner.find_pole(z, mu, strict=False)
                except NumericalFailure:
                    zr = complex(math.nan, math.nan)
                w.writerow([q.value, pole.n, _g(z.real), _g(z.imag), _g(zr.real), _g(zr.imag)])
    low = inner.lowest_pole(mu)
    print(f"lowest pole of Phi0 at mu={mu}: {low}")
    print(f"wrote {path}")


def _cmd_track(p, out):
    mu, t0, t1, dt = p["mu"], p["t0"], p["t1"], p["dt"]
    method = {"exact": Method.EXACT_ROOT, "saddle": Method.SADDLE, "aaa": Method.AAA}[p["method"]]
    if method is Method.AAA:
        tmax, tmin = max(t0, t1), min(t0, t1)
        seed = p["seed"] if p["seed"] is not None else poletrack.closest_pole(mu, tmax)
        m = int(round((tmax - tmin) / dt))
        times = np.concatenate([[0.0], tmin + dt * np.arange(m + 1)])
        snaps = realline.solve_real(mu, realline.SolveConfig(T=tmax, M=len(times)), times=times)
        traj = aaa.aaa_track(snaps, seed)
    else:
        seed = p["seed"] if p["seed"] is not None else poletrack.closest_pole(mu, t0)
        traj = poletrack.track_pole(method, mu, t0, t1, dt, seed, residues=False)
    path = out / f"trajectory_{p['method']}.csv"
    traj.to_csv(path)
    good = traj.good()
    print(f"wrote {path} ({len(traj.samples)} samples, {len(good.samples)} converged) {traj.note}".rstrip())


def _cmd_similarity(p, out):
    mu, t, n = p["mu"], p["t"], p["n"]
    sp = largetime.SimilarityParams.from_mu(mu)
    s = math.sqrt(mu * t)
    xs = np.linspace(-8 * s, 8 * s, 401)
    path = out / "similarity_profile.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "u"])
        for x in xs:
            w.writerow([_g(x), _g(largetime.u_largetime(x, t, mu).real)])
    ppath = out / "psi_poles.csv"
    with open(ppath, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["quadrant", "n", "pred_re", "pred_im", "pole_re", "pole_im"])
        for q in (inner.Quadrant.FIRST, inner.Quadrant.SECOND):
            for k, e in enumerate(largetime.predicted_psi_poles(sp, n, q), start=1):
                er = largetime.find_psi_pole(e, sp)
                w.writerow([q.value, k, _g(e.real), _g(e.imag), _g(er.real), _g(er.imag)])
    print(f"gamma = {sp.gamma!r}; wrote {path} and {ppath}")


def _cmd_series(p, out, which):
    snaps = realline.solve_real(p["mu"], realline.SolveConfig(T=p["T"], M=p["M"]))
    path = out / f"{which}.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if which == "slope":
            w.writerow(["t", "x_star", "max_abs_slope"])
            for s in snaps:
                x, v = realline.max_abs_slope(s)
                w.writerow([_g(s.t), _g(x), _g(v)])
        else:
            w.writerow(["t", "enstrophy"])
            for s in snaps:
                w.writerow([_g(s.t), _g(realline.enstrophy(s))])
    print(f"wrote {path}")


def _cmd_inviscid(p, out):
    path = out / "branch_points.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "re", "im"])
        for t in p["t"]:
            for z in inviscid.branch_points(t).points:
                w.writerow([_g(t), _g(z.real), _g(z.imag)])
    print(f"wrote {path}")


def _cmd_beta(p, out):
    beta, mu, t, n = p["beta"], p["mu"], p["t"], p["n"]
    path = out / "beta_poles.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["branch", "index", "re", "im"])
        if beta < 1:
            for k, s in zip(range(-n, n + 1), generalbeta.beta_lt1_poles(t, mu, beta, range(-n, n + 1))):
                w.writerow([0, k, _g(s.real), _g(s.imag)])
        elif beta > 1:
            for b, row in enumerate(generalbeta.beta2_poles(t, mu, range(1, n + 1), beta=beta)):
                for k, s in enumerate(row, start=1):
                    w.writerow([b, k, _g(s.real), _g(s.imag)])
        else:
            raise InvalidInput("beta = 1 is the main problem; use the inner or track-pole commands")
    print(f"wrote {path}")


def _cmd_critical(p, out):
    if p["which"] == "inner":
        v = inner.critical_mu()
    else:
        v = realline.critical_mu_tilde()
    (out / "critical_mu.json").write_text(json.dumps({"which": p["which"], "value": v}) + "\n")
    print(f"{v:.6f}")


def cli_dispatch(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg, out = parse_config(argv)
    except SystemExit:
        return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        out.mkdir(parents=True, exist_ok=True)
        p = cfg.params
        cmd = cfg.command
        if cmd == "portrait":
            _cmd_portrait(p, out)
        elif cmd == "landscape":
            _cmd_landscape(p, out)
        elif cmd == "eval":
            _cmd_eval(p, out)
        elif cmd == "inner":
            _cmd_inner(p, out)
        elif cmd == "track-pole":
            _cmd_track(p, out)
        elif cmd == "similarity":
            _cmd_similarity(p, out)
        elif cmd in ("slope", "enstrophy"):
            _cmd_series(p, out, cmd)
        elif cmd == "inviscid":
            _cmd_inviscid(p, out)
        elif cmd == "beta":
            _cmd_beta(p, out)
        elif cmd == "critical-mu":
            _cmd_critical(p, out)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalFailure, BurgersError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def main() -> None:
    sys.exit(cli_dispatch())
