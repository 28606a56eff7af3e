"""Command-line front end: validation suites and parameter sweeps for plotting.

Exit status is 0 on success, 1 when a validation check fails and 2 for usage
or parameter-domain errors.  Defaults may come from a ``key = value`` file
given by ``--config`` or ``ISOQ_CONFIG``; explicit flags win.  A key may be
scoped to one subcommand as ``wigner.res = 256``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import radial, states, stats, validation, wigner

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# output -------------------------------------------------------------------

def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, complex):
        return str(v)
    return v


def render(columns, rows, fmt: str, meta=None) -> str:
    """CSV (header row, LF endings) or JSON with shortest round-trip floats."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(v) for v in row])
        return buf.getvalue()
    doc = {
        "columns": list(columns),
        "meta": {k: _json_value(v) for k, v in sorted((meta or {}).items())},
        "rows": [[_json_value(v) for v in row] for row in rows],
    }
    return json.dumps(doc, allow_nan=False, indent=1) + "\n"


def parse_csv(text: str):
    """Inverse of the CSV writer for numeric tables: header plus float rows."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [[float(c) for c in row] for row in reader]


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# config -------------------------------------------------------------------

def load_config(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    with fh:
        for i, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{i}: expected 'key = value'")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _apply_config(subs: dict, command: str, cfg: dict):
    """Set defaults of ``command`` from the config map.

    Unscoped keys that belong to another subcommand are ignored, so one file
    can serve every subcommand; keys no subcommand knows are usage errors.
    """
    dests = {name: {a.dest for a in sp._actions} - {"help", "config", "func"} for name, sp in subs.items()}
    defaults = {}
    for key, val in cfg.items():
        scope, _, name = key.rpartition(".")
        if scope and scope not in subs:
            raise UsageError(f"config key {key!r} names an unknown subcommand")
        owners = [scope] if scope else list(subs)
        if not any(name in dests[o] for o in owners):
            raise UsageError(f"config key {key!r} is not a known parameter")
        if (not scope or scope == command) and name in dests[command]:
            defaults[name] = val
    # argparse converts string defaults through each option's type
    subs[command].set_defaults(**defaults)


# domain checks ------------------------------------------------------------

def _require(cond, msg):
    if not cond:
        raise ValueError(msg)


def _check_abs_xi(x, name):
    _require(0 <= x < 1, f"{name} must satisfy 0 <= |xi| < 1, got {x}")


# subcommands --------------------------------------------------------------

def cmd_validate(a):
    selected = None
    if a.criteria:
        selected = {c.strip() for c in a.criteria.split(",") if c.strip()}
        bad = selected - set(validation.SUITES)
        _require(not bad, f"unknown criteria {sorted(bad)}; choose from 1-8")
    checks = validation.run_all(selected)
    rows = [
        (c.criterion, c.name, c.status, "" if c.volatile else c.value, c.bound)
        for c in checks
    ]
    text = render(("criterion", "check", "status", "value", "bound"), rows, a.format)
    _emit(text, a.out)
    failed = [c for c in checks if not c.passed and (a.strict or not c.known)]
    return EXIT_FAIL if failed else EXIT_OK


def cmd_mandel(a):
    _check_abs_xi(a.xi_min, "--xi-min")
    _check_abs_xi(a.xi_max, "--xi-max")
    _require(a.xi_min < a.xi_max, "--xi-min must be below --xi-max")
    _require(a.steps >= 2, "--steps must be at least 2")
    rows = []
    for x in np.linspace(a.xi_min, a.xi_max, a.steps):
        m = states.make_mode(math.atanh(x), a.phi, a.alpha0)
        n1 = stats.mean_n_closed(m.xi, m.alpha)
        n2 = stats.mean_n2_closed(m.xi, m.alpha)
        q = stats.mandel_q(m.xi, m.alpha) if n1 > 0 else math.nan
        rows.append((x, n1, n2, q))
    meta = {"alpha0": a.alpha0, "phi": a.phi}
    return ("xi", "mean_n", "mean_n2", "Q"), rows, meta


def cmd_quadrature(a):
    _check_abs_xi(abs(a.xi), "--xi")
    _require(a.amp_max >= 0, "--amp-max must be nonnegative")
    _require(a.amp_steps >= 1 and a.theta_steps >= 1, "step counts must be positive")
    arr = validation.fig2_indicators(a.xi, a.amp_max, a.amp_steps, a.theta_steps)
    return ("abs_alpha0", "theta0", "I1", "I2"), arr.tolist(), {"xi": a.xi}


def cmd_angular(a):
    _check_abs_xi(abs(a.xi), "--xi")
    _require(a.half_width > 0, "--half-width must be positive")
    _require(a.steps >= 2, "--steps must be at least 2")
    arr = validation.fig3_indicators(a.xi, a.alpha0_minus, a.half_width, a.steps)
    meta = {"xi": a.xi, "alpha0_minus": a.alpha0_minus, "lz_threshold": stats.LZ_THRESHOLD}
    return ("x_plus", "y_plus", "S_Lx", "S_Ly"), arr.tolist(), meta


def cmd_wigner(a):
    _require(a.R >= 0 and a.R <= states.MAX_SQUEEZE, f"--R must lie in [0, {states.MAX_SQUEEZE}]")
    _require(a.half_width > 0, "--half-width must be positive")
    _require(2 <= a.res <= wigner.MAX_RESOLUTION, f"--res must lie in [2, {wigner.MAX_RESOLUTION}]")
    modes = tuple(m.strip() for m in a.modes.split(",") if m.strip())
    _require(modes and set(modes) <= {"r", "plus", "minus"}, "--modes takes names from r,plus,minus")
    if a.convention == "half-tanh":
        p = wigner.half_tanh_params(a.R, a.phi, a.alpha0)
    else:
        p = states.ThreeModeParams.uniform(a.R, a.phi, a.alpha0)
    h = a.half_width
    g = wigner.wigner_grid(p, (-h, h), (-h, h), a.res, a.method, modes)
    rows = [
        (x, pv, w)
        for pv, line in zip(g.p_axis, g.values)
        for x, w in zip(g.x_axis, line)
    ]
    meta = {"R": a.R, "phi": a.phi, "alpha0": a.alpha0, "convention": a.convention,
            "method": a.method, "modes": ",".join(modes), "xi": p.r.xi}
    return ("x", "p", "W"), rows, meta


def cmd_eigen(a):
    _require(a.n >= 0, "--n must be nonnegative")
    _require(a.r_min > 0 and a.r_max > a.r_min, "need 0 < --r-min < --r-max")
    _require(a.points >= 2, "--points must be at least 2")
    cfg = radial.OscillatorConfig(a.omega, a.l)
    st = radial.eigenfunction(a.n, cfg)
    r = np.linspace(a.r_min, a.r_max, a.points)
    v = radial.potential_v(r, cfg)
    phi = st(r)
    e = st.energy
    rows = [(ri, vi, fi, e) for ri, vi, fi in zip(r, v, phi)]
    return ("r", "V", "Phi", "E"), rows, {"n": a.n, "l": a.l, "omega": a.omega}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--config", default=None, help="key = value defaults file")

    parser = argparse.ArgumentParser(prog="isoq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    subs = {}

    def add(name, fn, help):
        s = sub.add_parser(name, parents=[common], help=help)
        s.set_defaults(func=fn)
        subs[name] = s
        return s

    s = add("validate", cmd_validate, "run the invariant suites")
    s.add_argument("--criteria", default="", help="comma list of suites 1-8 (default all)")
    s.add_argument("--strict", action="store_true", help="documented discrepancies also fail")

    s = add("mandel", cmd_mandel, "Mandel Q against |xi|")
    s.add_argument("--alpha0", type=complex, default=3.0)
    s.add_argument("--phi", type=float, default=0.0)
    s.add_argument("--xi-min", type=float, default=0.05)
    s.add_argument("--xi-max", type=float, default=0.95)
    s.add_argument("--steps", type=int, default=90)

    s = add("quadrature", cmd_quadrature, "I1, I2 over |alpha0| and its phase")
    s.add_argument("--xi", type=complex, default=0.3)
    s.add_argument("--amp-max", type=float, default=3.0)
    s.add_argument("--amp-steps", type=int, default=31)
    s.add_argument("--theta-steps", type=int, default=36)

    s = add("angular", cmd_angular, "S_Lx, S_Ly over the alpha0_+ plane")
    s.add_argument("--xi", type=complex, default=0.1)
    s.add_argument("--alpha0-minus", type=complex, default=1.3)
    s.add_argument("--half-width", type=float, default=2.0)
    s.add_argument("--steps", type=int, default=41)

    s = add("wigner", cmd_wigner, "Wigner function on the diagonal slice")
    s.add_argument("--R", type=float, default=0.7)
    s.add_argument("--phi", type=float, default=0.0)
    s.add_argument("--alpha0", type=complex, default=0.5)
    s.add_argument("--half-width", type=float, default=3.0)
    s.add_argument("--res", type=int, default=128)
    s.add_argument("--method", choices=("closed", "series"), default="closed")
    s.add_argument("--convention", choices=("standard", "half-tanh"), default="standard",
                   help="half-tanh: xi = -(1/2) tanh R e^{i phi}")
    s.add_argument("--modes", default="r,plus,minus")

    s = add("eigen", cmd_eigen, "sample Phi_{n,l}, V and E")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--l", type=int, default=0)
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--r-min", type=float, default=0.01)
    s.add_argument("--r-max", type=float, default=6.0)
    s.add_argument("--points", type=int, default=200)

    return parser, subs


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        pre, _ = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        path = pre.config or os.environ.get("ISOQ_CONFIG")
        if path:
            _apply_config(subs, pre.command, load_config(path))
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"isoq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        result = args.func(args)
        if isinstance(result, int):
            return result
        columns, rows, meta = result
        _emit(render(columns, rows, args.format, meta), args.out)
    except (ValueError, states.TruncationError) as exc:
        print(f"isoq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())
