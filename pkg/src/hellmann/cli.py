"""Command-line entry point.

Exit codes: 0 success, 1 usage or I/O error, 2 evanescent channel, 3 verify
failure.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import load_config
from .dkp import DkpChannel, dkp_bound_states, dkp_gamma, dkp_phase_shift, dkp_total_cross_section
from .errors import EvanescentChannel, HellmannError
from .scan import MASS_CONVENTIONS, PRESETS, build_channel, run_scan, spec_from_params, trend_report, write_scan
from .sse import sse_bound_states, sse_exponent, sse_phase_shift, sse_total_cross_section
from .verify import FAIL, channel_checks, format_lines, run_battery

EXIT_OK, EXIT_USAGE, EXIT_EVANESCENT, EXIT_VERIFY = 0, 1, 2, 3

CHANNEL_KEYS = ("model", "a", "b", "rho", "energy", "mass", "m1", "m2", "J", "l",
                "mu_override", "mass_index_override")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _channel_args(p):
    p.add_argument("--config", help="key=value parameter file; flags take precedence")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--mass-convention", dest="mass_convention", choices=sorted(MASS_CONVENTIONS),
                   help="figure mass convention for SSE presets (default: equal)")
    p.add_argument("--model", choices=("dkp", "sse"))
    for name in ("a", "b", "rho", "energy", "mass", "m1", "m2"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--J", type=int, help="total angular momentum (dkp)")
    p.add_argument("--l", type=int, help="orbital angular momentum (sse)")
    p.add_argument("--mu-override", dest="mu_override", type=float)
    p.add_argument("--mass-index-override", dest="mass_index_override", type=float)
    p.add_argument("--allow-complex-exponent", dest="allow_complex_exponent",
                   action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hellmann", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("phase", help="phase shift of one partial wave")
    _channel_args(p)

    p = sub.add_parser("scan", help="sweep one parameter and write CSV + gnuplot script")
    _channel_args(p)
    p.add_argument("--sweep", choices=("J", "l", "E", "rho", "a", "b"))
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--out", default="scan.csv")
    p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("cross-section", help="total cross section from partial waves")
    _channel_args(p)
    p.add_argument("--lmax", type=int)
    p.add_argument("--tol", type=float)

    p = sub.add_parser("bound", help="bound-state energies from the pole condition")
    _channel_args(p)
    p.add_argument("--nmax", type=int)
    p.add_argument("--emin", type=float)
    p.add_argument("--emax", type=float)
    p.add_argument("--grid", type=int)

    p = sub.add_parser("verify", help="run the diagnostic battery")
    _channel_args(p)
    return parser


def _params(args) -> dict:
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config", "out")}
    return load_config(args.config, flags)


def _with_preset(params) -> dict:
    """Fill missing single-channel parameters from a preset's first series."""
    preset = params.get("preset")
    if preset is None:
        return params
    merged = {k: v for k, v in PRESETS[preset].items() if k not in ("series", "sweep", "start",
                                                                     "stop", "count")}
    merged.update(PRESETS[preset]["series"][0] if "series" in PRESETS[preset] else {})
    if merged["model"] == "sse":
        mu, s = MASS_CONVENTIONS[params.get("mass_convention") or "equal"]
        merged.update(m1=1.0, m2=1.0, mu_override=mu, mass_index_override=s,
                      allow_complex_exponent=True)
    merged.update({k: v for k, v in params.items() if v is not None})
    return merged


def _require(params, *keys):
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise UsageError("missing required parameter(s): " + ", ".join(f"--{k}" for k in missing))


def _channel(params, need_index=True):
    _require(params, "model", "a", "b", "rho", "energy")
    if params["model"] == "dkp":
        _require(params, "mass", *(("J",) if need_index else ()))
    else:
        _require(params, "m1", "m2", *(("l",) if need_index else ()))
    return build_channel(params["model"], params)


def _fmt_c(z: complex) -> str:
    return f"{z.real:.17g}" if z.imag == 0 else f"{z.real:.17g}{z.imag:+.17g}i"


def cmd_phase(params, out) -> int:
    ch = _channel(params)
    allow = bool(params.get("allow_complex_exponent"))
    if isinstance(ch, DkpChannel):
        res, expo, name = dkp_phase_shift(ch, allow), dkp_gamma(ch), "gamma"
    else:
        res, expo, name = sse_phase_shift(ch, allow), sse_exponent(ch), "v"
    rows = [("model", params["model"]), ("k", f"{res.k:.17g}"), (name, _fmt_c(expo)),
            ("delta_rad", f"{res.delta:.17g}"), ("T", f"{res.transition:.17g}"),
            ("sigma_partial", f"{res.partial_sigma:.17g}"),
            ("identity_ok", str(res.identity_ok).lower()), ("evanescent", "false")]
    for key, value in rows:
        out.write(f"{key:<14} {value}\n")
    return EXIT_OK


def cmd_cross_section(params, out) -> int:
    _require(params, "lmax")
    ch = _channel(params, need_index=False)
    allow = bool(params.get("allow_complex_exponent"))
    tol = params.get("tol")
    if isinstance(ch, DkpChannel):
        sigma, used = dkp_total_cross_section(ch, params["lmax"], tol, allow)
        terms = [dkp_phase_shift(ch.with_J(j), allow) for j in range(used)]
    else:
        sigma, used = sse_total_cross_section(ch, params["lmax"], tol, allow)
        terms = [sse_phase_shift(ch.with_l(j), allow) for j in range(used)]
    out.write(f"sigma_total {sigma:.17g}\nterms_used  {used}\n")
    out.write("l,k,delta_rad,T,sigma_partial\n")
    for t in terms:
        out.write(f"{t.ell},{t.k:.17g},{t.delta:.17g},{t.transition:.17g},{t.partial_sigma:.17g}\n")
    return EXIT_OK


def cmd_bound(params, out) -> int:
    _require(params, "nmax")
    ch = _channel(params)
    grid = params.get("grid") or 2000
    if isinstance(ch, DkpChannel):
        lo = params.get("emin") if params.get("emin") is not None else -ch.mass
        hi = params.get("emax") if params.get("emax") is not None else ch.mass
        if not lo < hi:
            raise UsageError(f"--emin {lo} must be below --emax {hi}")
        states = dkp_bound_states(ch, params["nmax"], (lo, hi), grid)
    else:
        _require(params, "emin", "emax")
        lo, hi = params["emin"], params["emax"]
        if not lo < hi:
            raise UsageError(f"--emin {lo} must be below --emax {hi}")
        states = sse_bound_states(ch, params["nmax"], (lo, hi), grid)
    out.write("n,E,residual\n")
    for s in states:
        out.write(f"{s.n},{s.energy:.17g},{s.residual:.3e}\n")
    return EXIT_OK


def cmd_scan(params, out, path) -> int:
    try:
        spec = spec_from_params(params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = run_scan(spec, jobs=params.get("jobs") or 1)
    try:
        csv_path, meta_path, gp_path = write_scan(spec, rows, Path(path))
    except OSError as exc:
        sys.stderr.write(f"hellmann: cannot write {path}: {exc}\n")
        return EXIT_USAGE
    for line in trend_report(spec, rows):
        out.write(line + "\n")
    out.write(f"wrote {csv_path} ({len(rows)} rows), {meta_path}, {gp_path}\n")
    return EXIT_OK


def cmd_verify(params, out) -> int:
    if any(params.get(k) is not None for k in CHANNEL_KEYS) or params.get("preset"):
        lines = list(channel_checks(_channel(params)))
    else:
        lines = run_battery()
    out.write(format_lines(lines))
    n_fail = sum(1 for status, *_ in lines if status == FAIL)
    out.write(f"{len(lines)} checks, {n_fail} failed\n")
    return EXIT_VERIFY if n_fail else EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        params = _params(args)
        if args.command != "scan":
            params = _with_preset(params)
        if args.command == "phase":
            return cmd_phase(params, out)
        if args.command == "cross-section":
            return cmd_cross_section(params, out)
        if args.command == "bound":
            return cmd_bound(params, out)
        if args.command == "scan":
            return cmd_scan(params, out, args.out)
        return cmd_verify(params, out)
    except EvanescentChannel as exc:
        sys.stderr.write(f"hellmann: {exc}\n")
        return EXIT_EVANESCENT
    except (UsageError, HellmannError, ValueError, OSError) as exc:
        sys.stderr.write(f"hellmann: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
