"""
Command-line front end.

    oscillent spectrum --n 2 --m 2 --sin-theta 0.4
    oscillent energy --n 1 --m 0 --omega1 1 --omega2 1 --omegac 0.1
    oscillent sweep-theta --pairs 2:2,3:3 --grid=-0.999:0.999:999 --output optimum.csv --figure
    oscillent sweep-coupling --n 5 --m 5 --anisotropy 0.97 --grid 0.001:0.5:500
    oscillent dynamics --n 0 --m 3 --sin-theta 0.01,0.1,0.25 --t-max 12.566 --t-steps 400
    oscillent verify

Exit status: 0 success, 2 invalid parameters, 3 I/O failure, 4 verify failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import transition_probability
from .errors import IoFailure, OscillentError
from .model import eigen_energy, normal_modes, validate_params
from .schmidt import DEFAULT_MAX_LEVEL, entanglement_measures, schmidt_spectrum
from .sweeps import SIGNIFICANT_DIGITS, emit, sweep_coupling, sweep_dynamics, sweep_theta, worker_count

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_VERIFY = 4

_BOOL_KEYS = {"figure", "lambdas", "exact_angle", "quick"}


class UsageError(OscillentError):
    pass


def _num(x: float) -> str:
    return format(float(x), f".{SIGNIFICANT_DIGITS}g")


def parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            n, m = (int(v) for v in chunk.split(":"))
        except ValueError:
            raise UsageError(f"bad pair {chunk!r}; expected n:m") from None
        pairs.append((n, m))
    if not pairs:
        raise UsageError("--pairs needs at least one n:m entry")
    return pairs


def parse_grid(text: str) -> np.ndarray:
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise UsageError(f"bad grid {text!r}; expected min:max:steps") from None
    if steps < 1:
        raise UsageError("grid needs at least one step")
    return np.linspace(lo, hi, steps)


def parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad number list {text!r}") from None


def load_config(path: str) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value file; flags override it")
    common.add_argument("--n", type=int, help="first quantum number (initial m1 for dynamics)")
    common.add_argument("--m", type=int, help="second quantum number (initial m2 for dynamics)")
    common.add_argument("--sin-theta", dest="sin_theta", help="sin(theta); comma list allowed for dynamics")
    common.add_argument("--omega1", type=float)
    common.add_argument("--omega2", type=float)
    common.add_argument("--omegac", dest="omega_c", type=float)
    common.add_argument("--anisotropy", type=float, help="R = omega1^2/omega2^2 for sweep-coupling")
    common.add_argument("--exact-angle", dest="exact_angle", action="store_true",
                        help="use the (3+R) mixing angle instead of (1+3R)")
    common.add_argument("--pairs", help="n:m[,n:m...]")
    common.add_argument("--grid", help="min:max:steps")
    common.add_argument("--t-max", dest="t_max", type=float, default=4 * math.pi)
    common.add_argument("--t-steps", dest="t_steps", type=int, default=401)
    common.add_argument("--lambdas", action="store_true", help="add per-mode lambda columns to dynamics")
    common.add_argument("--phase", choices=("approx", "exact"), default="approx")
    common.add_argument("--format", dest="fmt", choices=("text", "csv", "json", "svg"))
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--tag", help="file tag used when no --output is given")
    common.add_argument("--figure", action="store_true", help="also write an SVG figure next to the data")
    common.add_argument("--max-level", dest="max_level", type=int, default=DEFAULT_MAX_LEVEL)
    common.add_argument("--quick", action="store_true", help="verify: smaller grids")

    parser = argparse.ArgumentParser(prog="oscillent", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}
    for name, help_ in (
        ("spectrum", "Schmidt modes, S_v and K of one state"),
        ("energy", "eigenenergy of one normal-mode state"),
        ("sweep-theta", "S_v and K against sin(theta)"),
        ("sweep-coupling", "S_v and K against r = omega_c/omega2"),
        ("dynamics", "entropy time series from a bare product state"),
        ("transition", "transition probability between bare states"),
        ("verify", "run the oracle cross-checks"),
    ):
        subparsers[name] = sub.add_parser(name, parents=[common], help=help_)
    t = subparsers["transition"]
    t.add_argument("--to", required=False, help="target bare state p1:p2")
    t.add_argument("--t-tilde", dest="t_tilde", type=float, default=0.0, help="dimensionless time")
    return parser, subparsers


def _apply_config(argv: list[str], subparsers: dict) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config or known.command not in subparsers:
        return
    target = subparsers[known.command]
    dests = {a.dest for a in target._actions}
    values: dict = {}
    for key, value in load_config(known.config).items():
        if key == "omegac":
            key = "omega_c"
        if key == "format":
            key = "fmt"
        if key not in dests:
            raise UsageError(f"unknown config key {key!r}")
        if key in _BOOL_KEYS:
            values[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            values[key] = value
    target.set_defaults(**values)


def _theta_source(args) -> tuple[float, dict]:
    """sin(theta) and a description of where it came from."""
    physical = [args.omega1, args.omega2, args.omega_c]
    has_phys = any(v is not None for v in physical)
    if args.sin_theta is not None and has_phys:
        raise UsageError("give either --sin-theta or --omega1/--omega2/--omegac, not both")
    if args.sin_theta is not None:
        values = parse_floats(args.sin_theta)
        if len(values) != 1:
            raise UsageError("--sin-theta takes one value here")
        return values[0], {"input": "sin_theta (direct; physics bypassed)"}
    if has_phys:
        params = _physical(args)
        modes = normal_modes(params, exact_angle=args.exact_angle)
        return modes.sin_theta, {
            "input": "physical",
            "omega1": params.omega1,
            "omega2": params.omega2,
            "omega_c": params.omega_c,
            "theta": modes.theta,
        }
    raise UsageError("need --sin-theta or --omega1/--omega2/--omegac")


def _physical(args):
    if None in (args.omega1, args.omega2, args.omega_c):
        raise UsageError("--omega1, --omega2 and --omegac must all be given")
    return validate_params(args.omega1, args.omega2, args.omega_c)


def _pair(args) -> tuple[int, int]:
    if args.n is None or args.m is None:
        if args.pairs:
            pairs = parse_pairs(args.pairs)
            if len(pairs) == 1:
                return pairs[0]
        raise UsageError("need --n and --m")
    return args.n, args.m


def _write_kv(items: list[tuple[str, object]], out) -> None:
    for key, value in items:
        out.write(f"{key} = {value}\n")


def cmd_spectrum(args, out) -> int:
    n, m = _pair(args)
    s, source = _theta_source(args)
    spec = schmidt_spectrum((n, m), s, max_level=args.max_level)
    meas = entanglement_measures(spec)
    if args.fmt == "json":
        doc = {
            "n": n, "m": m, "sin_theta": s, "lambdas": [float(v) for v in spec.lambdas],
            "S_v": meas.entropy, "K": meas.schmidt_number, "source": source,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    items: list[tuple[str, object]] = [("input", source["input"])]
    items += [(k, _num(v)) for k, v in source.items() if k != "input"]
    items += [
        ("n", n),
        ("m", m),
        ("sin_theta", _num(s)),
        ("lambda", ",".join(_num(v) for v in spec.lambdas)),
        ("S_v", _num(meas.entropy)),
        ("K", _num(meas.schmidt_number)),
    ]
    _write_kv(items, out)
    return EXIT_OK


def cmd_energy(args, out) -> int:
    n, m = _pair(args)
    params = _physical(args)
    modes = normal_modes(params)
    energy = eigen_energy(n, m, modes)
    if args.fmt == "json":
        out.write(json.dumps({"n": n, "m": m, "sigma1": modes.sigma1, "sigma2": modes.sigma2,
                              "E": energy}, indent=2) + "\n")
        return EXIT_OK
    _write_kv([("n", n), ("m", m), ("sigma1", _num(modes.sigma1)), ("sigma2", _num(modes.sigma2)),
               ("E", _num(energy))], out)
    return EXIT_OK


def _emit_table(table, args, out) -> int:
    fmt = args.fmt or "csv"
    if fmt == "text":
        fmt = "csv"
    tag = args.tag or time.strftime("%Y%m%d-%H%M%S")
    if args.output:
        dest = Path(args.output)
    elif fmt == "svg":
        dest = Path(f"{table.kind}_{tag}.svg")
    else:
        dest = None
    emit(table, fmt, dest if dest is not None else out)
    if args.figure and fmt != "svg":
        fig_path = dest.with_suffix(".svg") if dest is not None else Path(f"{table.kind}_{tag}.svg")
        emit(table, "svg", fig_path)
    return EXIT_OK


def cmd_sweep_theta(args, out) -> int:
    pairs = parse_pairs(args.pairs) if args.pairs else [_pair(args)]
    grid = parse_grid(args.grid or "-0.999:0.999:999")
    table = sweep_theta(pairs, grid, workers=worker_count(), max_level=args.max_level)
    return _emit_table(table, args, out)


def cmd_sweep_coupling(args, out) -> int:
    pair = _pair(args)
    if args.anisotropy is not None:
        R = args.anisotropy
    elif args.omega1 is not None and args.omega2 is not None:
        R = args.omega1**2 / args.omega2**2
    else:
        raise UsageError("need --anisotropy or --omega1/--omega2")
    grid = parse_grid(args.grid or "0.001:0.5:500")
    table = sweep_coupling(pair, R, grid, exact_angle=args.exact_angle,
                           workers=worker_count(), max_level=args.max_level)
    return _emit_table(table, args, out)


def cmd_dynamics(args, out) -> int:
    initial = _pair(args)
    params = None
    if args.sin_theta is not None:
        if any(v is not None for v in (args.omega1, args.omega2, args.omega_c)):
            raise UsageError("give either --sin-theta or --omega1/--omega2/--omegac, not both")
        values = parse_floats(args.sin_theta)
    else:
        s, _ = _theta_source(args)
        params = _physical(args)
        values = [s]
    if args.phase == "exact" and params is None:
        raise UsageError("--phase exact needs --omega1/--omega2/--omegac")
    if args.t_steps < 1:
        raise UsageError("--t-steps must be >= 1")
    t = np.linspace(0.0, args.t_max, args.t_steps)
    table = sweep_dynamics(initial, values, t, include_lambdas=args.lambdas, phase_mode=args.phase,
                           params=params, workers=worker_count(), max_level=args.max_level)
    return _emit_table(table, args, out)


def cmd_transition(args, out) -> int:
    source = _pair(args)
    if not args.to:
        raise UsageError("need --to p1:p2")
    target = parse_pairs(args.to)[0]
    s, origin = _theta_source(args)
    params = _physical(args) if origin["input"] == "physical" else None
    if args.phase == "exact" and params is None:
        raise UsageError("--phase exact needs --omega1/--omega2/--omegac")
    p = transition_probability(source, target, s, args.t_tilde, phase_mode=args.phase, params=params,
                               max_level=args.max_level)
    _write_kv([("from", f"{source[0]}:{source[1]}"), ("to", f"{target[0]}:{target[1]}"),
               ("t_tilde", _num(args.t_tilde)), ("probability", _num(p))], out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .verify import run_verification

    results = run_verification(quick=args.quick)
    for res in results:
        out.write(res.line() + "\n")
    ok = all(r.passed for r in results)
    out.write(("all checks passed" if ok else "verification FAILED") + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "spectrum": cmd_spectrum,
    "energy": cmd_energy,
    "sweep-theta": cmd_sweep_theta,
    "sweep-coupling": cmd_sweep_coupling,
    "dynamics": cmd_dynamics,
    "transition": cmd_transition,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser, subparsers = build_parser()
    try:
        _apply_config(argv, subparsers)
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except IoFailure as exc:
        err.write(f"oscillent: I/O error: {exc}\n")
        return EXIT_IO
    except (OscillentError, ValueError) as exc:
        err.write(f"oscillent: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        err.write(f"oscillent: I/O error: {exc}\n")
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
