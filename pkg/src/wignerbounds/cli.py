"""Command-line surface: bounds, spectra, sweeps, and oracle validation.

Exit codes: 0 success, 1 computational failure, 2 usage error, 3 oracle
violation.  Relative output paths resolve under ``$WIGNER_BOUNDS_OUTDIR``
when that variable is set.  An optional ``--config`` file supplies
``key = value`` defaults; explicit flags always win.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .bounds import (
    DoubleWedge,
    HyperbolaDouble,
    HyperbolaSingle,
    OptimizerConfig,
    Wedge,
    optimize_bounds,
    sweep,
)
from .kernels import kernels_grid
from .oracle import (
    Coherent,
    Fock,
    Squeezed,
    containment_check,
    expectation_region_operator,
    qpi,
    region_for_family,
)
from .spectrum import _mu_double, _mu_single

_EXIT_OK = 0
_EXIT_COMPUTE = 1
_EXIT_USAGE = 2
_EXIT_VIOLATION = 3

_FAMILIES = ("wedge", "double-wedge", "hyperbola", "double-hyperbola")


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    """Scientific notation with 12 significant digits."""
    x = float(x)
    if math.isinf(x) or math.isnan(x):
        return repr(x)
    return f"{x:.11e}"


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    outdir = os.environ.get("WIGNER_BOUNDS_OUTDIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _emit(text: str, out_path: str | None) -> None:
    path = _resolve_out(out_path)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_config(path: str | None) -> dict:
    """Simple ``key = value`` config file; '#' starts a comment."""
    if path is None:
        return {}
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _coerce(raw: str):
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            pass
    return raw


def _merge_config(args: argparse.Namespace, file_values: dict,
                  defaults: dict) -> None:
    """Fill unset (None) options from the config file, then defaults."""
    for key, raw in file_values.items():
        if getattr(args, key, "missing") is None:
            setattr(args, key, _coerce(raw))
    for key, default in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, default)


def _parse_family(args) -> object:
    name = args.family
    if name in ("hyperbola", "double-hyperbola"):
        if args.k is None:
            raise UsageError(f"--k is required for --family {name}")
        if args.k < 0:
            raise UsageError("k must be nonnegative")
        return HyperbolaSingle(args.k) if name == "hyperbola" else HyperbolaDouble(args.k)
    if args.k is not None:
        raise UsageError(f"--k does not apply to --family {name}")
    return Wedge() if name == "wedge" else DoubleWedge()


def _parse_state(spec: str):
    """Parse ``fock:n``, ``coherent:q0,p0`` or ``squeezed:sigma,q0,p0``."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "fock":
            return Fock(int(rest))
        if kind == "coherent":
            q0, p0 = (float(v) for v in rest.split(","))
            return Coherent(q0, p0)
        if kind == "squeezed":
            sigma, q0, p0 = (float(v) for v in rest.split(","))
            return Squeezed(sigma, q0, p0)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad state spec {spec!r}: {exc}") from None
    raise UsageError(f"unknown state family in {spec!r} "
                     "(expected fock:/coherent:/squeezed:)")


def _optimizer_config(args) -> OptimizerConfig:
    base = OptimizerConfig()
    return OptimizerConfig(
        omega_min=args.omega_min if args.omega_min is not None else base.omega_min,
        omega_max=args.omega_max if args.omega_max is not None else base.omega_max,
        coarse_step=args.coarse_step if args.coarse_step is not None else base.coarse_step,
        refine_tol=args.refine_tol if args.refine_tol is not None else base.refine_tol,
    )


def _report(payload: dict, args) -> str:
    payload = dict(payload)
    payload["version"] = __version__
    payload["config"] = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("func", "defaults") and not callable(v)
    }
    return json.dumps(payload, indent=2, sort_keys=True, default=repr) + "\n"


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    family = _parse_family(args)
    result = optimize_bounds(family, _optimizer_config(args))
    if args.format == "json":
        text = _report({
            "command": "bounds",
            "lower": result.lower,
            "upper": result.upper,
            "omega_at_lower": result.omega_at_lower,
            "omega_at_upper": result.omega_at_upper,
            "certified_tol": result.certified_tol,
        }, args)
    else:
        text = (
            f"lower = {_fmt(result.lower)}  at omega = {_fmt(result.omega_at_lower)}\n"
            f"upper = {_fmt(result.upper)}  at omega = {_fmt(result.omega_at_upper)}\n"
            f"certified_tol = {_fmt(result.certified_tol)}\n"
        )
    _emit(text, args.out)
    return _EXIT_OK


def cmd_spectrum(args) -> int:
    family = _parse_family(args)
    if args.step <= 0:
        raise UsageError("--step must be positive")
    if args.omega_min >= args.omega_max:
        raise UsageError("omega window is empty")
    n = int(round((args.omega_max - args.omega_min) / args.step)) + 1
    omegas = np.linspace(args.omega_min, args.omega_max, n)
    k = getattr(family, "k", 0.0)
    d, a, b = kernels_grid(omegas, k)
    if isinstance(family, (Wedge, HyperbolaSingle)):
        hi, lo = _mu_single(d, a, b)
    else:
        hi, lo = _mu_double(d, a)
    lines = ["omega,mu_minus,mu_plus"]
    for w, m_lo, m_hi in zip(omegas, lo, hi):
        lines.append(f"{_fmt(w)},{_fmt(m_lo)},{_fmt(m_hi)}")
    _emit("\n".join(lines) + "\n", args.out)
    return _EXIT_OK


def cmd_sweep(args) -> int:
    if args.kind not in ("single", "double"):
        raise UsageError("--kind must be single or double")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not 0.0 <= args.k_min < args.k_max:
        raise UsageError("need 0 <= k-min < k-max")
    ks = np.linspace(args.k_min, args.k_max, args.steps)
    rows = sweep(args.kind, ks, _optimizer_config(args))
    lines = ["k,lower,upper,omega_lower,omega_upper"]
    failures = []
    for row in rows:
        if row.result is None:
            failures.append(f"k = {row.k}: {row.error}")
            continue
        r = row.result
        lines.append(
            f"{_fmt(row.k)},{_fmt(r.lower)},{_fmt(r.upper)},"
            f"{_fmt(r.omega_at_lower)},{_fmt(r.omega_at_upper)}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    if failures:
        sys.stderr.write("\n".join(failures) + "\n")
        return _EXIT_COMPUTE
    return _EXIT_OK


def cmd_oracle(args) -> int:
    if not args.state:
        raise UsageError("at least one --state is required")
    states = [_parse_state(s) for s in args.state]
    family = _parse_family(args)
    bounds_result = optimize_bounds(family, _optimizer_config(args))
    report = containment_check(states, family, bounds_result)
    text = _report({
        "command": "oracle",
        "lower": bounds_result.lower,
        "upper": bounds_result.upper,
        "tolerance": report.tolerance,
        "entries": list(report.entries),
        "violations": list(report.violations),
        "pass": report.passed,
    }, args)
    _emit(text, args.out)
    return _EXIT_OK if report.passed else _EXIT_VIOLATION


def cmd_kernel_check(args) -> int:
    state = _parse_state(args.state)
    if args.k < 0:
        raise UsageError("k must be nonnegative")
    operator_side = expectation_region_operator(state, args.k)
    phase_side = qpi(state, region_for_family(HyperbolaSingle(args.k))).value
    diff = abs(operator_side - phase_side)
    text = _report({
        "command": "kernel-check",
        "operator_side": operator_side,
        "phase_space_side": phase_side,
        "difference": diff,
        "tolerance": args.tol,
        "pass": diff <= args.tol,
    }, args)
    _emit(text, args.out)
    return _EXIT_OK if diff <= args.tol else _EXIT_VIOLATION


# ---------------------------------------------------------------------------
# Parser assembly.
# ---------------------------------------------------------------------------

def _add_common(p, defaults):
    p.add_argument("--config", help="key = value config file (flags win)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(defaults=defaults)


def _add_window_flags(p):
    p.add_argument("--omega-min", type=float)
    p.add_argument("--omega-max", type=float)
    p.add_argument("--coarse-step", type=float)
    p.add_argument("--refine-tol", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wigner-bounds",
        description="Best-possible bounds on Wigner quasiprobability "
                    "integrals over hyperbolic and wedge regions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="compute certified bounds for a family")
    p.add_argument("--family", choices=_FAMILIES, required=True)
    p.add_argument("--k", type=float)
    p.add_argument("--format", choices=("text", "json"))
    _add_window_flags(p)
    _add_common(p, {"format": "text"})
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("spectrum", help="dump mu_-(omega), mu_+(omega) as CSV")
    p.add_argument("--family", choices=_FAMILIES, required=True)
    p.add_argument("--k", type=float)
    p.add_argument("--omega-min", type=float)
    p.add_argument("--omega-max", type=float)
    p.add_argument("--step", type=float)
    _add_common(p, {"omega_min": -5.0, "omega_max": 5.0, "step": 0.01})
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="bounds over a k range as CSV")
    p.add_argument("--kind", choices=("single", "double"), required=True)
    p.add_argument("--k-min", type=float)
    p.add_argument("--k-max", type=float)
    p.add_argument("--steps", type=int)
    _add_window_flags(p)
    _add_common(p, {"k_min": 0.0, "k_max": 5.0, "steps": 101})
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="containment of direct qpis in the bounds")
    p.add_argument("--state", action="append",
                   help="fock:n | coherent:q0,p0 | squeezed:sigma,q0,p0 "
                        "(repeatable)")
    p.add_argument("--family", choices=_FAMILIES, required=True)
    p.add_argument("--k", type=float)
    _add_window_flags(p)
    _add_common(p, {})
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("kernel-check",
                       help="operator-side vs phase-space-side duality")
    p.add_argument("--state", required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--tol", type=float)
    _add_common(p, {"tol": 1e-6})
    p.set_defaults(func=cmd_kernel_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_values = _load_config(args.config)
        _merge_config(args, file_values, getattr(args, "defaults", {}))
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_USAGE
    except (ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_USAGE
    except Exception as exc:  # quadrature/optimizer failures
        sys.stderr.write(f"computation failed: {exc}\n")
        return _EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
