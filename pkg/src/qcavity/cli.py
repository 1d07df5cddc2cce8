"""Command-line interface.

Subcommands: spectrum, observables, wavefunction, verify, evolve.
Configuration comes from an optional TOML file plus flag overrides
(flags win).  Numeric flags accept pi literals such as `pi`, `pi/4`,
`2pi/3` and `-3*pi/2`.  Data goes to CSV/JSON files named by --out, or
to stdout with --stdout; diagnostics go to stderr.

Exit codes: 0 success, 1 a verified invariant or deviation bound
failed, 2 configuration error (the diagnostic names the offending key).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import re
import sys

import numpy as np

from . import spectra, verify, wavefunctions
from .model import CavityModel
from .observables import OperatorTag, energy_conservation_residual, real_inner
from .oracle import evolve_family


class ConfigError(Exception):
    pass


_PI_RE = re.compile(r"^([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?$")


def parse_number(text) -> float:
    """Float parser with pi literals: 'pi', '2pi', 'pi/4', '-3*pi/2'."""
    if isinstance(text, (int, float)):
        return float(text)
    text = text.strip().lower()
    match = _PI_RE.match(text)
    if match:
        coef, den = match.groups()
        if coef in ("", "+"):
            value = math.pi
        elif coef == "-":
            value = -math.pi
        else:
            value = float(coef) * math.pi
        return value / float(den) if den else value
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse number {text!r}") from None


_MODEL_KEYS = ("ell", "mass", "hbar", "v0", "v1", "w0", "w1", "u1")
_FAMILY_KEYS = ("kind", "n", "theta", "omega", "e0", "e1", "parity", "twist",
                "inner_sign")
_KNOWN_KEYS = {
    "spectrum": _MODEL_KEYS + ("nmax",),
    "observables": _MODEL_KEYS + _FAMILY_KEYS + ("t_max", "t_steps", "quad_tol"),
    "wavefunction": _MODEL_KEYS + _FAMILY_KEYS + ("t", "grid_points"),
    "verify": _MODEL_KEYS + ("n_random", "n_eigen", "ortho_max_n",
                             "evolve_points", "evolve_steps", "perturb_y0",
                             "perturb_k", "seed"),
    "evolve": _MODEL_KEYS + _FAMILY_KEYS + ("grid_points", "time_steps",
                                            "t_final", "max_deviation",
                                            "boundary"),
}


def load_config(path: str | None, command: str) -> dict:
    if path is None:
        return {}
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file is not valid TOML: {exc}") from None
    known = _KNOWN_KEYS[command]
    for key in data:
        if key not in known:
            raise ConfigError(f"unknown config key {key!r} for {command}")
    return data


def build_model(cfg: dict) -> CavityModel:
    kwargs = {}
    for key in ("ell", "mass", "hbar", "v0", "v1", "w0", "w1"):
        if cfg.get(key) is not None:
            kwargs[key] = parse_number(cfg[key])
    if cfg.get("u1") is not None:
        if cfg.get("w0") is not None or cfg.get("w1") is not None:
            raise ConfigError("key 'u1' conflicts with 'w0'/'w1'")
        kwargs["w0"] = parse_number(cfg["u1"])
    try:
        return CavityModel(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def build_state(cfg: dict, model: CavityModel):
    kind = cfg.get("kind", "I")
    n = int(cfg.get("n", 1))
    parity = cfg.get("parity", "even")
    inner = int(cfg.get("inner_sign", -1))
    try:
        if kind == "I":
            return wavefunctions.kind_i(model, n)
        if kind == "II":
            return wavefunctions.kind_ii(model, n,
                                         parse_number(cfg.get("theta", "pi/4")),
                                         parse_number(cfg.get("omega", 0.0)))
        if kind == "III_prop":
            return wavefunctions.kind_iii_propagating(
                model, parse_number(cfg["e1"]), parity)
        if kind == "III_evan":
            return wavefunctions.kind_iii_evanescent(
                model, parse_number(cfg["e1"]), parity)
        if kind == "III_combined":
            energy = complex(parse_number(cfg["e0"]), parse_number(cfg["e1"]))
            return wavefunctions.kind_iii_combined(model, energy, parity)
        if kind == "phase_twisted":
            e0 = parse_number(cfg.get("e0", -model.v1))
            energy = complex(e0, parse_number(cfg["e1"]))
            return wavefunctions.phase_generalized(
                model, energy, parse_number(cfg.get("twist", 0.0)))
        if kind in ("lift_left", "lift_right"):
            equation = kind.split("_")[1]
            theta = cfg.get("theta")
            return wavefunctions.lift_quantized(
                model, n, equation, inner_sign=inner,
                theta=None if theta is None else parse_number(theta),
                omega=parse_number(cfg.get("omega", 0.0)))
    except (KeyError, ValueError) as exc:
        key = exc.args[0] if isinstance(exc, KeyError) else exc
        raise ConfigError(f"invalid family configuration: {key}") from None
    raise ConfigError(f"unknown family kind {kind!r}")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return "" if value is None else str(value)


def write_csv(rows, header, out_path, to_stdout):
    target = sys.stdout if to_stdout else open(out_path, "w", newline="")
    try:
        writer = csv.writer(target, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    finally:
        if not to_stdout:
            target.close()
            print(f"wrote {out_path}", file=sys.stderr)


def write_json(payload, out_path, to_stdout):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if to_stdout:
        sys.stdout.write(text + "\n")
    else:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")
        print(f"wrote {out_path}", file=sys.stderr)


# -- subcommands ---------------------------------------------------------------

def cmd_spectrum(cfg, args) -> int:
    nmax = int(cfg.get("nmax", 10))
    if nmax < 1:
        raise ConfigError("key 'nmax' must be >= 1")
    model = build_model(cfg)
    if args.out and args.out.endswith(".json"):
        write_json(spectra.spectrum_report(model, nmax), args.out, args.stdout)
        return 0
    rows = [(row["n"], row["e_complex"], row["e_quat"], row["gap"],
             row["sq_gap"])
            for row in spectra.spectrum_report(model, nmax)["levels"]]
    write_csv(rows, ("N", "E_N", "E1_N", "gap", "sq_gap"),
              args.out or "spectrum.csv", args.stdout)
    return 0


def cmd_observables(cfg, args) -> int:
    model = build_model(cfg)
    state = build_state(cfg, model)
    t_max = parse_number(cfg.get("t_max", 1.0))
    t_steps = int(cfg.get("t_steps", 5))
    tol = float(cfg.get("quad_tol", 1e-11))
    rows = []
    for t in np.linspace(0.0, t_max, t_steps):
        t = float(t)
        values = {op: real_inner(state, state, op, t, tol=tol)
                  for op in (OperatorTag.ENERGY, OperatorTag.MOMENTUM,
                             OperatorTag.MOMENTUM_SQUARED,
                             OperatorTag.POTENTIAL, OperatorTag.POSITION)}
        rows.append((t, values[OperatorTag.ENERGY], values[OperatorTag.MOMENTUM],
                     values[OperatorTag.MOMENTUM_SQUARED],
                     values[OperatorTag.POTENTIAL], values[OperatorTag.POSITION],
                     energy_conservation_residual(state, t, tol=tol)))
    write_csv(rows, ("t", "E", "p", "p2", "V", "x", "conservation_residual"),
              args.out or "observables.csv", args.stdout)
    return 0


def cmd_wavefunction(cfg, args) -> int:
    model = build_model(cfg)
    state = build_state(cfg, model)
    t = parse_number(cfg.get("t", 0.0))
    n_points = int(cfg.get("grid_points", 201))
    xs = np.linspace(-0.5 * model.ell, 0.5 * model.ell, n_points)
    u0, u1 = state.pair(xs, t)
    rows = [(float(x), c0.real, c0.imag, c1.real, c1.imag,
             abs(c0) ** 2 - abs(c1) ** 2, abs(c0) ** 2 + abs(c1) ** 2)
            for x, c0, c1 in zip(xs, u0, u1)]
    write_csv(rows, ("x", "re_psi0", "im_psi0", "re_psi1", "im_psi1",
                     "rho", "varrho"),
              args.out or "wavefunction.csv", args.stdout)
    return 0


def cmd_verify(cfg, args) -> int:
    kwargs = {}
    for key in ("n_random", "n_eigen", "ortho_max_n", "evolve_points",
                "evolve_steps", "seed"):
        if cfg.get(key) is not None:
            kwargs[key] = int(cfg[key])
    for key in ("perturb_y0", "perturb_k"):
        if cfg.get(key) is not None:
            kwargs[key] = parse_number(cfg[key])
    opts = verify.VerifyOptions(**kwargs)
    report, ok = verify.run_verification(opts)
    write_json(report, args.out or "verify_report.json", args.stdout)
    if not ok:
        for name in report["failures"]:
            print(f"FAILED: {name}", file=sys.stderr)
        return 1
    return 0


def cmd_evolve(cfg, args) -> int:
    model = build_model(cfg)
    state = build_state(cfg, model)
    n_points = int(cfg.get("grid_points", 2000))
    n_steps = int(cfg.get("time_steps", 2000))
    t_final = parse_number(cfg.get("t_final", 1.0))
    bound = parse_number(cfg.get("max_deviation", 1e-6))
    boundary = cfg.get("boundary", "dirichlet")
    if boundary != "dirichlet":
        boundary = ("phase", parse_number(boundary))
    result = evolve_family(state, t_final, n_points, n_steps, boundary=boundary)
    u0, u1 = result.final_numeric
    e0, e1 = result.final_analytic
    if u1 is None:
        u1 = np.zeros_like(u0)
        e1 = np.zeros_like(e0)
    rows = [(float(x), a.real, a.imag, b.real, b.imag, c.real, c.imag,
             d.real, d.imag)
            for x, a, b, c, d in zip(result.grid.x, u0, u1, e0, e1)]
    write_csv(rows, ("x", "re_psi0", "im_psi0", "re_psi1", "im_psi1",
                     "re_exact0", "im_exact0", "re_exact1", "im_exact1"),
              args.out or "evolve_state.csv", args.stdout)
    summary = {
        "schema_version": verify.SCHEMA_VERSION,
        "max_deviation": result.max_deviation,
        "deviation_bound": bound,
        "norm_ratio": result.norm_ratio,
        "expected_norm_ratio": result.expected_norm_ratio,
        "grid_points": n_points,
        "time_steps": n_steps,
        "t_final": t_final,
        "passed": result.max_deviation <= bound,
    }
    if args.stdout:
        print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    else:
        write_json(summary, (args.out or "evolve_state.csv") + ".summary.json",
                   False)
    if result.max_deviation > bound:
        print(f"deviation {result.max_deviation:.3e} exceeds bound {bound:.3e}",
              file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "observables": cmd_observables,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
    "evolve": cmd_evolve,
}


def _add_common(sub):
    sub.add_argument("--config", help="TOML config file")
    sub.add_argument("--out", help="output path")
    sub.add_argument("--stdout", action="store_true",
                     help="write data to stdout instead of a file")
    sub.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                     help="override any config key")


def _flag_overrides(args, command) -> dict:
    overrides = {}
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key] = value
    for key in _KNOWN_KEYS[command]:
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    for key in overrides:
        if key not in _KNOWN_KEYS[command]:
            raise ConfigError(f"unknown config key {key!r} for {command}")
    return overrides


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcavity",
        description="deep-cavity states: spectra, observables, verification")
    subs = parser.add_subparsers(dest="command", required=True)
    flags = {
        "spectrum": ("ell", "mass", "hbar", "v0", "v1", "w0", "w1", "u1",
                     "nmax"),
        "observables": ("ell", "mass", "hbar", "v0", "v1", "w0", "w1", "u1",
                        "kind", "n", "theta", "omega", "e0", "e1", "parity",
                        "twist", "inner_sign", "t_max", "t_steps"),
        "wavefunction": ("ell", "v0", "v1", "w0", "w1", "u1", "kind", "n",
                         "theta", "omega", "e0", "e1", "parity", "twist",
                         "inner_sign", "t", "grid_points"),
        "verify": ("n_random", "n_eigen", "ortho_max_n", "evolve_points",
                   "evolve_steps", "perturb_y0", "perturb_k", "seed"),
        "evolve": ("ell", "v0", "v1", "w0", "w1", "u1", "kind", "n", "theta",
                   "omega", "e0", "e1", "parity", "twist", "inner_sign",
                   "grid_points", "time_steps", "t_final", "max_deviation",
                   "boundary"),
    }
    for name in _COMMANDS:
        sub = subs.add_parser(name)
        _add_common(sub)
        for key in flags[name]:
            sub.add_argument(f"--{key}")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command
    try:
        cfg = load_config(args.config, command)
        cfg.update(_flag_overrides(args, command))
        return _COMMANDS[command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
