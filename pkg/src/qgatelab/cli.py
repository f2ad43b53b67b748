"""Command-line driver: ``qgatelab <command> [options]``.

Every output embeds the resolved configuration and the package version.  JSON
reports use sorted keys; CSV files start with ``#`` comment lines followed by a
header row.  Exit codes: 0 success, 1 numeric failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__

EXIT_OK, EXIT_NUMERIC, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    """Invalid user input; the message names the offending field."""


class NumericFailure(Exception):
    pass


# ---------------------------------------------------------------- parsing helpers

_ANGLE = re.compile(r"^[0-9.eE+\-*/() ]*(pi)?[0-9.eE+\-*/() ]*$")


def parse_angle(text: str) -> float:
    """Radians; accepts plain numbers and simple expressions in ``pi`` (``pi``, ``pi/2``, ``-3*pi/4``)."""
    t = str(text).strip().lower()
    if not t or not _ANGLE.match(t):
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}")
    try:
        val = eval(t, {"__builtins__": {}}, {"pi": math.pi})  # charset restricted above
        return float(val)
    except Exception:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return v


def positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top-level value must be an object")
    return data


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x) + 0.0  # no negative zeros
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def write_json(path: str | None, config: dict, result: dict) -> None:
    doc = {"version": __version__, "config": _jsonable(config), "result": _jsonable(result)}
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    _emit(path, text)


def write_csv(path: str | None, config: dict, columns: list[str], rows: list[dict], notes: dict | None = None) -> None:
    buf = io.StringIO()
    buf.write(f"# version: {__version__}\n")
    buf.write(f"# config: {json.dumps(_jsonable(config), sort_keys=True)}\n")
    for k, v in sorted((notes or {}).items()):
        buf.write(f"# {k}: {json.dumps(_jsonable(v), sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(float(r[c])) if isinstance(r[c], (float, np.floating)) else r[c] for c in columns])
    _emit(path, buf.getvalue())


def _emit(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}


# ---------------------------------------------------------------- commands

def cmd_simulate(args) -> int:
    from .conditional import Scenario
    from .fock_core import enumerate_basis, max_total

    data = load_json(args.scenario)
    try:
        sc = Scenario.from_dict(data)
    except KeyError as exc:
        raise InputError(f"scenario is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"scenario: {exc}") from None
    Y = sc.operator()
    dim = Y.in_basis.size
    if sc.input_amplitudes is None:
        raise InputError("scenario is missing field 'input'")
    if len(sc.input_amplitudes) != dim:
        raise InputError(f"field 'input' has {len(sc.input_amplitudes)} amplitudes, signal space has {dim}")
    psi = np.asarray(sc.input_amplitudes, dtype=complex)
    if np.linalg.norm(psi) == 0:
        raise InputError("field 'input' is the zero vector")
    psi = psi / np.linalg.norm(psi)
    out = Y.apply(psi)
    p = float(np.vdot(out, out).real)
    norm_out = out / math.sqrt(p) if p > 0 else out
    result = {
        "input_basis": [list(s) for s in Y.in_basis.states],
        "output_basis": [list(s) for s in Y.out_basis.states],
        "input": [[z.real, z.imag] for z in psi],
        "output_unnormalized": [[z.real, z.imag] for z in out],
        "output": [[z.real, z.imag] for z in norm_out],
        "success_probability": p,
        "conditional_operator": [[[z.real, z.imag] for z in row] for row in Y.matrix],
    }
    write_json(args.out, {**_config(args), "scenario_data": data}, result)
    return EXIT_OK


def cmd_synth_ns(args) -> int:
    from .gate_lab import ns_constraint_residuals, synthesize_ns
    from .interferometer import compose_network

    res = synthesize_ns(args.phi, seeds=args.seeds, seed=args.seed, layout=args.layout)
    out = res.to_dict()
    if args.layout == "pair":
        r1, r2 = ns_constraint_residuals(compose_network(res.network), args.phi)
        out["constraint_pair_residuals"] = [abs(r1), abs(r2)]
    write_json(args.out, _config(args), out)
    if not (res.feasible and res.verified):
        raise NumericFailure(f"no verified network found (residual {res.residual_norm:.2e})")
    return EXIT_OK


def cmd_synth_cs(args) -> int:
    from .gate_lab import build_cs_gate, synthesize_ns

    ns = synthesize_ns(args.phi, seeds=args.seeds, seed=args.seed)
    if not (ns.feasible and ns.verified):
        raise NumericFailure("nonlinear sign arm could not be synthesized")
    gate = build_cs_gate(args.phi, ns)
    write_json(args.out, _config(args), {**gate.to_dict(), "arm": ns.to_dict()})
    return EXIT_OK


def cmd_signflip(args) -> int:
    from .gate_lab import synthesize_sign_flip_N

    res = synthesize_sign_flip_N(args.N, seeds=args.seeds, seed=args.seed)
    out = res.to_dict()
    out["reference_inverse_N_squared"] = 1.0 / args.N ** 2
    write_json(args.out, _config(args), out)
    if not (res.feasible and res.verified):
        raise NumericFailure(f"no verified network found (residual {res.residual_norm:.2e})")
    return EXIT_OK


def _fidelity_gate(args):
    from .conditional import Scenario
    from .gate_lab import RALPH_ANCILLA, RALPH_PATTERN, ralph_network, ralph_ns_angles, synthesize_ns
    from .interferometer import compose_network

    if args.scenario:
        data = load_json(args.scenario)
        try:
            sc = Scenario.from_dict(data)
        except KeyError as exc:
            raise InputError(f"scenario is missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise InputError(f"scenario: {exc}") from None
        return compose_network(sc.network), sc.ancilla, sc.pattern, sc.signal_modes, sc.cutoff
    if args.gate == "ralph":
        return compose_network(ralph_network(*ralph_ns_angles())), RALPH_ANCILLA, RALPH_PATTERN, [0], 2
    ns = synthesize_ns(math.pi, seeds=args.seeds, seed=args.seed)
    if not ns.verified:
        raise NumericFailure("nonlinear sign gate could not be synthesized")
    return compose_network(ns.network), ns.problem.ancilla, ns.problem.pattern, [0], 2


def cmd_fidelity_sweep(args) -> int:
    from .decoherence import fidelity_sweep, threshold_crossing

    ps = args.ps if args.ps else list(np.linspace(1.0, args.p_min, args.grid))
    etas = args.etas if args.etas else list(np.linspace(1.0, args.eta_min, args.grid))
    for name, vals in (("ps", ps), ("etas", etas)):
        if not vals or any(not 0 <= v <= 1 for v in vals):
            raise InputError(f"{name}: values must lie in [0, 1]")
    L, anc, pat, sig, cut = _fidelity_gate(args)
    rows = fidelity_sweep(L, anc, pat, sig, cut, ps, etas, samples=args.samples, seed=args.seed)
    for r in rows:
        r["infidelity"] = 1.0 - r["F_mean"]
    notes = {"threshold": args.threshold}
    p_best, eta_best = max(ps), max(etas)
    line_p = [r for r in rows if r["eta"] == eta_best]
    line_e = [r for r in rows if r["p"] == p_best]
    notes["crossing_source_inefficiency"] = threshold_crossing([1 - r["p"] for r in line_p],
                                                               [r["infidelity"] for r in line_p], args.threshold)
    notes["crossing_detector_inefficiency"] = threshold_crossing([1 - r["eta"] for r in line_e],
                                                                 [r["infidelity"] for r in line_e], args.threshold)
    cols = ["p", "eta", "F_mean", "F_stderr", "infidelity", "success_prob_mean", "samples", "seed"]
    write_csv(args.out, _config(args), cols, rows, notes)
    return EXIT_OK


def cmd_lattice_ground(args) -> int:
    from .lattice import BHParams, build_bh_hamiltonian, condensate_fraction, ground_state, site_statistics

    try:
        params = BHParams(args.uj, 1.0, args.sites, args.atoms, args.boundary)
        H = build_bh_hamiltonian(params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    E, psi = ground_state(H, tol=args.tol)
    st = site_statistics(psi)
    rows = [{"site": i, "mean": float(m), "variance": float(v)} for i, (m, v) in enumerate(zip(st.mean, st.variance))]
    notes = {"energy": E, "dimension": H.dimension, "condensate_fraction": condensate_fraction(psi),
             "mean_site_variance": float(st.variance.mean()), "max_site_variance": float(st.variance.max())}
    write_csv(args.out, _config(args), ["site", "mean", "variance"], rows, notes)
    return EXIT_OK


def cmd_lattice_scan(args) -> int:
    from .lattice import transition_scan

    if args.uj_min >= args.uj_max:
        raise InputError("uj_min must be smaller than uj_max")
    ratios = np.geomspace(args.uj_min, args.uj_max, args.points)
    try:
        scan = transition_scan(ratios, args.sites, args.atoms, args.boundary, threshold=args.threshold, tol=args.tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    notes = {"variance_threshold": scan.threshold, "variance_threshold_crossing_U_over_J": scan.crossing,
             "reference_critical_ratio": scan.reference_ratio}
    write_csv(args.out, _config(args), list(scan.columns()), scan.rows, notes)
    return EXIT_OK


def _gate_inputs(args):
    from .lattice import PulseProfile, TwoSpeciesParams

    cfg = load_json(args.config) if args.config else {}
    pdata = {"U_aa": args.U_aa, "U_ab": args.U_ab, "U_bb": args.U_bb, "J_a": args.J_a, "J_b": args.J_b}
    pdata.update(cfg.get("params", {}))
    try:
        params = TwoSpeciesParams(**{k: float(v) for k, v in pdata.items()})
    except (TypeError, ValueError) as exc:
        raise InputError(f"params: {exc}") from None
    pulse_cfg = {"shape": args.shape, "T": args.T, "samples": args.samples}
    pulse_cfg.update(cfg.get("pulse", {}))
    which = cfg.get("which", args.which)
    return params, pulse_cfg, which


def cmd_lattice_gate(args) -> int:
    from .lattice import PulseProfile, adiabatic_phases, gate_time_estimate, simulate_gate

    params, pcfg, which = _gate_inputs(args)
    if which not in ("cz", "swap"):
        raise InputError(f"which must be 'cz' or 'swap', got {which!r}")
    if pcfg.get("shape") in ("square", "sin2") and pcfg.get("T") is None:
        # phases are linear in T for a fixed pulse shape: scale to the target
        unit = PulseProfile.from_dict({**pcfg, "T": 1.0, "J_a": params.J_a, "J_b": params.J_b})
        ph = adiabatic_phases(unit, params)
        rate = ph.phi_cz if which == "cz" else ph.I
        goal = args.target_phase if args.target_phase is not None else (math.pi if which == "cz" else math.pi / 4)
        if rate == 0:
            raise InputError("couplings give no accumulated phase; set T explicitly")
        pcfg["T"] = abs(goal / rate)
    try:
        pulse = PulseProfile.from_dict({"J_a": params.J_a, "J_b": params.J_b, **pcfg})
        report = simulate_gate(pulse, params, which=which)
    except (KeyError, TypeError) as exc:
        raise InputError(f"pulse: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = report.to_dict()
    out["duration"] = float(pulse.times[-1])
    out["gate_time_estimate_s"] = gate_time_estimate(args.U_hz, args.error_budget)
    write_json(args.out, {**_config(args), "resolved_pulse": {k: v for k, v in pcfg.items()}, "which": which}, out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgatelab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.set_defaults(func=func)
        return p

    p = add("simulate", cmd_simulate, "apply a heralded-gate scenario to an input state")
    p.add_argument("--scenario", required=True, help="scenario JSON file")

    for name, func, help_ in (("synth-ns", cmd_synth_ns, "synthesize a nonlinear phase shift"),
                              ("synth-cs", cmd_synth_cs, "build the two-arm controlled phase")):
        p = add(name, func, help_)
        p.add_argument("--phi", type=parse_angle, default=math.pi)
        p.add_argument("--seeds", type=positive_int, default=32)
        p.add_argument("--seed", type=int, default=0)
        if name == "synth-ns":
            p.add_argument("--layout", choices=("single", "pair"), default="single")

    p = add("signflip-n", cmd_signflip, "synthesize the heralded sign flip of the |N> component")
    p.add_argument("--N", type=positive_int, required=True)
    p.add_argument("--seeds", type=positive_int, default=32)
    p.add_argument("--seed", type=int, default=0)

    p = add("fidelity-sweep", cmd_fidelity_sweep, "average gate fidelity over source/detector efficiencies")
    p.add_argument("--scenario", default=None, help="scenario JSON (overrides --gate)")
    p.add_argument("--gate", choices=("ralph", "ns"), default="ralph")
    p.add_argument("--ps", type=float_list, default=None, help="comma-separated source probabilities")
    p.add_argument("--etas", type=float_list, default=None, help="comma-separated detector efficiencies")
    p.add_argument("--grid", type=positive_int, default=5)
    p.add_argument("--p-min", type=float, default=0.9)
    p.add_argument("--eta-min", type=float, default=0.9)
    p.add_argument("--samples", type=positive_int, default=2000)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--seeds", type=positive_int, default=8, help="synthesis starts for --gate ns")
    p.add_argument("--threshold", type=positive_float, default=1e-3)

    for name, func, help_ in (("lattice-ground", cmd_lattice_ground, "Bose-Hubbard ground-state site statistics"),
                              ("lattice-scan", cmd_lattice_scan, "superfluid/Mott crossover scan over U/J")):
        p = add(name, func, help_)
        p.add_argument("--sites", type=positive_int, required=True)
        p.add_argument("--atoms", type=positive_int, required=True)
        p.add_argument("--boundary", choices=("open", "periodic"), default="open")
        p.add_argument("--tol", type=positive_float, default=1e-9)
        if name == "lattice-ground":
            p.add_argument("--uj", type=positive_float, required=True, help="U/J with J = 1")
        else:
            p.add_argument("--uj-min", type=positive_float, default=0.1)
            p.add_argument("--uj-max", type=positive_float, default=100.0)
            p.add_argument("--points", type=positive_int, default=16)
            p.add_argument("--threshold", type=positive_float, default=0.1)

    p = add("lattice-gate", cmd_lattice_gate, "two-species lattice gate dynamics vs adiabatic phases")
    p.add_argument("--config", default=None, help="JSON with optional 'params', 'pulse', 'which'")
    p.add_argument("--which", choices=("cz", "swap"), default="cz")
    p.add_argument("--U-aa", type=float, default=1.0)
    p.add_argument("--U-ab", type=float, default=1.0)
    p.add_argument("--U-bb", type=float, default=2.0)
    p.add_argument("--J-a", type=float, default=0.0)
    p.add_argument("--J-b", type=float, default=0.05)
    p.add_argument("--shape", choices=("square", "sin2"), default="sin2")
    p.add_argument("--T", type=positive_float, default=None, help="duration (default: reach the target phase)")
    p.add_argument("--samples", type=positive_int, default=2049)
    p.add_argument("--target-phase", type=parse_angle, default=None)
    p.add_argument("--U-hz", type=positive_float, default=1e3, help="coupling scale for the gate-time estimate")
    p.add_argument("--error-budget", type=positive_float, default=1e-3)
    return ap


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ArithmeticError, np.linalg.LinAlgError, RuntimeError) as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
