"""Command-line front end.

Examples
--------
  qeit eigen --g1 1 --g2 1 --n1 1 --n2 0
  qeit eigen --sweep-delta1 -0.1 0.1 21 --format csv
  qeit response --preset hau1999 --rabi-from-intensity strict
  qeit nonlinear --preset hau1999
  qeit state --alpha 10 --beta 10
  qeit verify --suite eigen --trials 1000 --seed 3
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from ._validation import ValidationError, check_count, check_finite, check_positive
from .constants import CONSTANTS_VERSION, C_LIGHT
from .hamiltonian import cubic_intermediates, exact_eigenvalues, reality_condition
from .dressed import perturbative_eigenvalues
from .linear import RABI_CONVENTIONS, ExperimentPreset, get_preset, load_presets, preset_response
from .nonlinear import coefficient_ratios, n_coefficients_closed, series_audit, unit_convert_intensity
from .params import FockBlock, SystemParams
from .state import (coherences_timeseries, coherent_amplitudes, large_n_coherences, nonclassical_coherence,
                    product_field, reduced_density_matrix)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2

_INTENSITY_UNITS = {"mw/cm2": 10.0, "mw/cm^2": 10.0, "mw/cm²": 10.0, "w/m2": 1.0, "w/m^2": 1.0, "w/cm2": 1e4}
_LENGTH_UNITS = {"nm": 1e-9, "um": 1e-6, "m": 1.0}
_NUM = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(.*?)\s*$")


def _with_unit(field: str, text: str, table: dict) -> float:
    m = _NUM.match(str(text))
    if not m:
        raise ValidationError(field, f"cannot parse {text!r}")
    value, suffix = float(m.group(1)), m.group(2).lower()
    if suffix and suffix not in table:
        raise ValidationError(field, f"unknown unit {m.group(2)!r}; use one of {sorted(table)}")
    return value * table.get(suffix, 1.0)


def parse_intensity(field: str, text) -> float:
    """``"1mW/cm2"`` or a raw number in W/m^2."""
    return check_positive(field, _with_unit(field, text, _INTENSITY_UNITS))


def parse_wavelength(field: str, text) -> float:
    """``"589nm"`` or a raw number in metres."""
    return check_positive(field, _with_unit(field, text, _LENGTH_UNITS))


def _q(value, unit: str) -> dict:
    if isinstance(value, complex) or np.iscomplexobj(value):
        arr = np.asarray(value, dtype=complex)
        if arr.ndim == 0:
            return {"value": [float(arr.real), float(arr.imag)], "unit": unit}
        return {"value": [[float(z.real), float(z.imag)] for z in arr], "unit": unit}
    if isinstance(value, (list, tuple, np.ndarray)):
        return {"value": [float(v) for v in value], "unit": unit}
    if isinstance(value, (bool, np.bool_)):
        return {"value": bool(value), "unit": unit}
    return {"value": float(value) + 0.0, "unit": unit}


class Record:
    """Accumulates a result record; ``columns`` marks a sweep for CSV output."""

    def __init__(self, command: str, args):
        self.command = command
        self.args = args
        self.inputs: dict = {}
        self.outputs: dict = {}
        self.provenance: dict = {
            "constants": CONSTANTS_VERSION,
            "package_version": __version__,
            "rabi_from_intensity": args.rabi_from_intensity,
            "seed": args.seed,
        }
        self.notes: list[str] = []
        self.columns: list[str] | None = None
        self.start = time.perf_counter()

    def add(self, name: str, value, unit: str):
        self.outputs[name] = _q(value, unit)

    def as_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "provenance": self.provenance,
        }
        if self.notes:
            out["notes"] = self.notes
        if not self.args.no_timestamp:
            out["timing"] = {
                "elapsed_s": time.perf_counter() - self.start,
                "timestamp": datetime.now(timezone.utc).isoformat(),
            }
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        names = self.columns or [k for k, v in self.outputs.items() if not isinstance(v["value"], list)]
        writer.writerow([f"{n} [{self.outputs[n]['unit']}]" for n in names])
        if self.columns:
            for row in zip(*(self.outputs[n]["value"] for n in names)):
                writer.writerow([repr(v) for v in row])
        else:
            writer.writerow([repr(self.outputs[n]["value"]) for n in names])
        return buf.getvalue()


def _emit(record: Record, args) -> None:
    if args.format == "csv":
        text = record.to_csv()
    else:
        text = json.dumps(record.as_dict(), indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError("config", str(exc)) from None
    if not isinstance(data, dict):
        raise ValidationError("config", "expected a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def _block_params(args) -> SystemParams:
    return SystemParams(g1=args.g1, g2=args.g2, delta1=args.delta1, delta2=args.delta2)


# ---------------------------------------------------------------- eigen

def _eigen_row(params: SystemParams, block: FockBlock) -> dict:
    exact = exact_eigenvalues(params, block)
    pert = perturbative_eigenvalues(params, block)
    ci = cubic_intermediates(params, block)
    row = {}
    for label, key in (("plus", "+"), ("minus", "-"), ("zero", "0")):
        row[f"E_{label}"] = exact[key]
        row[f"E_{label}_pert"] = pert[key]
        row[f"dE_{label}"] = pert[key] - exact[key]
    row["reality_value"] = ci.q**2 / 4.0 + ci.p**3 / 27.0
    row["three_real_roots"] = float(reality_condition(ci.p, ci.q))
    return row


def cmd_eigen(args, rec: Record) -> int:
    params = _block_params(args)
    rec.inputs = {"g1": params.g1, "g2": params.g2, "delta1": params.delta1, "delta2": params.delta2,
                  "n1": args.n1, "n2": args.n2, "units": "rad/s"}
    units = {k: "rad/s" for k in _eigen_row(SystemParams(), FockBlock(1, 0))}
    units["reality_value"] = "rad^6/s^6"
    units["three_real_roots"] = "bool"
    if args.sweep_delta1 or args.n1_range:
        if args.sweep_delta1:
            lo, hi, n = args.sweep_delta1
            n = check_count("sweep_delta1", n, minimum=2)
            grid = np.linspace(float(lo), float(hi), n)
            rows = [_eigen_row(params.replace(delta1=float(d)), FockBlock(args.n1, args.n2)) for d in grid]
            axis, axis_unit, rec.inputs["sweep_delta1"] = "delta1", "rad/s", [float(lo), float(hi), n]
        else:
            lo = check_count("n1", args.n1_range[0], minimum=1)
            hi = check_count("n1", args.n1_range[1], minimum=lo)
            grid = np.arange(lo, hi + 1)
            rows = [_eigen_row(params, FockBlock(int(k), args.n2)) for k in grid]
            axis, axis_unit, rec.inputs["n1_range"] = "n1", "1", [lo, hi]
        rec.add(axis, grid, axis_unit)
        for key in rows[0]:
            rec.add(key, [r[key] for r in rows], units[key])
        rec.columns = [axis, *rows[0]]
    else:
        for key, value in _eigen_row(params, FockBlock(args.n1, args.n2)).items():
            rec.add(key, value, units[key])
    return EXIT_OK


# ---------------------------------------------------------------- presets

_PRESET_FLAGS = {
    "I1": parse_intensity, "I2": parse_intensity,
    "lambda1": parse_wavelength, "lambda2": parse_wavelength,
    "delta1": check_finite, "delta2": check_finite,
    "v_probe_group_observed": check_positive, "dipole_ratio": check_positive,
}


def resolve_preset(args) -> ExperimentPreset:
    """Preset fields overridden by any explicit flag; all fields required without a preset."""
    base = get_preset(args.preset).as_dict() if args.preset else {"name": "custom"}
    for key, parse in _PRESET_FLAGS.items():
        raw = getattr(args, key, None)
        if raw is not None:
            base[key] = parse(key, raw)
        elif key not in base:
            raise ValidationError(key, "required when no --preset is given")
    reported = get_preset(args.preset).reported if args.preset else {}
    return ExperimentPreset(**base, reported=reported)


def _preset_inputs(p: ExperimentPreset) -> dict:
    return {"preset": p.name, "I1_W_m2": p.I1, "I2_W_m2": p.I2, "delta1_rad_s": p.delta1, "delta2_rad_s": p.delta2,
            "lambda1_m": p.lambda1, "lambda2_m": p.lambda2, "v_probe_group_observed_m_s": p.v_probe_group_observed,
            "dipole_ratio": p.dipole_ratio}


def cmd_presets(args, rec: Record) -> int:
    presets = load_presets()
    rec.inputs = {}
    rec.provenance["presets"] = {name: {**_preset_inputs(p), "description": p.description, "reported": p.reported}
                                 for name, p in sorted(presets.items())}
    rec.add("count", len(presets), "1")
    return EXIT_OK


# ---------------------------------------------------------------- response

_RESPONSE_UNITS = {
    "chi_probe": "1", "chi_coupling": "1", "v_probe_group": "m/s", "v0_probe": "m/s",
    "v_coupling_group": "m/s", "v0_coupling": "m/s", "dn_probe": "1", "dn_coupling": "1", "rabi_ratio_sq": "1",
}


def _response_row(preset: ExperimentPreset, convention: str) -> dict:
    r = preset_response(preset, convention)
    return {k: getattr(r, k) for k in _RESPONSE_UNITS}


def cmd_response(args, rec: Record) -> int:
    preset = resolve_preset(args)
    rec.inputs = _preset_inputs(preset)
    rec.provenance["reported"] = preset.reported
    conv = args.rabi_from_intensity
    if args.sweep_delta1:
        lo, hi, n = args.sweep_delta1
        n = check_count("sweep_delta1", n, minimum=2)
        grid = np.linspace(float(lo), float(hi), n)
        rows = [_response_row(preset.replace(delta1=float(d)), conv) for d in grid]
        rec.add("delta1", grid, "rad/s")
        for key in _RESPONSE_UNITS:
            rec.add(key, [r[key] for r in rows], _RESPONSE_UNITS[key])
        rec.columns = ["delta1", *_RESPONSE_UNITS]
        rec.inputs["sweep_delta1"] = [float(lo), float(hi), n]
        return EXIT_OK
    for key, value in _response_row(preset, conv).items():
        rec.add(key, value, _RESPONSE_UNITS[key])
    other = "strict" if conv == "paper" else "paper"
    rec.add(f"v_coupling_group_{other}", preset_response(preset, other).v_coupling_group, "m/s")
    rec.provenance["alternate_convention"] = other
    if preset.detuning == 0.0:
        rec.notes.append("EIT: two-photon resonance, the medium is transparent to both fields")
    return EXIT_OK


# ---------------------------------------------------------------- nonlinear

_N_UNITS = {2: ("m^2/V^2", "cm^2/W"), 4: ("m^4/V^4", "cm^4/W^2"), 6: ("m^6/V^6", "cm^6/W^3")}
_CHI_UNITS = {"chi1": "1", "chi3": "m^2/V^2", "chi5": "m^4/V^4", "chi7": "m^6/V^6"}
AUDIT_MU12 = 1.0e-29
AUDIT_DENSITY = 1.0e18


def cmd_nonlinear(args, rec: Record) -> int:
    preset = resolve_preset(args)
    rec.inputs = _preset_inputs(preset)
    rec.inputs["v0_from"] = args.v0_from
    rec.provenance["reported"] = preset.reported
    if args.v0_from == "observed":
        v0 = preset.v_probe_group_observed
    else:
        v0 = preset_response(preset, args.rabi_from_intensity).v0_probe
    rec.add("v0_probe_used", v0, "m/s")
    coeffs = n_coefficients_closed(preset, v0)
    for k in (2, 4, 6):
        nk = getattr(coeffs, f"n{k}")
        rec.add(f"n{k}", nk, _N_UNITS[k][0])
        rec.add(f"n{k}_I", unit_convert_intensity(nk, k), _N_UNITS[k][1])
    ratios = coefficient_ratios(preset.I2)
    rec.add("ratio_24", ratios["ratio_24"], "V^2/m^2")
    rec.add("ratio_46", ratios["ratio_46"], "V^2/m^2")
    rec.add("ratio_24_I", ratios["ratio_24_I"], "W/cm^2")
    rec.add("ratio_46_I", ratios["ratio_46_I"], "W/cm^2")
    if not args.no_audit:
        omega1 = 2.0 * math.pi * C_LIGHT / preset.lambda1
        omega2 = 2.0 * math.pi * C_LIGHT / preset.lambda2
        params = SystemParams(delta1=preset.delta1, delta2=preset.delta2, omega1=omega1, omega2=omega2,
                              mu12=AUDIT_MU12, mu32=AUDIT_MU12 / preset.dipole_ratio, atom_density=AUDIT_DENSITY)
        audit = series_audit(params, preset.I2)
        for name, unit in _CHI_UNITS.items():
            rec.add(f"audit_{name}_fitted", getattr(audit.fitted, name), unit)
            rec.add(f"audit_{name}_printed", getattr(audit.printed, name), unit)
            rec.add(f"audit_{name}_ratio", audit.ratios[name], "1")
        rec.add("audit_condition_number", audit.condition_number, "1")
        rec.add("audit_n0_printed", audit.n0_printed, "1")
        rec.add("audit_n0_sqrt", audit.n0_sqrt, "1")
        rec.provenance["audit"] = {"mu12_C_m": AUDIT_MU12, "mu32_C_m": params.mu32, "atom_density_m3": AUDIT_DENSITY,
                                   "x_max": audit.x_max, "fit_points": audit.fit_points,
                                   "fit_degree": audit.fit_degree}
    return EXIT_OK


# ---------------------------------------------------------------- state

def _complex_list(field: str, raw) -> np.ndarray:
    try:
        return np.array([complex(float(re_), float(im)) for re_, im in raw], dtype=complex)
    except (TypeError, ValueError):
        raise ValidationError(field, "expected a list of [re, im] pairs") from None


def read_amplitude_file(path: str):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError("amplitudes", str(exc)) from None
    if not isinstance(data, dict) or "probe" not in data or "coupling" not in data:
        raise ValidationError("amplitudes", 'expected {"probe": [...], "coupling": [...]}')
    return product_field(_complex_list("probe", data["probe"]), _complex_list("coupling", data["coupling"]))


def cmd_state(args, rec: Record) -> int:
    params = SystemParams(g1=args.g1, g2=args.g2, delta1=args.delta1, delta2=args.delta2,
                          omega1=args.omega1, omega2=args.omega2)
    rec.inputs = {k: v for k, v in params.as_dict().items() if k in ("g1", "g2", "delta1", "delta2", "omega1", "omega2")}
    rec.inputs["t_s"] = args.time
    if args.amplitudes:
        field = read_amplitude_file(args.amplitudes)
        rec.inputs["amplitudes"] = args.amplitudes
    else:
        if args.alpha is None or args.beta is None:
            raise ValidationError("alpha", "give --alpha and --beta, or --amplitudes FILE")
        field = coherent_amplitudes(check_finite("alpha", args.alpha), check_finite("beta", args.beta))
        rec.inputs.update(alpha=args.alpha, beta=args.beta)
    rec.inputs.update(trunc1=field.trunc1, trunc2=field.trunc2)
    rho = reduced_density_matrix(params, field, args.time)
    for i in range(3):
        rec.add(f"rho{i + 1}{i + 1}", float(rho.matrix[i, i].real), "1")
    for i, j in ((1, 0), (1, 2), (2, 0)):
        rec.add(f"rho{i + 1}{j + 1}", complex(rho.matrix[i, j]), "1")
    rec.add("trace", rho.trace, "1")
    rec.add("tail_mass", field.tail_mass, "1")
    rec.add("rho21_w1", nonclassical_coherence(params, field), "1")
    if field.kind == "coherent" and field.beta != 0.0:
        r21, r23 = coherences_timeseries(params, field.alpha, field.beta, 0.0, field.trunc1, field.trunc2)
        c21, c23 = large_n_coherences(params, field.alpha**2, field.beta**2)
        rec.add("rho21_full_sum", r21, "1")
        rec.add("rho23_full_sum", r23, "1")
        rec.add("rho21_large_n", c21, "1")
        rec.add("rho23_large_n", c23, "1")
        rec.add("large_n_deviation", abs(r21.real - c21) / abs(c21) if c21 else 0.0, "1")
    if field.tail_warning:
        rec.notes.append(f"truncation tail mass {field.tail_mass:.2e} exceeds 1e-6")
    return EXIT_OK


# ---------------------------------------------------------------- verify

def cmd_verify(args, rec: Record) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    rec.inputs = {"suite": args.suite, "trials": args.trials, "ordering": args.ordering, "seed": args.seed}
    failed = []
    for suite in suites:
        for check in run_suite(suite, seed=args.seed, trials=args.trials, ordering=args.ordering):
            unit = "s" if check.name.endswith("runtime_s") else "1"
            rec.outputs[check.name] = {"value": float(check.observed), "unit": unit, "passed": bool(check.passed),
                                       "threshold": check.threshold, "hard": check.hard}
            if check.detail:
                rec.outputs[check.name]["detail"] = check.detail
            if check.hard and not check.passed:
                failed.append(check)
    if args.no_timestamp:
        for v in rec.outputs.values():
            if v["unit"] == "s":
                v["value"] = None
    for check in failed:
        print(f"FAILED {check.name}: observed {check.observed!r}, threshold {check.threshold!r}", file=sys.stderr)
    rec.provenance["passed"] = not failed
    return EXIT_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="write the record here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-timestamp", action="store_true", help="omit timing so output is byte-reproducible")
    common.add_argument("--rabi-from-intensity", choices=RABI_CONVENTIONS, default="paper",
                        help="paper: W1^2/W2^2 = I1/I2; strict: also weight by the squared dipole ratio")
    common.add_argument("--config", metavar="PATH", help="JSON file of option defaults; flags override it")

    ap = argparse.ArgumentParser(prog="qeit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigen", parents=[common], help="exact vs first-order block eigenvalues")
    p.add_argument("--g1", type=float, default=1.0)
    p.add_argument("--g2", type=float, default=1.0)
    p.add_argument("--n1", type=int, default=1)
    p.add_argument("--n2", type=int, default=0)
    p.add_argument("--delta1", type=float, default=0.0)
    p.add_argument("--delta2", type=float, default=0.0)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--sweep-delta1", nargs=3, metavar=("START", "STOP", "N"))
    grp.add_argument("--n1-range", nargs=2, type=int, metavar=("LO", "HI"))
    p.set_defaults(func=cmd_eigen)

    def preset_flags(p):
        p.add_argument("--preset", help="named experiment; see `qeit presets`")
        p.add_argument("--I1", help="probe intensity, W/m^2 or with mW/cm2 suffix")
        p.add_argument("--I2", help="coupling intensity, W/m^2 or with mW/cm2 suffix")
        p.add_argument("--delta1", type=float, help="probe detuning, rad/s")
        p.add_argument("--delta2", type=float, help="coupling detuning, rad/s")
        p.add_argument("--lambda1", help="probe wavelength, m or with nm suffix")
        p.add_argument("--lambda2", help="coupling wavelength, m or with nm suffix")
        p.add_argument("--v-probe", dest="v_probe_group_observed", type=float, help="observed probe group velocity, m/s")
        p.add_argument("--dipole-ratio", type=float, help="mu12 / mu32")

    p = sub.add_parser("response", parents=[common], help="susceptibilities, group velocities, index changes")
    preset_flags(p)
    p.add_argument("--sweep-delta1", nargs=3, metavar=("START", "STOP", "N"))
    p.set_defaults(func=cmd_response)

    p = sub.add_parser("nonlinear", parents=[common], help="Kerr coefficients and series audit")
    preset_flags(p)
    p.add_argument("--v0-from", choices=("observed", "inferred"), default="observed",
                   help="velocity entering n2: the observed group velocity or the weak-probe limit")
    p.add_argument("--no-audit", action="store_true")
    p.set_defaults(func=cmd_nonlinear)

    p = sub.add_parser("state", parents=[common], help="atomic density matrix and coherences")
    defaults = SystemParams()
    p.add_argument("--g1", type=float, default=1.0)
    p.add_argument("--g2", type=float, default=1.0)
    p.add_argument("--delta1", type=float, default=0.0)
    p.add_argument("--delta2", type=float, default=0.0)
    p.add_argument("--omega1", type=float, default=defaults.omega1)
    p.add_argument("--omega2", type=float, default=defaults.omega2)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--amplitudes", metavar="FILE", help='JSON {"probe": [[re, im], ...], "coupling": [...]}')
    p.add_argument("--time", type=float, default=0.0, help="evaluation time, s")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("verify", parents=[common], help="oracle invariant suites")
    p.add_argument("--suite", choices=("all", *SUITES), default="all")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--ordering", choices=("correct", "reversed"), default="correct")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("presets", parents=[common], help="list bundled experiment presets")
    p.set_defaults(func=cmd_presets)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if config:
            # config values fill options left at their parser default
            sub_defaults = vars(parser.parse_args([args.command]))
            for key, value in config.items():
                if not hasattr(args, key):
                    raise ValidationError(key, f"not an option of `{args.command}`")
                if getattr(args, key) == sub_defaults[key]:
                    setattr(args, key, value)
        rec = Record(args.command, args)
        code = args.func(args, rec)
        _emit(rec, args)
        return code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
