"""Invariant suites pairing the closed-form results with the brute-force oracle.

Each suite returns a list of :class:`CheckResult`; the ``verify`` CLI
subcommand and the acceptance tests both run them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, asdict

import numpy as np

from .dressed import BRANCHES, dark_state_residual, perturbative_eigenvalues, rabi_frequencies, rabi_pair
from .hamiltonian import exact_eigenvalues, block_matrix
from .linear import dispersion_slope_probe, susceptibility_coupling, susceptibility_probe
from .oracle import RampProfile, dense_block_eigen, evolve_ramped, partial_trace_field
from .params import FockBlock, SystemParams
from .state import (adiabatic_state, coherent_amplitudes, fock_field, joint_field, product_field,
                    reduced_density_matrix)

SUITES = ("eigen", "perturbation", "eit", "partial-trace", "ramp")


@dataclass
class CheckResult:
    name: str
    passed: bool
    observed: float
    threshold: float | None = None
    detail: str = ""
    hard: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


def random_block_params(rng: np.random.Generator):
    params = SystemParams(
        g1=rng.uniform(0.1, 10.0),
        g2=rng.uniform(0.1, 10.0),
        delta1=rng.uniform(-1.0, 1.0),
        delta2=rng.uniform(-1.0, 1.0),
    )
    return params, FockBlock(int(rng.integers(1, 51)), int(rng.integers(0, 51)))


def eigen_equivalence(trials: int = 1000, seed: int = 0, tol: float = 1e-9) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_trace = 0.0
    start = time.perf_counter()
    for _ in range(trials):
        params, block = random_block_params(rng)
        exact = exact_eigenvalues(params, block)
        dense, _ = dense_block_eigen(block_matrix(params, block))
        scale = float(np.max(np.abs(dense)))
        worst = max(worst, float(np.max(np.abs(exact.sorted() - dense))) / scale)
        worst_trace = max(worst_trace, abs(exact.total() - (2 * params.delta1 - params.delta2)) / scale)
    elapsed = time.perf_counter() - start
    return [
        CheckResult("eigen.max_relative_error", worst < tol, worst, tol, f"{trials} random blocks, seed {seed}"),
        CheckResult("eigen.trace_identity", worst_trace < 1e-12, worst_trace, 1e-12),
        CheckResult("eigen.runtime_s", elapsed < 5.0, elapsed, 5.0),
    ]


PERTURBATION_BASE = SystemParams(g1=1.0, g2=1.3, delta1=0.05, delta2=0.02)
PERTURBATION_BLOCK = FockBlock(2, 3)
OCTAVES = (1.0, 0.5, 0.25, 0.125)


def perturbation_errors(params: SystemParams = PERTURBATION_BASE, block: FockBlock = PERTURBATION_BLOCK,
                        scales=OCTAVES) -> dict[str, np.ndarray]:
    out = {br: [] for br in BRANCHES}
    for s in scales:
        p = params.replace(delta1=params.delta1 * s, delta2=params.delta2 * s)
        ex = exact_eigenvalues(p, block)
        pt = perturbative_eigenvalues(p, block)
        for br in BRANCHES:
            out[br].append(abs(ex[br] - pt[br]))
    return {br: np.array(v) for br, v in out.items()}


def loglog_slope(scales, values) -> float:
    return float(np.polyfit(np.log(scales), np.log(values), 1)[0])


def perturbation_order(min_slope: float = 1.9) -> list[CheckResult]:
    errs = perturbation_errors()
    res = []
    for br, e in errs.items():
        slope = loglog_slope(OCTAVES, e)
        res.append(CheckResult(f"perturbation.slope[{br}]", slope >= min_slope, slope, min_slope,
                               "3-octave detuning sweep"))
    return res


def eit_invariants(params: SystemParams | None = None) -> list[CheckResult]:
    """All resonance (delta1 = delta2 = 0) signatures."""
    params = params or SystemParams(g1=0.7, g2=1.1, mu12=1.2e-29, mu32=1.0e-29, atom_density=1e18)
    params = params.replace(delta1=0.0, delta2=0.0)
    block = FockBlock(3, 4)
    rabi = rabi_frequencies(params, block)
    chi_p = susceptibility_probe(params, rabi)
    chi_c = susceptibility_coupling(params, rabi)
    rho = reduced_density_matrix(params, coherent_amplitudes(1.5, 2.0), t=0.3)
    resid = dark_state_residual(params, block)
    # normal dispersion: d chi / d w1 = -d chi / d delta1 by central differences
    h = 1e-3 * rabi.omega_total
    fd = -(susceptibility_probe(params.replace(delta1=h), rabi)
           - susceptibility_probe(params.replace(delta1=-h), rabi)) / (2 * h)
    return [
        CheckResult("eit.chi_probe_zero", chi_p == 0.0, abs(chi_p), 0.0),
        CheckResult("eit.chi_coupling_zero", chi_c == 0.0, abs(chi_c), 0.0),
        CheckResult("eit.rho22_zero", rho.matrix[1, 1] == 0.0, abs(rho.matrix[1, 1]), 0.0),
        CheckResult("eit.dark_residual", resid < 1e-12 * rabi.omega_total, resid, 1e-12 * rabi.omega_total),
        CheckResult("eit.normal_dispersion_fd", fd > 0.0, fd, 0.0, "dchi/dw1 by central difference"),
        CheckResult("eit.normal_dispersion", dispersion_slope_probe(params, rabi) > 0.0,
                    dispersion_slope_probe(params, rabi), 0.0),
    ]


def partial_trace_cases(seed: int = 0):
    rng = np.random.default_rng(seed)
    p = SystemParams(g1=0.8, g2=1.2, delta1=0.03, delta2=-0.01, omega1=5.0, omega2=4.0)
    v1 = rng.normal(size=6) + 1j * rng.normal(size=6)
    v2 = rng.normal(size=5) + 1j * rng.normal(size=5)
    joint = rng.normal(size=(5, 4)) + 1j * rng.normal(size=(5, 4))
    return [
        ("coherent", p, coherent_amplitudes(1.5, 2.0), 0.0),
        ("coherent_t", p, coherent_amplitudes(1.5, 2.0), 1.7),
        ("coherent_resonant", p.replace(delta1=0.0, delta2=0.0), coherent_amplitudes(2.0, 2.0), 0.4),
        ("fock", p, fock_field(3, 2), 0.9),
        ("product", p, product_field(v1 / np.linalg.norm(v1), v2 / np.linalg.norm(v2)), 2.3),
        ("joint", p, joint_field(joint / np.linalg.norm(joint)), 0.6),
    ]


def partial_trace_equivalence(seed: int = 0, tol: float = 1e-12) -> list[CheckResult]:
    res = []
    for name, p, field, t in partial_trace_cases(seed):
        rho = reduced_density_matrix(p, field, t).matrix
        brute = partial_trace_field(adiabatic_state(p, field, t).dense())
        err = float(np.max(np.abs(rho - brute)))
        res.append(CheckResult(f"partial_trace[{name}]", err < tol, err, tol))
    return res


def ramp_fidelity(params: SystemParams | None = None, alpha: float = 1.5, beta: float = 2.0,
                  periods: float = 200.0, ordering: str = "correct", trunc1: int | None = None,
                  trunc2: int | None = None, dt: float | None = None):
    """Ramped evolution against the adiabatic state; returns ``(fidelity, RampResult)``.

    The ramp lasts ``periods / W`` with ``W`` the mean-field total Rabi frequency.
    """
    params = params or SystemParams(g1=1.0, g2=1.0, omega1=3.0, omega2=2.0)
    field = coherent_amplitudes(alpha, beta, trunc1, trunc2)
    w = rabi_pair(params.g1, params.g2, alpha * alpha, beta * beta).omega_total
    T = periods / w
    target = adiabatic_state(params, field, T).dense()
    result = evolve_ramped(params, field.amplitudes, RampProfile.sequential(T, ordering), dt=dt, target=target)
    return result.fidelity, result


def ramp_checks(ordering: str = "correct", threshold: float = 0.99) -> list[CheckResult]:
    start = time.perf_counter()
    fid, result = ramp_fidelity(ordering=ordering)
    elapsed = time.perf_counter() - start
    hard = ordering == "correct"
    return [
        CheckResult(f"ramp.fidelity[{ordering}]", (fid >= threshold) if hard else True, fid,
                    threshold if hard else None,
                    "diagnostic only" if not hard else f"{result.steps} RK4 steps", hard=hard),
        CheckResult("ramp.norm_drift", result.norm_drift < 1e-8, result.norm_drift, 1e-8),
        CheckResult("ramp.runtime_s", elapsed < 60.0, elapsed, 60.0),
    ]


def run_suite(name: str, seed: int = 0, trials: int = 1000, ordering: str = "correct") -> list[CheckResult]:
    if name == "eigen":
        return eigen_equivalence(trials=trials, seed=seed)
    if name == "perturbation":
        return perturbation_order()
    if name == "eit":
        return eit_invariants()
    if name == "partial-trace":
        return partial_trace_equivalence(seed=seed)
    if name == "ramp":
        return ramp_checks(ordering=ordering)
    raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
