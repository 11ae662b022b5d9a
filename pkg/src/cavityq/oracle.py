"""Brute-force validators.

Two independent checks back the analytic machinery: a fixed-step RK4
Lindblad integrator for the photon-loss channel, and a propagator-level
comparison of the full linearized qubit-photon Hamiltonian against its
dispersive approximation.

The dispersive comparison uses the standard spin convention (excited state
is the +1 eigenstate of sigma_z), matching the large-detuning derivation;
this is self-consistent and independent of the charge-basis bookkeeping
used by the preparation pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fock
from .params import ParameterError, SystemParams

MAX_GAMMA_DT = 1e-3
MAX_HNORM_DT = 1e-2
TRACE_DRIFT_TOL = 1e-6


class IntegrationError(RuntimeError):
    """Step-size instability or trace drift beyond tolerance."""


@dataclass(frozen=True)
class LindbladProblem:
    """dρ/dt = -i[H, ρ] + γ (a ρ a† - {a†a, ρ}/2), H in rad/s (may be None)."""

    decay_rate: float
    initial: np.ndarray
    t_final: float
    dt: float
    hamiltonian: np.ndarray | None = None

    def __post_init__(self):
        if self.dt <= 0 or self.t_final < 0:
            raise ValueError("need dt > 0 and t_final >= 0")
        if self.dt * self.decay_rate > MAX_GAMMA_DT:
            raise ParameterError(
                f"dt*gamma = {self.dt * self.decay_rate:.3e} exceeds "
                f"stability guard {MAX_GAMMA_DT}"
            )
        if self.hamiltonian is not None:
            hnorm = float(np.linalg.norm(self.hamiltonian, 2))
            if self.dt * hnorm > MAX_HNORM_DT:
                raise ParameterError(
                    f"dt*||H|| = {self.dt * hnorm:.3e} exceeds stability "
                    f"guard {MAX_HNORM_DT}"
                )


@dataclass
class LindbladResult:
    rho: np.ndarray
    steps: int
    trace_drift: float


def lindblad_evolve(p: LindbladProblem) -> LindbladResult:
    """Fixed-step RK4 integration of the zero-temperature loss channel.

    Deterministic across platforms; trace drift is reported and checked,
    never silently renormalized away.
    """
    dim = p.initial.shape[0]
    a = fock.annihilation(dim - 1)
    ad = a.conj().T
    n_op = ad @ a
    gamma = p.decay_rate
    h = p.hamiltonian

    def rhs(rho):
        out = gamma * (a @ rho @ ad - 0.5 * (n_op @ rho + rho @ n_op))
        if h is not None:
            out = out - 1j * (h @ rho - rho @ h)
        return out

    steps = max(1, math.ceil(p.t_final / p.dt))
    dt = p.t_final / steps if p.t_final > 0 else 0.0
    rho = p.initial.astype(complex).copy()
    for _ in range(steps):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * dt * k1)
        k3 = rhs(rho + 0.5 * dt * k2)
        k4 = rhs(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    drift = abs(float(np.trace(rho).real) - float(np.trace(p.initial).real))
    if drift > TRACE_DRIFT_TOL:
        raise IntegrationError(
            f"trace drifted by {drift:.3e} over {steps} steps "
            f"(dt={dt:.3e}, gamma*dt={gamma * dt:.3e}); reduce dt"
        )
    return LindbladResult(rho=rho, steps=steps, trace_drift=drift)


def _std_sigma_z() -> np.ndarray:
    # standard convention: |e> (index 1) at +1
    return np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=complex)


def jaynes_cummings_full(params: SystemParams, nmax: int) -> np.ndarray:
    """Linearized qubit-photon Hamiltonian /hbar, standard convention.

    H = omega n + (Omega/2) sigma_z + g (a† |g><e| + a |e><g|); the rotating
    coupling connects |e, n> and |g, n+1>.
    """
    a = fock.annihilation(nmax)
    n_op = fock.number_op(nmax)
    ident = np.eye(nmax + 1, dtype=complex)
    lower = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |g><e|
    g = params.g
    h = params.omega * np.kron(np.eye(2), n_op)
    h += 0.5 * params.qubit_freq * np.kron(_std_sigma_z(), ident)
    h += g * (np.kron(lower, a.conj().T) + np.kron(lower.conj().T, a))
    return h


def dispersive_approx(params: SystemParams, nmax: int) -> np.ndarray:
    """H = omega_- n + (Omega/2) sigma_z + chi (1 + 2n)|e><e|, standard
    convention; equals H0 plus the second-order effective interaction."""
    chi = params.chi
    n = np.arange(nmax + 1)
    hg = (params.omega - chi) * n - 0.5 * params.qubit_freq
    he = (params.omega - chi) * n + 0.5 * params.qubit_freq + chi * (1.0 + 2.0 * n)
    proj_g = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    proj_e = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
    return np.kron(proj_g, np.diag(hg)) + np.kron(proj_e, np.diag(he))


def effective_generator(params: SystemParams, nmax: int) -> np.ndarray:
    """chi (|e><e| a a† - |g><g| a† a), the expected time-averaged generator."""
    chi = params.chi
    n = np.arange(nmax + 1)
    proj_g = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    proj_e = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
    return chi * (np.kron(proj_e, np.diag(n + 1.0)) - np.kron(proj_g, np.diag(n * 1.0)))


@dataclass
class DispersiveReport:
    #: pure-state fidelity |<psi_full|psi_disp>| (overlap modulus, not squared)
    fidelity: float
    dyson_relative_error: float
    detuning_over_g: float
    notes: dict = field(default_factory=dict)


def _joint_vector(state: fock.QubitFieldState) -> np.ndarray:
    return np.concatenate([state.g, state.e])


def dyson_second_order_generator(
    params: SystemParams, nmax: int, t: float, grid: int = 160
) -> np.ndarray:
    """Estimate of the effective generator from the time-ordered second-order
    Dyson term of the interaction-picture propagator (trapezoid on a coarse
    grid); divided by -i t to compare against ``effective_generator``."""
    a = fock.annihilation(nmax)
    lower = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    v = params.g * (np.kron(lower, a.conj().T) + np.kron(lower.conj().T, a))
    h0_diag = np.diag(
        params.omega * np.kron(np.eye(2), fock.number_op(nmax))
        + 0.5 * params.qubit_freq * np.kron(_std_sigma_z(), np.eye(nmax + 1))
    ).real

    ts = np.linspace(0.0, t, grid)
    dt = ts[1] - ts[0]
    phases = np.exp(1j * np.outer(ts, h0_diag))  # e^{i h0 t} diagonals

    def h_int(k):
        ph = phases[k]
        return (ph[:, None] * v) * np.conj(ph)[None, :]

    hs = [h_int(k) for k in range(grid)]
    # inner integrals B(k) = int_0^{t_k} H(t2) dt2 via cumulative trapezoid
    dim = v.shape[0]
    second = np.zeros((dim, dim), dtype=complex)
    inner = np.zeros((dim, dim), dtype=complex)
    for k in range(1, grid):
        inner = inner + 0.5 * dt * (hs[k - 1] + hs[k])
        w = dt if 0 < k < grid - 1 else 0.5 * dt
        second = second + w * (hs[k] @ inner)
    # U2 = (1/i)^2 * second; effective generator G from U2 ~ -i t G
    return (-second) / (-1j * t)


def dispersive_vs_full(
    params: SystemParams,
    initial: fock.QubitFieldState,
    t: float,
    dyson_grid: int = 160,
) -> DispersiveReport:
    """Propagate ``initial`` under the full and dispersive Hamiltonians and
    report the state fidelity plus the second-order Dyson generator check.

    Diagnostic only: no pass/fail is attached at moderate detuning ratios.
    """
    if params.detuning <= 0:
        raise ParameterError("dispersive comparison requires detuning > 0")
    nmax = initial.nmax
    psi0 = _joint_vector(initial)
    u_full = fock.expm_herm(jaynes_cummings_full(params, nmax), t)
    u_disp = fock.expm_herm(dispersive_approx(params, nmax), t)
    psi_full = u_full @ psi0
    psi_disp = u_disp @ psi0
    # pure-state fidelity as the overlap modulus |<psi|phi>|
    fid = abs(np.vdot(psi_full, psi_disp))

    # the Dyson check integrates an integrand oscillating at the detuning;
    # cap its window at ~20 detuning periods and resolve each period well
    t_dyson = min(t, 40.0 * math.pi / params.detuning)
    grid = max(dyson_grid, int(params.detuning * t_dyson / (2.0 * math.pi) * 50.0))
    gen = dyson_second_order_generator(params, nmax, t_dyson, grid=grid)
    target = effective_generator(params, nmax)
    # compare on the secular (block-diagonal-in-qubit, diagonal-in-n) part,
    # excluding the top Fock level where the aa† ladder is truncated
    keep = np.ones(2 * (nmax + 1), dtype=bool)
    keep[nmax] = keep[2 * nmax + 1] = False
    d_est = np.diag(gen).real[keep]
    d_tgt = np.diag(target).real[keep]
    rel = float(
        np.max(np.abs(d_est - d_tgt)) / max(1e-300, np.max(np.abs(d_tgt)))
    )
    return DispersiveReport(
        fidelity=float(fid),
        dyson_relative_error=rel,
        detuning_over_g=params.detuning / params.g,
    )
