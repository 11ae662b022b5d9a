"""Qubit-cavity Hamiltonians and the dispersive propagator.

Joint operators act on kron(qubit, field) with qubit basis index 0 = |g>,
1 = |e>.  Charge-basis convention: the ground state is the +1 eigenstate of
sigma_z, i.e. sigma_z = |g><g| - |e><e|.  With this choice the dispersive
evolution of (|g> + i|e>)|alpha> accumulates the relative phase
theta = (Omega - |g|^2/Delta) * t on the excited branch once the global
factor exp(-i Omega t / 2) is stripped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .params import ParameterError, SystemParams, charging_energy

HamiltonianKind = ("full_cosine", "linearized", "free", "dispersive")

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z_CHARGE = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PROJ_G = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
PROJ_E = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
# spin raising/lowering in the charge convention: sigma_+ = |g><e|
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.conj().T


@dataclass(frozen=True)
class HamiltonianSpec:
    kind: str
    params: SystemParams
    flux_on: bool = False  # Phi_c = Phi_0/2 when True, else Phi_c = 0

    def __post_init__(self):
        if self.kind not in HamiltonianKind:
            raise ValueError(f"unknown Hamiltonian kind {self.kind!r}")
        if self.kind == "dispersive" and self.params.detuning <= 0:
            raise ParameterError("dispersive Hamiltonian requires detuning > 0")


def build(spec: HamiltonianSpec, nmax: int) -> np.ndarray:
    """Joint Hamiltonian / hbar (rad/s) on the 2*(nmax+1) space."""
    p = spec.params
    n_op = fock.number_op(nmax)
    ident = np.eye(nmax + 1, dtype=complex)
    a = fock.annihilation(nmax)
    ez = charging_energy(p)
    phase_c = math.pi / 2.0 if spec.flux_on else 0.0  # pi*Phi_c/Phi_0

    if spec.kind == "free":
        # n_g = 1/2, Phi_c = 0: H = hbar*omega*n - E_J*sigma_x
        return p.omega * np.kron(np.eye(2), n_op) - p.ej * np.kron(SIGMA_X, ident)

    if spec.kind == "full_cosine":
        arg = phase_c * ident + (
            spec.params.eta_ratio * a + np.conj(spec.params.eta_ratio) * a.conj().T
        )
        w, v = np.linalg.eigh(arg)
        cos_op = (v * np.cos(w)) @ v.conj().T
        return (
            p.omega * np.kron(np.eye(2), n_op)
            + ez * np.kron(SIGMA_Z_CHARGE, ident)
            - p.ej * np.kron(SIGMA_X, cos_op)
        )

    if spec.kind == "linearized":
        h = (
            p.omega * np.kron(np.eye(2), n_op)
            + ez * np.kron(SIGMA_Z_CHARGE, ident)
            - p.ej * math.cos(phase_c) * np.kron(SIGMA_X, ident)
        )
        coupling = p.ej * math.sin(phase_c)
        h += coupling * (
            spec.params.eta_ratio * np.kron(SIGMA_PLUS, a)
            + np.conj(spec.params.eta_ratio) * np.kron(SIGMA_MINUS, a.conj().T)
        )
        return h

    # dispersive: omega_- n + (Omega/2) sigma_z + chi (1+2n) |e><e|
    hg, he = dispersive_branches(p, nmax)
    return np.kron(PROJ_G, np.diag(hg)) + np.kron(PROJ_E, np.diag(he))


def dispersive_branches(params: SystemParams, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal branch Hamiltonians (rad/s) on |g> and |e| subspaces."""
    chi = params.chi
    omega_minus = params.omega - chi
    omega_half = 0.5 * params.qubit_freq
    n = np.arange(nmax + 1)
    hg = omega_minus * n + omega_half
    he = omega_minus * n - omega_half + chi * (1.0 + 2.0 * n)
    return hg, he


@dataclass(frozen=True)
class DispersivePropagator:
    """Branch factors of exp(-i H_disp t), qubit phases tracked separately.

    The field factors are u_g = exp(-i omega_- n t) and
    u_e = exp(-i (omega_- n + chi(1+2n)) t); phase_g/phase_e are the scalar
    qubit phases exp(-+ i Omega t / 2) in the charge convention.  All phase
    arguments are reduced mod 2*pi in extended precision.
    """

    u_g: np.ndarray
    u_e: np.ndarray
    phase_g: complex
    phase_e: complex


def dispersive_propagator(params: SystemParams, t: float, nmax: int) -> DispersivePropagator:
    if params.detuning <= 0:
        raise ParameterError("dispersive propagator requires detuning > 0")
    chi = params.chi
    omega_minus = params.omega - chi
    omega_plus = params.omega + chi
    u_g = fock.number_phase_propagator(omega_minus, t, nmax)
    # omega_- n + chi(1+2n) = omega_+ n + chi
    u_e = np.exp(-1j * fock.reduce_mod_2pi(chi, t)) * fock.number_phase_propagator(
        omega_plus, t, nmax
    )
    half_omega_t = fock.reduce_mod_2pi(0.5 * params.qubit_freq, t)
    return DispersivePropagator(
        u_g=u_g,
        u_e=u_e,
        phase_g=complex(np.exp(-1j * half_omega_t)),
        phase_e=complex(np.exp(+1j * half_omega_t)),
    )


def qubit_rotation(params: SystemParams, t: float) -> np.ndarray:
    """2x2 qubit factor of exp(-i(-E_J sigma_x)t/hbar) = exp(+i ej t sigma_x).

    At t = tau1 = pi/(4 ej) this is the pi/2 pulse (I + i sigma_x)/sqrt(2).
    """
    angle = fock.reduce_mod_2pi(params.ej, t)
    return math.cos(angle) * np.eye(2, dtype=complex) + 1j * math.sin(angle) * SIGMA_X


def half_pi_rotation() -> np.ndarray:
    return (np.eye(2, dtype=complex) + 1j * SIGMA_X) / math.sqrt(2.0)


def hermiticity_defect(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T)))
