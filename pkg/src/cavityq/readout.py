"""Charge-readout encoding of the quality factor.

After preparing a cat and letting it decohere for tau, a pi/2 pulse, a
dispersive interaction of length tau4 and a second pi/2 pulse map the
surviving fringe coherence onto the qubit populations.  Both a closed-form
expression and a direct Fock-space trace are provided; the numeric trace is
the ground truth the closed form is validated against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import dissipation, fock
from .fock import reduce_mod_2pi
from .params import ParameterError, SystemParams
from .protocol import CatSpec

PROB_SUM_TOL = 1e-12


class NoEncodingWarning(UserWarning):
    """phi' = n*pi with phi = pi: the probabilities carry no Q information."""


@dataclass(frozen=True)
class ReadoutConfig:
    """Protocol knobs for the two-measurement readout sequence.

    ``omega_minus_tau4_mod`` overrides the reduced phase
    (Omega - |g|^2/Delta) * tau4 mod 2pi; the absolute curve offset depends
    on it through a ~1e5 rad product whose published rounding is unknown.
    """

    prepared_sign: int  # +1 (|beta_+> prepared) or -1 (|beta_->)
    tau4: float
    omega_minus_tau4_mod: float | None = None

    def __post_init__(self):
        if self.prepared_sign not in (+1, -1):
            raise ValueError("prepared_sign must be +1 or -1")
        if self.tau4 < 0:
            raise ValueError("tau4 must be nonnegative")

    def phi_prime(self, params: SystemParams) -> float:
        return params.chi * self.tau4

    def omega_minus_phase(self, params: SystemParams) -> float:
        """(Omega - chi) tau4 mod 2pi, override taking precedence."""
        if self.omega_minus_tau4_mod is not None:
            return self.omega_minus_tau4_mod
        return reduce_mod_2pi(params.qubit_freq - params.chi, self.tau4)


def default_tau4(params: SystemParams) -> float:
    """The worked choice tau4 = (pi/2)(Delta/|g|^2), i.e. phi' = pi/2."""
    return 0.5 * math.pi / params.chi


def total_tau(tau3_prime: float, params: SystemParams) -> float:
    """Dissipation interval tau = tau3' + T including the pi/2-pulse length.

    T = pi/(4 ej) is ~1e-11 s against microsecond tau3', so the correction
    is negligible numerically but kept for bookkeeping.
    """
    return tau3_prime + params.tau1


@dataclass(frozen=True)
class ReadoutCurve:
    taus: np.ndarray
    p_g: np.ndarray
    p_e: np.ndarray
    config: ReadoutConfig
    params_digest: str = ""


def _warn_if_no_encoding(phi: float, phi_prime: float) -> None:
    if (
        abs(math.remainder(phi, 2.0 * math.pi)) > 1e-12
        and abs(abs(math.remainder(phi, 2.0 * math.pi)) - math.pi) < 1e-12
        and abs(math.remainder(phi_prime, math.pi)) < 1e-12
    ):
        warnings.warn(
            "phi' is a multiple of pi with phi = pi: probabilities are "
            "independent of the damping factor, Q is not encoded",
            NoEncodingWarning,
            stacklevel=3,
        )


def fringe_trace_closed_form(
    cfg: ReadoutConfig, params: SystemParams, cat: CatSpec, tau: float
) -> float:
    """Re Tr[exp(-i phase-hat) rho_s(tau)] from the explicit three-term form.

    For the prepared - cat the two cross terms enter with minus signs; for
    the + cat they flip sign and N_- is replaced by N_+.
    """
    s = cfg.prepared_sign
    u = dissipation.damping_factor(tau, params)
    phi = cat.phi
    theta = cat.theta
    a2 = cat.alpha_abs2
    phi_p = cfg.phi_prime(params)
    big_phase = cfg.omega_minus_phase(params)
    _warn_if_no_encoding(phi, phi_p)

    alpha_tau = a2 * u**2
    gamma_sep = 2.0 * a2 * math.sin(0.5 * phi) ** 2
    g_plus = 2.0 * alpha_tau * math.sin(phi_p) * math.sin(phi + phi_p)
    g_minus = 2.0 * alpha_tau * math.sin(phi_p) * math.sin(phi - phi_p)
    th_plus = 2.0 * alpha_tau * math.cos(phi + phi_p) * math.sin(phi_p)
    th_minus = 2.0 * alpha_tau * math.cos(phi - phi_p) * math.sin(phi_p)

    n2 = replace(cat, sign=s, u=1.0).norm2
    t1 = (
        (2.0 / n2)
        * math.exp(-2.0 * alpha_tau * math.sin(phi_p) ** 2)
        * math.cos(big_phase - alpha_tau * math.sin(2.0 * phi_p))
    )
    t2 = (
        (1.0 / n2)
        * math.cos(th_minus - a2 * math.sin(phi) + theta - big_phase)
        * math.exp(g_minus - gamma_sep)
    )
    t3 = (
        (1.0 / n2)
        * math.cos(th_plus + a2 * math.sin(phi) - theta - big_phase)
        * math.exp(-g_plus - gamma_sep)
    )
    return t1 + s * (t2 + t3)


def probability_closed_form(
    cfg: ReadoutConfig, params: SystemParams, cat: CatSpec, tau: float
) -> tuple[float, float]:
    """(P_g, P_e) of the second charge measurement, closed form.

    Prepared - cat: P_e = (1 + ReTr)/2.  Prepared + cat: the roles swap and
    P_g = (1 + ReTr)/2.
    """
    re_tr = fringe_trace_closed_form(cfg, params, cat, tau)
    hi = 0.5 * (1.0 + re_tr)
    lo = 0.5 * (1.0 - re_tr)
    if cfg.prepared_sign == -1:
        return lo, hi  # (P_g, P_e)
    return hi, lo


def probability_numeric(
    cfg: ReadoutConfig,
    params: SystemParams,
    rho_damped: np.ndarray,
) -> tuple[float, float]:
    """(P_g, P_e) from the full Fock-space pipeline.

    Conjugates the damped density matrix with U1 = exp(-i omega_- n tau4)
    and U2 = exp(-i omega_+ n tau4), applies the pi/2 rotations as matrices
    and traces out the field.  Ground truth for the closed form.
    """
    tr = float(np.trace(rho_damped).real)
    if abs(tr - 1.0) > 1e-8:
        raise ValueError(f"input density matrix trace {tr} != 1")
    nmax = rho_damped.shape[0] - 1
    chi = params.chi
    u1 = fock.number_phase_propagator(params.omega - chi, cfg.tau4, nmax)
    u2 = fock.number_phase_propagator(params.omega + chi, cfg.tau4, nmax)
    phase = np.exp(-1j * cfg.omega_minus_phase(params))

    a_op = u1 @ rho_damped @ u1.conj().T + u2 @ rho_damped @ u2.conj().T
    cross = phase * (u1 @ rho_damped @ u2.conj().T)
    b_op = cross + cross.conj().T

    tr_a = float(np.trace(a_op).real)
    tr_b = float(np.trace(b_op).real)
    plus = 0.25 * (tr_a + tr_b)
    minus = 0.25 * (tr_a - tr_b)
    if cfg.prepared_sign == -1:
        return minus, plus  # + branch is the |e> outcome
    return plus, minus


def probability_mixture(
    cfg: ReadoutConfig, params: SystemParams, cat: CatSpec, tau: float
) -> tuple[float, float]:
    """(P_g, P_e) for the fully decohered (cross-terms dropped) input.

    P_{e/g} = (1 +- exp[-2 a(tau) sin^2 phi'] cos[phase - a(tau) sin 2phi'])
              / N^2; tends to 1/2 per outcome for |alpha|^2 >> 1.
    """
    u = dissipation.damping_factor(tau, params)
    alpha_tau = cat.alpha_abs2 * u**2
    phi_p = cfg.phi_prime(params)
    big_phase = cfg.omega_minus_phase(params)
    n2 = replace(cat, sign=cfg.prepared_sign, u=1.0).norm2
    envelope = math.exp(-2.0 * alpha_tau * math.sin(phi_p) ** 2)
    osc = math.cos(big_phase - alpha_tau * math.sin(2.0 * phi_p))
    p_e = (1.0 + envelope * osc) / n2
    p_g = (1.0 - envelope * osc) / n2
    if cfg.prepared_sign == +1:
        p_g, p_e = p_e, p_g
    return p_g, p_e


def curve(
    cfg: ReadoutConfig,
    params: SystemParams,
    cat: CatSpec,
    tau_samples,
    n_shots: int | None = None,
    seed: int | None = None,
    params_digest: str = "",
) -> ReadoutCurve:
    """Closed-form P_g/P_e at each tau, optionally with binomial shot noise."""
    taus = np.asarray(tau_samples, dtype=float)
    if np.any(taus < 0) or np.any(np.diff(taus) < 0):
        raise ValueError("tau samples must be nonnegative and ascending")
    p_g = np.empty_like(taus)
    p_e = np.empty_like(taus)
    for i, tau in enumerate(taus):
        p_g[i], p_e[i] = probability_closed_form(cfg, params, cat, float(tau))
    if n_shots is not None:
        rng = np.random.default_rng(seed)
        counts = rng.binomial(n_shots, np.clip(p_g, 0.0, 1.0))
        p_g = counts / n_shots
        p_e = 1.0 - p_g
    return ReadoutCurve(
        taus=taus, p_g=p_g, p_e=p_e, config=cfg, params_digest=params_digest
    )


def write_csv(c: ReadoutCurve, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("tau_s,p_g,p_e\n")
        for tau, pg, pe in zip(c.taus, c.p_g, c.p_e):
            fh.write(f"{tau:.17g},{pg:.17g},{pe:.17g}\n")
