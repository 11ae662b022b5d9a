"""Cat-state preparation sequence.

Sequence: pi/2 pulse -> dispersive interaction for tau2 -> pi/2 pulse ->
charge measurement.  Each step updates both a numeric Fock-space state and
the analytic description (beta, phi, theta) carried in DispersedState /
CatSpec.  Coherent amplitudes follow the rotating convention in which free
phase factors exp(-i omega tau1) from the pulses are dropped; pass
``keep_free_phase=True`` to retain them for oracle comparisons.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import fock, hamiltonians
from .fock import FockState, QubitFieldState, TruncationError, reduce_mod_2pi
from .params import ParameterError, SystemParams

DEGENERATE_PROB = 1e-12


class DegenerateBranchError(ValueError):
    """Requested measurement outcome has vanishing probability."""


@dataclass(frozen=True)
class CatSpec:
    """Analytic description of a (possibly damped) two-component cat.

    The state is (|beta u> + sign * e^{i theta} |beta' u>) / N with
    beta' = beta e^{-i phi}; u = 1 denotes the pure state and u < 1 the
    amplitude-damped one (the damped case is a mixed state, realized in
    dissipation.realize_density).
    """

    beta: complex
    phi: float
    theta: float
    sign: int  # +1 (|e> outcome) or -1 (|g> outcome)
    u: float = 1.0
    alpha_abs2: float | None = None

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        if not 0.0 <= self.u <= 1.0:
            raise ValueError(f"damping factor u must lie in [0, 1], got {self.u}")
        if self.alpha_abs2 is None:
            object.__setattr__(self, "alpha_abs2", abs(self.beta) ** 2)
        if self.norm2 <= 0.0:
            raise DegenerateBranchError(
                f"degenerate cat: N^2 = {self.norm2:.3e} for sign {self.sign:+d}"
            )

    @property
    def beta_prime(self) -> complex:
        return self.beta * np.exp(-1j * self.phi)

    @property
    def theta_prime(self) -> float:
        return self.alpha_abs2 * math.sin(self.phi) - self.theta

    @property
    def norm2(self) -> float:
        """N_+-^2 = 2 +- 2 cos(theta') exp(-2|alpha|^2 sin^2(phi/2))."""
        overlap = math.exp(-2.0 * self.alpha_abs2 * math.sin(0.5 * self.phi) ** 2)
        return 2.0 + 2.0 * self.sign * math.cos(self.theta_prime) * overlap

    @property
    def outcome_probability(self) -> float:
        """Born probability N^2/4 of the measurement branch that yields this cat."""
        return self.norm2 / 4.0

    @property
    def separation(self) -> float:
        """Distance |beta - beta'| = 2|alpha| sin(phi/2) between the components."""
        return 2.0 * abs(self.beta) * abs(math.sin(0.5 * self.phi))


@dataclass(frozen=True)
class DispersedState:
    """Numeric qubit-field state after the dispersive step, plus the
    analytic bookkeeping needed to form the conditional cats."""

    qf: QubitFieldState
    beta: complex
    phi: float
    theta: float


@dataclass(frozen=True)
class ProjectionResult:
    cat: CatSpec
    probability: float
    state: FockState  # numeric conditional field state


def step1_superpose(
    alpha: complex,
    params: SystemParams,
    nmax: int | None = None,
    keep_free_phase: bool = False,
) -> QubitFieldState:
    """pi/2 pulse on |g>|alpha>: returns (|g> + i|e>)|alpha'>/sqrt(2)."""
    if nmax is None:
        nmax = fock.auto_nmax(abs(alpha))
    a = alpha
    if keep_free_phase:
        a = alpha * np.exp(-1j * reduce_mod_2pi(params.omega, params.tau1))
    amps = fock.coherent_state(a, nmax).amps
    return QubitFieldState(g=amps / math.sqrt(2.0), e=1j * amps / math.sqrt(2.0))


def step2_disperse(
    state: QubitFieldState,
    params: SystemParams,
    tau2: float,
    alpha: complex,
    theta_override: float | None = None,
) -> DispersedState:
    """Dispersive interaction for tau2; global qubit phase stripped.

    Returns the propagated numeric state together with (beta, phi, theta):
    beta = alpha e^{-i omega_- tau2}, phi = 2|g|^2 tau2 / Delta and
    theta = (Omega - |g|^2/Delta) tau2 mod 2pi (or the supplied override).
    """
    nmax = state.nmax
    prop = hamiltonians.dispersive_propagator(params, tau2, nmax)
    g_branch = prop.phase_g * (prop.u_g @ state.g)
    e_branch = prop.phase_e * (prop.u_e @ state.e)
    # strip the global phase exp(-i Omega tau2 / 2) carried by the g branch
    g_branch = g_branch / prop.phase_g
    e_branch = e_branch / prop.phase_g

    chi = params.chi
    phi = 2.0 * chi * tau2
    beta = alpha * np.exp(-1j * reduce_mod_2pi(params.omega - chi, tau2))
    theta = (
        theta_override
        if theta_override is not None
        else reduce_mod_2pi(params.qubit_freq - chi, tau2)
    )
    return DispersedState(
        qf=QubitFieldState(g=g_branch, e=e_branch), beta=beta, phi=phi, theta=theta
    )


def min_tau2(alpha_abs: float, params: SystemParams) -> float:
    """Lower bound (Delta/|g|^2) arcsin(1/(2|alpha|)) on the dispersive time.

    Below |alpha| = 1/2 no phase phi in [0, pi] separates the components by
    more than one, so the bound does not exist.
    """
    if alpha_abs < 0.5:
        raise ParameterError(
            f"|alpha| = {alpha_abs} < 1/2: no phi in [0, pi] separates the components"
        )
    delta = params.detuning
    if delta <= 0:
        raise ParameterError("min_tau2 requires detuning > 0")
    return (delta / params.g**2) * math.asin(1.0 / (2.0 * alpha_abs))


def tau2_for_phi(phi: float, params: SystemParams) -> float:
    """Interaction time giving relative phase phi (phi = pi for the standard cat)."""
    return 0.5 * phi / params.chi


def step3_rotate_and_project(ds: DispersedState, outcome: str) -> ProjectionResult:
    """Second pi/2 pulse followed by a charge measurement.

    Outcome 'e' yields the + cat (|beta> + e^{i theta}|beta'>)/N_+ with
    probability N_+^2/4; outcome 'g' the - cat.
    """
    if outcome not in ("g", "e"):
        raise ValueError(f"outcome must be 'g' or 'e', got {outcome!r}")
    sqrt2 = math.sqrt(2.0)
    new_g = (ds.qf.g + 1j * ds.qf.e) / sqrt2
    new_e = (1j * ds.qf.g + ds.qf.e) / sqrt2

    sign = +1 if outcome == "e" else -1
    cat = CatSpec(beta=ds.beta, phi=ds.phi, theta=ds.theta, sign=sign)
    branch = new_e if outcome == "e" else new_g
    prob_numeric = float(np.vdot(branch, branch).real)
    if prob_numeric < DEGENERATE_PROB:
        raise DegenerateBranchError(
            f"outcome {outcome!r} has probability {prob_numeric:.3e}"
        )
    amps = branch / math.sqrt(prob_numeric)
    if outcome == "e":
        amps = amps / 1j  # report the branch as i|e>(|beta>+e^{i theta}|beta'>)/2
    return ProjectionResult(
        cat=cat,
        probability=cat.outcome_probability,
        state=FockState(amps=amps, nmax=ds.qf.nmax),
    )


def cat_to_fock(spec: CatSpec, nmax: int | None = None) -> FockState:
    """Normalized Fock vector of a pure cat (u = 1 only)."""
    if spec.u != 1.0:
        raise ValueError("cat_to_fock handles the pure case u = 1 only")
    if nmax is None:
        nmax = fock.auto_nmax(abs(spec.beta))
    b = fock.coherent_amplitudes(spec.beta, nmax)
    bp = fock.coherent_amplitudes(spec.beta_prime, nmax)
    amps = b + spec.sign * np.exp(1j * spec.theta) * bp
    norm = np.linalg.norm(amps)
    if norm < math.sqrt(DEGENERATE_PROB):
        raise DegenerateBranchError("cat amplitudes cancel within truncation")
    tail = abs(spec.norm2 - norm**2) / spec.norm2
    if tail > 1e-6:
        raise TruncationError(
            f"cat norm deviates from N^2 by relative {tail:.2e}; increase nmax"
        )
    return FockState(amps=amps / norm, nmax=nmax)


def prepare_cat(
    alpha: complex,
    params: SystemParams,
    tau2: float | None = None,
    outcome: str = "e",
    nmax: int | None = None,
    theta_override: float | None = None,
) -> ProjectionResult:
    """Full preparation pipeline; tau2 defaults to the phi = pi choice.

    Emits a warning (not an error) when the component separation drops
    below one, the regime where the two branches are not distinguishable.
    """
    if tau2 is None:
        tau2 = tau2_for_phi(math.pi, params)
    state = step1_superpose(alpha, params, nmax=nmax)
    ds = step2_disperse(state, params, tau2, alpha, theta_override=theta_override)
    result = step3_rotate_and_project(ds, outcome)
    if result.cat.separation <= 1.0:
        warnings.warn(
            f"component separation {result.cat.separation:.3f} <= 1; "
            "the two coherent states are not macroscopically distinct",
            stacklevel=2,
        )
    return result


def with_sign(spec: CatSpec, sign: int) -> CatSpec:
    return replace(spec, sign=sign)
