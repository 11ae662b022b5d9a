"""Analytic damped-cat density matrix under zero-temperature photon loss.

The damped cat keeps its two-Gaussian structure with shrunk amplitudes
beta*u and beta'*u; only the cross terms pick up the extra suppression
factor C.  The trace stays exactly one because C times the shrunk-state
overlap <beta u|beta' u> is independent of u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import fock
from .fock import TruncationError
from .params import ParameterError, SystemParams
from .protocol import CatSpec

POSITIVITY_FLOOR = -1e-8


def damping_factor(tau: float, params: SystemParams) -> float:
    """u(tau) = exp(-omega tau / 2Q)."""
    if tau < 0:
        raise ParameterError(f"tau must be nonnegative, got {tau}")
    if params.quality is None:
        return 1.0
    return math.exp(-params.omega * tau / (2.0 * params.quality))


@dataclass(frozen=True)
class DampedCat:
    """CatSpec with u <= 1 plus the cross-term coefficient C."""

    spec: CatSpec
    cross_coeff: complex

    @property
    def fringe_decay(self) -> float:
        """Exponent |alpha|^2 (1 - cos phi)(1 - u^2) of the fringe suppression."""
        s = self.spec
        return s.alpha_abs2 * (1.0 - math.cos(s.phi)) * (1.0 - s.u**2)


def cross_coefficient(spec: CatSpec) -> complex:
    """C = e^{i theta} exp{|alpha|^2 (1 - e^{-i phi})(u^2 - 1)}."""
    return complex(
        np.exp(1j * spec.theta)
        * np.exp(spec.alpha_abs2 * (1.0 - np.exp(-1j * spec.phi)) * (spec.u**2 - 1.0))
    )


def damped_cat(spec: CatSpec, tau: float, params: SystemParams) -> DampedCat:
    """Evolve a pure cat for time tau under cavity loss."""
    if spec.u != 1.0:
        raise ValueError("damped_cat expects a pure input cat (u = 1)")
    u = damping_factor(tau, params)
    damped = replace(spec, u=u)
    return DampedCat(spec=damped, cross_coeff=cross_coefficient(damped))


def as_damped(spec: CatSpec) -> DampedCat:
    """Wrap a CatSpec (any u) with its cross coefficient."""
    return DampedCat(spec=spec, cross_coeff=cross_coefficient(spec))


def realize_density(dc: DampedCat, nmax: int | None = None) -> np.ndarray:
    """Assemble the damped-cat density matrix in the truncated Fock basis.

    rho = [ |bu><bu| + |b'u><b'u| + s C |b'u><bu| + s C* |bu><b'u| ] / N^2
    with N^2 taken from the pure (u = 1) cat.  Raises TruncationError if the
    truncation produces an eigenvalue below the positivity floor.
    """
    s = dc.spec
    if nmax is None:
        nmax = fock.auto_nmax(abs(s.beta))
    b = fock.coherent_state(s.beta * s.u, nmax).amps
    bp = fock.coherent_state(s.beta_prime * s.u, nmax).amps
    pure_n2 = replace(s, u=1.0).norm2
    c = dc.cross_coeff
    rho = (
        np.outer(b, b.conj())
        + np.outer(bp, bp.conj())
        + s.sign * c * np.outer(bp, b.conj())
        + s.sign * np.conj(c) * np.outer(b, bp.conj())
    ) / pure_n2
    lo = float(np.min(np.linalg.eigvalsh(rho)))
    if lo < POSITIVITY_FLOOR:
        raise TruncationError(
            f"density matrix eigenvalue {lo:.3e} below floor; increase nmax"
        )
    return rho


def trace_distance(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """(1/2) ||rho1 - rho2||_1."""
    w = np.linalg.eigvalsh(rho1 - rho2)
    return 0.5 * float(np.sum(np.abs(w)))


def purity(rho: np.ndarray) -> float:
    return float(np.trace(rho @ rho).real)
