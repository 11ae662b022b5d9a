"""Truncated-Fock-space linear algebra.

States are complex vectors of length nmax+1, operators dense complex
matrices.  Dimensions stay small (<~200), so everything is dense numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

TAIL_TOL = 1e-10
UNITARITY_TOL = 1e-10


class TruncationError(ValueError):
    """Raised when the retained Fock levels cannot represent a state."""


def auto_nmax(abs_alpha: float) -> int:
    """Truncation dimension covering a coherent state of modulus ``abs_alpha``.

    Poisson tail bound: mean + 8 standard deviations plus a fixed margin,
    which keeps the tail mass below ~1e-12 up to mean photon number 16.
    """
    a2 = abs_alpha**2
    return math.ceil(a2 + 8.0 * math.sqrt(a2 + 1.0) + 10.0)


def reduce_mod_2pi(x: float, y: float = 1.0) -> float:
    """(x*y) mod 2*pi evaluated in extended precision.

    Protocol phases reach ~1e5 rad; the product and reduction are done with
    mpmath so the reduced phase keeps full double accuracy.
    """
    with mpmath.workdps(40):
        r = mpmath.fmod(mpmath.mpf(x) * mpmath.mpf(y), 2 * mpmath.pi)
        return float(r)


@dataclass(frozen=True)
class FockState:
    """Pure cavity state in the truncated number basis."""

    amps: np.ndarray
    nmax: int

    def __post_init__(self):
        if self.amps.shape != (self.nmax + 1,):
            raise ValueError("amplitude vector length must be nmax+1")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def overlap(self, other: "FockState") -> complex:
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "FockState") -> float:
        return abs(self.overlap(other)) ** 2

    def expect_n(self) -> float:
        n = np.arange(self.nmax + 1)
        return float(np.sum(n * np.abs(self.amps) ** 2))

    def density(self) -> np.ndarray:
        return np.outer(self.amps, self.amps.conj())


@dataclass(frozen=True)
class QubitFieldState:
    """Joint qubit-field pure state, stored as the two field branches.

    ``g`` and ``e`` are the (unnormalized) Fock amplitude vectors multiplying
    the qubit ground and excited states; the joint norm is
    sqrt(|g|^2 + |e|^2).
    """

    g: np.ndarray
    e: np.ndarray

    @property
    def nmax(self) -> int:
        return len(self.g) - 1

    @property
    def norm(self) -> float:
        return math.sqrt(
            float(np.vdot(self.g, self.g).real + np.vdot(self.e, self.e).real)
        )

    def overlap(self, other: "QubitFieldState") -> complex:
        return complex(np.vdot(self.g, other.g) + np.vdot(self.e, other.e))

    def fidelity(self, other: "QubitFieldState") -> float:
        return abs(self.overlap(other)) ** 2

    def branch_populations(self) -> tuple[float, float]:
        return (
            float(np.vdot(self.g, self.g).real),
            float(np.vdot(self.e, self.e).real),
        )

    def strip_global_phase(self) -> "QubitFieldState":
        """Rotate so the largest amplitude is real positive."""
        joint = np.concatenate([self.g, self.e])
        k = int(np.argmax(np.abs(joint)))
        ph = joint[k] / abs(joint[k])
        return QubitFieldState(g=self.g / ph, e=self.e / ph)


def coherent_amplitudes(alpha: complex, nmax: int) -> np.ndarray:
    """Unnormalized-by-truncation amplitudes e^{-|a|^2/2} a^n / sqrt(n!)."""
    amps = np.empty(nmax + 1, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, nmax + 1):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return amps


def coherent_state(
    alpha: complex,
    nmax: int | None = None,
    tail_tol: float = TAIL_TOL,
    check: bool = True,
) -> FockState:
    """Coherent state |alpha> truncated at ``nmax`` and renormalized.

    Raises TruncationError when the neglected tail mass exceeds
    ``tail_tol`` (with ``check`` enabled).
    """
    if nmax is None:
        nmax = auto_nmax(abs(alpha))
    amps = coherent_amplitudes(alpha, nmax)
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    if check and tail > tail_tol:
        raise TruncationError(
            f"coherent state |alpha|={abs(alpha):.3g} has tail mass "
            f"{tail:.3e} > {tail_tol:.1e} at nmax={nmax}"
        )
    amps = amps / np.linalg.norm(amps)
    return FockState(amps=amps, nmax=nmax)


def coherent_tail_mass(alpha: complex, nmax: int) -> float:
    amps = coherent_amplitudes(alpha, nmax)
    return max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))


def annihilation(nmax: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, nmax + 1)).astype(complex), 1)


def creation(nmax: int) -> np.ndarray:
    return annihilation(nmax).conj().T


def number_op(nmax: int) -> np.ndarray:
    return np.diag(np.arange(nmax + 1).astype(complex))


def number_phase_propagator(rate: float, t: float, nmax: int) -> np.ndarray:
    """Diagonal propagator exp(-i * rate * n * t).

    The scalar phase rate*t is reduced mod 2*pi in extended precision
    before exponentiating, so large accumulated phases (~1e5 rad and more)
    do not lose the fractional part.
    """
    base = reduce_mod_2pi(rate, t)
    n = np.arange(nmax + 1)
    return np.diag(np.exp(-1j * base * n))


def expm_herm(op: np.ndarray, t: float = 1.0, herm_tol: float = 1e-9) -> np.ndarray:
    """Unitary exp(-i*op*t) for Hermitian ``op`` via eigendecomposition."""
    dev = np.max(np.abs(op - op.conj().T))
    scale = max(1.0, float(np.max(np.abs(op))))
    if dev > herm_tol * scale:
        raise ValueError(f"operator is not Hermitian (deviation {dev:.3e})")
    w, v = np.linalg.eigh(op)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def apply(op: np.ndarray, state: FockState) -> FockState:
    return FockState(amps=op @ state.amps, nmax=state.nmax)


def unitarity_defect(u: np.ndarray) -> float:
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
