"""Physical parameters of the qubit-cavity system and derived quantities.

All energies are stored as angular frequencies (rad/s), i.e. E/hbar.
Configuration files accept ordinary frequencies in GHz; conversion to
rad/s (factor 2*pi*1e9) happens at the parsing boundary, not here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Physical constants (SI)
HBAR = 1.054571817e-34       # J s
EPS0 = 8.8541878128e-12      # F/m
C_LIGHT = 2.99792458e8       # m/s
PHI0 = 2.067833848e-15       # Wb, flux quantum h/2e

#: Advisory cutoff on |g|/Delta below which the dispersive treatment is
#: accepted.  Deliberately loose: the reference operating point sits at
#: Delta/|g| ~ 2.25, which a strict "much less than one" rule would reject.
DISPERSIVE_THRESHOLD = 0.5


class ParameterError(ValueError):
    """Raised for unphysical or out-of-range parameter values."""


@dataclass(frozen=True)
class SystemParams:
    """Charge qubit coupled to a single cavity mode.

    Attributes
    ----------
    ej : float
        Josephson energy E_J / hbar (rad/s).
    ech : float
        Single-electron charging energy E_ch / hbar (rad/s).
    ng : float
        Dimensionless gate charge.
    omega : float
        Cavity mode angular frequency (rad/s).
    eta_ratio : float or complex
        Dimensionless coupling pi*eta/Phi_0.  May be complex; only its
        modulus enters the dispersive formulas.
    quality : float or None
        Cavity quality factor Q; None models a lossless cavity.
    """

    ej: float
    ech: float
    ng: float
    omega: float
    eta_ratio: complex
    quality: float | None = None

    def __post_init__(self):
        if self.omega <= 0:
            raise ParameterError(f"omega must be positive, got {self.omega}")
        if self.ej <= 0:
            raise ParameterError(f"ej must be positive, got {self.ej}")
        if self.ech <= 0:
            raise ParameterError(f"ech must be positive, got {self.ech}")
        if not 0 < abs(self.eta_ratio) < 1:
            raise ParameterError(
                f"eta_ratio modulus must lie in (0, 1), got {self.eta_ratio}"
            )
        if self.quality is not None and self.quality <= 0:
            raise ParameterError(f"quality must be positive, got {self.quality}")

    @property
    def g(self) -> float:
        """Qubit-photon coupling |g| = |pi eta / Phi_0| * E_J/hbar (rad/s)."""
        return abs(self.eta_ratio) * self.ej

    @property
    def qubit_freq(self) -> float:
        """Transition frequency Omega = 4 (E_ch/hbar) (2 n_g - 1) (rad/s)."""
        return 2.0 * (2.0 * self.ech) * (2.0 * self.ng - 1.0)

    @property
    def detuning(self) -> float:
        """Delta = Omega - omega (rad/s)."""
        return self.qubit_freq - self.omega

    @property
    def chi(self) -> float:
        """Dispersive shift |g|^2 / Delta (rad/s)."""
        delta = self.detuning
        if delta <= 0:
            raise ParameterError(
                f"dispersive shift undefined for detuning {delta} <= 0"
            )
        return self.g**2 / delta

    @property
    def gamma(self) -> float:
        """Cavity energy decay rate omega / Q (rad/s)."""
        if self.quality is None:
            return 0.0
        return self.omega / self.quality

    @property
    def tau1(self) -> float:
        """Duration of a pi/2 qubit rotation, hbar*pi/(4 E_J) = pi/(4 ej).

        Direct evaluation at 2E_J/h = 13 GHz gives 1.92e-11 s.  (A published
        value of 4.8e-12 s for the same E_J differs by a factor 4; this
        toolkit always uses the formula.)
        """
        return math.pi / (4.0 * self.ej)

    def derived(self) -> "DerivedQuantities":
        return DerivedQuantities(
            qubit_freq=self.qubit_freq,
            detuning=self.detuning,
            chi=self.chi,
            gamma=self.gamma,
        )


@dataclass(frozen=True)
class DerivedQuantities:
    qubit_freq: float
    detuning: float
    chi: float
    gamma: float


@dataclass(frozen=True)
class DispersiveReport:
    """Outcome of the large-detuning sanity check."""

    detuning_over_g: float
    g_over_detuning: float
    acceptable: bool


def charging_energy(params: SystemParams) -> float:
    """Qubit charging energy E_z/hbar = -2 (E_ch/hbar) (1 - 2 n_g), rad/s."""
    return -2.0 * params.ech * (1.0 - 2.0 * params.ng)


def check_dispersive(
    params: SystemParams, threshold: float = DISPERSIVE_THRESHOLD
) -> DispersiveReport:
    """Report Delta/|g| and flag whether |g|/Delta is below ``threshold``.

    Raises ParameterError for Delta <= 0, where the dispersive expansion
    is invalid.  The flag is advisory; callers decide whether to proceed.
    """
    delta = params.detuning
    if delta <= 0:
        raise ParameterError(
            f"detuning must be positive for the dispersive regime, got {delta}"
        )
    g = params.g
    return DispersiveReport(
        detuning_over_g=delta / g,
        g_over_detuning=g / delta,
        acceptable=(g / delta) < threshold,
    )


def eta_ratio_estimate(omega: float, squid_side: float) -> float:
    """Order-of-magnitude pi*eta/Phi_0 for a SQUID of side ``squid_side`` (m).

    Uses the standing-wave mode amplitude sqrt(hbar*omega/(eps0 V c^2))
    with mode volume V = lambda^3 (full-wave cavity), taken constant over
    the loop area.
    """
    if omega <= 0:
        raise ParameterError(f"omega must be positive, got {omega}")
    area = squid_side**2
    lam = 2.0 * math.pi * C_LIGHT / omega
    b_amp = math.sqrt(HBAR * omega / (EPS0 * lam**3 * C_LIGHT**2))
    return math.pi * b_amp * area / PHI0


def estimate_coupling_range(
    omega_low: float, omega_high: float, squid_side: float
) -> tuple[float, float]:
    """Interval of pi*eta/Phi_0 over a cavity-frequency band (rad/s inputs).

    Order-of-magnitude only: the estimate scales as omega^2 through the
    mode volume, and linearly in the SQUID area.
    """
    if not omega_low < omega_high:
        raise ParameterError("omega_low must be below omega_high")
    return (
        eta_ratio_estimate(omega_low, squid_side),
        eta_ratio_estimate(omega_high, squid_side),
    )


def paper_operating_point(quality: float | None = 5e5) -> SystemParams:
    """The reference operating point used throughout the worked examples.

    4E_ch/h = 149 GHz, 2E_J/h = 13 GHz, n_g = 0.634233, omega = 2pi*40 GHz,
    |g| = 4e6 rad/s.
    """
    ej = 2.0 * math.pi * 6.5e9
    return SystemParams(
        ej=ej,
        ech=2.0 * math.pi * 149e9 / 4.0,
        ng=0.634233,
        omega=2.0 * math.pi * 40e9,
        eta_ratio=4e6 / ej,
        quality=quality,
    )
