"""Wigner functions: closed forms for cats and a definition-level numeric
evaluation used as an independent cross-check.

Quadrature convention: a coherent state beta is centered at
(x, p) = (sqrt(2) Re beta, sqrt(2) Im beta), so the vacuum Wigner function
is exp(-x^2 - p^2)/pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .dissipation import DampedCat

IMAG_RESIDUE_TOL = 1e-10

NORMALIZATION_MODES = ("unit_integral", "paper_fig1")

DEFAULT_AXIS = np.linspace(-8.0, 8.0, 257)


class QuadratureError(RuntimeError):
    """Numeric Wigner quadrature failed to converge."""


@dataclass(frozen=True)
class WignerGrid:
    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray  # shape (len(p_axis), len(x_axis)), W[p, x]
    normalization_mode: str = "unit_integral"

    def integral(self) -> float:
        """Riemann sum of W dx dp over the grid."""
        dx = float(self.x_axis[1] - self.x_axis[0])
        dp = float(self.p_axis[1] - self.p_axis[0])
        return float(np.sum(self.values)) * dx * dp

    def at(self, x: float, p: float) -> float:
        """Value at the grid node nearest to (x, p)."""
        i = int(np.argmin(np.abs(self.p_axis - p)))
        j = int(np.argmin(np.abs(self.x_axis - x)))
        return float(self.values[i, j])


def coherent_overlap_wigner(alpha: complex, beta: complex, x, p):
    """Wigner transform of the dyad |alpha><beta| (complex valued).

    (1/pi) exp{-(|alpha|^2+|beta|^2)/2 + alpha beta*}
          exp{-(x-q1)^2 - (p+i q2)^2}
    with q1 = (alpha+beta*)/sqrt(2), q2 = (alpha-beta*)/sqrt(2).
    """
    q1 = (alpha + np.conj(beta)) / math.sqrt(2.0)
    q2 = (alpha - np.conj(beta)) / math.sqrt(2.0)
    pref = np.exp(-0.5 * (abs(alpha) ** 2 + abs(beta) ** 2) + alpha * np.conj(beta))
    return pref / math.pi * np.exp(-((x - q1) ** 2) - (p + 1j * q2) ** 2)


def cat_wigner(
    dc: DampedCat,
    x_axis: np.ndarray | None = None,
    p_axis: np.ndarray | None = None,
    mode: str = "unit_integral",
) -> WignerGrid:
    """Closed-form Wigner function of a (damped) cat on a rectangular grid.

    Two Gaussians at the shrunk coherent amplitudes plus the interference
    term 2 s Re[P exp(-(x - u p1)^2 - (p + i u p2)^2)] with the u-independent
    coefficient P = e^{-i theta} exp[-|alpha|^2 (1 - e^{i phi})];
    p1 = (beta + beta'*)/sqrt(2), p2 = (beta - beta'*)/sqrt(2).  Everything
    is scaled by 1/(pi N^2), or additionally by pi N^2 in 'paper_fig1' mode.
    """
    if mode not in NORMALIZATION_MODES:
        raise ValueError(f"unknown normalization mode {mode!r}")
    if x_axis is None:
        x_axis = DEFAULT_AXIS
    if p_axis is None:
        p_axis = DEFAULT_AXIS
    s = dc.spec
    xg, pg = np.meshgrid(x_axis, p_axis)
    u = s.u
    b, bp = s.beta, s.beta_prime

    def lobe(center: complex) -> np.ndarray:
        return np.exp(
            -((xg - math.sqrt(2.0) * u * center.real) ** 2)
            - (pg - math.sqrt(2.0) * u * center.imag) ** 2
        )

    big_p = np.exp(-1j * s.theta) * np.exp(
        -s.alpha_abs2 * (1.0 - np.exp(1j * s.phi))
    )
    p1 = (b + np.conj(bp)) / math.sqrt(2.0)
    p2 = (b - np.conj(bp)) / math.sqrt(2.0)
    cross = big_p * np.exp(-((xg - u * p1) ** 2) - (pg + 1j * u * p2) ** 2)

    total = lobe(b) + lobe(bp) + s.sign * (cross + np.conj(cross))
    residue = float(np.max(np.abs(total.imag)))
    if residue > IMAG_RESIDUE_TOL:
        raise QuadratureError(f"imaginary residue {residue:.3e} in closed form")

    from dataclasses import replace

    pure_n2 = replace(s, u=1.0).norm2
    values = total.real / (math.pi * pure_n2)
    if mode == "paper_fig1":
        values = values * (math.pi * pure_n2)
    return WignerGrid(
        x_axis=np.asarray(x_axis, dtype=float),
        p_axis=np.asarray(p_axis, dtype=float),
        values=values,
        normalization_mode=mode,
    )


def hermite_functions(points: np.ndarray, nmax: int) -> np.ndarray:
    """Harmonic-oscillator eigenfunctions psi_n(points), shape (len, nmax+1).

    Stable normalized recurrence; psi_0 = pi^{-1/4} exp(-x^2/2).
    """
    pts = np.asarray(points, dtype=float)
    out = np.zeros((len(pts), nmax + 1))
    out[:, 0] = math.pi ** -0.25 * np.exp(-0.5 * pts**2)
    if nmax >= 1:
        out[:, 1] = math.sqrt(2.0) * pts * out[:, 0]
    for n in range(2, nmax + 1):
        out[:, n] = math.sqrt(2.0 / n) * pts * out[:, n - 1] - math.sqrt(
            (n - 1) / n
        ) * out[:, n - 2]
    return out


def _numeric_wigner_values(
    rho: np.ndarray, x_axis: np.ndarray, p_axis: np.ndarray, order: int
) -> np.ndarray:
    nmax = rho.shape[0] - 1
    half_width = float(np.max(np.abs(x_axis))) + math.sqrt(2.0 * nmax + 1.0) + 3.0
    nodes, weights = leggauss(order)
    xp = nodes * half_width
    w = weights * half_width

    # kernel K(x, x') = <x - x'| rho |x + x'>, assembled row by row in x
    phases = np.exp(2j * np.outer(p_axis, xp))  # (P, K)
    values = np.empty((len(p_axis), len(x_axis)))
    for j, x in enumerate(x_axis):
        left = hermite_functions(x - xp, nmax)    # (K, N+1)
        right = hermite_functions(x + xp, nmax)   # (K, N+1)
        kernel = np.einsum("km,mn,kn->k", left, rho, right)
        values[:, j] = (phases @ (w * kernel)).real / math.pi
    return values


def numeric_wigner(
    rho: np.ndarray,
    x_axis: np.ndarray | None = None,
    p_axis: np.ndarray | None = None,
    order: int | None = None,
    check_convergence: bool = False,
    convergence_tol: float = 1e-8,
) -> WignerGrid:
    """Wigner function from its defining x' integral, by Gauss-Legendre
    quadrature over position-basis wavefunctions.

    Serves as the independent oracle for ``cat_wigner``: it touches only the
    density matrix, never the closed-form cat expressions.
    """
    if x_axis is None:
        x_axis = DEFAULT_AXIS
    if p_axis is None:
        p_axis = DEFAULT_AXIS
    x_axis = np.asarray(x_axis, dtype=float)
    p_axis = np.asarray(p_axis, dtype=float)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > 1e-6:
        raise ValueError(f"density matrix trace {tr} != 1")
    nmax = rho.shape[0] - 1
    if order is None:
        half_width = float(np.max(np.abs(x_axis))) + math.sqrt(2.0 * nmax + 1.0) + 3.0
        pmax = float(np.max(np.abs(p_axis)))
        # resolve the e^{2ipx'} oscillation with ample margin
        order = max(400, int(3.0 * half_width * max(pmax, 1.0)))
    values = _numeric_wigner_values(rho, x_axis, p_axis, order)
    if check_convergence:
        refined = _numeric_wigner_values(rho, x_axis, p_axis, 2 * order)
        dev = float(np.max(np.abs(values - refined)))
        if dev > convergence_tol:
            raise QuadratureError(
                f"quadrature not converged: doubling changes W by {dev:.3e}"
            )
        values = refined
    return WignerGrid(x_axis=x_axis, p_axis=p_axis, values=values)


def write_csv(grid: WignerGrid, path) -> None:
    """Row-major CSV export with header x,p,w (17 significant digits)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("x,p,w\n")
        for i, p in enumerate(grid.p_axis):
            for j, x in enumerate(grid.x_axis):
                fh.write(f"{x:.17g},{p:.17g},{grid.values[i, j]:.17g}\n")
