"""Inverse problem: recover Q from P_g(tau) records.

One-dimensional least squares against the closed-form readout model: a
coarse logarithmic bracket scan followed by golden-section refinement.
Bracketing is used instead of derivative methods because the objective can
be mildly oscillatory in Q through the damped intensity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import readout
from .params import SystemParams
from .protocol import CatSpec

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
SCAN_POINTS = 64
REL_TOL = 1e-4


class NonIdentifiableError(RuntimeError):
    """The objective carries no Q sensitivity (e.g. phi' = n*pi data)."""


class BracketError(RuntimeError):
    """The minimum sits at a bracket edge; widen [q_lo, q_hi]."""


@dataclass(frozen=True)
class FitResult:
    q_hat: float
    residual: float
    iterations: int
    ci_68: tuple[float, float] | None = None


def _objective(
    q: float,
    taus: np.ndarray,
    p_obs: np.ndarray,
    cfg: readout.ReadoutConfig,
    params: SystemParams,
    cat: CatSpec,
) -> float:
    p = replace(params, quality=q)
    sse = 0.0
    for tau, obs in zip(taus, p_obs):
        pg, _ = readout.probability_closed_form(cfg, p, cat, float(tau))
        sse += (pg - obs) ** 2
    return sse


def fit_q(
    taus,
    p_g_obs,
    cfg: readout.ReadoutConfig,
    params: SystemParams,
    cat: CatSpec,
    bracket: tuple[float, float],
    rel_tol: float = REL_TOL,
    with_ci: bool = False,
) -> FitResult:
    """Least-squares Q estimate over ``bracket`` = (q_lo, q_hi).

    ``params.quality`` is ignored; every trial value replaces it.  Requires
    at least 5 samples.  Deterministic: same data, same result.
    """
    taus = np.asarray(taus, dtype=float)
    p_obs = np.asarray(p_g_obs, dtype=float)
    if len(taus) < 5:
        raise ValueError(f"need at least 5 samples, got {len(taus)}")
    q_lo, q_hi = bracket
    if not 0 < q_lo < q_hi:
        raise ValueError("bracket must satisfy 0 < q_lo < q_hi")

    def f(q):
        return _objective(q, taus, p_obs, cfg, params, cat)

    qs = np.geomspace(q_lo, q_hi, SCAN_POINTS)
    vals = np.array([f(q) for q in qs])
    spread = float(np.max(vals) - np.min(vals))
    if spread <= 1e-14 * max(1.0, float(np.max(vals))):
        raise NonIdentifiableError(
            "objective is flat across the bracket: the configuration does "
            "not encode Q (phi' = n*pi?)"
        )
    k = int(np.argmin(vals))
    if k == 0 or k == SCAN_POINTS - 1:
        raise BracketError(
            f"minimum at bracket edge q = {qs[k]:.4g}; widen the bracket"
        )

    # golden-section refinement between the neighbors of the grid minimum
    a, b = qs[k - 1], qs[k + 1]
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    iters = 0
    while (b - a) > rel_tol * a:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
        iters += 1
        if iters > 200:
            break
    q_hat = 0.5 * (a + b)
    residual = f(q_hat)

    ci = None
    if with_ci:
        ci = _curvature_interval(f, q_hat, residual, len(taus))
    return FitResult(q_hat=q_hat, residual=residual, iterations=iters, ci_68=ci)


def _curvature_interval(f, q_hat, residual, n_samples):
    """68% interval from the local curvature of the SSE objective."""
    h = 1e-3 * q_hat
    curv = (f(q_hat + h) - 2.0 * residual + f(q_hat - h)) / h**2
    if curv <= 0:
        return None
    sigma2 = residual / max(1, n_samples - 1)
    half = math.sqrt(max(0.0, 2.0 * sigma2 / curv))
    return (q_hat - half, q_hat + half)


def read_curve_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read the readout CSV (tau_s, p_g, p_e); returns (taus, p_g)."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    if data.dtype.names != ("tau_s", "p_g", "p_e"):
        raise ValueError(
            f"expected columns tau_s,p_g,p_e; got {data.dtype.names}"
        )
    return np.atleast_1d(data["tau_s"]), np.atleast_1d(data["p_g"])


def write_report(result: FitResult, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"q_hat = {result.q_hat:.17g}\n")
        fh.write(f"residual = {result.residual:.17g}\n")
        fh.write(f"iterations = {result.iterations}\n")
        if result.ci_68 is not None:
            fh.write(f"ci_68_low = {result.ci_68[0]:.17g}\n")
            fh.write(f"ci_68_high = {result.ci_68[1]:.17g}\n")
