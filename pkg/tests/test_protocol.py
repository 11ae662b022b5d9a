import math
from dataclasses import replace

import numpy as np
import pytest

from cavityq import fock, hamiltonians, protocol
from cavityq.params import ParameterError
from cavityq.protocol import CatSpec, DegenerateBranchError
from conftest import params_with_detuning


def test_step1_vacuum(paper):
    qf = protocol.step1_superpose(0.0, paper, nmax=8)
    pg, pe = qf.branch_populations()
    assert pg == pytest.approx(0.5, abs=1e-12)
    assert pe == pytest.approx(0.5, abs=1e-12)
    assert abs(qf.g[0] - 1.0 / math.sqrt(2.0)) < 1e-12
    assert abs(qf.e[0] - 1j / math.sqrt(2.0)) < 1e-12


def test_step1_matches_free_hamiltonian_oracle(paper):
    # propagate |g>|alpha> under H = omega n - E_J sigma_x for tau1 and
    # compare to the analytic pi/2-pulse output with the free phase kept
    alpha = 1.5
    nmax = fock.auto_nmax(alpha)
    p_sym = replace(paper, ng=0.5)
    h = hamiltonians.build(hamiltonians.HamiltonianSpec("free", p_sym), nmax)
    u = fock.expm_herm(h, paper.tau1)
    coh = fock.coherent_state(alpha, nmax).amps
    psi0 = np.concatenate([coh, np.zeros(nmax + 1, dtype=complex)])
    psi1 = u @ psi0
    numeric = fock.QubitFieldState(g=psi1[: nmax + 1], e=psi1[nmax + 1 :])
    target = protocol.step1_superpose(alpha, paper, nmax=nmax, keep_free_phase=True)
    assert numeric.fidelity(target) > 1.0 - 1e-9


def test_step2_identity_at_zero_time(paper):
    qf = protocol.step1_superpose(2.0, paper)
    ds = protocol.step2_disperse(qf, paper, 0.0, 2.0)
    assert ds.phi == 0.0
    assert np.allclose(ds.qf.g, qf.g)
    assert np.allclose(ds.qf.e, qf.e)
    assert ds.beta == pytest.approx(2.0)


def test_step2_phase_definitions(paper):
    tau2 = protocol.tau2_for_phi(math.pi, paper)
    assert tau2 == pytest.approx(0.5 * math.pi * paper.detuning / paper.g**2, rel=1e-14)
    qf = protocol.step1_superpose(2.0, paper)
    ds = protocol.step2_disperse(qf, paper, tau2, 2.0)
    assert ds.phi == pytest.approx(math.pi, rel=1e-14)
    cat = CatSpec(beta=ds.beta, phi=ds.phi, theta=ds.theta, sign=+1)
    assert cat.beta_prime == pytest.approx(-ds.beta, rel=1e-12)


def test_tau2_value(paper):
    # phi = pi at the reference point; the published rounding of Delta puts
    # the same quantity at 0.93 us
    tau2 = protocol.tau2_for_phi(math.pi, paper)
    assert tau2 == pytest.approx(8.85e-7, rel=2e-3)


def test_step2_branches_are_coherent_states(paper):
    alpha = 2.0
    tau2 = protocol.tau2_for_phi(math.pi, paper)
    qf = protocol.step1_superpose(alpha, paper)
    ds = protocol.step2_disperse(qf, paper, tau2, alpha)
    nmax = qf.nmax
    g_state = fock.FockState(
        amps=ds.qf.g / np.linalg.norm(ds.qf.g), nmax=nmax
    )
    e_state = fock.FockState(
        amps=ds.qf.e / np.linalg.norm(ds.qf.e), nmax=nmax
    )
    assert g_state.fidelity(fock.coherent_state(ds.beta, nmax)) > 1.0 - 1e-9
    beta_prime = ds.beta * np.exp(-1j * ds.phi)
    assert e_state.fidelity(fock.coherent_state(beta_prime, nmax)) > 1.0 - 1e-9


def test_min_tau2():
    p9 = params_with_detuning(9.0e6)
    assert protocol.min_tau2(4.0, p9) == pytest.approx(7.05e-8, rel=1e-3)
    # |alpha| = 1/2 needs the full phi = pi
    assert protocol.min_tau2(0.5, p9) == pytest.approx(
        (p9.detuning / p9.g**2) * 0.5 * math.pi, rel=1e-14
    )
    bounds = [protocol.min_tau2(a, p9) for a in (0.5, 1.0, 2.0, 4.0, 8.0)]
    assert all(b1 > b2 for b1, b2 in zip(bounds, bounds[1:]))
    with pytest.raises(ParameterError):
        protocol.min_tau2(0.4, p9)


def test_outcome_probabilities_large_cat(paper):
    result = protocol.prepare_cat(4.0, paper, outcome="e")
    other = protocol.with_sign(result.cat, -1)
    # overlap e^{-2|alpha|^2} ~ 1.3e-14 makes both branches essentially 1/2
    assert result.cat.outcome_probability == pytest.approx(0.5, abs=1e-13)
    assert other.outcome_probability == pytest.approx(0.5, abs=1e-13)
    assert result.cat.outcome_probability + other.outcome_probability == pytest.approx(
        1.0, abs=1e-15
    )
    assert result.cat.sign == +1
    assert protocol.prepare_cat(4.0, paper, outcome="g").cat.sign == -1


def test_phi_zero_collapses_to_coherent_state(paper):
    qf = protocol.step1_superpose(2.0, paper)
    ds = protocol.step2_disperse(qf, paper, 0.0, 2.0, theta_override=1.0)
    res = protocol.step3_rotate_and_project(ds, "e")
    assert res.probability == pytest.approx(0.5 * (1.0 + math.cos(1.0)), abs=1e-12)
    coh = fock.coherent_state(2.0, qf.nmax)
    assert res.state.fidelity(coh) > 1.0 - 1e-12


def test_degenerate_branch_rejected(paper):
    qf = protocol.step1_superpose(2.0, paper)
    ds = protocol.step2_disperse(qf, paper, 0.0, 2.0, theta_override=0.0)
    with pytest.raises(DegenerateBranchError):
        protocol.step3_rotate_and_project(ds, "g")


def test_numeric_matches_analytic_cat(paper):
    result = protocol.prepare_cat(4.0, paper, outcome="e")
    analytic = protocol.cat_to_fock(result.cat, result.state.nmax)
    assert result.state.fidelity(analytic) > 1.0 - 1e-10
    resg = protocol.prepare_cat(4.0, paper, outcome="g")
    analyticg = protocol.cat_to_fock(resg.cat, resg.state.nmax)
    assert resg.state.fidelity(analyticg) > 1.0 - 1e-10


def test_odd_cat_parity():
    spec = CatSpec(beta=2.0, phi=math.pi, theta=0.0, sign=-1)
    state = protocol.cat_to_fock(spec)
    assert state.norm == pytest.approx(1.0, abs=1e-10)
    assert np.max(np.abs(state.amps[::2])) < 1e-12


def test_cat_mean_photon_number_formula():
    spec = CatSpec(beta=2.0 + 0.5j, phi=2.0, theta=0.7, sign=+1)
    state = protocol.cat_to_fock(spec, 40)
    brute = state.expect_n()
    b, bp = spec.beta, spec.beta_prime
    ovl = np.exp(-0.5 * (abs(b) ** 2 + abs(bp) ** 2) + np.conj(b) * bp)
    cross = np.exp(1j * spec.theta) * np.conj(b) * bp * ovl
    n2 = 2.0 + 2.0 * spec.sign * np.real(np.exp(1j * spec.theta) * ovl)
    analytic = (abs(b) ** 2 + abs(bp) ** 2 + 2.0 * spec.sign * np.real(cross)) / n2
    assert brute == pytest.approx(float(analytic), abs=1e-8)


def test_prepare_cat_warns_on_small_separation(paper):
    with pytest.warns(UserWarning, match="separation"):
        protocol.prepare_cat(0.45, paper, outcome="e")


def test_prepare_cat_deterministic(paper):
    a = protocol.prepare_cat(4.0, paper, outcome="e")
    b = protocol.prepare_cat(4.0, paper, outcome="e")
    assert np.array_equal(a.state.amps, b.state.amps)
    assert a.cat == b.cat


def test_invalid_outcome(paper):
    qf = protocol.step1_superpose(2.0, paper)
    ds = protocol.step2_disperse(qf, paper, 1e-7, 2.0)
    with pytest.raises(ValueError):
        protocol.step3_rotate_and_project(ds, "x")


def test_catspec_validation():
    with pytest.raises(ValueError):
        CatSpec(beta=2.0, phi=math.pi, theta=0.0, sign=0)
    with pytest.raises(ValueError):
        CatSpec(beta=2.0, phi=math.pi, theta=0.0, sign=+1, u=1.5)
