import math
from dataclasses import replace

import numpy as np
import pytest

from cavityq import fock, hamiltonians
from cavityq.params import ParameterError


NMAX = 30


def test_free_hamiltonian_exact(paper):
    p = replace(paper, ng=0.5)
    h = hamiltonians.build(hamiltonians.HamiltonianSpec("free", p), NMAX)
    expected = p.omega * np.kron(np.eye(2), fock.number_op(NMAX)) - p.ej * np.kron(
        hamiltonians.SIGMA_X, np.eye(NMAX + 1)
    )
    assert np.allclose(h, expected)


@pytest.mark.parametrize("kind", ["free", "full_cosine", "linearized", "dispersive"])
@pytest.mark.parametrize("flux_on", [False, True])
def test_all_kinds_hermitian(paper, kind, flux_on):
    h = hamiltonians.build(
        hamiltonians.HamiltonianSpec(kind, paper, flux_on=flux_on), NMAX
    )
    assert hamiltonians.hermiticity_defect(h) < 1e-6 * np.max(np.abs(h))


def test_unknown_kind_rejected(paper):
    with pytest.raises(ValueError):
        hamiltonians.HamiltonianSpec("bogus", paper)


def test_linearization_error_quadratic_in_eta(paper):
    # with the coupling flux off, full cosine minus linearized is the
    # remainder of cos(eta(a + a')) ~ 1, i.e. O(eta^2) on bounded photon number
    norms = []
    for eta in (1.9e-3, 1.9e-4):
        p = replace(paper, eta_ratio=eta)
        hf = hamiltonians.build(
            hamiltonians.HamiltonianSpec("full_cosine", p, flux_on=False), 100
        )
        hl = hamiltonians.build(
            hamiltonians.HamiltonianSpec("linearized", p, flux_on=False), 100
        )
        norms.append(np.linalg.norm(hf - hl, 2))
    ratio = norms[0] / norms[1]
    assert 80.0 < ratio < 120.0


def test_dispersive_diagonal_eigenvalues(paper):
    # charge convention: the |e> branch carries -Omega/2 + chi(1+2n)
    hg, he = hamiltonians.dispersive_branches(paper, NMAX)
    chi = paper.chi
    omega_minus = paper.omega - chi
    for n in (0, 3, NMAX):
        assert hg[n] == pytest.approx(
            omega_minus * n + 0.5 * paper.qubit_freq, rel=1e-14
        )
        assert he[n] == pytest.approx(
            omega_minus * n - 0.5 * paper.qubit_freq + chi * (1 + 2 * n), rel=1e-14
        )
    h = hamiltonians.build(hamiltonians.HamiltonianSpec("dispersive", paper), NMAX)
    assert np.allclose(np.diag(h)[: NMAX + 1].real, hg)
    assert np.allclose(np.diag(h)[NMAX + 1 :].real, he)


def test_dispersive_requires_positive_detuning(paper):
    p = replace(paper, ng=0.5)
    with pytest.raises(ParameterError):
        hamiltonians.HamiltonianSpec("dispersive", p)
    with pytest.raises(ParameterError):
        hamiltonians.dispersive_propagator(p, 1e-7, NMAX)


def test_dispersive_propagator_identity_at_t0(paper):
    prop = hamiltonians.dispersive_propagator(paper, 0.0, NMAX)
    assert np.allclose(prop.u_g, np.eye(NMAX + 1))
    assert np.allclose(prop.u_e, np.eye(NMAX + 1))
    assert prop.phase_g == pytest.approx(1.0)
    assert prop.phase_e == pytest.approx(1.0)


def test_dispersive_propagator_matches_expm(paper):
    # moderate time so the direct eigendecomposition keeps full accuracy
    t = 1e-9
    prop = hamiltonians.dispersive_propagator(paper, t, NMAX)
    hg, he = hamiltonians.dispersive_branches(paper, NMAX)
    ug_ref = np.diag(np.exp(-1j * hg * t))
    ue_ref = np.diag(np.exp(-1j * he * t))
    assert np.max(np.abs(prop.phase_g * prop.u_g - ug_ref)) < 1e-9
    assert np.max(np.abs(prop.phase_e * prop.u_e - ue_ref)) < 1e-9


def test_qubit_rotation_pi_half(paper):
    u = hamiltonians.qubit_rotation(paper, paper.tau1)
    target = hamiltonians.half_pi_rotation()
    assert np.max(np.abs(u - target)) < 1e-9
    assert fock.unitarity_defect(u) < 1e-12
