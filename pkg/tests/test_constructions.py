import math

import numpy as np
import pytest

from povmclone import constructions as C
from povmclone import measures, numerics, qtypes
from povmclone.errors import InvalidParameter, OutOfRange
from povmclone.qtypes import DensityOperator, Pvm, PureState

from conftest import PI8

# High-precision (mpmath, 30 digits) values of the symmetric cloner angles.
PHI1_PI8 = 0.992117722301558496
PHI_PI8 = 1.98423544460311699
COS_PHI1_PI8 = 0.546918160678027157
OVERLAP_PI8 = 0.386729540169506789
PHI1_PI16 = 1.33191457449515180


def test_b92_states_relations():
    st = C.b92_states(PI8)
    assert abs(st.eta_plus.overlap(st.eta_minus) - 0.7071067811865476) <= 1e-12
    assert abs(st.theta_plus.overlap(st.eta_plus)) <= 1e-12
    assert abs(st.theta_minus.overlap(st.eta_minus)) <= 1e-12
    for eta in (0.1, 0.5):
        st = C.b92_states(eta)
        assert abs(st.eta_plus.overlap(st.eta_minus) - math.cos(2 * eta)) <= 1e-12


@pytest.mark.parametrize("eta", [0.0, -0.1, math.pi / 4, 0.8, 1e-10])
def test_eta_domain(eta):
    with pytest.raises(InvalidParameter):
        C.b92_states(eta)


def test_b92_povm_complete_and_distributions():
    povm = C.b92_povm(PI8)
    assert np.max(np.abs(sum(povm) - np.eye(2))) <= 1e-12
    st = C.b92_states(PI8)
    c2 = math.cos(2 * PI8) ** 2
    assert np.allclose(qtypes.measure(povm, st.eta_plus).probs, [0.5, 0, c2 / 2, (1 - c2) / 2], atol=1e-12)
    assert np.allclose(qtypes.measure(povm, st.eta_minus).probs, [c2 / 2, (1 - c2) / 2, 0.5, 0], atol=1e-12)


@pytest.mark.parametrize("eta", [PI8, math.pi / 6, 0.05, 0.75])
def test_intolerance_survey(eta):
    report = C.intolerance_survey(eta)
    assert report.intolerant_count == 4 and report.all_intolerant
    pairs = {(r.first, r.second) for r in report.rows}
    assert ("eta+", "theta+") not in pairs and ("eta-", "theta-") not in pairs


def _random_instance(rng, d, ranks):
    return qtypes.random_pvm(d, ranks, rng), qtypes.random_pure_state(d, rng)


def test_saturating_pure_state_f1_returns_psi(rng):
    pvm, psi = _random_instance(rng, 3, [1, 2])
    phi = C.construct_saturating_pure_state(pvm, psi, 1.0)
    assert abs(abs(psi.overlap(phi)) - 1) <= 1e-12


@pytest.mark.parametrize("t", [0.0, 1e-20, 1e-12, 5.960464477539063e-08, 1e-5])
def test_saturating_pure_state_just_above_floor(t):
    # a block probability of ~1e-15 in phi must still enter the classical fidelity
    rng = np.random.default_rng(0)
    pvm, psi = qtypes.random_pvm(2, seed=rng), qtypes.random_pure_state(2, rng)
    lo, hi = C.saturation_range(pvm, psi)
    f = lo + t * (hi - lo)
    phi = C.construct_saturating_pure_state(pvm, psi, f)
    fcl = measures.classical_fidelity(qtypes.measure(pvm, psi), qtypes.measure(pvm, phi))
    assert abs(fcl - f) <= 1e-12


def test_saturating_pure_state_floor_uses_minimal_block(rng):
    pvm, psi = _random_instance(rng, 4, [1, 1, 2])
    p = qtypes.measure(pvm, psi).probs
    lo, hi = C.saturation_range(pvm, psi)
    assert lo == pytest.approx(math.sqrt(p.min())) and hi == 1
    phi = C.construct_saturating_pure_state(pvm, psi, lo)
    q = qtypes.measure(pvm, phi).probs
    m0 = int(np.argmin(p))
    assert q[m0] == pytest.approx(1, abs=1e-12)
    assert abs(abs(psi.overlap(phi)) - lo) <= 1e-9


def test_saturating_pure_state_midway(rng):
    pvm, psi = _random_instance(rng, 4, [2, 2])
    lo, _ = C.saturation_range(pvm, psi)
    f = 0.5 * (lo + 1)
    phi = C.construct_saturating_pure_state(pvm, psi, f)
    fcl = measures.classical_fidelity(qtypes.measure(pvm, psi), qtypes.measure(pvm, phi))
    assert abs(abs(psi.overlap(phi)) - f) <= 1e-9 and abs(fcl - f) <= 1e-9


def test_saturating_pure_state_out_of_range(rng):
    pvm, psi = _random_instance(rng, 3, [1, 1, 1])
    lo, _ = C.saturation_range(pvm, psi)
    with pytest.raises(OutOfRange):
        C.construct_saturating_pure_state(pvm, psi, lo - 1e-3)
    with pytest.raises(OutOfRange):
        C.construct_saturating_pure_state(pvm, psi, 1.01)


def test_zero_probability_blocks_are_excluded():
    pvm = Pvm.computational(3)
    psi = PureState.normalized([0.8, 0.6, 0.0])
    lo, _ = C.saturation_range(pvm, psi)
    assert lo == pytest.approx(0.6)
    phi = C.construct_saturating_pure_state(pvm, psi, lo)
    assert abs(phi.amplitudes[2]) == 0


def test_block_saturation(rng):
    pvm, psi = _random_instance(rng, 4, [2, 2])
    phi = C.construct_saturating_pure_state(pvm, psi, 0.7)
    blocks = C.block_decomposition(pvm, psi)
    assert all(np.all(c >= 0) for c in blocks.coefficients)
    for e, c in zip(blocks.bases, blocks.coefficients):
        b = e.conj().T @ phi.amplitudes
        assert abs(abs(np.vdot(c, b)) - np.linalg.norm(c) * np.linalg.norm(b)) <= 1e-10


def test_saturating_mixed_state(rng):
    pvm = qtypes.random_pvm(2, seed=rng)
    rho = qtypes.random_state(2, 2, rng)
    lo, _ = C.saturation_range(pvm, rho)
    f = 0.5 * (lo + 1)
    omega = C.construct_saturating_mixed_state(pvm, rho, f)
    assert abs(measures.fidelity(rho, omega) - f) <= 1e-8
    assert abs(measures.classical_fidelity(qtypes.measure(pvm, rho), qtypes.measure(pvm, omega)) - f) <= 1e-8


def test_saturating_mixed_state_trivial_cases():
    rho = DensityOperator.maximally_mixed(2)
    omega = C.construct_saturating_mixed_state(Pvm.computational(2), rho, 1.0)
    assert np.allclose(omega.matrix, rho.matrix, atol=1e-12)
    psi = PureState.normalized([0.6, 0.8])
    omega = C.construct_saturating_mixed_state(Pvm.computational(2), psi, 0.9)
    assert omega.purity() == pytest.approx(1, abs=1e-10)
    assert measures.fidelity(psi, omega) == pytest.approx(0.9, abs=1e-9)


def test_clone_angles_pi8():
    p = C.solve_clone_angles(PI8)
    assert math.cos(p.phi1) == pytest.approx(COS_PHI1_PI8, abs=1e-14)
    assert p.phi1 == pytest.approx(PHI1_PI8, abs=1e-14)
    assert p.phi == pytest.approx(PHI_PI8, abs=1e-14)
    assert p.phi1 == p.phi2 and p.symmetric
    eta = PureState(C.eta_theta_basis(PI8)[:, 0].copy())
    ov = abs(eta.overlap(C.phase_state(PI8, p.phi)))
    assert ov == pytest.approx(OVERLAP_PI8, abs=1e-14)
    assert ov == pytest.approx(math.sin(2 * PI8) * math.cos(p.phi / 2), abs=1e-14)
    assert ov <= 0.5
    assert C.solve_clone_angles(PI8 / 2).phi1 == pytest.approx(PHI1_PI16, abs=1e-14)


@pytest.mark.parametrize("eta", np.linspace(0.02, math.pi / 4 - 0.02, 9))
def test_clone_params_consistency(eta):
    p = C.solve_clone_angles(eta)
    assert abs(p.alpha - p.alpha1**2) <= 1e-10
    assert p.a**2 == pytest.approx(1 / (abs(p.u) ** 2 + abs(p.v) ** 2), abs=1e-12)
    u = C.build_cloning_unitary(p)
    assert numerics.unitarity_residual(u) <= 1e-10
    assert C.column_phase_deviation(u, C.published_cloning_unitary(p)) <= 1e-10


@pytest.mark.parametrize("eta", [PI8, PI8 / 2, 0.6])
def test_clone_demo_constraints(eta):
    demo = C.clone_demo(eta)
    assert demo.unitarity_residual <= 1e-10
    assert demo.fixed_point_residual <= 1e-10
    assert demo.cloning_residual <= 1e-9
    assert demo.overlap_residual <= 1e-10
    assert demo.report.merit <= 1e-9 and demo.verified


def test_clone_demo_wire_distributions():
    report = C.verify_perfect_cloning(PI8)
    c2, s2 = math.cos(PI8) ** 2, math.sin(PI8) ** 2
    eta_rec, phi_rec = report.records
    assert np.allclose(eta_rec.q, [c2, s2], atol=1e-12) and np.allclose(eta_rec.r, [c2, s2], atol=1e-12)
    assert np.allclose(phi_rec.q, [s2, c2], atol=1e-12) and np.allclose(phi_rec.r, [s2, c2], atol=1e-12)
    assert eta_rec.factorization_residual <= 1e-12 and phi_rec.factorization_residual <= 1e-12


def test_general_phase_variant():
    eta = PI8
    cmax = C.max_tolerable_cos(eta)
    for c in (-cmax, -0.3, 0.0, 0.2, cmax):
        phi = 2 * math.acos(c)
        p = C.solve_clone_angles_general(eta, phi)
        demo = C.clone_demo(eta, phi)
        assert demo.verified and demo.cloning_residual <= 1e-9
        assert p.phi1 + p.phi2 == pytest.approx(phi)
    assert C.solve_clone_angles_general(eta, PHI_PI8).phi1 == pytest.approx(PHI1_PI8, abs=1e-7)
    with pytest.raises(InvalidParameter):
        C.solve_clone_angles_general(eta, 0.2)
