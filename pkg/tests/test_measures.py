import math

import numpy as np
import pytest

from povmclone import measures, qtypes
from povmclone.constructions import b92_povm, b92_states, construct_saturating_pure_state
from povmclone.errors import DimensionMismatch, InvalidParameter, LengthMismatch
from povmclone.qtypes import DensityOperator, Pvm, PureState

from conftest import PI8, np_fidelity


def test_fidelity_trivial_cases(rng):
    rho = qtypes.random_state(3, seed=rng)
    assert abs(measures.fidelity(rho, rho) - 1) <= 1e-12
    assert measures.fidelity(DensityOperator.basis(2, 0), DensityOperator.basis(2, 1)) == 0


@pytest.mark.parametrize("eta", [0.1, PI8, 0.6])
def test_fidelity_b92_pair_is_cos_2eta(eta):
    st = b92_states(eta)
    assert abs(measures.fidelity(st.eta_plus, st.eta_minus) - math.cos(2 * eta)) <= 1e-10


def test_fidelity_against_lapack_oracle(rng):
    for d in (2, 3, 5):
        rho, omega = qtypes.random_state(d, d, rng), qtypes.random_state(d, seed=rng)
        assert abs(measures.fidelity(rho, omega) - np_fidelity(rho.matrix, omega.matrix)) <= 1e-9


def test_fidelity_pure_against_closed_form(rng):
    # Rank-deficient inputs carry ~1e-17 rounding eigenvalues whose square
    # roots would add ~1e-9; compare with the exact sqrt(<psi|omega|psi>).
    for d in (2, 3, 5):
        psi, omega = qtypes.random_pure_state(d, rng), qtypes.random_state(d, seed=rng)
        exact = np.sqrt(np.vdot(psi.amplitudes, omega.matrix @ psi.amplitudes).real)
        assert abs(measures.fidelity(psi, omega) - exact) <= 1e-12


def test_fidelity_pure_states_is_overlap(rng):
    a, b = qtypes.random_pure_state(4, rng), qtypes.random_pure_state(4, rng)
    assert abs(measures.fidelity(a, b) - abs(a.overlap(b))) <= 1e-12


def test_fidelity_symmetric(rng):
    rho, omega = qtypes.random_state(3, seed=rng), qtypes.random_state(3, seed=rng)
    assert abs(measures.fidelity(rho, omega) - measures.fidelity(omega, rho)) <= 1e-12


def test_fidelity_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        measures.fidelity(DensityOperator.maximally_mixed(2), DensityOperator.maximally_mixed(3))


def test_classical_fidelity_examples():
    assert measures.classical_fidelity([0.3, 0.7], [0.3, 0.7]) == pytest.approx(1, abs=1e-15)
    assert measures.classical_fidelity([1, 0], [0, 1]) == 0
    with pytest.raises(LengthMismatch):
        measures.classical_fidelity([1, 0], [1, 0, 0])


def test_classical_fidelity_b92_distributions():
    st = b92_states(PI8)
    povm = b92_povm(PI8)
    fcl = measures.classical_fidelity(qtypes.measure(povm, st.eta_plus), qtypes.measure(povm, st.eta_minus))
    assert abs(fcl - 0.7071067811865476) <= 1e-12


def test_partial_fidelity_examples(rng):
    rho, omega = qtypes.random_state(4, seed=rng), qtypes.random_state(4, seed=rng)
    sv = np.linalg.svd(np.linalg.cholesky(rho.matrix).conj().T @ np.linalg.cholesky(omega.matrix), compute_uv=False)
    assert measures.partial_fidelity(rho, omega, 0) == pytest.approx(measures.fidelity(rho, omega), abs=1e-14)
    assert measures.partial_fidelity(rho, omega, 3) == pytest.approx(sv.min(), abs=1e-10)
    values = [measures.partial_fidelity(rho, omega, k) for k in range(4)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert values == pytest.approx([sv[k:].sum() for k in range(4)], abs=1e-10)
    with pytest.raises(InvalidParameter):
        measures.partial_fidelity(rho, omega, 4)


def test_classical_partial_fidelity():
    p, q = [0.5, 0.3, 0.2], [0.2, 0.3, 0.5]
    terms = sorted(np.sqrt(np.multiply(p, q)), reverse=True)
    assert measures.classical_partial_fidelity(p, q, 1) == pytest.approx(sum(terms[1:]))


def test_relative_entropy_examples():
    assert measures.relative_entropy([0.2, 0.8], [0.2, 0.8]) == 0
    assert measures.relative_entropy([1, 0], [0.5, 0.5]) == pytest.approx(0.6931471805599453, abs=1e-15)
    assert measures.relative_entropy([0.5, 0.5], [1, 0]) == math.inf
    assert measures.relative_entropy(np.eye(2) / 2, np.full((2, 2), 0.25)) == pytest.approx(math.log(2))


def test_optimal_povm_commuting_pair():
    rho = DensityOperator(np.diag([0.7, 0.2, 0.1]))
    omega = DensityOperator(np.diag([0.1, 0.3, 0.6]))
    pvm = measures.optimal_fidelity_povm(rho, omega)
    fcl = measures.classical_fidelity(qtypes.measure(pvm, rho), qtypes.measure(pvm, omega))
    assert abs(fcl - measures.fidelity(rho, omega)) <= 1e-12


def test_optimal_povm_is_minimal(rng):
    rho, omega = qtypes.random_state(3, seed=rng), qtypes.random_state(3, seed=rng)
    f = measures.fidelity(rho, omega)
    pvm = measures.optimal_fidelity_povm(rho, omega)
    assert abs(measures.classical_fidelity(qtypes.measure(pvm, rho), qtypes.measure(pvm, omega)) - f) <= 1e-8
    for _ in range(200):
        povm = qtypes.random_povm(3, int(rng.integers(2, 6)), rng)
        assert measures.classical_fidelity(qtypes.measure(povm, rho), qtypes.measure(povm, omega)) >= f - 1e-10


def test_optimal_povm_singular_pairs(rng):
    pure = qtypes.random_state(3, 1, rng)
    rank2 = qtypes.random_state(3, 2, rng)
    for rho, omega in ((pure, rank2), (rank2, pure), (rank2, qtypes.random_state(3, 2, rng))):
        pvm = measures.optimal_fidelity_povm(rho, omega)
        fcl = measures.classical_fidelity(qtypes.measure(pvm, rho), qtypes.measure(pvm, omega))
        assert abs(fcl - measures.fidelity(rho, omega)) <= 1e-8


def test_equality_identical_states(rng):
    rho = qtypes.random_state(3, seed=rng)
    w = measures.check_equality_condition(qtypes.random_povm(3, 4, rng), rho, rho)
    assert w.holds and all(abs(z - 1) < 1e-12 for z in w.z) and w.max_residual <= 1e-12


def test_equality_orthogonal_pure_states():
    w = measures.check_equality_condition(Pvm.computational(2), DensityOperator.basis(2, 0), DensityOperator.basis(2, 1))
    # Disjoint supports: outcome 0 fits with z=0, outcome 1 has nothing to scale.
    assert w.z[0] == 0 and w.z[1] is None
    assert not w.holds


def test_equality_commuting_pair_literal_form():
    pvm = Pvm.computational(3)
    rho = DensityOperator(np.diag([0.5, 0.3, 0.2]))
    omega = DensityOperator(np.diag([0.2, 0.2, 0.6]))
    w = measures.check_equality_condition(pvm, rho, omega)
    assert w.holds
    assert [z.real for z in w.z] == pytest.approx([math.sqrt(0.2 / 0.5), math.sqrt(0.2 / 0.3), math.sqrt(3)])


def test_equality_lemma2_pair_aligned(rng):
    pvm = qtypes.random_pvm(4, [2, 2], rng)
    psi = qtypes.random_pure_state(4, rng)
    phi = construct_saturating_pure_state(pvm, psi, 0.8)
    w = measures.check_equality_condition(pvm, psi, phi, aligned=True)
    assert w.holds
    fcl = measures.classical_fidelity(qtypes.measure(pvm, psi), qtypes.measure(pvm, phi))
    assert abs(fcl - measures.fidelity(psi, phi)) <= 1e-9
    # The commuting-state form is only a sufficient probe and fails for this noncommuting pair.
    assert not measures.check_equality_condition(pvm, psi, phi).holds


def test_aligned_witness_fails_when_bound_is_strict(rng):
    rho, omega = qtypes.random_state(2, seed=rng), qtypes.random_state(2, seed=rng)
    povm = qtypes.random_povm(2, 3, rng)
    fcl = measures.classical_fidelity(qtypes.measure(povm, rho), qtypes.measure(povm, omega))
    assert fcl - measures.fidelity(rho, omega) > 1e-6
    assert not measures.check_equality_condition(povm, rho, omega, aligned=True).holds


def test_transitivity(rng):
    rho = qtypes.random_state(3, seed=rng)
    povm = qtypes.random_povm(3, 3, rng)
    assert measures.check_transitivity(povm, rho, rho, rho).holds

    pvm = Pvm.computational(3)
    psi = PureState.normalized([0.6, 0.5, 0.4 + 0.3j])
    phi = construct_saturating_pure_state(pvm, psi, 0.9)
    chi = construct_saturating_pure_state(pvm, phi, 0.85)
    report = measures.check_transitivity(pvm, psi, phi, chi, aligned=True)
    assert report.applicable and report.holds
    assert report.product_mismatch <= 1e-8

    unrelated = measures.check_transitivity(qtypes.random_povm(2, 3, rng), *(qtypes.random_state(2, seed=rng) for _ in range(3)))
    assert not unrelated.applicable and unrelated.holds
