"""Acceptance criteria 1-9, one test each; every test records a PASS/FAIL line.

The lines are printed by the test and collected into an "acceptance
criteria" section of the pytest terminal summary.
"""

import math
import time

import numpy as np
import pytest

from povmclone import cloning, constructions, measures, numerics, properties, qtypes
from povmclone.qtypes import Pvm, PureState

from conftest import record_criterion

GRID = np.linspace(0.05, 0.75, 50)


def test_criterion_1_b92_classical_fidelity():
    start = time.perf_counter()
    worst_cl = worst_q = 0.0
    for eta in GRID:
        st = constructions.b92_states(eta)
        povm = constructions.b92_povm(eta)
        fcl = measures.classical_fidelity(qtypes.measure(povm, st.eta_plus), qtypes.measure(povm, st.eta_minus))
        f = measures.fidelity(st.eta_plus, st.eta_minus)
        worst_cl = max(worst_cl, abs(fcl - math.cos(2 * eta)))
        worst_q = max(worst_q, abs(f - math.cos(2 * eta)))
    elapsed = time.perf_counter() - start
    ok = worst_cl <= 1e-12 and worst_q <= 1e-10 and elapsed < 1.0
    record_criterion(1, ok, f"|Fcl - cos2eta| max {worst_cl:.2e}, |F - cos2eta| max {worst_q:.2e}, {elapsed:.3f}s")
    assert worst_cl <= 1e-12
    assert worst_q <= 1e-10
    assert elapsed < 1.0


def test_criterion_2_b92_intolerance():
    min_margin = math.inf
    count = 0
    for eta in GRID:
        report = constructions.intolerance_survey(eta)
        count += report.intolerant_count
        min_margin = min(min_margin, min(r.result.margin for r in report.rows))
    ok = count == 4 * len(GRID) and min_margin > 1e-6
    record_criterion(2, ok, f"{count}/{4 * len(GRID)} pairs intolerant, smallest margin F - Fcl^2 = {min_margin:.3e}")
    assert count == 4 * len(GRID)
    assert min_margin > 1e-6


def test_criterion_3_contrapositive():
    start = time.perf_counter()
    stats = properties.contrapositive_stats(random_cases=500)
    elapsed = time.perf_counter() - start
    ok = stats.cases >= 500 and stats.factorized > 0 and stats.worst_violation <= 1e-8 and elapsed < 60
    record_criterion(
        3, ok,
        f"{stats.cases} cases, {stats.factorized} factorized, worst F - Fcl^2 = {stats.worst_violation:.2e}, {elapsed:.1f}s",
    )
    assert stats.cases >= 500
    assert stats.factorized > 0
    assert stats.worst_violation <= 1e-8
    assert elapsed < 60


def test_criterion_4_fidelity_axioms():
    results = [
        properties.quantum_classical_bound(cases=1000, slack=1e-10),
        properties.monotonicity(cases=500, slack=1e-9),
        properties.multiplicativity(cases=200, slack=1e-9),
        properties.optimal_povm(cases=200, slack=1e-8),
    ]
    ok = all(r.passed for r in results)
    detail = ", ".join(f"{r.name} {r.cases} cases worst {r.worst:.2e}" for r in results)
    record_criterion(4, ok, detail)
    for r in results:
        assert r.passed, r


def test_criterion_5_lemma2():
    r = properties.lemma2_sweep(cases=20, f_values=20, slack=1e-9)
    ok = r.passed and r.cases == 400
    record_criterion(5, ok, f"{r.cases} (instance, f) pairs incl. floor, worst residual {r.worst:.2e}")
    assert r.cases == 400
    assert r.passed


def test_criterion_5_floor_is_reached(rng):
    for d in (2, 3, 4):
        pvm, psi = qtypes.random_pvm(d, seed=rng), qtypes.random_pure_state(d, rng)
        lo, _ = constructions.saturation_range(pvm, psi)
        phi = constructions.construct_saturating_pure_state(pvm, psi, lo)
        assert abs(abs(psi.overlap(phi)) - lo) <= 1e-9


def test_criterion_6_theorem3():
    r = properties.theorem3_lift(cases=20, f_values=5, slack=1e-8)
    record_criterion(6, r.passed, f"{r.cases} (rho, f) pairs at d=2,3, worst residual {r.worst:.2e}")
    assert r.cases == 100
    assert r.passed


def test_criterion_7_perfect_cloning():
    start = time.perf_counter()
    worst_unit = worst_constraint = worst_merit = 0.0
    for eta in np.linspace(0.05, math.pi / 4 - 0.05, 10):
        demo = constructions.clone_demo(eta)
        worst_unit = max(worst_unit, demo.unitarity_residual)
        worst_constraint = max(worst_constraint, demo.fixed_point_residual, demo.cloning_residual)
        worst_merit = max(worst_merit, demo.report.merit)
    elapsed = time.perf_counter() - start
    ok = worst_unit <= 1e-10 and worst_constraint <= 1e-9 and worst_merit <= 1e-9 and elapsed < 1.0
    record_criterion(
        7, ok,
        f"unitarity {worst_unit:.2e}, constraints {worst_constraint:.2e}, merit {worst_merit:.2e}, {elapsed:.3f}s",
    )
    assert worst_unit <= 1e-10
    assert worst_constraint <= 1e-9
    assert worst_merit <= 1e-9
    assert elapsed < 1.0


def test_criterion_8_partial_fidelity_monotonicity():
    r = properties.partial_fidelity_unistochastic(cases=200, slack=1e-9)
    # Report-only: the kappa = (2n - k) k criterion on random pairs.
    rng = np.random.default_rng(properties.DEFAULT_SEED)
    tally = {cloning.INTOLERANT: 0, cloning.INCONCLUSIVE: 0}
    for _ in range(100):
        d = int(rng.integers(2, 5))
        povm = qtypes.random_povm(d, int(rng.integers(2, 5)), rng)
        rho, omega = qtypes.random_state(d, seed=rng), qtypes.random_state(d, seed=rng)
        k = int(rng.integers(0, povm.n))
        tally[cloning.check_no_cloning_partial(povm, rho, omega, k).verdict] += 1
    record_criterion(
        8, r.passed,
        f"{r.cases} channels, all k, worst decrease {r.worst:.2e}; "
        f"kappa criterion (report only): {tally[cloning.INTOLERANT]} intolerant, {tally[cloning.INCONCLUSIVE]} inconclusive",
    )
    assert r.passed


@pytest.mark.slow
def test_criterion_9_cloner_search():
    start = time.perf_counter()
    eta = math.pi / 8
    params = constructions.solve_clone_angles(eta)
    eta_state = PureState(constructions.eta_theta_basis(eta)[:, 0].copy())
    tolerant = cloning.search_perfect_cloner(
        Pvm.computational(2), eta_state, constructions.phase_state(eta, params.phi), probe=eta_state
    )
    st = constructions.b92_states(eta)
    intolerant = cloning.search_perfect_cloner(constructions.b92_povm(eta), st.eta_plus, st.eta_minus)
    elapsed = time.perf_counter() - start
    ok = tolerant.merit < 1e-6 and intolerant.merit > 0 and elapsed < 300
    record_criterion(
        9, ok,
        f"tolerant pair merit {tolerant.merit:.2e} after {tolerant.restarts} restart(s); "
        f"B92 pair merit {intolerant.merit} (surrogate floor {intolerant.surrogate:.4f}, "
        f"{intolerant.restarts} restarts, reported not asserted), {elapsed:.1f}s",
    )
    assert numerics.is_unitary(tolerant.unitary)
    assert tolerant.merit < 1e-6
    assert intolerant.merit > 0
    assert elapsed < 300
