"""Seeded randomized checks of the library's invariants.

Each check draws ``cases`` random instances from a seed, evaluates a
defect (how far the instance is from satisfying the property) and compares
the worst defect with a slack. The same functions back the ``properties``
command and the acceptance tests.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Iterator

import numpy as np

from . import cloning, constructions, measures, numerics, qtypes
from .qtypes import DensityOperator, KrausChannel, Povm, PureState, Pvm

DEFAULT_SEED = 0xB92

# Allowed defect per property; overridable from the command line.
SLACK = {
    "eig_reconstruction": 1e-10,
    "sqrt_roundtrip": 1e-9,
    "singular_values_adjoint": 1e-10,
    "kron_identities": 1e-10,
    "partial_trace_product": 1e-12,
    "measure_valid": 1e-10,
    "joint_marginals": 1e-12,
    "channel_trace_positivity": 1e-10,
    "purify_roundtrip": 1e-9,
    "quantum_classical_bound": 1e-10,
    "monotonicity": 1e-9,
    "multiplicativity": 1e-9,
    "purification_bound": 1e-8,
    "partial_fidelity_unistochastic": 1e-9,
    "classical_fidelity_squares": 1e-12,
    "optimal_povm": 1e-8,
    "no_cloning_contrapositive": 1e-8,
    "proof_chain": 1e-9,
    "broadcast_consistency": 1e-12,
    "merit_permutation": 1e-12,
    "b92_grid": 0.0,
    "lemma2_sweep": 1e-9,
    "lemma2_block_saturation": 1e-10,
    "theorem3_lift": 1e-8,
    "cloner_orthonormal": 1e-10,
    "cloner_published_matrix": 1e-10,
}

# Default number of random cases per property (scaled by --cases).
BASE_CASES = {
    "quantum_classical_bound": 1000,
    "monotonicity": 500,
    "optimal_povm": 200,
    "no_cloning_contrapositive": 500,
    "partial_fidelity_unistochastic": 200,
    "b92_grid": 50,
}


@dataclasses.dataclass(frozen=True)
class PropertyResult:
    name: str
    cases: int
    failures: int
    worst: float
    slack: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _run(name: str, defects: Iterator[float], slack: float | None, note: str = "") -> PropertyResult:
    slack = SLACK[name] if slack is None else slack
    cases = failures = 0
    worst = -math.inf
    for defect in defects:
        cases += 1
        worst = max(worst, defect)
        if not defect <= slack:
            failures += 1
    return PropertyResult(name, cases, failures, worst, slack, note)


def _hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (g + g.conj().T)


def _complex(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _state(rng: np.random.Generator, d: int, rank: int | None = None) -> DensityOperator:
    rank = int(rng.integers(1, d + 1)) if rank is None else rank
    return qtypes.random_state(d, rank, rng)


# -- numerics --------------------------------------------------------------------


def eig_reconstruction(cases: int = 100, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            h = _hermitian(rng, int(rng.integers(1, 17)))
            w, v = numerics.hermitian_eig(h)
            yield float(max(np.max(np.abs((v * w) @ v.conj().T - h)), numerics.unitarity_residual(v)))

    return _run("eig_reconstruction", gen(), slack)


def sqrt_roundtrip(cases: int = 100, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            b = _complex(rng, *(2 * [int(rng.integers(1, 9))]))
            s = b.conj().T @ b
            s = s / np.trace(s).real  # keep eigenvalues O(1)
            yield float(np.max(np.abs(numerics.sqrt_psd(s @ s) - s)))

    return _run("sqrt_roundtrip", gen(), slack)


def singular_values_adjoint(cases: int = 100, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            x = _complex(rng, int(rng.integers(1, 7)), int(rng.integers(1, 7)))
            a, b = numerics.singular_values(x), numerics.singular_values(x.conj().T)
            yield float(np.max(np.abs(a - b)))

    return _run("singular_values_adjoint", gen(), slack)


def kron_identities(cases: int = 100, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            a, b, c = (_complex(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4))) for _ in range(3))
            assoc = numerics.kron(numerics.kron(a, b), c) - numerics.kron(a, numerics.kron(b, c))
            u = _complex(rng, a.shape[1], 2)
            v = _complex(rng, b.shape[1], 2)
            mixed = numerics.kron(a, b) @ numerics.kron(u, v) - numerics.kron(a @ u, b @ v)
            yield float(max(np.max(np.abs(assoc)), np.max(np.abs(mixed))))

    return _run("kron_identities", gen(), slack)


def partial_trace_product(cases: int = 100, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            da, db = (int(x) for x in rng.integers(1, 5, size=2))
            a, b = _complex(rng, da, da), _complex(rng, db, db)
            m = numerics.kron(a, b)
            keep_a = numerics.partial_trace(m, (da, db), "A") - a * np.trace(b)
            keep_b = numerics.partial_trace(m, (da, db), "B") - b * np.trace(a)
            yield float(max(np.max(np.abs(keep_a)), np.max(np.abs(keep_b))))

    return _run("partial_trace_product", gen(), slack)


# -- quantum objects -----------------------------------------------------------------


def measure_valid(cases: int = 1000, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            d = int(rng.integers(1, 5))
            povm = qtypes.random_povm(d, int(rng.integers(1, 6)), rng)
            raw = qtypes.outcome_probabilities(povm, _state(rng, d).sqrt)
            yield float(max(-raw.min(), abs(raw.sum() - 1.0)))

    return _run("measure_valid", gen(), slack)


def joint_marginals(cases: int = 200, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            d = int(rng.integers(2, 4))
            povm = qtypes.random_povm(d, int(rng.integers(2, 5)), rng)
            omega = _state(rng, d * d)
            t = qtypes.joint_distribution(povm, omega)
            q = qtypes.measure(povm, numerics.partial_trace(omega.matrix, (d, d), "A")).probs
            r = qtypes.measure(povm, numerics.partial_trace(omega.matrix, (d, d), "B")).probs
            yield float(max(np.max(np.abs(t.marginal_first() - q)), np.max(np.abs(t.marginal_second() - r))))

    return _run("joint_marginals", gen(), slack)


def channel_trace_positivity(cases: int = 200, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            din, dout = (int(x) for x in rng.integers(1, 5, size=2))
            kc = int(rng.integers(max(1, -(-din // dout)), 5))
            ch = qtypes.random_channel(din, dout, kc, rng)
            out = ch.apply(_state(rng, din).matrix)
            evals, _ = numerics.hermitian_eig(0.5 * (out + out.conj().T))
            yield float(max(-evals.min(), abs(np.trace(out) - 1.0)))

    return _run("channel_trace_positivity", gen(), slack)


def purify_roundtrip(cases: int = 200, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            d = int(rng.integers(1, 5))
            rho = _state(rng, d)
            psi = qtypes.purify(rho)
            back = numerics.partial_trace(psi.projector(), (d, d), "A")
            yield float(np.max(np.abs(back - rho.matrix)))

    return _run("purify_roundtrip", gen(), slack)


# -- fidelity measures -------------------------------------------------------------------


def quantum_classical_bound(cases: int = 1000, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    """F(rho, omega) <= Fcl(p, q) for every measurement."""
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            d = int(rng.integers(2, 5))
            povm = qtypes.random_povm(d, int(rng.integers(1, 7)), rng)
            rho, omega = _state(rng, d), _state(rng, d)
            fcl = measures.classical_fidelity(qtypes.measure(povm, rho), qtypes.measure(povm, omega))
            yield measures.fidelity(rho, omega) - fcl

    return _run("quantum_classical_bound", gen(), slack)


def monotonicity(cases: int = 500, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    """Channels never decrease the fidelity."""
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            din, dout = int(rng.integers(2, 5)), int(rng.integers(2, 5))
            ch = qtypes.random_channel(din, dout, int(rng.integers(max(1, -(-din // dout)), 5)), rng)
            rho, omega = _state(rng, din), _state(rng, din)
            before = measures.fidelity(rho, omega)
            after = measures.fidelity(qtypes.apply_channel(ch, rho), qtypes.apply_channel(ch, omega))
            yield before - after

    return _run("monotonicity", gen(), slack)


def multiplicativity(cases: int = 200, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            d1, d2 = int(rng.integers(2, 4)), int(rng.integers(2, 4))
            r1, w1, r2, w2 = _state(rng, d1), _state(rng, d1), _state(rng, d2), _state(rng, d2)
            joint = measures.fidelity(r1.tensor(r2), w1.tensor(w2))
            yield abs(joint - measures.fidelity(r1, w1) * measures.fidelity(r2, w2))

    return _run("multiplicativity", gen(), slack)


def _maximize_overlap(f: Callable[[np.ndarray], float], x0: np.ndarray, sweeps: int = 400) -> float:
    x, fx = x0.copy(), f(x0)
    h = np.full(x0.size, 0.5)
    for _ in range(sweeps):
        for i in range(x.size):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[i] += sign * h[i]
                ft = f(trial)
                if ft > fx:
                    x, fx = trial, ft
                    h[i] = min(2 * h[i], 1.0)
                    break
            else:
                h[i] *= 0.5
        if h.max() < 1e-12:
            break
    return fx


def purification_bound(cases: int = 50, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    """|<Psi|Phi>| <= F for canonical purifications; an ancilla unitary attains F (qubits)."""
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            rho, omega = _state(rng, 2, 2), _state(rng, 2, 2)
            f = measures.fidelity(rho, omega)
            psi, phi = qtypes.purify(rho).amplitudes, qtypes.purify(omega).amplitudes

            def overlap(angles: np.ndarray) -> float:
                u = cloning._u3(*angles)
                return float(abs(np.vdot(psi, np.kron(np.eye(2), u) @ phi)))

            best = max(_maximize_overlap(overlap, rng.uniform(-np.pi, np.pi, 3)) for _ in range(3))
            yield max(overlap(np.zeros(3)) - f, abs(best - f))

    return _run("purification_bound", gen(), slack)


def partial_fidelity_unistochastic(cases: int = 200, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    """Every partial fidelity is nondecreasing under mixtures of unitaries."""
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            d = int(rng.integers(2, 5))
            ch = qtypes.random_unitary_mixture(d, int(rng.integers(1, 5)), rng)
            rho, omega = _state(rng, d), _state(rng, d)
            before = measures.fidelity_singular_values(rho, omega)
            after = measures.fidelity_singular_values(qtypes.apply_channel(ch, rho), qtypes.apply_channel(ch, omega))
            yield max(before[k:].sum() - after[k:].sum() for k in range(d))

    return _run("partial_fidelity_unistochastic", gen(), slack)


def classical_fidelity_squares(cases: int = 200, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            n = int(rng.integers(1, 7))
            p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
            joint = measures.classical_fidelity(np.outer(p, p), np.outer(q, q))
            yield abs(joint - measures.classical_fidelity(p, q) ** 2)

    return _run("classical_fidelity_squares", gen(), slack)


def optimal_povm(cases: int = 200, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    """The constructed measurement attains the quantum fidelity (invertible pairs)."""
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            d = int(rng.integers(2, 5))
            rho, omega = _state(rng, d, d), _state(rng, d, d)
            pvm = measures.optimal_fidelity_povm(rho, omega)
            fcl = measures.classical_fidelity(qtypes.measure(pvm, rho), qtypes.measure(pvm, omega))
            yield abs(fcl - measures.fidelity(rho, omega))

    return _run("optimal_povm", gen(), slack)


# -- cloning ---------------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True, eq=False)
class ContrapositiveCase:
    family: str
    povm: Povm
    channel: KrausChannel
    probe: DensityOperator
    first: DensityOperator
    second: DensityOperator


def contrapositive_cases(random_cases: int, seed: int = DEFAULT_SEED, constructed: int | None = None) -> Iterator[ContrapositiveCase]:
    """Random qubit channels and pairs, followed by known perfect cloners.

    Random channels essentially never clone perfectly, so the implication
    would hold vacuously; the constructed families (the product-output
    cloner over {|eta>, |phi>}, a pre-loaded probe for identical inputs, and
    a basis copier for orthogonal inputs) exercise the premise.
    """
    rng = np.random.default_rng(seed)
    constructed = max(20, random_cases // 5) if constructed is None else constructed
    for _ in range(random_cases):
        povm = qtypes.random_povm(2, int(rng.integers(2, 5)), rng)
        ch = qtypes.random_channel(4, 4, int(rng.integers(1, 5)), rng)
        yield ContrapositiveCase("random", povm, ch, _state(rng, 2), _state(rng, 2), _state(rng, 2))
    pvm2 = Pvm.computational(2)
    for i in range(constructed):
        kind = i % 3
        if kind == 0:
            eta = float(rng.uniform(0.05, math.pi / 4 - 0.05))
            cmax = constructions.max_tolerable_cos(eta)
            phi = 2 * math.acos(float(rng.uniform(-cmax, cmax)))
            params = constructions.solve_clone_angles_general(eta, phi)
            u = constructions.to_computational(constructions.build_cloning_unitary(params), eta)
            eta_state = PureState(constructions.eta_theta_basis(eta)[:, 0].copy()).density()
            yield ContrapositiveCase(
                "product-output cloner", pvm2, KrausChannel.unitary(u), eta_state,
                eta_state, constructions.phase_state(eta, phi).density(),
            )
        elif kind == 1:
            rho = _state(rng, 2)
            povm = qtypes.random_povm(2, int(rng.integers(2, 5)), rng)
            yield ContrapositiveCase("pre-loaded probe", povm, KrausChannel.identity(4), rho, rho, rho)
        else:
            basis = qtypes.random_unitary(2, rng)
            # |a>|0> -> |a>|a>, |b>|0> -> |b>|b>, completed by Gram-Schmidt.
            a, b = basis[:, 0], basis[:, 1]
            e0 = np.array([1, 0], dtype=complex)
            ins = np.column_stack([np.kron(a, e0), np.kron(b, e0)])
            outs = np.column_stack([np.kron(a, a), np.kron(b, b)])
            copier = numerics.gram_schmidt_complete(outs) @ numerics.gram_schmidt_complete(ins).conj().T
            povm = qtypes.random_povm(2, int(rng.integers(2, 5)), rng)
            yield ContrapositiveCase(
                "orthogonal copier", povm, KrausChannel.unitary(copier), DensityOperator(np.outer(e0, e0)),
                PureState(a).density(), PureState(b).density(),
            )


@dataclasses.dataclass(frozen=True)
class ContrapositiveStats:
    cases: int
    factorized: int
    worst_violation: float  # max of F - Fcl^2 over factorized cases
    worst_chain: float  # max of F(out', out'') - Fcl(t', t'') over all cases
    factorized_by_family: dict


def contrapositive_stats(random_cases: int = 500, seed: int = DEFAULT_SEED, constructed: int | None = None) -> ContrapositiveStats:
    cases = factorized = 0
    worst_violation = worst_chain = -math.inf
    by_family: dict[str, int] = {}
    for case in contrapositive_cases(random_cases, seed, constructed):
        cases += 1
        report = cloning.run_scenario(cloning.CloningScenario(case.povm, case.channel, (case.first, case.second), case.probe))
        r1, r2 = report.records
        chain = measures.fidelity(r1.output, r2.output) - measures.classical_fidelity(r1.t, r2.t)
        worst_chain = max(worst_chain, chain)
        if r1.factorization_residual <= 1e-10 and r2.factorization_residual <= 1e-10:
            factorized += 1
            by_family[case.family] = by_family.get(case.family, 0) + 1
            fcl = measures.classical_fidelity(r1.p, r2.p)
            worst_violation = max(worst_violation, measures.fidelity(case.first, case.second) - fcl**2)
    return ContrapositiveStats(cases, factorized, worst_violation, worst_chain, by_family)


def no_cloning_contrapositive(cases: int = 500, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    stats = contrapositive_stats(cases, seed)
    note = f"{stats.factorized} factorized cases " + ", ".join(f"{k}: {v}" for k, v in sorted(stats.factorized_by_family.items()))
    defect = stats.worst_violation if stats.factorized else math.inf
    result = _run("no_cloning_contrapositive", iter([defect]), slack, note=note)
    return dataclasses.replace(result, cases=stats.cases)


def proof_chain(cases: int = 300, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    stats = contrapositive_stats(cases, seed + 1)
    return dataclasses.replace(_run("proof_chain", iter([stats.worst_chain]), slack), cases=stats.cases)


def broadcast_consistency(cases: int = 200, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            d = int(rng.integers(2, 4))
            povm = qtypes.random_povm(d, int(rng.integers(2, 5)), rng)
            t = qtypes.joint_distribution(povm, _state(rng, d * d))
            yield max(
                cloning.check_broadcasting(t.probs, t.marginal_first()) if np.allclose(t.marginal_first(), t.marginal_second(), atol=0) else 0.0,
                float(np.max(np.abs(t.probs.sum(axis=1) - t.marginal_first()))),
            )

    return _run("broadcast_consistency", gen(), slack)


def merit_permutation(cases: int = 50, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            povm = qtypes.random_povm(2, int(rng.integers(2, 4)), rng)
            ch = qtypes.random_channel(4, 4, int(rng.integers(1, 4)), rng)
            inputs = [_state(rng, 2) for _ in range(int(rng.integers(2, 5)))]
            a = cloning.run_scenario(cloning.CloningScenario(povm, ch, tuple(inputs))).merit
            b = cloning.run_scenario(cloning.CloningScenario(povm, ch, tuple(inputs[::-1]))).merit
            yield 0.0 if a == b else abs(a - b)

    return _run("merit_permutation", gen(), slack)


# -- constructions ---------------------------------------------------------------------------


def b92_grid(cases: int = 50, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    """Every nonorthogonal B92 pair is intolerant on an eta grid; defect counts non-intolerant pairs."""
    grid = np.linspace(0.05, 0.75, cases)
    return _run("b92_grid", (float(4 - constructions.intolerance_survey(eta).intolerant_count) for eta in grid), slack)


def _lemma2_instance(rng: np.random.Generator) -> tuple[Pvm, PureState]:
    d = int(rng.integers(2, 5))
    n_blocks = int(rng.integers(2, d + 1))
    cuts = np.sort(rng.choice(np.arange(1, d), size=n_blocks - 1, replace=False))
    ranks = np.diff(np.concatenate([[0], cuts, [d]])).tolist()
    return qtypes.random_pvm(d, ranks, rng), qtypes.random_pure_state(d, rng)


def lemma2_sweep(cases: int = 20, seed: int = DEFAULT_SEED, slack: float | None = None, f_values: int = 20) -> PropertyResult:
    """|<psi|phi>| == Fcl(p, q) == f across the whole admissible range, floor included."""
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            pvm, psi = _lemma2_instance(rng)
            lo, hi = constructions.saturation_range(pvm, psi)
            for f in np.linspace(lo, hi, f_values):
                phi = constructions.construct_saturating_pure_state(pvm, psi, f)
                ov = abs(psi.overlap(phi))
                fcl = measures.classical_fidelity(qtypes.measure(pvm, psi), qtypes.measure(pvm, phi))
                yield max(abs(ov - f), abs(fcl - f))

    return _run("lemma2_sweep", gen(), slack)


def lemma2_block_saturation(cases: int = 20, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    """Per block, sum_n c b == |c| |b| (Cauchy-Schwarz saturated)."""
    rng = np.random.default_rng(seed)

    def gen():
        for _ in range(cases):
            pvm, psi = _lemma2_instance(rng)
            lo, hi = constructions.saturation_range(pvm, psi)
            phi = constructions.construct_saturating_pure_state(pvm, psi, float(rng.uniform(lo, hi)))
            blocks = constructions.block_decomposition(pvm, psi)
            for e, c in zip(blocks.bases, blocks.coefficients):
                b = e.conj().T @ phi.amplitudes
                yield abs(abs(np.vdot(c, b)) - np.linalg.norm(c) * np.linalg.norm(b))

    return _run("lemma2_block_saturation", gen(), slack)


def theorem3_lift(cases: int = 20, seed: int = DEFAULT_SEED, slack: float | None = None, f_values: int = 5) -> PropertyResult:
    rng = np.random.default_rng(seed)

    def gen():
        for i in range(cases):
            d = 2 + i % 2
            pvm = qtypes.random_pvm(d, seed=rng)
            rho = _state(rng, d, d)
            lo, hi = constructions.saturation_range(pvm, rho)
            for f in np.linspace(lo, hi, f_values):
                omega = constructions.construct_saturating_mixed_state(pvm, rho, f)
                fq = measures.fidelity(rho, omega)
                fcl = measures.classical_fidelity(qtypes.measure(pvm, rho), qtypes.measure(pvm, omega))
                yield max(abs(fq - f), abs(fcl - f))

    return _run("theorem3_lift", gen(), slack)


def cloner_orthonormal(cases: int = 50, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    grid = np.linspace(0.02, math.pi / 4 - 0.02, cases)
    return _run(
        "cloner_orthonormal",
        (numerics.unitarity_residual(constructions.build_cloning_unitary(constructions.solve_clone_angles(e))) for e in grid),
        slack,
    )


def cloner_published_matrix(cases: int = 50, seed: int = DEFAULT_SEED, slack: float | None = None) -> PropertyResult:
    """Gram-Schmidt cloner vs. the closed-form matrix, columns compared up to phase."""
    grid = np.linspace(0.02, math.pi / 4 - 0.02, cases)

    def gen():
        for e in grid:
            params = constructions.solve_clone_angles(e)
            pub = constructions.published_cloning_unitary(params)
            gs = constructions.build_cloning_unitary(params)
            yield max(constructions.column_phase_deviation(gs, pub), numerics.unitarity_residual(pub))

    return _run("cloner_published_matrix", gen(), slack)


CHECKS: dict[str, Callable[..., PropertyResult]] = {
    "eig_reconstruction": eig_reconstruction,
    "sqrt_roundtrip": sqrt_roundtrip,
    "singular_values_adjoint": singular_values_adjoint,
    "kron_identities": kron_identities,
    "partial_trace_product": partial_trace_product,
    "measure_valid": measure_valid,
    "joint_marginals": joint_marginals,
    "channel_trace_positivity": channel_trace_positivity,
    "purify_roundtrip": purify_roundtrip,
    "quantum_classical_bound": quantum_classical_bound,
    "monotonicity": monotonicity,
    "multiplicativity": multiplicativity,
    "purification_bound": purification_bound,
    "partial_fidelity_unistochastic": partial_fidelity_unistochastic,
    "classical_fidelity_squares": classical_fidelity_squares,
    "optimal_povm": optimal_povm,
    "no_cloning_contrapositive": no_cloning_contrapositive,
    "proof_chain": proof_chain,
    "broadcast_consistency": broadcast_consistency,
    "merit_permutation": merit_permutation,
    "b92_grid": b92_grid,
    "lemma2_sweep": lemma2_sweep,
    "lemma2_block_saturation": lemma2_block_saturation,
    "theorem3_lift": theorem3_lift,
    "cloner_orthonormal": cloner_orthonormal,
    "cloner_published_matrix": cloner_published_matrix,
}


def run_all(scale: float = 1.0, seed: int = DEFAULT_SEED, slack: dict | None = None) -> list[PropertyResult]:
    """Run every check; ``scale`` multiplies each check's default case count."""
    slack = slack or {}
    results = []
    for name, check in CHECKS.items():
        default = check.__defaults__[0]
        cases = max(1, int(round(default * scale)))
        results.append(check(cases=cases, seed=seed, slack=slack.get(name)))
    return results
