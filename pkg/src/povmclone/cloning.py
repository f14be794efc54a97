"""Cloning of measurement statistics: scenarios, merits and the no-cloning test.

An intruder couples the carrier qudit A to a probe T prepared in a fixed
state, applies a channel to the pair, and then both parties measure the same
POVM. Statistics are *broadcast* when both marginals of the joint outcome
table reproduce the original distribution, and *cloned* when the table
factorizes as p_j p_k. The cloning merit over a set of inputs is the largest
relative entropy H(t || p (x) p).
"""

from __future__ import annotations

import dataclasses
import logging
import math
from typing import Sequence

import numpy as np

from . import tolerances
from .errors import DimensionMismatch, InvalidParameter
from .measures import (
    classical_fidelity,
    classical_partial_fidelity,
    fidelity,
    fidelity_singular_values,
    relative_entropy,
)
from .numerics import dagger, kron
from .qtypes import (
    DensityOperator,
    JointDist,
    KrausChannel,
    Povm,
    ProbDist,
    StateLike,
    as_density,
    joint_probabilities,
    measure,
    state_factor,
)

log = logging.getLogger(__name__)

INTOLERANT = "intolerant"
INCONCLUSIVE = "inconclusive"


@dataclasses.dataclass(frozen=True, eq=False)
class CloningScenario:
    povm: Povm
    channel: KrausChannel
    inputs: tuple
    probe_init: DensityOperator | None = None

    def __post_init__(self):
        d = self.povm.dim
        probe = DensityOperator.basis(d, 0) if self.probe_init is None else as_density(self.probe_init)
        if probe.dim != d:
            raise DimensionMismatch(f"probe dimension {probe.dim} != POVM dimension {d}")
        if self.channel.din != d * d or self.channel.dout != d * d:
            raise DimensionMismatch(f"channel must map dimension {d * d} to itself")
        inputs = tuple(as_density(x) for x in self.inputs)
        if not inputs:
            raise InvalidParameter("the input set is empty")
        for i, rho in enumerate(inputs):
            if rho.dim != d:
                raise DimensionMismatch(f"input {i} has dimension {rho.dim}, expected {d}")
        object.__setattr__(self, "probe_init", probe)
        object.__setattr__(self, "inputs", inputs)


@dataclasses.dataclass(frozen=True, eq=False)
class InputRecord:
    p: ProbDist
    q: np.ndarray
    r: np.ndarray
    t: JointDist
    relent: float
    broadcast_residual: float
    output: DensityOperator

    @property
    def factorization_residual(self) -> float:
        return float(np.max(np.abs(self.t.probs - np.outer(self.p.probs, self.p.probs))))


@dataclasses.dataclass(frozen=True, eq=False)
class CloningReport:
    records: tuple
    merit: float
    worst_index: int

    @property
    def perfect(self) -> bool:
        return self.merit == 0.0


def check_broadcasting(t, p) -> float:
    """Largest deviation of either marginal of ``t`` from ``p``; zero means perfect broadcasting."""
    t = t.probs if isinstance(t, JointDist) else np.asarray(t, dtype=float)
    p = p.probs if isinstance(p, ProbDist) else np.asarray(p, dtype=float)
    if t.shape != (p.size, p.size):
        raise DimensionMismatch(f"joint table of shape {t.shape} does not match {p.size} outcomes")
    return float(max(np.max(np.abs(t.sum(axis=1) - p)), np.max(np.abs(t.sum(axis=0) - p))))


def run_scenario(s: CloningScenario) -> CloningReport:
    """Per-input statistics and the merit max_i H(t_i || p_i (x) p_i)."""
    records = []
    for rho in s.inputs:
        p = measure(s.povm, rho)
        omega = s.channel.apply(kron(rho.matrix, s.probe_init.matrix))
        omega = DensityOperator(0.5 * (omega + dagger(omega)))
        factor = s.channel.apply_factor(kron(state_factor(rho), state_factor(s.probe_init)))
        t = JointDist(joint_probabilities(s.povm, factor))
        pp = np.outer(p.probs, p.probs)
        records.append(
            InputRecord(
                p=p,
                q=t.marginal_first(),
                r=t.marginal_second(),
                t=t,
                relent=relative_entropy(t, pp),
                broadcast_residual=check_broadcasting(t, p),
                output=omega,
            )
        )
    relents = [rec.relent for rec in records]
    worst = int(np.argmax(relents))
    if math.isinf(relents[worst]):
        log.info("input %d violates the support of p (x) p; merit is +inf", worst)
    return CloningReport(tuple(records), relents[worst], worst)


@dataclasses.dataclass(frozen=True)
class NoCloningVerdict:
    verdict: str
    fidelity: float
    classical_fidelity: float
    degenerate: str | None = None
    exploratory: bool = False
    k: int = 0
    kappa: int = 0

    @property
    def classical_fidelity_sq(self) -> float:
        return self.classical_fidelity**2

    @property
    def margin(self) -> float:
        """F - Fcl^2; positive margins exclude perfect cloning."""
        return self.fidelity - self.classical_fidelity**2

    @property
    def intolerant(self) -> bool:
        return self.verdict == INTOLERANT


def _degeneracy(f: float) -> str | None:
    tol = tolerances.get().norm
    if f <= tol:
        return "F=0"
    if f >= 1.0 - tol:
        return "F=1"
    return None


def check_no_cloning_condition(povm: Povm, rho: StateLike, omega: StateLike) -> NoCloningVerdict:
    """Decide whether perfect cloning of ``povm`` over {rho, omega} is excluded.

    The pair is intolerant when Fcl^2 < F, with Fcl the classical fidelity
    of the two outcome distributions and F the quantum fidelity. Otherwise
    the necessary condition F <= Fcl^2 for perfect cloning is met and the
    result is inconclusive.
    """
    rho, omega = as_density(rho), as_density(omega)
    if rho.dim != povm.dim or omega.dim != povm.dim:
        raise DimensionMismatch("POVM and states must share one dimension")
    f = fidelity(rho, omega)
    fcl = classical_fidelity(measure(povm, rho), measure(povm, omega))
    degenerate = _degeneracy(f)
    if degenerate:
        log.warning("degenerate pair (%s): the no-cloning condition cannot hold", degenerate)
    verdict = INTOLERANT if fcl**2 < f - tolerances.get().strict else INCONCLUSIVE
    return NoCloningVerdict(verdict, f, fcl, degenerate)


def check_no_cloning_partial(povm: Povm, rho: StateLike, omega: StateLike, k: int) -> NoCloningVerdict:
    """Partial-fidelity variant for mixtures of unitaries (exploratory).

    Compares Fcl_k^2 (classical fidelity without its k largest terms) with
    F_kappa, kappa = (2n - k) k, n the number of outcomes. When kappa
    reaches the number of singular values F_kappa is an empty sum (zero).
    """
    rho, omega = as_density(rho), as_density(omega)
    if rho.dim != povm.dim or omega.dim != povm.dim:
        raise DimensionMismatch("POVM and states must share one dimension")
    n = povm.n
    if not 0 <= k < n:
        raise InvalidParameter(f"k must satisfy 0 <= k < {n}, got {k}")
    kappa = (2 * n - k) * k
    sv = fidelity_singular_values(rho, omega)
    f_kappa = float(min(1.0, sv[kappa:].sum()))
    fcl_k = classical_partial_fidelity(measure(povm, rho), measure(povm, omega), k)
    verdict = INTOLERANT if fcl_k**2 < f_kappa - tolerances.get().strict else INCONCLUSIVE
    return NoCloningVerdict(verdict, f_kappa, fcl_k, _degeneracy(f_kappa), exploratory=True, k=k, kappa=kappa)


# -- heuristic search for perfect cloners on qubits ---------------------------

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_XX, _YY, _ZZ = np.kron(_X, _X), np.kron(_Y, _Y), np.kron(_Z, _Z)
_I4 = np.eye(4, dtype=complex)


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]],
        dtype=complex,
    )


def _kron2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(4, 4)


def _core(c1: float, c2: float, c3: float) -> np.ndarray:
    core = _I4
    for c, pauli in ((c1, _XX), (c2, _YY), (c3, _ZZ)):
        core = core @ (math.cos(c) * _I4 + 1j * math.sin(c) * pauli)
    return core


def _factor(angles: np.ndarray, block: int) -> np.ndarray:
    a = angles[3 * block:3 * block + 3]
    return _core(*a) if block == 2 else _u3(*a)


def _assemble(f: list) -> np.ndarray:
    return _kron2(f[0], f[1]) @ f[2] @ _kron2(f[3], f[4])


def two_qubit_unitary(angles: Sequence[float]) -> np.ndarray:
    """Canonical (KAK) two-qubit unitary from 15 angles.

    (A1 (x) A2) exp(i(c1 XX + c2 YY + c3 ZZ)) (B1 (x) B2), each local factor
    a three-angle single-qubit rotation; covers SU(4) up to global phase.
    Angles are ordered A1, A2, (c1, c2, c3), B1, B2.
    """
    a = np.asarray(angles, dtype=float)
    if a.shape != (15,):
        raise InvalidParameter("expected 15 angles")
    return _assemble([_factor(a, b) for b in range(5)])


@dataclasses.dataclass(frozen=True, eq=False)
class CloneSearchResult:
    angles: np.ndarray
    unitary: np.ndarray
    merit: float
    surrogate: float
    best_restart: int
    restarts: int
    evaluations: int


def search_perfect_cloner(
    povm: Povm,
    rho: StateLike,
    omega: StateLike,
    restarts: int = 200,
    steps: int = 500,
    seed: int = 0xB92,
    probe: StateLike | None = None,
    stop_below: float = 1e-14,
) -> CloneSearchResult:
    """Heuristic minimization of the cloning merit over two-qubit unitaries.

    Each restart draws 15 random angles and runs an adaptive coordinate
    descent (at most ``steps`` sweeps) on the smooth surrogate
    sum_i (1 - Fcl(t_i, p_i (x) p_i)), which vanishes exactly when every
    input is cloned perfectly. The best unitary is then scored with the true
    merit. A restart stops early once the surrogate drops below
    ``stop_below``; the search stops after such a restart. Nothing here
    certifies global optimality.
    """
    if povm.dim != 2:
        raise InvalidParameter("the cloner search supports qubits only")
    if restarts < 1 or steps < 1:
        raise InvalidParameter("restarts and steps must be positive")
    inputs = [as_density(rho), as_density(omega)]
    probe_state = DensityOperator.basis(2, 0) if probe is None else as_density(probe)
    if any(x.dim != 2 for x in inputs) or probe_state.dim != 2:
        raise DimensionMismatch("states must be qubits")

    prod_ops = np.einsum("jab,kcd->jkacbd", povm.stacked, povm.stacked).reshape(povm.n**2, 4, 4)
    prepared = [kron(x.matrix, probe_state.matrix) for x in inputs]
    targets = []
    for x in inputs:
        p = measure(povm, x).probs
        targets.append(np.sqrt(np.outer(p, p).ravel()))
    evaluations = 0

    def tables(u: np.ndarray) -> list[np.ndarray]:
        out = []
        for x in prepared:
            w = u @ x @ dagger(u)
            out.append(np.clip(np.einsum("kab,ba->k", prod_ops, w).real, 0.0, None))
        return out

    def surrogate(factors: list) -> float:
        nonlocal evaluations
        evaluations += 1
        return float(sum(1.0 - np.sqrt(t) @ s for t, s in zip(tables(_assemble(factors)), targets)))

    rng = np.random.default_rng(seed)
    best_angles, best_val, best_restart = None, math.inf, -1
    run = 0
    for run in range(restarts):
        x = rng.uniform(-math.pi, math.pi, size=15)
        fac = [_factor(x, b) for b in range(5)]
        fx = surrogate(fac)
        h = np.full(15, 0.5)
        for _ in range(steps):
            improved = False
            for i in range(15):
                for sign in (1.0, -1.0):
                    trial = x.copy()
                    trial[i] += sign * h[i]
                    trial_fac = list(fac)
                    trial_fac[i // 3] = _factor(trial, i // 3)
                    ft = surrogate(trial_fac)
                    if ft < fx:
                        x, fx, fac = trial, ft, trial_fac
                        h[i] = min(2.0 * h[i], 1.0)
                        improved = True
                        break
                else:
                    h[i] *= 0.5
            if fx <= stop_below or (not improved and h.max() < 1e-12):
                break
        if fx < best_val:
            best_angles, best_val, best_restart = x, fx, run
        if best_val <= stop_below:
            break

    u = two_qubit_unitary(best_angles)
    ts = tables(u)
    merit = max(relative_entropy(t / t.sum(), s**2) for t, s in zip(ts, targets))
    return CloneSearchResult(best_angles, u, merit, best_val, best_restart, run + 1, evaluations)
