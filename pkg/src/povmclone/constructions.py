"""Explicit constructions.

* The B92 states and four-outcome POVM, with the intolerance survey over
  the four nonorthogonal pairs.
* Saturating states: for a PVM and a pure (or mixed) state, a partner state
  whose classical fidelity equals its quantum fidelity at any prescribed
  value f in [sqrt(min p_m), 1].
* A perfect cloner of the computational-basis PVM over the pair
  {|eta>, |phi>}, |phi> = sin(eta)|0> + e^{i phi} cos(eta)|1>.
"""

from __future__ import annotations

import dataclasses
import math
from typing import NamedTuple

import numpy as np

from . import tolerances
from .cloning import CloningReport, CloningScenario, NoCloningVerdict, check_no_cloning_condition, run_scenario
from .errors import InvalidParameter, OutOfRange, ZeroProbabilityBlock
from .numerics import dagger, gram_schmidt_complete, hermitian_eig, kron, partial_trace, unitarity_residual
from .qtypes import DensityOperator, KrausChannel, Povm, PureState, Pvm, StateLike, as_density, purify


def _check_eta(eta: float) -> float:
    margin = tolerances.get().angle
    if not (margin <= eta <= math.pi / 4 - margin):
        raise InvalidParameter(f"eta must lie in (0, pi/4), got {eta!r}")
    return float(eta)


# -- B92 ------------------------------------------------------------------------


class B92States(NamedTuple):
    eta_plus: PureState
    eta_minus: PureState
    theta_plus: PureState
    theta_minus: PureState


B92_LABELS = ("eta+", "eta-", "theta+", "theta-")


def b92_states(eta: float) -> B92States:
    eta = _check_eta(eta)
    c, s = math.cos(eta), math.sin(eta)
    return B92States(
        PureState(np.array([c, s], dtype=complex)),
        PureState(np.array([c, -s], dtype=complex)),
        PureState(np.array([-s, c], dtype=complex)),
        PureState(np.array([-s, -c], dtype=complex)),
    )


def b92_povm(eta: float) -> Povm:
    """{|eta+><eta+|/2, |theta+><theta+|/2, |eta-><eta-|/2, |theta-><theta-|/2}"""
    st = b92_states(eta)
    return Povm(tuple(0.5 * x.projector() for x in (st.eta_plus, st.theta_plus, st.eta_minus, st.theta_minus)))


@dataclasses.dataclass(frozen=True)
class SurveyRow:
    first: str
    second: str
    result: NoCloningVerdict


@dataclasses.dataclass(frozen=True)
class SurveyReport:
    eta: float
    rows: tuple

    @property
    def intolerant_count(self) -> int:
        return sum(row.result.intolerant for row in self.rows)

    @property
    def all_intolerant(self) -> bool:
        return self.intolerant_count == len(self.rows) == 4


def intolerance_survey(eta: float) -> SurveyReport:
    """No-cloning verdicts for every nonorthogonal pair of B92 states."""
    povm = b92_povm(eta)
    states = dict(zip(B92_LABELS, b92_states(eta)))
    rows = []
    for i, a in enumerate(B92_LABELS):
        for b in B92_LABELS[i + 1:]:
            if abs(states[a].overlap(states[b])) <= tolerances.get().norm:
                continue
            rows.append(SurveyRow(a, b, check_no_cloning_condition(povm, states[a], states[b])))
    return SurveyReport(eta, tuple(rows))


# -- saturating states ------------------------------------------------------------


@dataclasses.dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """psi = sum_m sum_n c[m][n] |e_mn> with c[m][n] >= 0.

    ``bases[m]`` holds the phase-aligned orthonormal vectors |e_mn> of the
    range of projector m as columns.
    """

    bases: tuple
    coefficients: tuple

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([float(np.sum(c**2)) for c in self.coefficients])


def block_decomposition(pvm: Pvm, psi: PureState) -> BlockDecomposition:
    if pvm.dim != psi.dim:
        raise InvalidParameter(f"PVM acts on dimension {pvm.dim}, state has dimension {psi.dim}")
    bases, coeffs = [], []
    for proj in pvm.elements:
        evals, vecs = hermitian_eig(proj)
        e = vecs[:, evals > 0.5]
        c = dagger(e) @ psi.amplitudes
        phases = np.where(np.abs(c) > 0, c / np.where(np.abs(c) > 0, np.abs(c), 1.0), 1.0)
        bases.append(e * phases)
        coeffs.append(np.abs(c))
    return BlockDecomposition(tuple(bases), tuple(coeffs))


def saturation_range(pvm: Pvm, psi: StateLike) -> tuple[float, float]:
    """[sqrt(min p_m), 1] over outcomes with p_m above the zero tolerance."""
    rho = as_density(psi)
    p = np.real(np.einsum("mab,ba->m", pvm.stacked, rho.matrix))
    active = p > tolerances.get().zero
    if not np.any(active):
        raise ZeroProbabilityBlock("state has no weight on any projector")
    return math.sqrt(float(p[active].min())), 1.0


def _block_weights(p: np.ndarray, f: float) -> np.ndarray:
    """Block weights gamma_m >= 0 with sum gamma^2 p = 1 and sum gamma p = f.

    Walks the segment from gamma = 1 (overlap 1) to the weight vector
    concentrated on the least likely block (overlap sqrt(min p)), and
    bisects for the requested overlap.
    """
    active = p > tolerances.get().zero
    ones = np.where(active, 1.0, 0.0)
    m0 = int(np.argmin(np.where(active, p, np.inf)))
    floor_w = np.zeros_like(p)
    floor_w[m0] = 1.0 / math.sqrt(p[m0])

    def weights(t: float) -> np.ndarray:
        g = (1.0 - t) * ones + t * floor_w
        return g / math.sqrt(float(np.sum(g * g * p)))

    def overlap(t: float) -> float:
        return float(np.sum(weights(t) * p))

    lo, hi = 0.0, 1.0
    slack = 8 * np.finfo(float).eps  # endpoint overlaps carry rounding of their own
    if f >= overlap(0.0) - slack:
        return weights(0.0)
    if f <= overlap(1.0) + slack:
        return weights(1.0)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if overlap(mid) > f:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    return weights(0.5 * (lo + hi))


def construct_saturating_pure_state(pvm: Pvm, psi: PureState, f: float) -> PureState:
    """A pure state phi with |<psi|phi>| == Fcl(p, q) == f.

    Within each block the coefficients of phi are a nonnegative multiple
    gamma_m of those of psi, which saturates Cauchy-Schwarz block by block.

    Raises:
        OutOfRange: if f lies outside :func:`saturation_range`.
    """
    blocks = block_decomposition(pvm, psi)
    lo, hi = saturation_range(pvm, psi)
    slack = 1e-12
    if not (lo - slack <= f <= hi + slack):
        raise OutOfRange(f"f={f!r} outside [{lo!r}, 1]")
    f = min(max(f, lo), hi)
    gamma = _block_weights(blocks.probabilities, f)
    phi = np.zeros(pvm.dim, dtype=complex)
    for g, e, c in zip(gamma, blocks.bases, blocks.coefficients):
        if g > 0:
            phi += e @ (g * c)
    return PureState.normalized(phi)


def construct_saturating_mixed_state(pvm: Pvm, rho: StateLike, f: float) -> DensityOperator:
    """A state omega with Fcl(p, q) == F(rho, omega) == f.

    Purifies rho, applies the pure-state construction to the lifted
    measurement {P_m (x) 1}, and traces out the ancilla.
    """
    rho = as_density(rho)
    d = rho.dim
    psi = purify(rho)
    phi = construct_saturating_pure_state(pvm.tensor_identity(d), psi, f)
    omega = partial_trace(phi.projector(), (d, d), "A")
    return DensityOperator(0.5 * (omega + dagger(omega)))


# -- perfect cloner --------------------------------------------------------------


def phase_state(eta: float, phi: float) -> PureState:
    """sin(eta)|0> + e^{i phi} cos(eta)|1>"""
    return PureState(np.array([math.sin(eta), np.exp(1j * phi) * math.cos(eta)], dtype=complex))


def _coefficients(eta: float, phi: float) -> tuple[complex, complex]:
    """(alpha, beta) with |phi> = alpha|eta> + beta|theta>."""
    alpha = np.exp(0.5j * phi) * math.cos(phi / 2) * math.sin(2 * eta)
    beta = -math.sin(eta) ** 2 + np.exp(1j * phi) * math.cos(eta) ** 2
    return complex(alpha), complex(beta)


@dataclasses.dataclass(frozen=True)
class CloneExampleParams:
    eta: float
    phi: float
    phi1: float
    phi2: float
    alpha: complex
    beta: complex
    alpha1: complex
    beta1: complex
    alpha2: complex
    beta2: complex
    u: complex
    v: complex
    a: float

    @property
    def symmetric(self) -> bool:
        return self.phi1 == self.phi2

    def constrained_column(self) -> np.ndarray:
        """U|theta eta> in the {eta eta, eta theta, theta eta, theta theta} basis."""
        return np.array(
            [0.0, self.alpha1 * self.beta2, self.beta1 * self.alpha2, self.beta1 * self.beta2],
            dtype=complex,
        ) / self.beta


def _params(eta: float, phi: float, phi1: float, phi2: float) -> CloneExampleParams:
    alpha, beta = _coefficients(eta, phi)
    alpha1, beta1 = _coefficients(eta, phi1)
    alpha2, beta2 = _coefficients(eta, phi2)
    u = alpha1 * beta2 / beta
    v = beta1 * beta2 / beta
    a = 1.0 / math.sqrt(abs(u) ** 2 + abs(v) ** 2)
    return CloneExampleParams(eta, phi, phi1, phi2, alpha, beta, alpha1, beta1, alpha2, beta2, u, v, a)


def solve_clone_angles(eta: float) -> CloneExampleParams:
    """Symmetric solution phi' = phi'' = arccos(sin 2eta / (2 - sin 2eta)), phi = 2 phi'."""
    eta = _check_eta(eta)
    s2 = math.sin(2 * eta)
    phi1 = math.acos(s2 / (2 - s2))
    return _params(eta, 2 * phi1, phi1, phi1)


def max_tolerable_cos(eta: float) -> float:
    """Largest |cos(phi/2)| for which a product-output cloner of the pair exists."""
    s2 = math.sin(2 * _check_eta(eta))
    return s2 / (2 - s2)


def solve_clone_angles_general(eta: float, phi: float) -> CloneExampleParams:
    """Output phases (phi', phi'') for a given input phase ``phi``.

    Overlap preservation reads (1 + e^{i phi}) / 2 = sin(2eta) (1 + e^{i phi'})(1 + e^{i phi''}) / 4.
    Writing s = (phi' + phi'')/2 and d = (phi' - phi'')/2 it becomes
    s = phi/2 and cos d = cos(phi/2) (2 - sin 2eta) / sin 2eta, solvable iff
    |cos(phi/2)| <= sin 2eta / (2 - sin 2eta); equality gives phi' = phi''.
    """
    eta = _check_eta(eta)
    s2 = math.sin(2 * eta)
    cos_d = math.cos(phi / 2) * (2 - s2) / s2
    if abs(cos_d) > 1 + 1e-12:
        raise InvalidParameter(
            f"no product-output cloner for phi={phi!r}: |cos(phi/2)| exceeds {s2 / (2 - s2)!r}"
        )
    d = math.acos(max(-1.0, min(1.0, cos_d)))
    return _params(eta, phi, phi / 2 + d, phi / 2 - d)


def eta_theta_basis(eta: float) -> np.ndarray:
    """Columns |eta>, |theta> in the computational basis."""
    c, s = math.cos(eta), math.sin(eta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def build_cloning_unitary(params: CloneExampleParams) -> np.ndarray:
    """4x4 cloner in the {eta eta, eta theta, theta eta, theta theta} basis.

    Columns 0 and 2 are fixed by U|eta eta> = |eta eta> and
    U|phi eta> = |phi'>|phi''>; the remaining two come from Gram-Schmidt on
    the standard vectors e_2, e_3 and are placed so that the result lines up
    with the closed-form matrix of :func:`published_cloning_unitary`.
    """
    e0 = np.array([1, 0, 0, 0], dtype=complex)
    col = params.constrained_column()
    q = gram_schmidt_complete(np.column_stack([e0, col]), candidates=[2, 3])
    # q = [e0, col, GS(e2), GS(e3)]
    u = np.column_stack([q[:, 0], q[:, 3], q[:, 1], q[:, 2]])
    res = unitarity_residual(u)
    if res > tolerances.get().unit:
        raise InvalidParameter(f"cloner is not unitary (residual {res:.3e})")
    return u


def published_cloning_unitary(params: CloneExampleParams) -> np.ndarray:
    """Closed-form cloner for the symmetric case, entry by entry."""
    u, v, a = params.u, params.v, params.a
    au = abs(u)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, a * u * np.conj(v) / au, u, a * au**2],
            [0, 0, u, -1 / a],
            [0, -a * au, v, a * v * np.conj(u)],
        ],
        dtype=complex,
    )


def column_phase_deviation(x: np.ndarray, y: np.ndarray) -> float:
    """max_j min_phase |x_j - e^{i t} y_j| over columns."""
    worst = 0.0
    for j in range(x.shape[1]):
        ip = np.vdot(y[:, j], x[:, j])
        phase = ip / abs(ip) if abs(ip) > 0 else 1.0
        worst = max(worst, float(np.max(np.abs(x[:, j] - phase * y[:, j]))))
    return worst


def to_computational(u_eta: np.ndarray, eta: float) -> np.ndarray:
    b = kron(eta_theta_basis(eta), eta_theta_basis(eta))
    return b @ u_eta @ dagger(b)


@dataclasses.dataclass(frozen=True, eq=False)
class CloneDemo:
    params: CloneExampleParams
    unitary: np.ndarray  # eta/theta basis
    unitary_computational: np.ndarray
    unitarity_residual: float
    fixed_point_residual: float  # |U|eta eta> - |eta eta>|
    cloning_residual: float  # |U|phi eta> - |phi'>|phi''>|
    overlap_residual: float  # |<eta|phi> - <eta|phi'><eta|phi''>|
    published_deviation: float | None
    report: CloningReport

    @property
    def verified(self) -> bool:
        return self.report.merit <= 1e-9


def clone_scenario(params: CloneExampleParams, u_comp: np.ndarray) -> CloningScenario:
    eta = params.eta
    eta_state = PureState(eta_theta_basis(eta)[:, 0].copy())
    return CloningScenario(
        povm=Pvm.computational(2),
        channel=KrausChannel.unitary(u_comp),
        inputs=(eta_state, phase_state(eta, params.phi)),
        probe_init=eta_state.density(),
    )


def clone_demo(eta: float, phi: float | None = None) -> CloneDemo:
    """Build the cloner for ``eta`` (and optionally a non-default ``phi``) and verify it end to end."""
    params = solve_clone_angles(eta) if phi is None else solve_clone_angles_general(eta, phi)
    u = build_cloning_unitary(params)
    u_comp = to_computational(u, params.eta)
    eta_vec = eta_theta_basis(params.eta)[:, 0]
    eta_eta = np.kron(eta_vec, eta_vec)
    phi_vec = phase_state(params.eta, params.phi).amplitudes
    target = np.kron(phase_state(params.eta, params.phi1).amplitudes, phase_state(params.eta, params.phi2).amplitudes)
    ov = np.vdot(eta_vec, phi_vec)
    ov1 = np.vdot(eta_vec, phase_state(params.eta, params.phi1).amplitudes)
    ov2 = np.vdot(eta_vec, phase_state(params.eta, params.phi2).amplitudes)
    published = None
    if params.symmetric:
        published = column_phase_deviation(u, published_cloning_unitary(params))
    return CloneDemo(
        params=params,
        unitary=u,
        unitary_computational=u_comp,
        unitarity_residual=unitarity_residual(u_comp),
        fixed_point_residual=float(np.linalg.norm(u_comp @ eta_eta - eta_eta)),
        cloning_residual=float(np.linalg.norm(u_comp @ np.kron(phi_vec, eta_vec) - target)),
        overlap_residual=float(abs(ov - ov1 * ov2)),
        published_deviation=published,
        report=run_scenario(clone_scenario(params, u_comp)),
    )


def verify_perfect_cloning(eta: float) -> CloningReport:
    """Cloning report of the constructed cloner over {|eta>, |phi>}."""
    return clone_demo(eta).report
