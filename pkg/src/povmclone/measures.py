"""Fidelities, relative entropy, and the classical/quantum equality machinery."""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import tolerances
from .errors import DimensionMismatch, InvalidParameter, LengthMismatch, SingularState
from .numerics import dagger, hermitian_eig, inv_sqrt_psd, psd_eig, sqrt_psd
from .qtypes import DensityOperator, JointDist, Povm, ProbDist, Pvm, StateLike, as_density, outcome_probabilities


def _pair(rho: StateLike, omega: StateLike) -> tuple[DensityOperator, DensityOperator]:
    rho, omega = as_density(rho), as_density(omega)
    if rho.dim != omega.dim:
        raise DimensionMismatch(f"states have dimensions {rho.dim} and {omega.dim}")
    return rho, omega


def _probs(p) -> np.ndarray:
    if isinstance(p, (ProbDist, JointDist)):
        return p.probs
    return np.asarray(p, dtype=float)


def fidelity_singular_values(rho: StateLike, omega: StateLike) -> np.ndarray:
    """Singular values of sqrt(rho) sqrt(omega), descending.

    Computed as square roots of the eigenvalues of the Hermitian PSD
    operator sqrt(rho) omega sqrt(rho).
    """
    rho, omega = _pair(rho, omega)
    s = rho.sqrt
    inner = s @ omega.matrix @ s
    evals, _ = psd_eig(0.5 * (inner + dagger(inner)))
    return np.sqrt(evals)


def fidelity(rho: StateLike, omega: StateLike) -> float:
    """Uhlmann fidelity tr|sqrt(rho) sqrt(omega)| (not squared)."""
    return float(min(1.0, fidelity_singular_values(rho, omega).sum()))


def partial_fidelity(rho: StateLike, omega: StateLike, k: int) -> float:
    """Sum of all but the ``k`` largest singular values of sqrt(rho) sqrt(omega)."""
    rho, omega = _pair(rho, omega)
    if not 0 <= k < rho.dim:
        raise InvalidParameter(f"k must satisfy 0 <= k < {rho.dim}, got {k}")
    sv = fidelity_singular_values(rho, omega)
    return float(min(1.0, sv[k:].sum()))


def classical_fidelity(p, q) -> float:
    """Bhattacharyya coefficient sum_j sqrt(p_j q_j); works for vectors and joint tables."""
    p, q = _probs(p), _probs(q)
    if p.shape != q.shape:
        raise LengthMismatch(f"distributions have shapes {p.shape} and {q.shape}")
    return float(min(1.0, np.sqrt(np.clip(p, 0, None) * np.clip(q, 0, None)).sum()))


def classical_partial_fidelity(p, q, k: int) -> float:
    """Sum of the terms sqrt(p_j q_j) with the ``k`` largest removed."""
    p, q = _probs(p).ravel(), _probs(q).ravel()
    if p.shape != q.shape:
        raise LengthMismatch(f"distributions have shapes {p.shape} and {q.shape}")
    if not 0 <= k < p.size:
        raise InvalidParameter(f"k must satisfy 0 <= k < {p.size}, got {k}")
    terms = np.sort(np.sqrt(np.clip(p, 0, None) * np.clip(q, 0, None)))[::-1]
    return float(terms[k:].sum())


def relative_entropy(p, q) -> float:
    """H(p||q) = sum p ln(p/q) in nats.

    Terms with p_j == 0 contribute nothing. Returns ``math.inf`` when some
    p_j > zero-tolerance sits on q_j <= zero-tolerance.
    """
    p, q = _probs(p).ravel(), _probs(q).ravel()
    if p.shape != q.shape:
        raise LengthMismatch(f"distributions have shapes {p.shape} and {q.shape}")
    tz = tolerances.get().zero
    support = p > tz
    if np.any(support & (q <= tz)):
        return math.inf
    ps, qs = p[support], q[support]
    return float(max(0.0, np.sum(ps * np.log(ps / qs))))


def optimal_fidelity_povm(rho: StateLike, omega: StateLike, regularization: float = 1e-8) -> Pvm:
    """Projective measurement whose classical fidelity equals the quantum one.

    Uses the eigenbasis of rho^{-1/2} sqrt(sqrt(rho) omega sqrt(rho)) rho^{-1/2},
    with a pseudo-inverse on singular states, trying both orderings of the
    pair. If neither meets the target, rho is mixed with a small multiple of
    the identity as a last resort.

    Raises:
        SingularState: if no candidate matches the quantum fidelity within 1e-8.
    """
    rho, omega = _pair(rho, omega)
    target = fidelity(rho, omega)
    d = rho.dim
    floor = 1e-10

    def candidate(a: np.ndarray, b: np.ndarray) -> Pvm:
        sa = sqrt_psd(a)
        inner = sa @ b @ sa
        mid = sqrt_psd(0.5 * (inner + dagger(inner)))
        a_inv = inv_sqrt_psd(a, floor=floor)
        op = a_inv @ mid @ a_inv
        _, vecs = hermitian_eig(0.5 * (op + dagger(op)))
        return Pvm.from_basis(vecs)

    def gap(pvm: Pvm) -> float:
        achieved = classical_fidelity(outcome_probabilities(pvm, rho.sqrt), outcome_probabilities(pvm, omega.sqrt))
        return abs(achieved - target)

    best, best_gap = None, math.inf
    for a, b in ((rho.matrix, omega.matrix), (omega.matrix, rho.matrix)):
        pvm = candidate(a, b)
        g = gap(pvm)
        if g < best_gap:
            best, best_gap = pvm, g
    if best_gap > 1e-8:
        eps = regularization
        pvm = candidate((1 - eps) * rho.matrix + eps * np.eye(d) / d, omega.matrix)
        g = gap(pvm)
        if g < best_gap:
            best, best_gap = pvm, g
    if best_gap > 1e-8:
        raise SingularState(f"optimal measurement misses the fidelity by {best_gap:.3e}")
    return best


@dataclasses.dataclass(frozen=True)
class EqualityWitness:
    """Per-outcome proportionality constants z_m and fit residuals.

    ``z[m]`` is ``None`` where both sides vanish (or where no scalar can fit,
    in which case ``residuals[m]`` is the norm of the unmatched side).
    """

    z: tuple
    residuals: tuple
    max_residual: float
    tolerance: float
    aligned: bool

    @property
    def holds(self) -> bool:
        return self.max_residual <= self.tolerance

    def __bool__(self) -> bool:
        return self.holds


def _polar_isometry(x: np.ndarray, floor: float = 1e-20) -> np.ndarray:
    """Partial isometry V of the polar decomposition x = V |x|, i.e. x |x|^+."""
    gram = dagger(x) @ x
    return x @ inv_sqrt_psd(0.5 * (gram + dagger(gram)), floor=floor)


def check_equality_condition(povm: Povm, rho: StateLike, omega: StateLike, aligned: bool = False) -> EqualityWitness:
    """Fit z_m M_m^{1/2} rho^{1/2} = M_m^{1/2} omega^{1/2} outcome by outcome.

    With ``aligned=True`` the right-hand side is multiplied by the polar
    isometry V of sqrt(omega) sqrt(rho) = V |sqrt(omega) sqrt(rho)|, which
    extends the test to noncommuting pairs: it then certifies
    classical fidelity == quantum fidelity for any pair. Without it the
    relation is the commuting-state form and, for noncommuting pairs, only a
    sufficient-condition probe.
    """
    rho, omega = _pair(rho, omega)
    if povm.dim != rho.dim:
        raise DimensionMismatch(f"POVM acts on dimension {povm.dim}, states on {rho.dim}")
    tol = tolerances.get()
    sr, so = rho.sqrt, omega.sqrt
    if aligned:
        so = so @ _polar_isometry(so @ sr)
    vanish = 1e-12
    zs, residuals = [], []
    for root in povm.sqrt_elements:
        a = root @ sr
        b = root @ so
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        if na <= vanish:
            zs.append(None)
            residuals.append(float(nb) if nb > vanish else 0.0)
            continue
        z = complex(np.vdot(a, b) / na**2)
        zs.append(z)
        residuals.append(float(np.linalg.norm(z * a - b)))
    return EqualityWitness(tuple(zs), tuple(residuals), max(residuals), tol.eq, aligned)


@dataclasses.dataclass(frozen=True)
class TransitivityReport:
    applicable: bool
    holds: bool
    third_pair: EqualityWitness | None
    product_mismatch: float | None

    def __bool__(self) -> bool:
        return self.holds


def check_transitivity(povm: Povm, rho: StateLike, omega: StateLike, varrho: StateLike, aligned: bool = False) -> TransitivityReport:
    """If (rho, omega) and (omega, varrho) satisfy the equality condition, check (rho, varrho).

    The third pair is verified directly; ``product_mismatch`` compares its
    fitted constants with the products xi_m z_m of the first two fits.
    When the premise fails the result is vacuously true and flagged as not
    applicable.
    """
    first = check_equality_condition(povm, rho, omega, aligned)
    second = check_equality_condition(povm, omega, varrho, aligned)
    if not (first.holds and second.holds):
        return TransitivityReport(False, True, None, None)
    third = check_equality_condition(povm, rho, varrho, aligned)
    gaps = [
        abs(z * xi - w)
        for z, xi, w in zip(first.z, second.z, third.z)
        if z is not None and xi is not None and w is not None
    ]
    return TransitivityReport(True, third.holds, third, max(gaps) if gaps else 0.0)
