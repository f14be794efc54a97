"""Validated quantum objects: states, measurements, channels, distributions.

All containers are frozen dataclasses holding read-only numpy arrays. The
constructors check the physical constraints (Hermiticity, positivity, unit
trace, completeness, trace preservation) against the active tolerances and
raise a :class:`~povmclone.errors.PovmCloneError` subclass otherwise.
"""

from __future__ import annotations

import dataclasses
import functools
from typing import Union

import numpy as np

from . import tolerances
from .errors import DimensionMismatch, InvalidParameter, NotHermitian, NotNormalized, NotPsd
from .numerics import (
    as_matrix,
    dagger,
    hermitian_asymmetry,
    hermitian_eig,
    inv_sqrt_psd,
    kron,
    partial_trace,
    psd_eig,
    sqrt_psd,
)

SeedLike = Union[int, np.random.Generator, None]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def _check_psd(m: np.ndarray, what: str) -> None:
    tol = tolerances.get()
    asym = hermitian_asymmetry(m)
    if asym > tol.herm:
        raise NotHermitian(asym)
    evals, _ = hermitian_eig(m)
    if evals.size and evals[-1] < -tol.psd:
        err = NotPsd(float(evals[-1]))
        err.args = (f"{what}: {err.args[0]}",)
        raise err


@dataclasses.dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise DimensionMismatch(f"amplitudes must be a non-empty vector, got shape {amps.shape}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > tolerances.get().norm:
            raise NotNormalized(f"state vector has norm {norm!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise InvalidParameter("cannot normalize the zero vector")
        return cls(amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, np.conj(self.amplitudes))

    def density(self) -> "DensityOperator":
        return DensityOperator(self.projector())

    def overlap(self, other: "PureState") -> complex:
        """<self|other>"""
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclasses.dataclass(frozen=True, eq=False)
class DensityOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DimensionMismatch(f"density operator must be square, got shape {m.shape}")
        tr = np.trace(m)
        if abs(tr - 1.0) > tolerances.get().norm:
            raise NotNormalized(f"trace is {tr!r}, expected 1")
        _check_psd(m, "density operator")
        object.__setattr__(self, "matrix", _frozen(0.5 * (m + dagger(m))))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @functools.cached_property
    def sqrt(self) -> np.ndarray:
        return sqrt_psd(self.matrix)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def tensor(self, other: "DensityOperator") -> "DensityOperator":
        return DensityOperator(kron(self.matrix, other.matrix))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        return cls(np.eye(dim, dtype=complex) / dim)

    @classmethod
    def basis(cls, dim: int, index: int) -> "DensityOperator":
        m = np.zeros((dim, dim), dtype=complex)
        m[index, index] = 1.0
        return cls(m)


StateLike = Union[DensityOperator, PureState, np.ndarray]


def as_density(x: StateLike) -> DensityOperator:
    """Coerce a density operator, pure state, ket vector or matrix."""
    if isinstance(x, DensityOperator):
        return x
    if isinstance(x, PureState):
        return x.density()
    a = np.asarray(x, dtype=complex)
    if a.ndim == 1:
        return PureState(a).density()
    return DensityOperator(a)


@dataclasses.dataclass(frozen=True, eq=False)
class Povm:
    elements: tuple

    def __post_init__(self):
        elems = tuple(as_matrix(e) for e in self.elements)
        if not elems:
            raise InvalidParameter("a POVM needs at least one element")
        d = elems[0].shape[0]
        for i, e in enumerate(elems):
            if e.shape != (d, d):
                raise DimensionMismatch(f"element {i} has shape {e.shape}, expected {(d, d)}")
            _check_psd(e, f"POVM element {i}")
        total = sum(elems)
        dev = float(np.max(np.abs(total - np.eye(d))))
        if dev > tolerances.get().norm:
            raise NotNormalized(f"POVM elements sum to identity only within {dev:.3e}")
        object.__setattr__(self, "elements", tuple(_frozen(0.5 * (e + dagger(e))) for e in elems))

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @functools.cached_property
    def sqrt_elements(self) -> tuple:
        return tuple(sqrt_psd(e) for e in self.elements)

    @functools.cached_property
    def stacked(self) -> np.ndarray:
        return np.stack(self.elements)

    @functools.cached_property
    def root_stacked(self) -> np.ndarray:
        return np.stack(self.sqrt_elements)

    def tensor_identity(self, dim: int) -> "Povm":
        """The lifted measurement {M_m (x) 1_dim}."""
        cls = Pvm if isinstance(self, Pvm) else Povm
        return cls(tuple(kron(e, np.eye(dim)) for e in self.elements))


@dataclasses.dataclass(frozen=True, eq=False)
class Pvm(Povm):
    """A POVM of mutually orthogonal projectors."""

    def __post_init__(self):
        super().__post_init__()
        tol = tolerances.get().recon
        for i, p in enumerate(self.elements):
            if np.max(np.abs(p @ p - p)) > tol:
                raise InvalidParameter(f"element {i} is not a projector")
            for j in range(i + 1, self.n):
                if np.max(np.abs(p @ self.elements[j])) > tol:
                    raise InvalidParameter(f"projectors {i} and {j} are not orthogonal")

    @property
    def ranks(self) -> list[int]:
        return [int(round(float(np.real(np.trace(p))))) for p in self.elements]

    @classmethod
    def computational(cls, dim: int) -> "Pvm":
        return cls(tuple(np.diag(np.eye(dim)[i]).astype(complex) for i in range(dim)))

    @classmethod
    def from_basis(cls, vectors, groups=None) -> "Pvm":
        """Projectors onto groups of the orthonormal columns of ``vectors``.

        ``groups`` is a list of column-index lists; default is one rank-1
        projector per column.
        """
        v = as_matrix(vectors)
        if groups is None:
            groups = [[i] for i in range(v.shape[1])]
        return cls(tuple(v[:, g] @ dagger(v[:, g]) for g in groups))


@dataclasses.dataclass(frozen=True, eq=False)
class KrausChannel:
    kraus_ops: tuple

    def __post_init__(self):
        ops = tuple(as_matrix(k) for k in self.kraus_ops)
        if not ops:
            raise InvalidParameter("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        for i, k in enumerate(ops):
            if k.shape != shape:
                raise DimensionMismatch(f"Kraus operator {i} has shape {k.shape}, expected {shape}")
        total = sum(dagger(k) @ k for k in ops)
        dev = float(np.max(np.abs(total - np.eye(shape[1]))))
        if dev > tolerances.get().norm:
            raise NotNormalized(f"channel is not trace preserving (deviation {dev:.3e})")
        object.__setattr__(self, "kraus_ops", tuple(_frozen(k) for k in ops))

    @property
    def din(self) -> int:
        return self.kraus_ops[0].shape[1]

    @property
    def dout(self) -> int:
        return self.kraus_ops[0].shape[0]

    @classmethod
    def unitary(cls, u) -> "KrausChannel":
        return cls((as_matrix(u),))

    @classmethod
    def identity(cls, dim: int) -> "KrausChannel":
        return cls((np.eye(dim, dtype=complex),))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Unvalidated sum_i K_i rho K_i^dagger on a raw matrix."""
        return sum(k @ rho @ dagger(k) for k in self.kraus_ops)

    def apply_factor(self, factor: np.ndarray) -> np.ndarray:
        """A factor of the output: [K_1 R, K_2 R, ...] for an input R R^dagger."""
        return np.hstack([k @ factor for k in self.kraus_ops])


def _clean_probs(p: np.ndarray) -> np.ndarray:
    tol = tolerances.get()
    if not np.all(np.isfinite(p)):
        raise InvalidParameter("probabilities must be finite")
    if p.size and p.min() < -tol.psd:
        raise NotNormalized(f"negative probability {p.min()!r}")
    p = np.clip(p, 0.0, None)
    total = float(p.sum())
    if abs(total - 1.0) > tol.norm:
        raise NotNormalized(f"probabilities sum to {total!r}")
    return p / total


@dataclasses.dataclass(frozen=True, eq=False)
class ProbDist:
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise DimensionMismatch(f"distribution must be a non-empty vector, got shape {p.shape}")
        object.__setattr__(self, "probs", _frozen(_clean_probs(p)))

    def __len__(self) -> int:
        return self.probs.size

    def outer(self, other: "ProbDist | None" = None) -> "JointDist":
        other = self if other is None else other
        return JointDist(np.outer(self.probs, other.probs))


@dataclasses.dataclass(frozen=True, eq=False)
class JointDist:
    probs: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.probs, dtype=float)
        if t.ndim != 2 or t.size == 0:
            raise DimensionMismatch(f"joint distribution must be a non-empty matrix, got shape {t.shape}")
        object.__setattr__(self, "probs", _frozen(_clean_probs(t)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.probs.shape

    def marginal_first(self) -> np.ndarray:
        """q_j = sum_k t_jk"""
        return self.probs.sum(axis=1)

    def marginal_second(self) -> np.ndarray:
        """r_k = sum_j t_jk"""
        return self.probs.sum(axis=0)


# -- operations ---------------------------------------------------------------


def _drop_rounding(values: np.ndarray, dim: int) -> np.ndarray:
    # Squared norms of exact zeros come out at (eps*dim)^2; a genuine value
    # that small changes a classical fidelity by ~1e-15 at most.
    floor = (4 * dim * np.finfo(float).eps) ** 2
    return np.where(values <= floor, 0.0, values)


def state_factor(x: StateLike) -> np.ndarray:
    """R with rho = R R^dagger: the ket itself for pure states, else sqrt(rho)."""
    if isinstance(x, PureState):
        return x.amplitudes[:, None]
    a = x if isinstance(x, DensityOperator) else np.asarray(x, dtype=complex)
    if isinstance(a, np.ndarray) and a.ndim == 1:
        return PureState(a).amplitudes[:, None]
    return as_density(a).sqrt


def outcome_probabilities(povm: Povm, factor: np.ndarray) -> np.ndarray:
    """tr(M_m rho) = ||sqrt(M_m) R||_F^2 for rho = R R^dagger, without normalization checks.

    The squared-norm form keeps small probabilities accurate to relative
    precision, which the square roots in classical fidelities need.
    """
    x = np.einsum("mab,br->mar", povm.root_stacked, factor)
    return _drop_rounding(np.einsum("mar,mar->m", x, x.conj()).real, povm.dim)


def measure(povm: Povm, rho: StateLike) -> ProbDist:
    """Outcome distribution p_m = tr(M_m rho)."""
    factor = state_factor(rho)
    if factor.shape[0] != povm.dim:
        raise DimensionMismatch(f"POVM acts on dimension {povm.dim}, state has dimension {factor.shape[0]}")
    return ProbDist(outcome_probabilities(povm, factor))


def apply_channel(ch: KrausChannel, rho: StateLike) -> DensityOperator:
    rho = as_density(rho)
    if rho.dim != ch.din:
        raise DimensionMismatch(f"channel input dimension {ch.din} != state dimension {rho.dim}")
    return DensityOperator(ch.apply(rho.matrix))


def joint_probabilities(povm: Povm, factor: np.ndarray) -> np.ndarray:
    """t_jk = ||(sqrt(M_j) (x) sqrt(M_k)) R||_F^2 for omega = R R^dagger on d^2."""
    d = povm.dim
    r = factor.reshape(d, d, -1)
    x = np.einsum("jab,kcd,bdr->jkacr", povm.root_stacked, povm.root_stacked, r)
    return _drop_rounding(np.einsum("jkacr,jkacr->jk", x, x.conj()).real, d * d)


def joint_distribution(povm: Povm, omega: StateLike) -> JointDist:
    """Joint outcome distribution of the product measurement on a bipartite state."""
    factor = state_factor(omega)
    d = povm.dim
    if factor.shape[0] != d * d:
        raise DimensionMismatch(f"joint measurement acts on dimension {d * d}, state has dimension {factor.shape[0]}")
    return JointDist(joint_probabilities(povm, factor))


def reduced_states(omega: StateLike, dims: tuple[int, int]) -> tuple[DensityOperator, DensityOperator]:
    """(tr_B omega, tr_A omega)"""
    m = as_density(omega).matrix
    return DensityOperator(partial_trace(m, dims, "A")), DensityOperator(partial_trace(m, dims, "B"))


def purify(rho: StateLike) -> PureState:
    """Canonical purification sum_j sqrt(lambda_j) |v_j> (x) |j>.

    Eigenvalues are taken in descending order and the ancilla uses the
    standard basis, which fixes the otherwise free local-unitary gauge.
    """
    rho = as_density(rho)
    evals, vecs = psd_eig(rho.matrix)
    weights = np.sqrt(evals)
    d = rho.dim
    # Psi[a, j] = sqrt(lambda_j) v_j[a]; flattening row-major gives the A (x) B ordering.
    psi = (vecs * weights).reshape(d * d)
    return PureState.normalized(psi)


# -- random generators --------------------------------------------------------


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_unitary(dim: int, seed: SeedLike = None) -> np.ndarray:
    """Haar-random unitary (QR of a Ginibre matrix with the phase fix)."""
    if dim < 1:
        raise InvalidParameter("dim must be >= 1")
    rng = _rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, dim, dim))
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_pure_state(dim: int, seed: SeedLike = None) -> PureState:
    rng = _rng(seed)
    return PureState.normalized(_ginibre(rng, dim, 1)[:, 0])


def random_state(dim: int, rank: int | None = None, seed: SeedLike = None, spectrum=None) -> DensityOperator:
    """Random density operator of the given rank.

    The spectrum is drawn uniformly from the simplex (or taken from
    ``spectrum``) and rotated by a Haar-random unitary.
    """
    rank = dim if rank is None else rank
    if dim < 1 or not 1 <= rank <= dim:
        raise InvalidParameter(f"need 1 <= rank <= dim, got rank={rank}, dim={dim}")
    rng = _rng(seed)
    if spectrum is None:
        spectrum = rng.dirichlet(np.ones(rank)) if rank > 1 else np.ones(1)
    spectrum = np.asarray(spectrum, dtype=float)
    if spectrum.size != rank:
        raise InvalidParameter("spectrum length must equal rank")
    u = random_unitary(dim, rng)[:, :rank]
    m = (u * spectrum) @ dagger(u)
    return DensityOperator(0.5 * (m + dagger(m)))


def random_povm(dim: int, n: int, seed: SeedLike = None) -> Povm:
    """Random n-outcome POVM: S^{-1/2} A_m^dagger A_m S^{-1/2} with S = sum A_m^dagger A_m."""
    if dim < 1 or n < 1:
        raise InvalidParameter("dim and n must be >= 1")
    rng = _rng(seed)
    pieces = [dagger(a) @ a for a in (_ginibre(rng, dim, dim) for _ in range(n))]
    s_inv = inv_sqrt_psd(sum(pieces))
    elems = [s_inv @ p @ s_inv for p in pieces]
    return Povm(tuple(0.5 * (e + dagger(e)) for e in elems))


def random_pvm(dim: int, ranks=None, seed: SeedLike = None) -> Pvm:
    ranks = [1] * dim if ranks is None else list(ranks)
    if sum(ranks) != dim or min(ranks) < 1:
        raise InvalidParameter(f"ranks {ranks} do not partition dimension {dim}")
    u = random_unitary(dim, seed)
    groups, start = [], 0
    for r in ranks:
        groups.append(list(range(start, start + r)))
        start += r
    return Pvm.from_basis(u, groups)


def random_channel(din: int, dout: int, kraus_count: int, seed: SeedLike = None) -> KrausChannel:
    """Random channel from the blocks of a random isometry C^din -> C^(kraus_count*dout)."""
    if min(din, dout, kraus_count) < 1:
        raise InvalidParameter("dimensions and kraus_count must be >= 1")
    if kraus_count * dout < din:
        raise InvalidParameter(f"need kraus_count*dout >= din ({kraus_count}*{dout} < {din})")
    rng = _rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, kraus_count * dout, din))
    diag = np.diag(r)
    q = q * (diag / np.abs(diag))
    return KrausChannel(tuple(q[i * dout:(i + 1) * dout, :] for i in range(kraus_count)))


def random_unitary_mixture(dim: int, count: int, seed: SeedLike = None) -> KrausChannel:
    """Mixture of ``count`` Haar unitaries with Dirichlet weights."""
    if count < 1:
        raise InvalidParameter("count must be >= 1")
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(count)) if count > 1 else np.ones(1)
    return KrausChannel(tuple(np.sqrt(w) * random_unitary(dim, rng) for w in weights))
