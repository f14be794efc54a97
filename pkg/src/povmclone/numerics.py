"""Dense complex linear algebra for small operators.

Matrices are plain ``numpy`` complex arrays. The Hermitian eigensolver is a
cyclic two-sided Jacobi method, which is accurate to working precision for
the small dimensions used here (d <= 16, tensor products up to 256).
"""

from __future__ import annotations

import math
from typing import Literal, Sequence

import numpy as np

from . import tolerances
from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPsd, RankDeficient


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def hermitian_asymmetry(m: np.ndarray) -> float:
    """Max entry of |m - m^dagger| relative to max(1, max|m|)."""
    if m.size == 0:
        return 0.0
    scale = max(1.0, float(np.max(np.abs(m))))
    return float(np.max(np.abs(m - dagger(m)))) / scale


def _require_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")


def _require_hermitian(m: np.ndarray) -> None:
    _require_square(m)
    asym = hermitian_asymmetry(m)
    if asym > tolerances.get().herm:
        raise NotHermitian(asym)


def hermitian_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, V)`` with eigenvalues sorted in descending order
    and the corresponding orthonormal eigenvectors as the columns of ``V``,
    so that ``m == V @ diag(eigenvalues) @ V^dagger``.

    Raises:
        NotHermitian: if ``m`` deviates from Hermitian by more than the
            ``herm`` tolerance.
        NoConvergence: if the off-diagonal norm does not drop below
            ``jacobi_off`` (relative) within ``jacobi_sweeps`` sweeps.
    """
    m = as_matrix(m)
    _require_hermitian(m)
    tol = tolerances.get()
    n = m.shape[0]
    a = 0.5 * (m + dagger(m))
    v = np.eye(n, dtype=complex)
    if n == 0:
        return np.zeros(0), v

    threshold = tol.jacobi_off * float(np.linalg.norm(a))
    for sweep in range(tol.jacobi_sweeps + 1):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= threshold:
            break
        if sweep == tol.jacobi_sweeps:
            raise NoConvergence(sweep)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0 or mag <= 1e-300:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # Real symmetric Schur rotation after removing the phase of a[p, q].
                tau = (aqq - app) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                phase = apq / mag
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = dagger(g) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g

    evals = np.real(np.diag(a)).copy()
    order = np.argsort(-evals, kind="stable")
    return evals[order], v[:, order]


def noise_floor(evals: np.ndarray) -> float:
    """Eigenvalues below this are indistinguishable from Jacobi rounding."""
    if evals.size == 0:
        return 0.0
    return 8.0 * evals.size * np.finfo(float).eps * float(np.max(np.abs(evals)))


def psd_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`hermitian_eig` for a PSD matrix.

    Eigenvalues in [-psd, 0] and those under :func:`noise_floor` are set to
    exactly zero, so square roots do not amplify rounding (sqrt(1e-17) ~ 3e-9).

    Raises:
        NotPsd: if an eigenvalue is below -psd.
    """
    evals, vecs = hermitian_eig(m)
    tol = tolerances.get()
    if evals.size and evals[-1] < -tol.psd:
        raise NotPsd(float(evals[-1]))
    evals = np.where(evals <= noise_floor(evals), 0.0, evals)
    return evals, vecs


def sqrt_psd(m) -> np.ndarray:
    """Unique positive square root of a Hermitian PSD matrix."""
    evals, vecs = psd_eig(m)
    root = (vecs * np.sqrt(evals)) @ dagger(vecs)
    return 0.5 * (root + dagger(root))


def inv_sqrt_psd(m, floor: float = 0.0) -> np.ndarray:
    """Inverse square root on the support of ``m``.

    Eigenvalues at or below ``floor`` are treated as zero (pseudo-inverse).
    """
    evals, vecs = psd_eig(m)
    inv = np.zeros_like(evals)
    keep = evals > floor
    inv[keep] = 1.0 / np.sqrt(evals[keep])
    root = (vecs * inv) @ dagger(vecs)
    return 0.5 * (root + dagger(root))


def singular_values(x) -> np.ndarray:
    """Singular values, descending: square roots of the eigenvalues of x^dagger x."""
    x = as_matrix(x)
    # Use the smaller Gram matrix; the nonzero spectra agree.
    gram = dagger(x) @ x if x.shape[1] <= x.shape[0] else x @ dagger(x)
    evals, _ = hermitian_eig(gram)
    evals = np.where(evals <= noise_floor(evals), 0.0, evals)
    return np.sqrt(evals)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dims: tuple[int, int], keep: Literal["A", "B"] = "A") -> np.ndarray:
    """Partial trace of an operator on C^dA (x) C^dB.

    ``keep="A"`` traces out the second factor, ``keep="B"`` the first.
    """
    m = as_matrix(m)
    da, db = dims
    if m.shape != (da * db, da * db):
        raise DimensionMismatch(f"operator of shape {m.shape} does not act on {da}x{db} system")
    t = m.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', not {keep!r}")


def gram_schmidt_complete(fixed, candidates: Sequence[int] | None = None) -> np.ndarray:
    """Complete a set of linearly independent columns to a unitary.

    The columns of ``fixed`` are orthonormalized in order (modified
    Gram-Schmidt, with one re-orthogonalization pass) and then padded with
    standard basis vectors taken in the order given by ``candidates``
    (default ``0, 1, ..., n-1``), skipping those that are already in the
    span. Already-orthonormal fixed columns are reproduced exactly up to
    rounding.

    Raises:
        RankDeficient: if a fixed column is dependent on earlier ones
            within the ``rank`` tolerance.
    """
    fixed = as_matrix(fixed)
    n, k = fixed.shape
    if k > n:
        raise RankDeficient(n)
    rank_tol = tolerances.get().rank
    basis: list[np.ndarray] = []

    def residual(vec: np.ndarray) -> np.ndarray:
        for _ in range(2):
            for b in basis:
                vec = vec - b * np.vdot(b, vec)
        return vec

    for j in range(k):
        col = fixed[:, j]
        scale = float(np.linalg.norm(col))
        r = residual(col)
        norm = float(np.linalg.norm(r))
        if scale == 0.0 or norm <= rank_tol * max(1.0, scale):
            raise RankDeficient(j)
        basis.append(r / norm)

    order = list(candidates) if candidates is not None else []
    order += [i for i in range(n) if i not in order]
    for i in order:
        if len(basis) == n:
            break
        e = np.zeros(n, dtype=complex)
        e[i] = 1.0
        r = residual(e)
        norm = float(np.linalg.norm(r))
        # Some standard vector always keeps a residual >= 1/sqrt(n).
        if norm > 1e-6:
            basis.append(r / norm)
    return np.column_stack(basis)


def unitarity_residual(u) -> float:
    u = as_matrix(u)
    return float(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[1]))))


def is_unitary(u) -> bool:
    return unitarity_residual(u) <= tolerances.get().unit
