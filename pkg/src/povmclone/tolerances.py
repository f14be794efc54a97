"""Central numerical tolerances.

The active set lives in a :class:`contextvars.ContextVar`, so overrides made
with :func:`override` are local to the current thread / task::

    with override(eq=1e-6):
        witness = check_equality_condition(povm, rho, omega)
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from collections.abc import Iterator


@dataclasses.dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10  # Hermiticity, relative to max(1, max |entry|)
    unit: float = 1e-10  # unitarity residual
    recon: float = 1e-9  # reconstructions: V diag V^dagger, S^2, projector algebra
    rank: float = 1e-12  # linear independence in Gram-Schmidt
    psd: float = 1e-10  # eigenvalues in [-psd, 0] are clamped to zero
    norm: float = 1e-10  # unit trace / unit norm / completeness
    zero: float = 1e-12  # probabilities at or below this count as zero
    eq: float = 1e-8  # equality-condition residual
    strict: float = 1e-12  # margin for the strict no-cloning inequality
    angle: float = 1e-9  # margin keeping eta inside (0, pi/4)
    jacobi_off: float = 1e-13  # off-diagonal Frobenius norm, relative
    jacobi_sweeps: int = 100

    def replace(self, **changes: float) -> "Tolerances":
        unknown = set(changes) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise KeyError(f"unknown tolerance(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **changes)


DEFAULT = Tolerances()
_current: contextvars.ContextVar[Tolerances] = contextvars.ContextVar("povmclone_tolerances", default=DEFAULT)


def get() -> Tolerances:
    return _current.get()


def names() -> list[str]:
    return [f.name for f in dataclasses.fields(Tolerances)]


@contextlib.contextmanager
def override(**changes: float) -> Iterator[Tolerances]:
    tol = get().replace(**changes)
    token = _current.set(tol)
    try:
        yield tol
    finally:
        _current.reset(token)
