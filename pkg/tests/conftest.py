import math
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"
PI8 = math.pi / 8


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (g + g.conj().T)


def random_psd(rng, d, rank=None):
    rank = d if rank is None else rank
    b = rng.standard_normal((rank, d)) + 1j * rng.standard_normal((rank, d))
    return b.conj().T @ b


def np_sqrtm(m):
    """Independent oracle: PSD square root through numpy's LAPACK eigh."""
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def np_fidelity(rho, omega):
    """Independent oracle: nuclear norm of sqrt(rho) sqrt(omega) via LAPACK SVD."""
    return float(np.linalg.svd(np_sqrtm(rho) @ np_sqrtm(omega), compute_uv=False).sum())


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, passed: bool, detail: str) -> str:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
