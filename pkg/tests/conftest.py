import numpy as np
import pytest

from randsvd import GapSpec, gap_matrix, oracle_svd


def planted(m, n, rank, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m, rank)) @ rng.standard_normal((rank, n))


def planted_symmetric(n, rank, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, rank))
    D = np.diag(rng.uniform(1, 5, rank) * rng.choice([-1, 1], rank))
    return X @ D @ X.T


def oracle_sigma(A):
    # independent of the package kernels
    return np.linalg.svd(A, compute_uv=False)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def gap10():
    spec = GapSpec(gap=10)
    return gap_matrix(spec), oracle_svd(spec)


@pytest.fixture(scope="session")
def gap2():
    spec = GapSpec(gap=2)
    return gap_matrix(spec), oracle_svd(spec)


ACCEPTANCE = []


def record(criterion, ok, detail):
    ACCEPTANCE.append((criterion, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
