import pytest
from hypothesis import settings

from descentlab.arith import factor

# first calls pay for lazy imports and JIT compilation
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def brute_primes(n):
    return [p for p in range(2, n) if all(p % d for d in range(2, int(p**0.5) + 1))]


@pytest.fixture(scope="session")
def primes_1mod4():
    return [p for p in brute_primes(2000) if p % 4 == 1]


def admissible_upto(n):
    out = []
    for m in range(5, n, 4):
        f = factor(m)
        if f.is_squarefree() and all(p % 4 == 1 for p in f.primes):
            out.append(m)
    return out


ACCEPTANCE: dict = {}


def record(n: int, ok: bool, detail: str = "") -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    ACCEPTANCE[n] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
