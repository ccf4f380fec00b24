from functools import lru_cache

import pytest

from paley_ricci.finite_field import build_field, divisors, is_prime
from paley_ricci.paley_graph import build_graph


@lru_cache(maxsize=None)
def field(p, n=1):
    return build_field(p, n)


@lru_cache(maxsize=None)
def graph(p, n, k):
    return build_graph(field(p, n), k)


def odd_prime_powers(cap):
    out = []
    for p in range(3, cap + 1):
        if is_prime(p):
            n = 1
            while p**n <= cap:
                out.append((p, n))
                n += 1
    return sorted(out, key=lambda t: t[0] ** t[1])


def admissible(cap, kmin=2):
    """Every (p, n, k) with q = p^n <= cap and 2k | q - 1."""
    return [
        (p, n, k)
        for p, n in odd_prime_powers(cap)
        for k in divisors((p**n - 1) // 2)
        if k >= kmin
    ]


@pytest.fixture
def F9():
    return field(3, 2)


@pytest.fixture
def F13():
    return field(13)


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[num])
