import itertools
import math
from fractions import Fraction

import pytest

from hadamard_stability import PositivePolynomial

ACCEPTANCE_LINES: list[str] = []


def leibniz_det(m):
    """Permutation-sum determinant; independent of the elimination code."""
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term *= m[i][j]
        total += term
    return total


def textbook_hurwitz(coeffs):
    """Hurwitz matrix from the descending-coefficient convention, then transposed.

    With ``c_k = a_{n-k}`` the textbook matrix has 1-based entry ``c_{2j-i}``
    (first row ``c1, c3, c5, ...``); its transpose is the layout used here.
    """
    n = len(coeffs) - 1
    c = [Fraction(x) for x in reversed(coeffs)]

    def ck(k):
        return c[k] if 0 <= k <= n else Fraction(0)

    textbook = [[ck(2 * j - i) for j in range(1, n + 1)] for i in range(1, n + 1)]
    return [list(col) for col in zip(*textbook)]


def binomial(n, c=1):
    """Coefficients of (s + c)**n from the binomial theorem."""
    return [math.comb(n, k) * Fraction(c) ** (n - k) for k in range(n + 1)]


@pytest.fixture
def quartic():
    return PositivePolynomial([1, 4, 6, 4, 1])


@pytest.fixture
def quintic():
    return PositivePolynomial([1, 5, 10, 10, 5, 1])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
