import pytest

from udrfusion.ffield import PrimeField, select_prime
from udrfusion.groups import ExtensionParams, embeddable


def grid(ns=(4, 6, 8, 10), ms=(2, 4, 6)):
    """All (n, m, alpha, beta, gamma) on the grid, beta in {0, 1}."""
    for n in ns:
        for m in ms:
            for a in range(m):
                for g in range(m):
                    for b in (0, 1):
                        yield ExtensionParams(n, m, a, b, g)


def embeddable_grid(**kw):
    return [P for P in grid(**kw) if P.consistent and embeddable(P)]


def field_for(P):
    return PrimeField(select_prime(P, 10**6))


EXAMPLE = ExtensionParams(20, 24, 18, 0, 9)
SMALL = ExtensionParams(4, 2, 1, 0, 0)
SMALL6 = ExtensionParams(6, 2, 1, 0, 1)


@pytest.fixture(scope="session")
def example_field():
    return PrimeField(241)
