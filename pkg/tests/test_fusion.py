import itertools
import math

import pytest

from udrfusion.cohomology import kernel_set
from udrfusion.errors import NotDeterminedError
from udrfusion.ffield import PrimeField
from udrfusion.fusion import (
    fusion_bruteforce,
    fusion_closed_form,
    gamma_conjugacy_partition,
    orbit_length,
    recover_gcd_from_kernel_set,
)
from udrfusion.groups import ExtensionParams, GElement, Subgroup
from udrfusion.reps import enumerate_characters, ell_range, theta_ell, theta_on_G, twist

from conftest import EXAMPLE, SMALL, embeddable_grid, field_for


@pytest.mark.parametrize("n,p", [(4, 17), (6, 13), (8, 17), (10, 41), (20, 241)])
def test_closed_form_matches_bruteforce(n, p):
    F = PrimeField(p)
    for ell in ell_range(n):
        closed = fusion_closed_form(n, F, ell)
        assert closed == fusion_bruteforce(theta_ell(n, F, ell))
        assert closed.covers(p)


def test_orbit_sizes():
    F = PrimeField(241)
    omega = F.root_of_unity(20)
    for ell in (1, 4, 5):
        k = orbit_length(20, ell)
        part = fusion_closed_form(20, F, ell)
        assert part.blocks[0] == ((0, 0),)
        assert set(part.sizes()[1:]) == {k, 2 * k}
        # item 2: both nonzero with y/x a power of omega^ell
        assert len(part.block_of((1, pow(omega, ell, 241)))) == k
        # item 3: y/x outside <omega^ell>
        assert len(part.block_of((1, F.w))) == 2 * k
        assert sum(part.sizes()) == 241 ** 2


def test_gamma_conjugacy_matches():
    F = PrimeField(17)
    phi = theta_on_G(SMALL, F, 1)
    assert gamma_conjugacy_partition(phi) == fusion_bruteforce(phi)


def test_partition_factors_through_gcd():
    F = PrimeField(241)
    parts = {ell: fusion_closed_form(20, F, ell) for ell in ell_range(20)}
    for a, b in itertools.combinations(parts, 2):
        assert (parts[a] == parts[b]) == (math.gcd(20, a) == math.gcd(20, b))
    assert fusion_closed_form(20, F, 3) == fusion_closed_form(20, F, 17)


def test_orbit_count_constant_on_center_trivial_twists():
    F = PrimeField(17)
    phi = theta_on_G(SMALL, F, 1)
    base = len(fusion_bruteforce(phi))
    for chi in enumerate_characters(SMALL, F):
        if chi.cZ == 1:
            assert len(fusion_bruteforce(twist(chi, phi))) == base


def test_recover_gcd_example(example_field):
    for ell in ell_range(20):
        K = kernel_set(EXAMPLE, example_field, theta_on_G(EXAMPLE, example_field, ell))
        assert recover_gcd_from_kernel_set(EXAMPLE, K) == math.gcd(20, ell)


def test_recover_gcd_from_half_power():
    P = ExtensionParams(20, 24, 18, 0, 9)
    K = [Subgroup.of([GElement(0, 0, 0), GElement(10, 0, 12)])]
    assert recover_gcd_from_kernel_set(P, K) == 2


def test_recover_gcd_empty():
    with pytest.raises(NotDeterminedError):
        recover_gcd_from_kernel_set(SMALL, [])


@pytest.mark.parametrize("P", embeddable_grid(), ids=str)
def test_recover_gcd_odd_gcd(P):
    # the least-X-exponent rule is argued for odd gcd(n, ell)
    F = field_for(P)
    for ell in ell_range(P.n):
        if math.gcd(P.n, ell) % 2:
            K = kernel_set(P, F, theta_on_G(P, F, ell))
            assert recover_gcd_from_kernel_set(P, K) == math.gcd(P.n, ell)


def test_recover_gcd_misses_even_gcd_without_x_power():
    # every rho in the orbit sends Z to 1 and X^4 to -1, so no X^4 Z^t is in a kernel
    P = ExtensionParams(8, 2, 1, 0, 0)
    F = PrimeField(17)
    K = kernel_set(P, F, theta_on_G(P, F, 2))
    assert K == frozenset({Subgroup.of([(0, 0, 0), (0, 0, 1)])})
    assert recover_gcd_from_kernel_set(P, K) == 1 != math.gcd(8, 2)
    # the kernel set itself still separates gcd 2 from gcd 1
    assert K != kernel_set(P, F, theta_on_G(P, F, 1))
