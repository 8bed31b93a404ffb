import warnings

import pytest

from udrfusion.cohomology import d1_multiplicity
from udrfusion.errors import InvalidBaseError, InvalidRepresentationError, ReducibleRepresentationError
from udrfusion.ffield import PrimeField
from udrfusion.groups import ExtensionParams, Subgroup, cyclic_center, elements, g_mul
from udrfusion.reps import (
    BaseExponents,
    Character,
    Rep2,
    are_isomorphic,
    base_exponents,
    character_case,
    character_orbit,
    characters_closed_form,
    diag_exponent_difference,
    ell_range,
    enumerate_characters,
    enumerate_irreps2,
    embedding_witness_search,
    equation_period,
    inflate,
    is_absolutely_irreducible,
    iso_key,
    kernel_diophantine,
    kernel_direct,
    orbit_period,
    restricted_characters,
    restricted_group_is_cyclic_by_step,
    rho_ell,
    satisfies_embedding_equations,
    theta_ell,
    theta_on_G,
    trivial_character,
    twist,
    twist_count,
    twisted_rho,
)

from conftest import EXAMPLE, SMALL, SMALL6, embeddable_grid, field_for

GRID = embeddable_grid()


def test_theta_example_n6():
    F = PrimeField(13)
    th = theta_ell(6, F, 1)
    assert th.imgR == F.diag(4, 10)
    assert th.imgS == F.antidiag(1, 1)


@pytest.mark.parametrize("n,ell", [(6, 3), (4, 2), (8, 4), (6, 6)])
def test_theta_reducible(n, ell):
    F = PrimeField(73)
    with pytest.raises(ReducibleRepresentationError):
        theta_ell(n, F, ell)


@pytest.mark.parametrize("n,p", [(6, 13), (8, 17), (10, 41)])
def test_theta_swap_isomorphism(n, p):
    F = PrimeField(p)
    P = ExtensionParams(n, 2, 1, 0, 0)
    for ell in range(1, n):
        if 2 * ell % n == 0:
            continue
        a = inflate(theta_ell(n, F, ell), P) if P.consistent else None
        if a is None:
            continue
        assert is_absolutely_irreducible(theta_ell(n, F, ell))
        assert are_isomorphic(a, inflate(theta_ell(n, F, n - ell), P))
        if ell not in (n - ell,):
            for other in range(1, n):
                if 2 * other % n and other not in (ell, n - ell):
                    assert not are_isomorphic(a, inflate(theta_ell(n, F, other), P))


def test_relation_check():
    F = PrimeField(17)
    with pytest.raises(InvalidRepresentationError):
        Rep2(F, 4, (F.diag(2, 9), F.diag(1, 1), F.identity()), SMALL)


def test_characters_example(example_field):
    chars = enumerate_characters(EXAMPLE, example_field)
    assert len(chars) == 48
    assert trivial_character(EXAMPLE, example_field) in chars
    assert character_case(EXAMPLE) == "ii"
    assert chars == characters_closed_form(EXAMPLE, example_field)


@pytest.mark.parametrize("P", GRID, ids=str)
def test_characters_grid(P):
    F = field_for(P)
    chars = enumerate_characters(P, F)
    assert len(chars) == 2 * P.m == len(set(chars))
    assert chars == characters_closed_form(P, F)
    els = elements(P)
    for c in chars[:4]:
        for g in els:
            for h in els[::3]:
                assert c.evaluate(g_mul(P, g, h)) == c.evaluate(g) * c.evaluate(h) % F.p
    assert restricted_group_is_cyclic_by_step(P) == (character_case(P) in ("ii", "iv"))


@pytest.mark.parametrize("P", GRID, ids=str)
def test_irreps_grid(P):
    F = field_for(P)
    irr = enumerate_irreps2(P, F)
    assert len(irr) == P.m * (P.n - 1) // 2
    assert 2 * P.m + 4 * len(irr) == P.order
    assert len({iso_key(r) for r in irr}) == len(irr)
    assert all(r.in_normal_position and is_absolutely_irreducible(r) for r in irr)


def test_irreps_pairwise_nonisomorphic_small():
    F = PrimeField(13)
    irr = enumerate_irreps2(SMALL6, F)
    for i, a in enumerate(irr):
        for b in irr[i + 1:]:
            assert not are_isomorphic(a, b)


def test_irreps_example_count(example_field):
    assert len(enumerate_irreps2(EXAMPLE, example_field)) == 228


def test_not_absolutely_irreducible():
    F = PrimeField(17)
    chi = enumerate_characters(SMALL, F)[1]
    # sum of two characters, diagonal everywhere
    rep = Rep2(F, 4, (F.diag(chi.cX, 1), F.diag(chi.cY, 1), F.diag(chi.cZ, 1)), SMALL)
    assert not is_absolutely_irreducible(rep)
    # x1 = x2 in the normal-position parametrization
    rep = Rep2(F, 4, (F.scalar(chi.cX), F.antidiag(chi.cY, chi.cY), F.scalar(chi.cZ)), SMALL)
    assert not is_absolutely_irreducible(rep)


@pytest.mark.parametrize("P", GRID, ids=str)
def test_embedding_equations_witness_matches_embeddable(P):
    F = field_for(P)
    w = embedding_witness_search(P, F)
    assert w is not None and satisfies_embedding_equations(P, F, w)


def test_embedding_equations_no_witness_when_not_embeddable():
    P = ExtensionParams(4, 2, 0, 0, 0)
    assert embedding_witness_search(P, PrimeField(17)) is None


def test_base_exponents_example(example_field):
    b = base_exponents(EXAMPLE, example_field)
    assert satisfies_embedding_equations(EXAMPLE, example_field, b)
    assert example_field.wpow(b.i) == example_field.root_of_unity(20)


def test_rho_invalid_base(example_field):
    with pytest.raises(InvalidBaseError):
        rho_ell(EXAMPLE, example_field, BaseExponents(0, 12, 0, 10), 1)


def test_rho_reducible_flagged(example_field):
    b = base_exponents(EXAMPLE, example_field)
    with pytest.warns(UserWarning):
        rho_ell(EXAMPLE, example_field, b, 20)


@pytest.mark.parametrize("P", GRID[::5] + [SMALL], ids=str)
def test_rho_pairs_with_theta(P):
    F = field_for(P)
    b = base_exponents(P, F)
    for ell in ell_range(P.n):
        rho = rho_ell(P, F, b, ell)
        assert diag_exponent_difference(rho) == b.i * ell % (F.p - 1)
        assert d1_multiplicity(theta_on_G(P, F, ell), rho) == 1


def test_rho1_example_faithful(example_field):
    b = base_exponents(EXAMPLE, example_field)
    K = kernel_direct(EXAMPLE, rho_ell(EXAMPLE, example_field, b, 1))
    assert K == Subgroup.of([(0, 0, 0)])
    assert K == kernel_diophantine(EXAMPLE, 1, 0)[1]


def test_inflated_theta_kernel_contains_center(example_field):
    for ell in (1, 4, 5):
        K = kernel_direct(EXAMPLE, theta_on_G(EXAMPLE, example_field, ell))
        assert cyclic_center(EXAMPLE).issubset(K)


def test_twist_properties(example_field):
    F = example_field
    b = base_exponents(EXAMPLE, F)
    rho = rho_ell(EXAMPLE, F, b, 3)
    chars = enumerate_characters(EXAMPLE, F)
    assert twist(trivial_character(EXAMPLE, F), rho) == rho
    for chi in chars[::7]:
        t = twist(chi, rho)
        assert diag_exponent_difference(t) == diag_exponent_difference(rho)
        assert is_absolutely_irreducible(t)
    orbit = character_orbit(rho, chars)
    # stabilizer is {1, sign}: orbit size m
    assert len(orbit) == EXAMPLE.m <= 2 * EXAMPLE.m


def test_example_periods(example_field):
    for ell in (1, 3, 7, 9):
        assert equation_period(EXAMPLE, ell) == 12
        assert orbit_period(EXAMPLE, example_field, ell) == 24


@pytest.mark.parametrize("ell,k,expected", [(1, 0, (18, 1)), (1, 1, (6, 23)), (3, 0, (6, 3)), (5, 0, (18, 5)), (9, 4, (18, 1))])
def test_kernel_diophantine_examples(ell, k, expected):
    eq, _ = kernel_diophantine(EXAMPLE, ell, k)
    assert (eq.A, eq.B) == expected


def test_kernel_diophantine_maps_bijectively():
    eq, sub = kernel_diophantine(EXAMPLE, 5, 3)
    assert len(eq.solutions()) == len(sub)
    assert all(g.x % 4 == 0 and g.y == 0 for g in sub)


@pytest.mark.parametrize("P", GRID, ids=str)
def test_kernel_diophantine_equals_direct(P):
    F = field_for(P)
    b = base_exponents(P, F)
    for ell in ell_range(P.n):
        for k in range(twist_count(P)):
            assert kernel_diophantine(P, ell, k)[1] == kernel_direct(P, twisted_rho(P, F, b, ell, k))


def test_restricted_characters_count():
    for P in GRID:
        assert twist_count(P) == len(restricted_characters(P)) == P.m
