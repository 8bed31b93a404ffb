import pytest

from udrfusion.cohomology import (
    CohomDims,
    UDRTag,
    classify_udr,
    conjugation_matrix,
    crossed_hom_h1_dim,
    d1_cocycle_oracle,
    d1_multiplicity,
    d2_invariants,
    dihedral_h2_cochain_dim,
    h2_action,
    h2_elementary_abelian_dim,
    is_trivial_on_center,
    kernel_set,
    udr_nontrivial_set,
)
from udrfusion.errors import OutsideRegimeError
from udrfusion.ffield import PrimeField
from udrfusion.groups import dihedral_h2
from udrfusion.linalg import mat_identity
from udrfusion.reps import (
    base_exponents,
    character_orbit,
    enumerate_characters,
    enumerate_irreps2,
    ell_range,
    iso_key,
    rho_ell,
    theta_on_G,
)

from conftest import EXAMPLE, SMALL, SMALL6, embeddable_grid, field_for


def test_conjugation_matrix_acts_by_conjugation():
    F = PrimeField(13)
    A = F.mat(2, 1, 5, 3)
    M = F.mat(1, 7, 4, 9)
    C = conjugation_matrix(F, A)
    v = list(M)
    w = [sum(C[i][j] * v[j] for j in range(4)) % 13 for i in range(4)]
    assert tuple(w) == tuple(F.mat_mul(F.mat_mul(A, M), F.mat_inv(A)))


@pytest.mark.parametrize("P,p", [(SMALL, 17), (SMALL6, 13)], ids=str)
def test_d1_matches_oracle(P, p):
    F = PrimeField(p)
    sigma = enumerate_irreps2(P, F)
    for phi in sigma:
        for rho in sigma:
            d1 = d1_multiplicity(phi, rho)
            assert d1 in (0, 1)
            assert d1 == d1_cocycle_oracle(P, F, phi, rho)


def test_oracle_trivial_action():
    # crossed homs are homs: Hom(Gamma^ab, F_p^4) with G acting trivially on N gives 2 * 4
    F = PrimeField(17)
    I = F.identity()
    ident4 = mat_identity(4)
    assert crossed_hom_h1_dim(SMALL, 17, [I, I, I], [ident4] * 3) == 8
    # theta_1 acting on N without fixed quotient: no homs to a trivial module
    th = theta_on_G(SMALL, F, 1)
    assert crossed_hom_h1_dim(SMALL, 17, th.images, [ident4] * 3) == 0


def test_d1_nonzero_needs_trivial_center(example_field):
    F = example_field
    sigma = enumerate_irreps2(EXAMPLE, F)
    for phi in sigma[::17]:
        if not is_trivial_on_center(EXAMPLE, phi):
            assert all(d1_multiplicity(phi, rho) == 0 for rho in sigma)


def test_d1_mismatched_difference_vanishes():
    F = PrimeField(13)
    phi = theta_on_G(SMALL6, F, 1)
    rho = theta_on_G(SMALL6, F, 2)
    assert d1_multiplicity(phi, rho) == 0 == d1_cocycle_oracle(SMALL6, F, phi, rho)


@pytest.mark.parametrize("P", [SMALL, SMALL6] + embeddable_grid(ns=(8,), ms=(4,))[:4], ids=str)
def test_nontrivial_set_is_character_orbit(P):
    F = field_for(P)
    chars = enumerate_characters(P, F)
    b = base_exponents(P, F)
    total = P.m * (P.n - 1) // 2
    for ell in ell_range(P.n):
        phi = theta_on_G(P, F, ell)
        S = udr_nontrivial_set(P, F, phi)
        orbit = character_orbit(rho_ell(P, F, b, ell), chars)
        assert sorted(iso_key(r) for r in S) == [iso_key(r) for r in orbit]
        assert sum(d1_multiplicity(phi, r) for r in enumerate_irreps2(P, F)) == len(orbit)
        zp = [r for r in enumerate_irreps2(P, F) if classify_udr(CohomDims(d1_multiplicity(phi, r))).tag is UDRTag.ZP]
        assert len(zp) == total - len(orbit)


def test_nontrivial_set_empty_off_center():
    F = PrimeField(17)
    for phi in enumerate_irreps2(SMALL, F):
        if not is_trivial_on_center(SMALL, phi):
            assert udr_nontrivial_set(SMALL, F, phi) == []
            assert kernel_set(SMALL, F, phi) == frozenset()


def test_example_theta1_kernels_in_center(example_field):
    K = kernel_set(EXAMPLE, example_field, theta_on_G(EXAMPLE, example_field, 1))
    assert K
    assert all(g.x == 0 and g.y == 0 for k in K for g in k)


@pytest.mark.parametrize("p", [3, 5])
def test_h2_elementary_abelian(p):
    assert h2_elementary_abelian_dim(p) == 3


@pytest.mark.parametrize("p", [3, 5, 7, 13, 17])
def test_h2_action_methods_agree(p):
    F = PrimeField(p)
    gs = [F.mat(2, 1, 1, 1), F.antidiag(1, 1), F.diag(2, F.inv(2)), F.mat(1, 1, 0, 1)]
    assert h2_action(F, gs, "solve") == h2_action(F, gs, "functionals")


def test_h2_identity_acts_trivially():
    F = PrimeField(5)
    assert h2_action(F, [F.identity()], "solve") == [mat_identity(3)]


def test_d2_trivial_action_full():
    # phi trivial on N and rho trivial module action: every class is invariant
    F = PrimeField(17)
    from udrfusion.reps import Rep2

    phi = Rep2(F, 4, (F.identity(), F.identity(), F.identity()), SMALL)
    assert d2_invariants(phi, phi) == 12


@pytest.mark.parametrize("P,p", [(SMALL, 17), (SMALL6, 13)], ids=str)
def test_d2_is_two_when_d1_is_one(P, p):
    F = PrimeField(p)
    sigma = enumerate_irreps2(P, F)
    hits = 0
    for phi in sigma:
        for rho in sigma:
            if d1_multiplicity(phi, rho) == 1:
                hits += 1
                assert d2_invariants(phi, rho) == 2
    assert hits


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("q", [2, 3])
def test_dihedral_h2_against_cochains(n, q):
    assert dihedral_h2_cochain_dim(n, q) == len(dihedral_h2(n, q))


def test_classify():
    assert classify_udr(CohomDims(0)).tag is UDRTag.ZP
    assert str(classify_udr(CohomDims(1, 2))) == "Z_p[[t]]/(t^2,pt)"
    with pytest.raises(OutsideRegimeError):
        classify_udr(CohomDims(2))
