"""H^1 and H^2 of Gamma = N x|_phi G with coefficients in Hom(V_rho, V_rho).

Since [Gamma : N] = |G| is prime to p and N acts trivially on Hom(V, V),
H^i(Gamma, M) = H^i(N, M)^G.  For i = 1 this is Hom_G(V_phi, M); for i = 2 it is
(H^2(N, F_p) (x) M)^G with H^2(N, F_p) spanned by two Bockstein classes and one
cup product.  A crossed-homomorphism count on a presentation of Gamma gives an
independent check of H^1.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, OutsideRegimeError, ParameterError
from .ffield import Matrix2, PrimeField
from .groups import ExtensionParams, Subgroup, center
from .linalg import hom_dim, mat_identity, mat_inverse, mat_mul, nullspace, rank, rank_stream, solve_stream
from .reps import Rep2, enumerate_irreps2, kernel_direct


# Hom(V, V) as a 4-dimensional module, basis E_ij flattened to 2i + j


def conjugation_matrix(field: PrimeField, A: Matrix2) -> list[list[int]]:
    """Matrix of M -> A M A^-1 on 2x2 matrices: C[(i,j),(k,l)] = A[i][k] Ainv[l][j]."""
    a = A.rows()
    ai = field.mat_inv(A).rows()
    p = field.p
    return [
        [a[i][k] * ai[l][j] % p for k in range(2) for l in range(2)]
        for i in range(2) for j in range(2)
    ]


def _module_images(rho: Rep2) -> list[list[list[int]]]:
    return [conjugation_matrix(rho.field, img) for img in rho.images]


def _check_pair(phi: Rep2, rho: Rep2) -> None:
    if phi.params is None or phi.params != rho.params or phi.field != rho.field:
        raise ParameterError("phi and rho must be representations of the same G over the same field")


def d1_multiplicity(phi: Rep2, rho: Rep2, field: PrimeField | None = None) -> int:
    """dim Hom_G(V_phi, Hom(V_rho, V_rho)) = dim H^1(Gamma_phi, Hom(V_rho, V_rho))."""
    _check_pair(phi, rho)
    return hom_dim(phi.matrices(), _module_images(rho), phi.field.p)


# crossed homomorphisms on a presentation of Gamma

_N1, _N2, _X, _Y, _Z = range(5)


def gamma_relators(params: ExtensionParams, p: int, phi_images: Sequence[Matrix2]) -> list[list[tuple[int, int]]]:
    """Relators of Gamma on generators n1, n2, X, Y, Z as words of (generator, +-1)."""
    P = params

    def pw(g, k):
        return [(g, 1 if k > 0 else -1)] * abs(k)

    rels = [
        pw(_N1, p),
        pw(_N2, p),
        [(_N1, 1), (_N2, 1), (_N1, -1), (_N2, -1)],
        pw(_X, P.n) + pw(_Z, -P.alpha),
        pw(_Y, 2) + pw(_Z, -P.beta),
        [(_Y, 1), (_X, 1)] + pw(_Z, -P.gamma) + [(_Y, -1)] + pw(_X, -(P.n - 1)),
        [(_X, 1), (_Z, 1), (_X, -1), (_Z, -1)],
        [(_Y, 1), (_Z, 1), (_Y, -1), (_Z, -1)],
        pw(_Z, P.m),
    ]
    for gi, img in zip((_X, _Y, _Z), phi_images):
        cols = ((img.a, img.c), (img.b, img.d))
        for nj, (a, b) in zip((_N1, _N2), cols):
            rels.append([(gi, 1), (nj, 1), (gi, -1)] + pw(_N2, -b) + pw(_N1, -a))
    return rels


def crossed_hom_h1_dim(
    params: ExtensionParams,
    p: int,
    phi_images: Sequence[Matrix2],
    module_images: Sequence[Sequence[Sequence[int]]],
) -> int:
    """dim Z^1 - dim B^1 for Gamma acting on F_p^d through G (N acts trivially).

    A crossed homomorphism is fixed by its values on the five generators; each
    relator word w must satisfy f(w) = 0, evaluated by f(u s) = f(u) + u.f(s) and
    f(u s^-1) = f(u) - (u s^-1).f(s).
    """
    d = len(module_images[0])
    ident = mat_identity(d)
    act = [ident, ident] + [[list(r) for r in a] for a in module_images]
    act_inv = [ident, ident] + [mat_inverse(a, p) for a in act[2:]]
    nvar = 5 * d
    rows = []
    for word in gamma_relators(params, p, phi_images):
        A = ident
        Fm = [[0] * nvar for _ in range(d)]
        for g, e in word:
            if e > 0:
                coef = A
                A = mat_mul(A, act[g], p)
            else:
                A = mat_mul(A, act_inv[g], p)
                coef = [[-x % p for x in r] for r in A]
            for i in range(d):
                row = Fm[i]
                for j in range(d):
                    row[g * d + j] = (row[g * d + j] + coef[i][j]) % p
        rows.extend(Fm)
    z1 = nvar - rank(rows, nvar, p)
    fixed_rows = [
        [(a[i][j] - (i == j)) % p for j in range(d)]
        for a in module_images for i in range(d)
    ]
    b1 = d - len(nullspace(fixed_rows, d, p))
    return z1 - b1


def d1_cocycle_oracle(params: ExtensionParams, field: PrimeField, phi: Rep2, module: Rep2) -> int:
    """H^1(Gamma_phi, Hom(V, V)) by counting crossed homomorphisms on a presentation of Gamma."""
    _check_pair(phi, module)
    return crossed_hom_h1_dim(params, field.p, phi.images, _module_images(module))


# H^2(N, F_p), N = (Z/p)^2


def _carry(u: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    return (u + v >= p).astype(np.int64)


def h2_basis_values(U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    """Values of (b_1, b_2, c) at pairs (U[k], V[k]); U, V have shape (K, 2) with entries in [0, p)."""
    return np.stack(
        [_carry(U[:, 0], V[:, 0], p), _carry(U[:, 1], V[:, 1], p), U[:, 0] * V[:, 1] % p], axis=1
    )


def _apply(M: Matrix2, U: np.ndarray, p: int) -> np.ndarray:
    return np.stack([(M.a * U[:, 0] + M.b * U[:, 1]) % p, (M.c * U[:, 0] + M.d * U[:, 1]) % p], axis=1)


def _pulled_back(field: PrimeField, g: Matrix2, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Values of (g.b_1, g.b_2, g.c) where (g.f)(u, v) = f(g^-1 u, g^-1 v)."""
    gi = field.mat_inv(g)
    p = field.p
    return h2_basis_values(_apply(gi, U, p), _apply(gi, V, p), p)


def h2_action_functionals(field: PrimeField, g: Matrix2) -> list[list[int]]:
    """3x3 matrix of c -> c o g^-1 on H^2(N, F_p) in the basis (b_1, b_2, c).

    Uses the functionals f -> sum_k f(e1, k e1), sum_k f(e2, k e2),
    f(e1, e2) - f(e2, e1), which vanish on coboundaries and are dual to the basis.
    """
    p = field.p
    ks = np.arange(p)
    zeros = np.zeros(p, dtype=np.int64)
    ones = np.ones(p, dtype=np.int64)
    e1 = np.stack([ones, zeros], axis=1)
    e2 = np.stack([zeros, ones], axis=1)
    k1 = np.stack([ks, zeros], axis=1)
    k2 = np.stack([zeros, ks], axis=1)
    L1 = _pulled_back(field, g, e1, k1).sum(axis=0) % p
    L2 = _pulled_back(field, g, e2, k2).sum(axis=0) % p
    a = _pulled_back(field, g, e1[:1], e2[:1])[0]
    b = _pulled_back(field, g, e2[:1], e1[:1])[0]
    L3 = (a - b) % p
    return [[int(x) for x in row] for row in (L1, L2, L3)]


def h2_action_solve(field: PrimeField, gs: Sequence[Matrix2]) -> list[list[list[int]]]:
    """Same matrices as h2_action_functionals, by an exact solve modulo coboundaries.

    For each g, each pulled-back basis cocycle is written as
    sum_k lambda_k basis_k + delta h with unknowns lambda (3) and h (p^2 values),
    over all p^4 pairs (u, v); all 3 len(gs) right-hand sides are solved at once.
    """
    p = field.p
    q = p * p
    nvars = 3 + q
    nrhs = 3 * len(gs)
    idx = np.arange(q)
    V = np.stack([idx // p, idx % p], axis=1)
    vidx = idx

    def blocks():
        for ui in range(q):
            u = np.array([ui // p, ui % p])
            U = np.broadcast_to(u, (q, 2))
            rows = np.zeros((q, nvars + nrhs), dtype=np.int64)
            rows[:, :3] = h2_basis_values(U, V, p)
            # target = sum lambda basis + h(u) + h(v) - h(u + v)
            rows[:, 3 + ui] -= 1
            rows[np.arange(q), 3 + vidx] -= 1
            s = (U + V) % p
            rows[np.arange(q), 3 + s[:, 0] * p + s[:, 1]] += 1
            for gi, g in enumerate(gs):
                rows[:, nvars + 3 * gi:nvars + 3 * gi + 3] = _pulled_back(field, g, U, V)
            yield rows % p

    sol = solve_stream(blocks(), nvars, nrhs, p)
    return [[[int(sol[r, 3 * gi + c]) for c in range(3)] for r in range(3)] for gi in range(len(gs))]


SOLVE_LIMIT = 31


def h2_action(field: PrimeField, gs: Sequence[Matrix2], method: str = "auto") -> list[list[list[int]]]:
    """Action matrices on H^2(N, F_p) for each g; 'auto' solves exactly for p <= SOLVE_LIMIT."""
    if method == "auto":
        method = "solve" if field.p <= SOLVE_LIMIT else "functionals"
    if method == "solve":
        return h2_action_solve(field, gs)
    if method == "functionals":
        return [h2_action_functionals(field, g) for g in gs]
    raise ParameterError(f"unknown method {method!r}")


def _kron(a, b, p):
    return [
        [a[i][j] * b[k][l] % p for j in range(len(a[0])) for l in range(len(b[0]))]
        for i in range(len(a)) for k in range(len(b))
    ]


def d2_invariants(phi: Rep2, rho: Rep2, field: PrimeField | None = None, method: str = "auto") -> int:
    """dim (H^2(N, F_p) (x) Hom(V_rho, V_rho))^G with G acting through phi and by conjugation through rho."""
    _check_pair(phi, rho)
    F = phi.field
    p = F.p
    acts = h2_action(F, phi.images, method)
    mods = _module_images(rho)
    rows = []
    for A, C in zip(acts, mods):
        K = _kron(A, C, p)
        for i, r in enumerate(K):
            rows.append([(x - (i == j)) % p for j, x in enumerate(r)])
    return len(nullspace(rows, 12, p))


# trivial-coefficient cochains of a small group


def trivial_h2_dim(mul: np.ndarray, q: int) -> int:
    """dim H^2(H, F_q) for trivial coefficients from the multiplication table ``mul`` of H.

    Unnormalised inhomogeneous cochains: H^2 = (|H|^2 - rank d2) - rank d1.
    """
    N = mul.shape[0]
    els = np.arange(N)
    # d1: (df)(a, b) = f(b) - f(ab) + f(a)
    def d1_blocks():
        for a in range(N):
            rows = np.zeros((N, N), dtype=np.int64)
            rows[els, els] += 1
            rows[els, mul[a]] -= 1
            rows[:, a] += 1
            yield rows % q

    # d2: (df)(a, b, c) = f(b, c) - f(ab, c) + f(a, bc) - f(a, b)
    def d2_blocks():
        for a in range(N):
            for b in range(N):
                rows = np.zeros((N, N * N), dtype=np.int64)
                ab = mul[a, b]
                rows[els, b * N + els] += 1
                rows[els, ab * N + els] -= 1
                rows[els, a * N + mul[b]] += 1
                rows[:, a * N + b] -= 1
                yield rows % q

    r1 = rank_stream(d1_blocks(), N, q)
    r2 = rank_stream(d2_blocks(), N * N, q)
    return N * N - r2 - r1


def dihedral_mul_table(n: int) -> np.ndarray:
    """Multiplication table of D_2n on indices 2k + e for r^k s^e."""
    N = 2 * n
    T = np.zeros((N, N), dtype=np.int64)
    for k1 in range(n):
        for e1 in range(2):
            for k2 in range(n):
                for e2 in range(2):
                    k = (k1 + (-k2 if e1 else k2)) % n
                    T[2 * k1 + e1, 2 * k2 + e2] = 2 * k + (e1 + e2) % 2
    return T


def elementary_abelian_mul_table(p: int) -> np.ndarray:
    """Addition table of (Z/p)^2 on indices p*u1 + u2."""
    idx = np.arange(p * p)
    u1, u2 = idx // p, idx % p
    return ((u1[:, None] + u1[None, :]) % p) * p + (u2[:, None] + u2[None, :]) % p


def h2_elementary_abelian_dim(p: int) -> int:
    return trivial_h2_dim(elementary_abelian_mul_table(p), p)


def dihedral_h2_cochain_dim(n: int, q: int) -> int:
    return trivial_h2_dim(dihedral_mul_table(n), q)


# classification


@dataclass(frozen=True)
class CohomDims:
    d1: int
    d2: int | None = None


class UDRTag(enum.Enum):
    ZP = "Z_p"
    ZP_T_MOD_T2_PT = "Z_p[[t]]/(t^2,pt)"


@dataclass(frozen=True)
class UDRClass:
    tag: UDRTag
    dims: CohomDims

    def __str__(self) -> str:
        return self.tag.value


def classify_udr(dims: CohomDims) -> UDRClass:
    """d1 = 0 gives Z_p; d1 = 1 gives Z_p[[t]]/(t^2, pt); anything else is outside the family."""
    if dims.d1 == 0:
        return UDRClass(UDRTag.ZP, dims)
    if dims.d1 == 1:
        if dims.d2 is not None and dims.d2 != 2:
            raise ConsistencyError(f"d1 = 1 but d2 = {dims.d2}, expected 2")
        return UDRClass(UDRTag.ZP_T_MOD_T2_PT, dims)
    raise OutsideRegimeError(f"d1 = {dims.d1} >= 2 does not occur for this family")


def cohom_dims(phi: Rep2, rho: Rep2, with_d2: bool = False, method: str = "auto") -> CohomDims:
    d1 = d1_multiplicity(phi, rho)
    d2 = d2_invariants(phi, rho, method=method) if with_d2 else None
    return CohomDims(d1, d2)


# the sets entering the fusion criterion


def is_trivial_on_center(params: ExtensionParams, phi: Rep2) -> bool:
    I = phi.field.identity()
    return all(phi.evaluate(z) == I for z in center(params))


def udr_nontrivial_set(params: ExtensionParams, field: PrimeField, phi: Rep2) -> list[Rep2]:
    """The 2-dimensional irreducibles rho with R(Gamma_phi, V_rho) not Z_p (d1 >= 1)."""
    return [rho for rho in enumerate_irreps2(params, field) if d1_multiplicity(phi, rho) >= 1]


def kernel_set(params: ExtensionParams, field: PrimeField, phi: Rep2) -> frozenset[Subgroup]:
    return frozenset(kernel_direct(params, rho) for rho in udr_nontrivial_set(params, field, phi))

