"""Degree-1 and degree-2 representations of G and D_2n over F_p.

Representations are generator-image records checked against the defining
relations when constructed.  Two-dimensional irreducibles of G are produced in
the normal position X -> diagonal, Y -> antidiagonal, Z -> scalar.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import (
    ConsistencyError,
    InvalidBaseError,
    InvalidRepresentationError,
    ParameterError,
    ReducibleRepresentationError,
    UnsupportedRegimeError,
)
from .ffield import Matrix2, PrimeField
from .groups import (
    ExtensionParams,
    GElement,
    Subgroup,
    elements,
    embeddable,
)
from .linalg import hom_basis, hom_dim


@dataclass(frozen=True)
class Rep2:
    """A 2-dimensional representation given by generator images.

    ``images`` is (X, Y, Z) when ``params`` is set (source G) and (r, s) for a
    representation of D_2n (``params`` is None).
    """

    field: PrimeField
    n: int
    images: tuple[Matrix2, ...]
    params: ExtensionParams | None = None
    inflated_from: "Rep2 | None" = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        F = self.field
        for img in self.images:
            if F.mat_det(img) == 0:
                raise InvalidRepresentationError(f"singular generator image {tuple(img)}")
        I = F.identity()
        pw = F.mat_pow
        mul = F.mat_mul
        if self.params is None:
            r, s = self.images
            ok = (
                pw(r, self.n) == I
                and mul(s, s) == I
                and mul(mul(s, r), mul(F.mat_inv(s), r)) == I
            )
        else:
            P = self.params
            X, Y, Z = self.images
            ok = (
                pw(X, P.n) == pw(Z, P.alpha)
                and mul(Y, Y) == pw(Z, P.beta)
                and mul(Y, X) == mul(mul(pw(X, P.n - 1), Y), pw(Z, P.gamma))
                and mul(X, Z) == mul(Z, X)
                and mul(Y, Z) == mul(Z, Y)
                and pw(Z, P.m) == I
            )
        if not ok:
            raise InvalidRepresentationError(
                f"images {[tuple(i) for i in self.images]} violate the relations of the "
                f"{'G' + str(self.params.astuple()) if self.params else 'D_' + str(2 * self.n)} presentation"
            )

    @property
    def source(self) -> str:
        return "D" if self.params is None else "G"

    @property
    def imgX(self) -> Matrix2:
        return self.images[0]

    @property
    def imgY(self) -> Matrix2:
        return self.images[1]

    @property
    def imgZ(self) -> Matrix2:
        return self.images[2]

    imgR = imgX
    imgS = imgY

    @cached_property
    def _powers(self):
        F = self.field
        gens = self.images
        orders = (self.n, 2) if self.params is None else (self.params.n, 2, self.params.m)
        tables = []
        for img, k in zip(gens, orders):
            t = [F.identity()]
            for _ in range(k - 1):
                t.append(F.mat_mul(t[-1], img))
            tables.append(t)
        return tables

    def evaluate(self, g) -> Matrix2:
        """Image of a normal form (GElement for G, DElement for D_2n)."""
        F = self.field
        t = self._powers
        out = F.mat_mul(t[0][g[0]], t[1][g[1]])
        if self.params is not None:
            out = F.mat_mul(out, t[2][g[2]])
        return out

    def matrices(self) -> list[list[list[int]]]:
        return [img.rows() for img in self.images]

    @property
    def in_normal_position(self) -> bool:
        if self.params is None:
            return self.imgR.is_diagonal and self.imgS.is_antidiagonal
        Z = self.imgZ
        return (
            self.imgX.is_diagonal
            and self.imgY.is_antidiagonal
            and Z.is_diagonal
            and Z.a == Z.d
        )


@dataclass(frozen=True)
class Character:
    params: ExtensionParams
    field: PrimeField
    cX: int
    cY: int
    cZ: int

    def __post_init__(self):
        p = self.field.p
        P = self.params
        cX, cY, cZ = self.cX % p, self.cY % p, self.cZ % p
        object.__setattr__(self, "cX", cX)
        object.__setattr__(self, "cY", cY)
        object.__setattr__(self, "cZ", cZ)
        ok = (
            0 not in (cX, cY, cZ)
            and pow(cZ, P.m, p) == 1
            and pow(cX, P.n, p) == pow(cZ, P.alpha, p)
            and cY * cY % p == pow(cZ, P.beta, p)
            and cX * cX % p == pow(cX, P.n, p) * pow(cZ, P.gamma, p) % p
        )
        if not ok:
            raise InvalidRepresentationError(f"({cX}, {cY}, {cZ}) is not a character of G{P.astuple()}")

    def values(self) -> tuple[int, int, int]:
        return (self.cX, self.cY, self.cZ)

    def evaluate(self, g: GElement) -> int:
        p = self.field.p
        return pow(self.cX, g.x, p) * pow(self.cY, g.y, p) * pow(self.cZ, g.z, p) % p


# D_2n representations


def theta_ell(n: int, field: PrimeField, ell: int) -> Rep2:
    """r -> diag(omega^ell, omega^-ell), s -> antidiag(1, 1), omega = w^((p-1)/n)."""
    omega = field.root_of_unity(n)
    if pow(omega, 2 * ell, field.p) == 1:
        raise ReducibleRepresentationError(f"theta_{ell} of D_{2 * n} is reducible")
    x = pow(omega, ell, field.p)
    return Rep2(field, n, (field.diag(x, field.inv(x)), field.antidiag(1, 1)))


def inflate(theta: Rep2, params: ExtensionParams) -> Rep2:
    """Pull a D_2n representation back along G -> G/<Z> (X -> r, Y -> s, Z -> 1)."""
    if theta.params is not None or theta.n != params.n:
        raise ParameterError("can only inflate a representation of D_2n with matching n")
    F = theta.field
    return Rep2(F, params.n, (theta.imgR, theta.imgS, F.identity()), params, inflated_from=theta)


def theta_on_G(params: ExtensionParams, field: PrimeField, ell: int) -> Rep2:
    return inflate(theta_ell(params.n, field, ell), params)


def ell_range(n: int) -> range:
    """1 <= ell <= n/2 - 1: one theta_ell per isomorphism class."""
    return range(1, n // 2)


# Characters


def enumerate_characters(params: ExtensionParams, field: PrimeField) -> list[Character]:
    """All degree-1 representations, by exhaustive solution of the abelianised relations."""
    params.require_consistent()
    p = field.p
    P = params
    out = []
    for cZ in field.roots_of_unity(P.m):
        za, zb, zg = pow(cZ, P.alpha, p), pow(cZ, P.beta, p), pow(cZ, P.gamma, p)
        xs = [
            x for x in range(1, p)
            if pow(x, P.n, p) == za and x * x % p == pow(x, P.n, p) * zg % p
        ]
        ys = [y for y in range(1, p) if y * y % p == zb]
        out.extend(Character(P, field, x, y, cZ) for x in xs for y in ys)
    out.sort(key=lambda c: (c.cZ, c.cX, c.cY))
    if embeddable_or_false(P) and len(out) != 2 * P.m:
        raise ConsistencyError(f"found {len(out)} characters, expected 2m = {2 * P.m}")
    return out


def embeddable_or_false(params: ExtensionParams) -> bool:
    try:
        return embeddable(params)
    except UnsupportedRegimeError:
        return False


def character_case(params: ExtensionParams) -> str:
    """Which of the four closed-form character families applies: 'i' .. 'iv'."""
    if params.n % 2 or params.m % 2:
        raise UnsupportedRegimeError("character families need n, m even")
    if params.beta not in (0, 1):
        raise ParameterError("normalize beta to 0 or 1 first")
    odd = (-params.alpha - params.gamma) % params.m % 2 == 1
    return {(0, False): "i", (0, True): "ii", (1, False): "iii", (1, True): "iv"}[(params.beta, odd)]


def characters_closed_form(params: ExtensionParams, field: PrimeField) -> list[Character]:
    """The characters listed by the four closed-form families, sorted like enumerate_characters."""
    P = params
    p = field.p
    m, mh = P.m, P.m // 2
    s = (-P.alpha - P.gamma) % m
    case = character_case(P)
    vals = set()
    if case == "i":
        I = field.root_of_unity(mh)
        tp = s // 2
        for a in range(2):
            for b in range(2):
                for c in range(mh):
                    vals.add(((-1) ** a * pow(I, -tp * c, p), (-1) ** b, pow(I, c, p)))
    else:
        I = field.root_of_unity(m)
        for a in range(m):
            for b in range(2):
                if case == "ii":
                    v = (pow(I, a * s, p), (-1) ** b, pow(I, -2 * a, p))
                elif case == "iii":
                    v = ((-1) ** b * pow(I, a * (P.alpha + P.gamma), p), pow(I, a, p), pow(I, 2 * a, p))
                else:
                    v = (pow(I, a * s, p), (-1) ** b * pow(I, -a, p), pow(I, -2 * a, p))
                vals.add(v)
    chars = [Character(P, field, *v) for v in vals]
    chars.sort(key=lambda c: (c.cZ, c.cX, c.cY))
    return chars


def trivial_character(params: ExtensionParams, field: PrimeField) -> Character:
    return Character(params, field, 1, 1, 1)


# Two-dimensional irreducibles of G


def iso_key(rep: Rep2) -> tuple[int, int, int]:
    """Isomorphism-class key (zeta, min x, max x) of a G-representation in normal position.

    Diagonal conjugation rescales the Y entries and the swap matrix exchanges the
    diagonal entries of X, so (Z-scalar, unordered X-eigenvalues) is complete.
    """
    if rep.params is None or not rep.in_normal_position:
        raise ParameterError("iso_key needs a G-representation in normal position")
    X = rep.imgX
    return (rep.imgZ.a, min(X.a, X.d), max(X.a, X.d))


def rep_id(rep: Rep2) -> str:
    z, x1, x2 = iso_key(rep)
    return f"z{z}:x{x1},{x2}"


def enumerate_irreps2(params: ExtensionParams, field: PrimeField) -> list[Rep2]:
    """Complete irredundant list of 2-dimensional irreducibles, sorted by iso_key.

    For each zeta with zeta^m = 1 and each x1 with x1^n = zeta^alpha, set
    x2 = zeta^(alpha+gamma) / x1 and Y -> antidiag(u, u) with u^2 = zeta^beta.
    """
    params.require_consistent()
    if not embeddable(params):
        raise UnsupportedRegimeError(f"G{params.astuple()} is not embeddable")
    P = params
    p = field.p
    F = field
    reps = {}
    for zeta in F.roots_of_unity(P.m):
        za = pow(zeta, P.alpha, p)
        zag = pow(zeta, P.alpha + P.gamma, p)
        u = F.sqrt(pow(zeta, P.beta, p))
        if u is None:
            raise ParameterError(f"zeta^beta has no square root mod {p}; field too small")
        for x1 in range(1, p):
            if pow(x1, P.n, p) != za:
                continue
            x2 = zag * F.inv(x1) % p
            if x1 >= x2:
                continue
            rep = Rep2(F, P.n, (F.diag(x1, x2), F.antidiag(u, u), F.scalar(zeta)), P)
            reps[iso_key(rep)] = rep
    out = [reps[k] for k in sorted(reps)]
    expected = P.m * (P.n - 1) // 2
    if len(out) != expected:
        raise ConsistencyError(f"found {len(out)} irreducible classes, expected m(n-1)/2 = {expected}")
    return out


def commutant_dim(rep: Rep2) -> int:
    mats = rep.matrices()
    return hom_dim(mats, mats, rep.field.p)


def is_absolutely_irreducible(rep: Rep2) -> bool:
    """Schur test: End(V) is F_p.  Valid because F_p G is semisimple here."""
    return commutant_dim(rep) == 1


def are_isomorphic(a: Rep2, b: Rep2) -> bool:
    """Isomorphism of irreducible representations: a nonzero intertwiner exists and is invertible."""
    if a.field != b.field or a.params != b.params or a.n != b.n:
        return False
    p = a.field.p
    for t in hom_basis(a.matrices(), b.matrices(), p):
        if (t[0] * t[3] - t[1] * t[2]) % p:
            return True
    return False


# rho_ell and twisting


class BaseExponents(NamedTuple):
    """Exponents (a, i, r, t) of w for X -> diag(w^(a+i), w^a), Y -> antidiag(w^r, w^r), Z -> w^t."""

    a: int
    i: int
    r: int
    t: int


def satisfies_embedding_equations(params: ExtensionParams, field: PrimeField, base: BaseExponents) -> bool:
    P = params
    q = field.p - 1
    a, i, r, t = base
    y_target = 0 if P.beta == 0 else t
    return (
        field.order(field.wpow(t)) == P.m
        and field.order(field.wpow(i)) == P.n
        and (a * P.n - t * P.alpha) % q == 0
        and (2 * r - y_target) % q == 0
        and (2 * a + i - t * (P.alpha + P.gamma)) % q == 0
    )


def embedding_witness_search(params: ExtensionParams, field: PrimeField) -> BaseExponents | None:
    """Exhaustive search for exponents (a, i, r, t) solving the faithful-embedding equations.

    t ranges over exponents with w^t of order m, i over exponents with w^i of
    order n, and a, r over all of Z/(p-1).  Returns the lexicographically least
    witness in (t, i, a, r) order.
    """
    P = params
    if P.beta not in (0, 1):
        raise ParameterError("normalize beta to 0 or 1 first")
    q = field.p - 1
    ts = [t for t in range(q) if field.order(field.wpow(t)) == P.m]
    is_ = [i for i in range(q) if field.order(field.wpow(i)) == P.n]
    for t in ts:
        y_target = 0 if P.beta == 0 else t
        rs = [r for r in range(q) if (2 * r - y_target) % q == 0]
        if not rs:
            continue
        for i in is_:
            for a in range(q):
                if (a * P.n - t * P.alpha) % q == 0 and (2 * a + i - t * (P.alpha + P.gamma)) % q == 0:
                    return BaseExponents(a, i, rs[0], t)
    return None


def base_exponents(params: ExtensionParams, field: PrimeField) -> BaseExponents:
    """Canonical solution of the embedding equations with w^i = omega = w^((p-1)/n).

    Fixing w^i to the omega used by theta_ell makes rho_ell pair with theta_ell.
    """
    P = params
    q = field.p - 1
    if q % P.n or q % P.m:
        raise ParameterError(f"p = {field.p} lacks the needed roots of unity")
    i = q // P.n
    t = q // P.m
    y_target = 0 if P.beta == 0 else t
    for a in range(q):
        if (a * P.n - t * P.alpha) % q == 0 and (2 * a + i - t * (P.alpha + P.gamma)) % q == 0:
            for r in range(q):
                if (2 * r - y_target) % q == 0:
                    return BaseExponents(a, i, r, t)
    raise InvalidBaseError(f"no base exponents for G{P.astuple()} over F_{field.p}")


def rho_ell(params: ExtensionParams, field: PrimeField, base: BaseExponents, ell: int) -> Rep2:
    """X -> diag(w^(a ell), w^(a ell + i ell)), Z -> w^(t ell), Y -> antidiag(w^r) (beta=0)
    or antidiag(w^(r ell)) (beta=1)."""
    if params.beta not in (0, 1):
        raise ParameterError("normalize beta to 0 or 1 first")
    if not satisfies_embedding_equations(params, field, base):
        raise InvalidBaseError(f"{base} does not satisfy the embedding equations")
    F = field
    a, i, r, t = base
    y = F.wpow(r if params.beta == 0 else r * ell)
    rep = Rep2(
        F,
        params.n,
        (F.diag(F.wpow(a * ell), F.wpow(a * ell + i * ell)), F.antidiag(y, y), F.scalar(F.wpow(t * ell))),
        params,
    )
    if (i * ell) % (F.p - 1) == 0:
        warnings.warn(f"rho_{ell} is reducible (equal diagonal entries)", stacklevel=2)
    return rep


def diag_exponent_difference(rep: Rep2) -> int:
    """dlog(x2) - dlog(x1) mod p-1 for X -> diag(x1, x2)."""
    F = rep.field
    return (F.dlog(rep.imgX.d) - F.dlog(rep.imgX.a)) % (F.p - 1)


def twist(chi: Character, rho: Rep2) -> Rep2:
    if rho.params != chi.params or rho.field != chi.field:
        raise ParameterError("character and representation live on different groups")
    F = rho.field
    X, Y, Z = rho.images
    return Rep2(
        F,
        rho.n,
        (F.mat_scale(chi.cX, X), F.mat_scale(chi.cY, Y), F.mat_scale(chi.cZ, Z)),
        rho.params,
    )


def character_orbit(rho: Rep2, chars: list[Character]) -> list[Rep2]:
    """Distinct isomorphism classes among chi * rho, sorted by iso_key."""
    seen = {}
    for chi in chars:
        tw = twist(chi, rho)
        seen.setdefault(iso_key(tw), tw)
    return [seen[k] for k in sorted(seen)]


# Kernels


def kernel_direct(params: ExtensionParams, rho: Rep2) -> Subgroup:
    I = rho.field.identity()
    return Subgroup.of(g for g in elements(params) if rho.evaluate(g) == I)


@dataclass(frozen=True)
class DiophantineEq:
    """A sigma + B tau = 0 (mod m) with sigma in [0, g), tau in [0, m), g = gcd(n, ell).

    A solution (sigma, tau) stands for the element X^((n/g) sigma) Z^tau.
    """

    A: int
    B: int
    n: int
    m: int
    g: int

    @property
    def x_step(self) -> int:
        return self.n // self.g

    def solutions(self) -> list[tuple[int, int]]:
        return [
            (s, t) for s in range(self.g) for t in range(self.m)
            if (self.A * s + self.B * t) % self.m == 0
        ]

    def subgroup(self) -> Subgroup:
        return Subgroup.of(GElement(self.x_step * s, 0, t) for s, t in self.solutions())

    def format(self) -> str:
        return format_equation(self.A, self.B)


def format_equation(A: int, B: int) -> str:
    def term(c, var):
        return var if c == 1 else f"{c}{var}"
    return f"{term(A, 'σ')} + {term(B, 'τ')}"


def restricted_characters(params: ExtensionParams) -> list[tuple[int, int]]:
    """Restrictions of characters to <X, Z> as exponent pairs (x, z) of a primitive m-th root.

    Solutions of 2x = (alpha+gamma) z and n x = alpha z (mod m).  Y can always be
    completed since p = 1 mod 2m makes every m-th root of unity a square.
    """
    P = params
    return [
        (x, z) for z in range(P.m) for x in range(P.m)
        if (2 * x - (P.alpha + P.gamma) * z) % P.m == 0 and (P.n * x - P.alpha * z) % P.m == 0
    ]


def step_restriction(params: ExtensionParams) -> tuple[int, int]:
    """The restricted character X -> zeta^(-alpha-gamma), Z -> zeta^-2."""
    return ((-params.alpha - params.gamma) % params.m, -2 % params.m)


def diophantine_for_restriction(params: ExtensionParams, ell: int, x: int, z: int) -> DiophantineEq:
    """Kernel equation of chi * rho_ell where chi|<X,Z> = (zeta^x, zeta^z)."""
    P = params
    g = math.gcd(P.n, ell)
    A = (P.alpha * (ell // g) + (P.n // g) * x) % P.m
    B = (ell + z) % P.m
    return DiophantineEq(A, B, P.n, P.m, g)


def kernel_diophantine(params: ExtensionParams, ell: int, k: int) -> tuple[DiophantineEq, Subgroup]:
    """Equation and kernel of the k-th twist of rho_ell.

    When the step character generates every restriction to <X, Z>, the k-th
    twist is chi^k and A = alpha ell/g + k (n/g)(-alpha-gamma), B = ell - 2k
    (mod m).  Otherwise k indexes the sorted list of all restrictions.
    """
    if params.n % 2 or params.m % 2:
        raise UnsupportedRegimeError("kernel equations need n, m even")
    x, z = twist_restriction(params, k)
    eq = diophantine_for_restriction(params, ell, x, z)
    return eq, eq.subgroup()


def twist_restriction(params: ExtensionParams, k: int) -> tuple[int, int]:
    """Restriction to <X, Z> of the character used for twist index k."""
    if restricted_group_is_cyclic_by_step(params):
        sx, sz = step_restriction(params)
        return (k * sx % params.m, k * sz % params.m)
    rs = restricted_characters(params)
    return rs[k % len(rs)]


def twist_count(params: ExtensionParams) -> int:
    """Number of distinct twist indices (the order of the restricted character group)."""
    return len(restricted_characters(params))


def twisted_rho(params: ExtensionParams, field: PrimeField, base: BaseExponents, ell: int, k: int) -> Rep2:
    """The representation whose kernel kernel_diophantine(params, ell, k) describes."""
    chi = character_from_restriction(params, field, *twist_restriction(params, k))
    return twist(chi, rho_ell(params, field, base, ell))


def restricted_group_is_cyclic_by_step(params: ExtensionParams) -> bool:
    """Whether the step character generates all restrictions to <X, Z>."""
    sx, sz = step_restriction(params)
    powers = {(k * sx % params.m, k * sz % params.m) for k in range(params.m)}
    return powers == set(restricted_characters(params))


def character_from_restriction(params: ExtensionParams, field: PrimeField, x: int, z: int) -> Character:
    """A character with X -> zeta^x, Z -> zeta^z (zeta = w^((p-1)/m)), Y -> canonical sqrt of Z^beta."""
    zeta = field.root_of_unity(params.m)
    p = field.p
    cX, cZ = pow(zeta, x, p), pow(zeta, z, p)
    cY = field.sqrt(pow(cZ, params.beta, p))
    if cY is None:
        raise ParameterError("character value has no square root; field too small")
    return Character(params, field, cX, cY, cZ)


def step_character(params: ExtensionParams, field: PrimeField) -> Character:
    return character_from_restriction(params, field, *step_restriction(params))


def equation_period(params: ExtensionParams, ell: int) -> int:
    """Least k > 0 with the chi^k equation equal to the chi^0 equation."""
    first = kernel_diophantine(params, ell, 0)[0]
    k = 1
    while kernel_diophantine(params, ell, k)[0] != first:
        k += 1
    return k


def orbit_period(params: ExtensionParams, field: PrimeField, ell: int) -> int:
    """Least k > 0 with chi^k * rho_ell isomorphic to rho_ell."""
    base = base_exponents(params, field)
    rho = rho_ell(params, field, base, ell)
    chi = step_character(params, field)
    key = iso_key(rho)
    cur = twist(chi, rho)
    k = 1
    while iso_key(cur) != key:
        cur = twist(chi, cur)
        k += 1
    return k

