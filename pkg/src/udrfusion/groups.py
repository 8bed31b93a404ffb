"""Central extensions G = <X, Y, Z> of D_2n by Z/m, dihedral groups, and N x| G.

G is presented by

    X^n = Z^alpha,  Y^2 = Z^beta,  YX = X^(n-1) Y Z^gamma,  Z central,  Z^m = 1,

and every element is stored in the normal form X^x Y^y Z^z with 0 <= x < n,
y in {0, 1}, 0 <= z < m.  The presentation has exactly 2nm elements iff
n(alpha + gamma) = 2 alpha (mod m); see ``ExtensionParams.consistent``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, NamedTuple

from .errors import (
    ConsistencyError,
    InconsistentPresentationError,
    ParameterError,
    UnsupportedRegimeError,
)


@dataclass(frozen=True)
class ExtensionParams:
    n: int
    m: int
    alpha: int = 0
    beta: int = 0
    gamma: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ParameterError(f"n and m must be positive, got n={self.n}, m={self.m}")
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, getattr(self, name) % self.m)

    @property
    def order(self) -> int:
        return 2 * self.n * self.m

    @property
    def consistent(self) -> bool:
        """Whether the presentation defines a group of order 2nm.

        Conjugating X^n = Z^alpha by Y gives Z^(n(alpha+gamma) - alpha) = Z^alpha.
        """
        return (self.n * (self.alpha + self.gamma) - 2 * self.alpha) % self.m == 0

    def require_consistent(self) -> None:
        if not self.consistent:
            raise InconsistentPresentationError(
                f"{self.astuple()} does not present a group of order {self.order}: "
                "need n(alpha + gamma) = 2 alpha mod m"
            )

    def astuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.m, self.alpha, self.beta, self.gamma)


class GElement(NamedTuple):
    x: int
    y: int
    z: int


IDENTITY = GElement(0, 0, 0)


def g_mul(params: ExtensionParams, a: GElement, b: GElement) -> GElement:
    n = params.n
    x1, y1, z1 = a
    x2, y2, z2 = b
    z = z1 + z2
    if y1:
        # Y X^k = X^(k(n-1)) Y Z^(k gamma)
        e = x1 + x2 * (n - 1)
        z += x2 * params.gamma
    else:
        e = x1 + x2
    q, x = divmod(e, n)
    z += q * params.alpha
    y = y1 + y2
    if y == 2:
        y = 0
        z += params.beta
    return GElement(x, y, z % params.m)


def g_inv(params: ExtensionParams, a: GElement) -> GElement:
    x, y, z = a
    n, m = params.n, params.m
    out = GElement(0, 0, -z % m)
    if y:
        out = g_mul(params, out, GElement(0, 1, -params.beta % m))
    if x:
        out = g_mul(params, out, GElement(n - x, 0, -params.alpha % m))
    return out


def g_pow(params: ExtensionParams, a: GElement, k: int) -> GElement:
    if k < 0:
        a, k = g_inv(params, a), -k
    result = IDENTITY
    while k:
        if k & 1:
            result = g_mul(params, result, a)
        a = g_mul(params, a, a)
        k >>= 1
    return result


def g_order(params: ExtensionParams, a: GElement) -> int:
    k, cur = 1, a
    while cur != IDENTITY:
        cur = g_mul(params, cur, a)
        k += 1
    return k


def generators(params: ExtensionParams) -> tuple[GElement, GElement, GElement]:
    """Normal forms of X, Y, Z."""
    X = GElement(1, 0, 0) if params.n > 1 else GElement(0, 0, params.alpha)
    return X, GElement(0, 1, 0), GElement(0, 0, 1 % params.m)


@lru_cache(maxsize=64)
def elements(params: ExtensionParams) -> tuple[GElement, ...]:
    return tuple(
        GElement(x, y, z) for x in range(params.n) for y in range(2) for z in range(params.m)
    )


@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as its sorted tuple of normal forms."""

    elements: tuple[GElement, ...]

    @classmethod
    def of(cls, items: Iterable[GElement]) -> "Subgroup":
        return cls(tuple(sorted(set(GElement(*g) for g in items))))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return GElement(*g) in set(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def issubset(self, other: "Subgroup") -> bool:
        return set(self.elements) <= set(other.elements)

    def format(self) -> str:
        return ";".join(f"{x}.{y}.{z}" for x, y, z in self.elements)


def generated_subgroup(params: ExtensionParams, gens: Iterable[GElement]) -> Subgroup:
    gens = [GElement(*g) for g in gens]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = g_mul(params, h, g)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return Subgroup.of(seen)


def normal_closure(params: ExtensionParams, gens: Iterable[GElement]) -> Subgroup:
    conj_by = list(generators(params))
    current = set(GElement(*g) for g in gens) | {IDENTITY}
    while True:
        sub = generated_subgroup(params, current)
        extra = set()
        for h in sub:
            for c in conj_by:
                k = g_mul(params, g_mul(params, c, h), g_inv(params, c))
                if k not in sub:
                    extra.add(k)
        if not extra:
            return sub
        current = set(sub) | extra


def center(params: ExtensionParams) -> Subgroup:
    """Brute-force center: elements commuting with X, Y and Z."""
    params.require_consistent()
    gens = generators(params)
    return Subgroup.of(
        g for g in elements(params)
        if all(g_mul(params, g, s) == g_mul(params, s, g) for s in gens)
    )


def cyclic_center(params: ExtensionParams) -> Subgroup:
    """<Z>."""
    return generated_subgroup(params, [generators(params)[2]])


def commutator(params: ExtensionParams, a: GElement, b: GElement) -> GElement:
    return g_mul(params, g_mul(params, a, b), g_inv(params, g_mul(params, b, a)))


def commutator_subgroup_bruteforce(params: ExtensionParams, full_limit: int = 256) -> Subgroup:
    """[G, G] as the normal closure of commutators.

    For |G| <= full_limit every commutator [g, h] is enumerated; above that only
    the commutators of generators are used (same normal closure, cheaper).
    """
    params.require_consistent()
    if params.order <= full_limit:
        els = elements(params)
        comms = {commutator(params, a, b) for a in els for b in els}
    else:
        gens = generators(params)
        comms = {commutator(params, a, b) for a in gens for b in gens}
    return normal_closure(params, comms)


def commutator_generator(params: ExtensionParams) -> GElement:
    """X^2 Z^(-alpha-gamma)."""
    X = generators(params)[0]
    return g_mul(params, g_mul(params, X, X), GElement(0, 0, (-params.alpha - params.gamma) % params.m))


def commutator_subgroup(params: ExtensionParams) -> Subgroup:
    """[G, G], computed by brute force and checked against <X^2 Z^(-alpha-gamma)>."""
    brute = commutator_subgroup_bruteforce(params)
    closed = generated_subgroup(params, [commutator_generator(params)])
    if brute != closed:
        raise ConsistencyError(
            f"[G,G] mismatch for {params.astuple()}: brute force order {len(brute)}, "
            f"closed form order {len(closed)}"
        )
    return brute


def normalize_beta(params: ExtensionParams) -> ExtensionParams:
    """Equivalent presentation with beta in {0, 1} (substitute Y -> Y Z^(-tau))."""
    return replace(params, beta=0 if _beta_is_even_class(params) else 1)


def _beta_is_even_class(params: ExtensionParams) -> bool:
    # Z^beta in <Z^2>: always for m odd, iff beta even for m even.
    return params.m % 2 == 1 or params.beta % 2 == 0


def normalize_beta_shift(params: ExtensionParams) -> int:
    """tau with beta - 2 tau = beta' (mod m); Y' = Y Z^(-tau) satisfies Y'^2 = Z^beta'."""
    m = params.m
    target = normalize_beta(params).beta
    for tau in range(m):
        if (params.beta - 2 * tau - target) % m == 0:
            return tau
    raise AssertionError("unreachable")


def find_isomorphism(src: ExtensionParams, dst: ExtensionParams):
    """Images (x, y, z) in dst of X, Y, Z of src defining an isomorphism, or None.

    Exhaustive over candidate images satisfying the defining relations of src;
    a surjective homomorphism between groups of equal order is an isomorphism.
    """
    src.require_consistent()
    dst.require_consistent()
    if src.order != dst.order:
        return None
    cen = center(dst)
    els = elements(dst)
    total = dst.order
    for z in cen:
        if g_pow(dst, z, src.m) != IDENTITY:
            continue
        za = g_pow(dst, z, src.alpha)
        zb = g_pow(dst, z, src.beta)
        zg = g_pow(dst, z, src.gamma)
        xs = [x for x in els if g_pow(dst, x, src.n) == za]
        ys = [y for y in els if g_mul(dst, y, y) == zb]
        for x in xs:
            xn1 = g_pow(dst, x, src.n - 1)
            for y in ys:
                if g_mul(dst, y, x) != g_mul(dst, g_mul(dst, xn1, y), zg):
                    continue
                if len(generated_subgroup(dst, [x, y, z])) == total:
                    return x, y, z
    return None


def embeddable(params: ExtensionParams) -> bool:
    """Whether G admits a faithful irreducible 2-dimensional complex representation.

    Only defined for n, m even: (n/2)(alpha + gamma) = alpha + m/2 (mod m).
    """
    n, m = params.n, params.m
    if n % 2 or m % 2:
        raise UnsupportedRegimeError(f"embeddability criterion needs n, m even (n={n}, m={m})")
    return (n // 2 * (params.alpha + params.gamma) - params.alpha - m // 2) % m == 0


def dihedral_h2(n: int, m: int) -> tuple[int, ...]:
    """Invariant factors of H^2(D_2n, Z/m) with trivial action."""
    if n < 3 or m < 1:
        raise ParameterError("need n >= 3 and m >= 1")
    if m % 2:
        return ()
    if n % 2:
        return (2,)
    return (2, 2, 2)


# D_2n = <r, s | r^n, s^2, srs^-1 r>; elements r^k s^e stored as (k, e).


class DElement(NamedTuple):
    k: int
    e: int


def d_mul(n: int, a: DElement, b: DElement) -> DElement:
    k1, e1 = a
    k2, e2 = b
    return DElement((k1 + (-k2 if e1 else k2)) % n, (e1 + e2) % 2)


def d_elements(n: int) -> tuple[DElement, ...]:
    return tuple(DElement(k, e) for k in range(n) for e in range(2))


def quotient_to_dihedral(params: ExtensionParams, g: GElement) -> DElement:
    """Image of g under G -> G/<Z> = D_2n (X -> r, Y -> s)."""
    return DElement(g.x % params.n, g.y)


# Gamma = (F_p)^2 x|_phi G.  ``phi`` is any object with ``field``, ``params`` and
# ``evaluate(g) -> Matrix2`` (a reps.Rep2 with source G).


class GammaElement(NamedTuple):
    v: tuple[int, int]
    g: GElement


def gamma_mul(phi, a: GammaElement, b: GammaElement) -> GammaElement:
    F = phi.field
    w = F.mat_vec(phi.evaluate(a.g), b.v)
    v = ((a.v[0] + w[0]) % F.p, (a.v[1] + w[1]) % F.p)
    return GammaElement(v, g_mul(phi.params, a.g, b.g))


def gamma_inv(phi, a: GammaElement) -> GammaElement:
    F = phi.field
    gi = g_inv(phi.params, a.g)
    w = F.mat_vec(phi.evaluate(gi), a.v)
    return GammaElement((-w[0] % F.p, -w[1] % F.p), gi)


def gamma_conj(phi, u: GammaElement, x: GammaElement) -> GammaElement:
    """u x u^-1."""
    return gamma_mul(phi, gamma_mul(phi, u, x), gamma_inv(phi, u))


def gamma_order(phi, a: GammaElement) -> int:
    ident = GammaElement((0, 0), IDENTITY)
    k, cur = 1, a
    while cur != ident:
        cur = gamma_mul(phi, cur, a)
        k += 1
    return k


def gamma_elements(phi) -> list[GammaElement]:
    p = phi.field.p
    return [
        GammaElement((a, b), g)
        for g in elements(phi.params)
        for a in range(p)
        for b in range(p)
    ]
