"""Fusion of N = F_p^2 in Gamma = N x|_phi G.

Two elements of the abelian group N are fused in Gamma exactly when they lie in
the same phi(G)-orbit, so fusion is an orbit partition of F_p^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ConsistencyError, NotDeterminedError
from .ffield import PrimeField
from .groups import ExtensionParams, GammaElement, IDENTITY, Subgroup, elements, gamma_conj
from .reps import Rep2

Vec = tuple[int, int]


@dataclass(frozen=True)
class FusionPartition:
    """Orbits of F_p^2, each sorted, ordered by (size, least element)."""

    blocks: tuple[tuple[Vec, ...], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[Vec]]) -> "FusionPartition":
        bs = [tuple(sorted(set(b))) for b in blocks]
        bs.sort(key=lambda b: (len(b), b[0]))
        return cls(tuple(bs))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, v: Vec) -> tuple[Vec, ...]:
        for b in self.blocks:
            if v in b:
                return b
        raise KeyError(v)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def covers(self, p: int) -> bool:
        seen = [v for b in self.blocks for v in b]
        return len(seen) == p * p == len(set(seen))


def fusion_bruteforce(phi: Rep2, field: PrimeField | None = None) -> FusionPartition:
    """Orbits of F_p^2 under the matrix group generated by the images of phi."""
    F = phi.field
    p = F.p
    gens = phi.images
    seen: set[Vec] = set()
    blocks = []
    for v in ((a, b) for a in range(p) for b in range(p)):
        if v in seen:
            continue
        orbit = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for g in gens:
                    w = F.mat_vec(g, u)
                    if w not in orbit:
                        orbit.add(w)
                        nxt.append(w)
            frontier = nxt
        seen |= orbit
        blocks.append(orbit)
    return FusionPartition.of(blocks)


def orbit_length(n: int, ell: int) -> int:
    """k = n / gcd(n, ell), the multiplicative order of omega^ell."""
    return n // math.gcd(n, ell)


def fusion_closed_form(n: int, field: PrimeField, ell: int, verify: bool = False) -> FusionPartition:
    """Orbit partition for phi = theta_ell from the three orbit templates.

    {0}; (omega^(j ell) x, omega^(-j ell) y) for x, y nonzero with y/x in <omega^ell>;
    those together with the swapped pairs otherwise.
    """
    p = field.p
    omega = field.root_of_unity(n)
    step = pow(omega, ell, p)
    k = orbit_length(n, ell)
    powers = [pow(step, j, p) for j in range(k)]
    subgroup = set(powers)
    seen: set[Vec] = {(0, 0)}
    blocks = [[(0, 0)]]
    for x in range(p):
        for y in range(p):
            if (x, y) in seen:
                continue
            orbit = [(c * x % p, field.inv(c) * y % p) for c in powers]
            if not (x and y and y * field.inv(x) % p in subgroup):
                orbit += [(b, a) for a, b in orbit]
            seen.update(orbit)
            blocks.append(orbit)
    part = FusionPartition.of(blocks)
    if verify:
        from .reps import theta_ell

        brute = fusion_bruteforce(theta_ell(n, field, ell))
        if brute != part:
            raise ConsistencyError(f"closed-form fusion differs from brute force for n={n}, ell={ell}, p={p}")
    return part


def gamma_conjugacy_partition(phi: Rep2) -> FusionPartition:
    """Classes of N = {(v, 1)} under conjugation by every element of Gamma."""
    F = phi.field
    p = F.p
    G = elements(phi.params)
    gamma = [GammaElement((a, b), g) for g in G for a in range(p) for b in range(p)]
    seen: set[Vec] = set()
    blocks = []
    for v in ((a, b) for a in range(p) for b in range(p)):
        if v in seen:
            continue
        x = GammaElement(v, IDENTITY)
        cls = set()
        for u in gamma:
            c = gamma_conj(phi, u, x)
            if c.g != IDENTITY:
                raise ConsistencyError("N is not normal in Gamma")
            cls.add(c.v)
        seen |= cls
        blocks.append(cls)
    return FusionPartition.of(blocks)


def min_positive_x_exponent(params: ExtensionParams, kernels: Iterable[Subgroup]) -> int:
    xs = [g.x for K in kernels for g in K if g.x > 0]
    return min(xs) if xs else params.n


def recover_gcd_from_kernel_set(params: ExtensionParams, kernels: Iterable[Subgroup]) -> int:
    """gcd(n, ell) read off as n / e, e the least positive X-exponent in the kernels."""
    kernels = list(kernels)
    if not kernels:
        raise NotDeterminedError("empty kernel set: phi is nontrivial on the center")
    e = min_positive_x_exponent(params, kernels)
    return params.n // e
