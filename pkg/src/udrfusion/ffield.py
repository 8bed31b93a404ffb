"""Arithmetic in F_p: primitive roots, roots of unity, discrete logs, 2x2 matrices."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError, ParameterError, SearchExhaustedError, SingularMatrixError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise DomainError("0 has no multiplicative order")
    order = p - 1
    for q in prime_factors(p - 1):
        while order % q == 0 and pow(x, order // q, p) == 1:
            order //= q
    return order


def find_primitive_root(p: int) -> int:
    """Least positive generator of the multiplicative group of F_p."""
    if p < 3 or not is_prime(p):
        raise ParameterError(f"expected an odd prime, got {p}")
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: F_p^* is cyclic")


def select_prime(params, search_bound: int) -> int:
    """Least prime p <= search_bound with p not dividing 2nm and p = 1 mod lcm(2n, 2m).

    ``params`` only needs ``n`` and ``m`` attributes.
    """
    n, m = params.n, params.m
    if n < 1 or m < 1:
        raise ParameterError("n and m must be positive")
    modulus = math.lcm(2 * n, 2 * m)
    order = 2 * n * m
    p = modulus + 1
    while p <= search_bound:
        if is_prime(p) and order % p != 0:
            return p
        p += modulus
    raise SearchExhaustedError(
        f"no prime p <= {search_bound} with p = 1 mod {modulus} and p not dividing {order}"
    )


class Matrix2(NamedTuple):
    """Row-major [[a, b], [c, d]] with entries in [0, p)."""

    a: int
    b: int
    c: int
    d: int

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def is_diagonal(self) -> bool:
        return self.b == 0 and self.c == 0

    @property
    def is_antidiagonal(self) -> bool:
        return self.a == 0 and self.d == 0


@lru_cache(maxsize=None)
def _dlog_table(p: int, w: int) -> dict[int, int]:
    table = {}
    x = 1
    for k in range(p - 1):
        table[x] = k
        x = x * w % p
    return table


@dataclass(frozen=True)
class PrimeField:
    p: int
    w: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "w", find_primitive_root(self.p))

    # scalars

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise DomainError("0 is not invertible")
        return pow(x, -1, self.p)

    def wpow(self, k: int) -> int:
        return pow(self.w, k % (self.p - 1), self.p)

    def dlog(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise DomainError("discrete log of 0 is undefined")
        return _dlog_table(self.p, self.w)[x]

    def order(self, x: int) -> int:
        return multiplicative_order(x, self.p)

    def root_of_unity(self, k: int) -> int:
        """The primitive k-th root w^((p-1)/k)."""
        if (self.p - 1) % k:
            raise ParameterError(f"{k} does not divide p - 1 = {self.p - 1}")
        return self.wpow((self.p - 1) // k)

    def roots_of_unity(self, k: int) -> list[int]:
        """All x with x^k = 1, sorted."""
        return sorted(x for x in range(1, self.p) if pow(x, k, self.p) == 1)

    def sqrt(self, x: int) -> int | None:
        """Canonical square root w^e with least e, or None if x is not a square."""
        e = self.dlog(x)
        if e % 2:
            return None
        return self.wpow(e // 2)

    # 2x2 matrices

    def mat(self, a: int, b: int, c: int, d: int) -> Matrix2:
        p = self.p
        return Matrix2(a % p, b % p, c % p, d % p)

    def identity(self) -> Matrix2:
        return Matrix2(1, 0, 0, 1)

    def diag(self, x: int, y: int) -> Matrix2:
        return self.mat(x, 0, 0, y)

    def antidiag(self, x: int, y: int) -> Matrix2:
        return self.mat(0, x, y, 0)

    def scalar(self, x: int) -> Matrix2:
        return self.mat(x, 0, 0, x)

    def mat_mul(self, a: Matrix2, b: Matrix2) -> Matrix2:
        p = self.p
        return Matrix2(
            (a.a * b.a + a.b * b.c) % p,
            (a.a * b.b + a.b * b.d) % p,
            (a.c * b.a + a.d * b.c) % p,
            (a.c * b.b + a.d * b.d) % p,
        )

    def mat_det(self, a: Matrix2) -> int:
        return (a.a * a.d - a.b * a.c) % self.p

    def mat_inv(self, a: Matrix2) -> Matrix2:
        det = self.mat_det(a)
        if det == 0:
            raise SingularMatrixError(f"singular matrix {tuple(a)} mod {self.p}")
        di = pow(det, -1, self.p)
        return self.mat(a.d * di, -a.b * di, -a.c * di, a.a * di)

    def mat_pow(self, a: Matrix2, k: int) -> Matrix2:
        if k < 0:
            a, k = self.mat_inv(a), -k
        result = self.identity()
        while k:
            if k & 1:
                result = self.mat_mul(result, a)
            a = self.mat_mul(a, a)
            k >>= 1
        return result

    def mat_scale(self, c: int, a: Matrix2) -> Matrix2:
        return self.mat(c * a.a, c * a.b, c * a.c, c * a.d)

    def mat_vec(self, a: Matrix2, v: tuple[int, int]) -> tuple[int, int]:
        p = self.p
        return ((a.a * v[0] + a.b * v[1]) % p, (a.c * v[0] + a.d * v[1]) % p)
