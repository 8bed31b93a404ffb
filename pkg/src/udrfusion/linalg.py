"""Exact linear algebra over F_p.

Small systems (a few dozen unknowns) go through plain lists.  Cochain systems
with up to ~10^5 equations are fed as a stream of numpy row blocks and reduced
against a growing RREF basis, so the full matrix is never materialised.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ConsistencyError


def rref(rows: Sequence[Sequence[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    m = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        row = [x * inv % p for x in m[r]]
        m[r] = row
        for i in range(len(m)):
            f = m[i][c]
            if i != r and f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence[int]], ncols: int, p: int) -> int:
    return len(rref(rows, ncols, p)[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0}."""
    red, pivots = rref(rows, ncols, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = -row[f] % p
        basis.append(x)
    return basis


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def mat_identity(d: int) -> list[list[int]]:
    return [[int(i == j) for j in range(d)] for i in range(d)]


def mat_inverse(a: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    d = len(a)
    aug = [list(row) + e for row, e in zip(a, mat_identity(d))]
    red, pivots = rref(aug, d, p)
    if pivots != list(range(d)):
        raise ConsistencyError("matrix is singular")
    return [row[d:] for row in red]


def hom_dim(src: Sequence[Sequence[Sequence[int]]], dst: Sequence[Sequence[Sequence[int]]], p: int) -> int:
    """dim {T : T src[g] = dst[g] T for all g}, for T of shape len(dst) x len(src)."""
    return len(hom_basis(src, dst, p))


def hom_basis(src, dst, p: int) -> list[list[int]]:
    """Intertwiners as flattened row-major dst_dim x src_dim matrices."""
    ds, dd = len(src[0]), len(dst[0])
    nvar = dd * ds
    rows = []
    for a, b in zip(src, dst):
        for r in range(dd):
            for c in range(ds):
                row = [0] * nvar
                for k in range(ds):
                    row[r * ds + k] += a[k][c]
                for k in range(dd):
                    row[k * ds + c] -= b[r][k]
                rows.append(row)
    return nullspace(rows, nvar, p)


# streamed RREF for large systems


def _exact_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] * (p - 1) ** 2 < 2**52:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    return (a.astype(object) @ b.astype(object) % p).astype(np.int64)


def _rref_dense(block: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    R = block.copy()
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r, c:] = R[r, c:] * pow(int(R[r, c]), -1, p) % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit, c:] = (R[hit, c:] - np.outer(col[hit], R[r, c:])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rref_stream(blocks: Iterable[np.ndarray], ncols: int, p: int) -> tuple[np.ndarray, list[int]]:
    """RREF basis (rows) and pivot columns of the row space spanned by ``blocks``."""
    basis = np.zeros((0, ncols), dtype=np.int64)
    pivots: list[int] = []
    for block in blocks:
        R = np.asarray(block, dtype=np.int64) % p
        if not R.size:
            continue
        if pivots:
            R = (R - _exact_matmul(R[:, pivots], basis, p)) % p
        keep = np.flatnonzero(R.any(axis=1))
        if keep.size == 0:
            continue
        new, new_piv = _rref_dense(R[keep], p)
        if not new_piv:
            continue
        if pivots:
            basis = (basis - _exact_matmul(basis[:, new_piv], new, p)) % p
        basis = np.vstack([basis, new])
        pivots = pivots + new_piv
        if len(pivots) == ncols:
            break
    order = np.argsort(pivots, kind="stable")
    return basis[order], [pivots[i] for i in order]


def rank_stream(blocks: Iterable[np.ndarray], ncols: int, p: int) -> int:
    return len(rref_stream(blocks, ncols, p)[1])


def solve_stream(blocks: Iterable[np.ndarray], nvars: int, nrhs: int, p: int) -> np.ndarray:
    """Solve A x_j = b_j for augmented row blocks [A | b_1 ... b_nrhs].

    Free variables are set to zero.  Returns an (nvars, nrhs) array; raises
    ConsistencyError if some right-hand side is not in the column space.
    """
    basis, pivots = rref_stream(blocks, nvars + nrhs, p)
    if pivots and pivots[-1] >= nvars:
        raise ConsistencyError("inconsistent linear system")
    x = np.zeros((nvars, nrhs), dtype=np.int64)
    for row, pc in zip(basis, pivots):
        x[pc] = row[nvars:]
    return x
