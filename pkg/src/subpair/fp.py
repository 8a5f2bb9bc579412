"""Linear algebra over the prime field F_p.

Subspaces of ``F_p^d`` are tuples of row vectors in reduced row echelon form,
which is the Howell form over ``Z/p``; equal subspaces are equal tuples.
Linear maps are matrices acting on column vectors (lists of rows).
"""

from __future__ import annotations

from typing import Sequence

from .kernels import ZMOD, howell_form

Space = tuple[tuple[int, ...], ...]


def rref(rows: Sequence[Sequence[int]], d: int, p: int) -> Space:
    rows = [[x % p for x in r] for r in rows]
    return tuple(howell_form(rows, d, p, 1, ZMOD))


def full(d: int) -> Space:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def pivots(space: Space) -> list[int]:
    out = []
    for r in space:
        for c, x in enumerate(r):
            if x:
                out.append(c)
                break
    return out


def add(a: Space, b: Space, d: int, p: int) -> Space:
    return rref(a + b, d, p)


def contains(space: Space, v: Sequence[int], p: int) -> bool:
    return not any(reduce(space, v, p))


def reduce(space: Space, v: Sequence[int], p: int) -> tuple[int, ...]:
    v = [x % p for x in v]
    for r, c in zip(space, pivots(space)):
        f = v[c]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, r)]
    return tuple(v)


def is_subspace(a: Space, b: Space, p: int) -> bool:
    return all(contains(b, r, p) for r in a)


def intersect(a: Space, b: Space, d: int, p: int) -> Space:
    if not a or not b:
        return ()
    rows = [tuple(u) + tuple(u) for u in a] + [tuple(v) + (0,) * d for v in b]
    out = [r[d:] for r in rref(rows, 2 * d, p) if not any(r[:d])]
    return rref(out, d, p)


def nullspace(matrix: Sequence[Sequence[int]], ncols: int, p: int) -> Space:
    """Basis of ``{x : M x = 0}`` for an ``m x ncols`` matrix ``M``."""
    red = rref(matrix, ncols, p)
    piv = pivots(red)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, c in zip(red, piv):
            x[c] = (-r[f]) % p
        basis.append(tuple(x))
    return rref(basis, ncols, p)


def annihilator(space: Space, d: int, p: int) -> Space:
    """Rows ``y`` with ``y . v = 0`` for all ``v`` in ``space``."""
    return nullspace(space, d, p)


def matvec(m, v, p):
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in m)


def matmul(a, b, p):
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def transpose(m, ncols):
    if not m:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*m)]


def identity(d: int):
    return [[int(i == j) for j in range(d)] for i in range(d)]


def zeros(r: int, c: int):
    return [[0] * c for _ in range(r)]


def image(space: Space, m, d_out: int, p: int) -> Space:
    return rref([matvec(m, v, p) for v in space], d_out, p)


def rank(m, ncols: int, p: int) -> int:
    return len(rref(m, ncols, p))


def inverse(m, p: int):
    """Inverse of a square matrix, or ``None`` if singular."""
    d = len(m)
    aug = [list(row) + [int(i == j) for j in range(d)] for i, row in enumerate(m)]
    red = rref(aug, 2 * d, p)
    if len(red) < d or pivots(red)[:d] != list(range(d)):
        return None
    return [list(r[d:]) for r in red[:d]]


def coordinates(basis: Sequence[Sequence[int]], v: Sequence[int], p: int):
    """Coefficients ``c`` with ``sum(c_i basis_i) = v`` (basis linearly independent), or ``None``."""
    k = len(basis)
    if k == 0:
        return () if not any(x % p for x in v) else None
    d = len(v)
    # solve B^T c = v
    cols = [[basis[i][j] for i in range(k)] + [v[j]] for j in range(d)]
    red = rref(cols, k + 1, p)
    piv = pivots(red)
    if k in piv:
        return None
    c = [0] * k
    for r, pc in zip(red, piv):
        c[pc] = r[k]
    return tuple(c)
