"""Representations of the poset ``P_n`` over ``F_p``.

``P_n`` is a chain ``1 < 2 < ... < n-1`` (drawn top to bottom, so larger
indices are smaller subspaces) together with two incomparable points ``1'``
and ``1''``.  A representation is a total space ``V^0 = F_p^d`` with a flag
``V^1 >= V^2 >= ... >= V^(n-1)`` and two further subspaces ``V'`` and
``V''``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from functools import lru_cache
from typing import Sequence

from . import fp
from .fp import Space


@dataclass(frozen=True, order=True)
class RepLabel:
    """``V(l, l', l'')`` (one-dimensional) or ``W(s, t)`` (two-dimensional)."""

    kind: str
    a: int
    b: int
    c: int = 0

    @classmethod
    def V(cls, ell: int, lp: int, lpp: int) -> "RepLabel":
        return cls("V", ell, lp, lpp)

    @classmethod
    def W(cls, s: int, t: int) -> "RepLabel":
        return cls("W", s, t, 0)

    def validate(self, n: int) -> None:
        if self.kind == "V":
            ok = 0 <= self.a <= n - 1 and self.b in (0, 1) and self.c in (0, 1)
        elif self.kind == "W":
            # the range that matches the census 4n + C(n, 2)
            ok = 0 <= self.a < self.b <= n - 1 and self.c == 0
        else:
            ok = False
        if not ok:
            raise ValueError(f"{self} is not a label for n={n}")

    @property
    def dim(self) -> int:
        return 1 if self.kind == "V" else 2

    def __str__(self):
        if self.kind == "V":
            return f"V({self.a},{self.b},{self.c})"
        return f"W({self.a},{self.b})"


def rep_labels(n: int) -> list[RepLabel]:
    out = [RepLabel.V(ell, a, b) for ell in range(n) for a in (0, 1) for b in (0, 1)]
    out += [RepLabel.W(s, t) for s in range(n) for t in range(s + 1, n)]
    return sorted(out)


@dataclass(frozen=True)
class PosetRep:
    p: int
    n: int
    dim0: int
    chain: tuple[Space, ...]
    vprime: Space
    vdprime: Space

    def __post_init__(self):
        d, p = self.dim0, self.p
        if len(self.chain) != self.n - 1:
            raise ValueError(f"need {self.n - 1} chain spaces, got {len(self.chain)}")
        object.__setattr__(self, "chain", tuple(fp.rref(s, d, p) for s in self.chain))
        object.__setattr__(self, "vprime", fp.rref(self.vprime, d, p))
        object.__setattr__(self, "vdprime", fp.rref(self.vdprime, d, p))
        for upper, lower in zip(self.chain, self.chain[1:]):
            if not fp.is_subspace(lower, upper, p):
                raise ValueError("chain spaces are not nested")

    @property
    def total(self) -> Space:
        return fp.full(self.dim0)

    def level(self, i: int) -> Space:
        """``V^i`` with ``V^0`` the total space."""
        return self.total if i == 0 else self.chain[i - 1]

    def spaces(self) -> list[Space]:
        """Subspaces at the points of ``P_n``: the chain, then ``V'``, ``V''``."""
        return list(self.chain) + [self.vprime, self.vdprime]

    def __str__(self):
        dims = [len(s) for s in self.chain]
        return f"PosetRep(dim={self.dim0}, chain={dims}, V'={len(self.vprime)}, V''={len(self.vdprime)})"


def make_indecomposable(label: RepLabel, p: int, n: int) -> PosetRep:
    label.validate(n)
    if label.kind == "V":
        ell, lp, lpp = label.a, label.b, label.c
        k = ((1,),)
        chain = tuple(k if i <= ell else () for i in range(1, n))
        return PosetRep(p, n, 1, chain, k if lp else (), k if lpp else ())
    s, t = label.a, label.b
    both = ((1, 0), (0, 1))
    diag = ((1, 1),)
    chain = tuple(both if i <= s else diag if i <= t else () for i in range(1, n))
    return PosetRep(p, n, 2, chain, ((1, 0),), ((0, 1),))


def satisfies_rep_prime(V: PosetRep) -> bool:
    p = V.p
    bottom = V.level(V.n - 1)
    return fp.is_subspace(bottom, V.vprime, p) and len(fp.add(V.vprime, V.vdprime, V.dim0, p)) == V.dim0


def direct_sum(reps: Sequence[PosetRep], p: int | None = None, n: int | None = None) -> PosetRep:
    if not reps:
        return PosetRep(p, n, 0, tuple(() for _ in range(n - 1)), (), ())
    p, n = reps[0].p, reps[0].n
    d = sum(V.dim0 for V in reps)

    def glue(get):
        rows, off = [], 0
        for V in reps:
            for r in get(V):
                rows.append((0,) * off + tuple(r) + (0,) * (d - off - V.dim0))
            off += V.dim0
        return tuple(rows)

    chain = tuple(glue(lambda V, i=i: V.chain[i]) for i in range(n - 1))
    return PosetRep(p, n, d, chain, glue(lambda V: V.vprime), glue(lambda V: V.vdprime))


def transform(V: PosetRep, g) -> PosetRep:
    """Image of ``V`` under an invertible matrix ``g`` (change of basis)."""
    p, d = V.p, V.dim0
    chain = tuple(fp.image(s, g, d, p) for s in V.chain)
    return PosetRep(p, V.n, d, chain, fp.image(V.vprime, g, d, p), fp.image(V.vdprime, g, d, p))


def restrict(V: PosetRep, basis: Sequence[Sequence[int]]) -> PosetRep:
    """Subrepresentation on ``span(basis)``, written in the coordinates of ``basis``."""
    p, d = V.p, V.dim0
    S = fp.rref(basis, d, p)
    k = len(basis)

    def sub(space):
        inter = fp.intersect(space, S, d, p)
        return tuple(fp.coordinates(basis, v, p) for v in inter)

    chain = tuple(sub(s) for s in V.chain)
    return PosetRep(p, V.n, k, chain, sub(V.vprime), sub(V.vdprime))


# -- homomorphisms --------------------------------------------------------------


def hom_space(V: PosetRep, W: PosetRep) -> list[list[list[int]]]:
    """Basis of ``Hom(V, W)``: matrices ``h`` (``W.dim0 x V.dim0``) with ``h(V^j) <= W^j``."""
    if (V.p, V.n) != (W.p, W.n):
        raise ValueError("representations of different posets or fields")
    p, dv, dw = V.p, V.dim0, W.dim0
    if dv == 0 or dw == 0:
        return []
    ncols = dw * dv
    constraints = []
    for sv, sw in zip(V.spaces(), W.spaces()):
        if len(sw) == dw or not sv:
            continue
        ann = fp.annihilator(sw, dw, p)
        for v in sv:
            for y in ann:
                row = [0] * ncols
                for a in range(dw):
                    if y[a]:
                        for b in range(dv):
                            if v[b]:
                                row[a * dv + b] = (row[a * dv + b] + y[a] * v[b]) % p
                constraints.append(row)
    basis = fp.nullspace(constraints, ncols, p)
    return [[list(x[a * dv:(a + 1) * dv]) for a in range(dw)] for x in basis]


def hom_dim(V: PosetRep, W: PosetRep) -> int:
    return len(hom_space(V, W))


def is_morphism(h, V: PosetRep, W: PosetRep) -> bool:
    p = V.p
    for sv, sw in zip(V.spaces(), W.spaces()):
        for v in sv:
            if not fp.contains(sw, fp.matvec(h, v, p), p):
                return False
    return True


def is_isomorphism(h, V: PosetRep, W: PosetRep) -> bool:
    """``h`` is invertible and carries every subspace of ``V`` onto that of ``W``."""
    if V.dim0 != W.dim0 or fp.inverse(h, V.p) is None:
        return False
    p, d = V.p, V.dim0
    return all(fp.image(sv, h, d, p) == sw for sv, sw in zip(V.spaces(), W.spaces()))


def find_isomorphism(V: PosetRep, W: PosetRep, seed: int = 0, attempts: int = 200):
    """An explicit isomorphism ``V -> W`` or ``None``."""
    if V.dim0 != W.dim0 or rank_invariants(V) != rank_invariants(W):
        return None
    if V.dim0 == 0:
        return []
    basis = hom_space(V, W)
    for h in basis:
        if is_isomorphism(h, V, W):
            return h
    rng = random.Random(seed)
    p, d = V.p, V.dim0
    for _ in range(attempts):
        cs = [rng.randrange(p) for _ in basis]
        h = [[sum(c * b[i][j] for c, b in zip(cs, basis)) % p for j in range(d)] for i in range(d)]
        if is_isomorphism(h, V, W):
            return h
    return None


# -- additive invariants and multiplicities -------------------------------------------


def _intersection_dims(V: PosetRep) -> list[int]:
    p, d = V.p, V.dim0
    vp, vpp = V.vprime, V.vdprime
    both = fp.intersect(vp, vpp, d, p)
    out = [d]
    out += [len(s) for s in V.chain]
    out += [len(vp), len(vpp)]
    out += [len(fp.intersect(s, vp, d, p)) for s in V.chain]
    out += [len(fp.intersect(s, vpp, d, p)) for s in V.chain]
    out.append(len(both))
    out += [len(fp.intersect(s, both, d, p)) for s in V.chain]
    return out


def rank_invariants(V: PosetRep) -> tuple[int, ...]:
    """Additive invariants: intersection dimensions, then ``dim Hom(L, V)`` per label ``L``."""
    dims = _intersection_dims(V)
    homs = [hom_dim(_indecomposable_cached(lab, V.p, V.n), V) for lab in rep_labels(V.n)]
    return tuple(dims + homs)


@lru_cache(maxsize=None)
def _indecomposable_cached(label: RepLabel, p: int, n: int) -> PosetRep:
    return make_indecomposable(label, p, n)


@lru_cache(maxsize=None)
def invariant_matrix(p: int, n: int):
    """Columns: invariants of each label.  Raises if the columns are dependent."""
    labels = rep_labels(n)
    cols = [rank_invariants(_indecomposable_cached(lab, p, n)) for lab in labels]
    M = [list(row) for row in zip(*cols)]
    if _rational_rank(M) != len(labels):
        raise ArithmeticError(f"invariant matrix for n={n} is not of full column rank")
    return labels, M


def _rational_rank(M) -> int:
    rows = [[Fraction(x) for x in r] for r in M]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _solve_exact(M, rhs) -> list[Fraction]:
    """Unique solution of the overdetermined system ``M x = rhs`` (full column rank)."""
    ncols = len(M[0])
    rows = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(M, rhs)]
    r = 0
    pivcols = []
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [a / pv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivcols.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        raise ArithmeticError("invariant vector is not a combination of label invariants")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivcols):
        x[c] = rows[i][-1]
    return x


@lru_cache(maxsize=None)
def _integer_solver(p: int, n: int):
    """``(rows, L, D)`` with ``D x = L rhs[rows]`` for every consistent right-hand side."""
    labels, M = invariant_matrix(p, n)
    k = len(labels)
    # pick k independent rows greedily, keeping an echelon basis of those seen so far
    chosen, basis = [], []
    for i, row in enumerate(M):
        v = [Fraction(x) for x in row]
        for c, b in basis:
            if v[c]:
                f = v[c] / b[c]
                v = [x - f * y for x, y in zip(v, b)]
        c = next((j for j, x in enumerate(v) if x), None)
        if c is not None:
            basis.append((c, v))
            chosen.append(i)
            if len(chosen) == k:
                break
    # invert the chosen square block by Gauss-Jordan on [S | I]
    aug = [[Fraction(x) for x in M[i]] + [Fraction(int(r == e)) for e in range(k)] for r, i in enumerate(chosen)]
    for c in range(k):
        piv = next(r for r in range(c, k) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(k):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    inv = [row[k:] for row in aug]
    D = 1
    for row in inv:
        for v in row:
            D = D * v.denominator // gcd(D, v.denominator)
    L = [[int(v * D) for v in row] for row in inv]
    return tuple(chosen), L, D


def multiplicities(V: PosetRep) -> Counter:
    """Multiset of indecomposable summands, read off from additive invariants."""
    if V.dim0 == 0:
        return Counter()
    labels, M = invariant_matrix(V.p, V.n)
    rows, L, D = _integer_solver(V.p, V.n)
    rhs = rank_invariants(V)
    sel = [rhs[i] for i in rows]
    x = []
    for lab, row in zip(labels, L):
        num = sum(a * b for a, b in zip(row, sel))
        if num % D or num < 0:
            raise ArithmeticError(f"no nonnegative integral decomposition (coefficient {Fraction(num, D)} at {lab})")
        x.append(num // D)
    if any(sum(a * b for a, b in zip(row, x)) != b for row, b in zip(M, rhs)):
        raise ArithmeticError("invariant vector is not a combination of label invariants")
    return Counter({lab: v for lab, v in zip(labels, x) if v})


# -- explicit decomposition ---------------------------------------------------------


def _fitting_split(W: PosetRep, rng: random.Random, attempts: int = 400):
    """Split ``W`` by the Fitting decomposition of an endomorphism.

    Returns ``(K, I)``: complementary bases (in ``W`` coordinates) of
    ``ker(phi^d)`` and ``im(phi^d)`` for some endomorphism ``phi`` with both
    nonzero, or ``None`` when no attempt splits.
    """
    p, d = W.p, W.dim0
    ends = hom_space(W, W)

    def try_phi(phi):
        for lam in range(p):
            psi = [[(phi[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
            power = psi
            for _ in range(d - 1):
                power = fp.matmul(power, psi, p)
            im = fp.rref(fp.transpose(power, d), d, p)
            if 0 < len(im) < d:
                ker = fp.nullspace(power, d, p)
                return [list(r) for r in ker], [list(r) for r in im]
        return None

    for phi in ends:
        out = try_phi(phi)
        if out:
            return out
    for _ in range(attempts):
        cs = [rng.randrange(p) for _ in ends]
        phi = [[sum(c * e[i][j] for c, e in zip(cs, ends)) % p for j in range(d)] for i in range(d)]
        out = try_phi(phi)
        if out:
            return out
    return None


def decompose(V: PosetRep, seed: int = 0) -> list[tuple[RepLabel, tuple[tuple[int, ...], ...]]]:
    """Split ``V`` into indecomposable subrepresentations.

    Returns ``(label, basis)`` pairs; the bases (rows in ``V^0``) together form
    a basis of ``V^0`` and each span is a subrepresentation isomorphic to the
    labelled indecomposable.  The output is verified before it is returned.
    """
    p, d = V.p, V.dim0
    rng = random.Random(seed)
    expected = multiplicities(V)
    pending = [[list(r) for r in fp.full(d)]] if d else []
    found = []
    while pending:
        basis = pending.pop()
        W = restrict(V, basis)
        mult = multiplicities(W)
        if sum(mult.values()) == 1:
            (lab,) = mult
            found.append((lab, tuple(tuple(r) for r in basis)))
            continue
        split = _fitting_split(W, rng)
        if split is None:
            raise ArithmeticError(f"could not split a representation with summands {dict(mult)}")
        for part in split:
            pending.append([list(fp.matvec(fp.transpose(basis, d), c, p)) for c in part])
    found.sort()
    _verify_decomposition(V, found, expected)
    return found


def _verify_decomposition(V, found, expected) -> None:
    p, d = V.p, V.dim0
    allrows = [r for _, b in found for r in b]
    if len(allrows) != d or len(fp.rref(allrows, d, p)) != d:
        raise ArithmeticError("summand bases do not form a basis of the total space")
    if Counter(lab for lab, _ in found) != expected:
        raise ArithmeticError("decomposition disagrees with the multiplicities")
    for space in V.spaces():
        pieces = sum(len(fp.intersect(space, fp.rref(b, d, p), d, p)) for _, b in found)
        if pieces != len(space):
            raise ArithmeticError("a subspace does not split along the summands")
    for lab, b in found:
        sub = restrict(V, b)
        if rank_invariants(sub) != rank_invariants(_indecomposable_cached(lab, p, V.n)):
            raise ArithmeticError(f"summand claimed as {lab} has the wrong invariants")
