"""Morphisms of pairs, Hom groups, and the nilpotent ideal ``N``.

A morphism ``f: (B; A) -> (D; C)`` is a Lambda-linear map with ``f(A) <= C``,
stored as the matrix of ``f`` on the cyclic generators: entry ``(i, j)`` is
the ``i``-th coordinate of ``f(e_j)``, a residue mod ``p^mu_i`` that must be
divisible by ``p^(mu_i - lambda_j)`` for ``f`` to be well defined.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .module import LambdaModule, ModElem, Submodule, left_zero_rows, solve_system, vec_add, vec_scale
from .pairs import DirectSum, Pair, make_picket


class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class PairMorphism:
    source: Pair
    target: Pair
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        spec = self.source.spec
        if self.target.spec != spec:
            raise MorphismError("morphism between pairs over different rings")
        lam, mu = self.source.B.partition, self.target.B.partition
        if len(m) != len(mu) or any(len(row) != len(lam) for row in m):
            raise MorphismError(f"matrix shape does not match {len(mu)}x{len(lam)}")
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if not 0 <= x < spec.p ** mu[i]:
                    raise MorphismError(f"entry ({i},{j}) not reduced mod p^{mu[i]}")
                if x and spec.valuation(x) < mu[i] - lam[j]:
                    raise MorphismError(f"entry ({i},{j}) = {x} is not well defined")

    @property
    def spec(self):
        return self.source.spec

    def apply(self, x: ModElem) -> ModElem:
        spec = self.spec
        mu = self.target.B.partition
        out = []
        for i, row in enumerate(self.matrix):
            acc = 0
            for f, c in zip(row, x.coords):
                if f and c:
                    acc = spec.add(acc, spec.mul(f, c))
            out.append(acc % spec.p ** mu[i])
        return ModElem(self.target.B, tuple(out))

    def apply_embedded(self, vec) -> tuple[int, ...]:
        return self.apply(ModElem.from_embedded(self.source.B, vec)).embedded

    def image(self, U: Submodule) -> Submodule:
        return Submodule.span(self.target.B, [self.apply_embedded(r) for r in U.rows])

    def is_valid(self) -> bool:
        """``f(A) <= C``."""
        return self.image(self.source.A) <= self.target.A

    def is_zero(self) -> bool:
        return not any(x for row in self.matrix for x in row)

    def __matmul__(self, other: "PairMorphism") -> "PairMorphism":
        """``self @ other`` is the composite ``self o other``."""
        return compose(self, other)

    def __add__(self, other: "PairMorphism") -> "PairMorphism":
        if (other.source, other.target) != (self.source, self.target):
            raise MorphismError("adding morphisms with different endpoints")
        spec = self.spec
        mu = self.target.B.partition
        rows = tuple(
            tuple(spec.add(a, b) % spec.p ** mu[i] for a, b in zip(ra, rb))
            for i, (ra, rb) in enumerate(zip(self.matrix, other.matrix))
        )
        return PairMorphism(self.source, self.target, rows)

    def scale(self, c: int) -> "PairMorphism":
        spec = self.spec
        mu = self.target.B.partition
        rows = tuple(tuple(spec.mul(c, a) % spec.p ** mu[i] for a in row) for i, row in enumerate(self.matrix))
        return PairMorphism(self.source, self.target, rows)

    def is_bijective(self) -> bool:
        return (
            self.source.B.partition == self.target.B.partition
            and self.image(self.source.B.whole) == self.target.B.whole
        )

    def inverse(self) -> "PairMorphism | None":
        """Two-sided inverse as a morphism of pairs, or ``None``."""
        if not self.is_bijective() or self.image(self.source.A) != self.target.A:
            return None
        B, D = self.source.B, self.target.B
        imgs = [self.apply_embedded(r) for r in B.whole.rows]
        cols = []
        for j in range(D.rank):
            sol = solve_system(B.spec, imgs, D.standard_generator(j).embedded)
            if not sol.consistent:
                return None
            x = (0,) * B.rank
            for c, r in zip(sol.particular, B.whole.rows):
                if c:
                    x = vec_add(B.spec, x, vec_scale(B.spec, c, r))
            cols.append(B.unembed(x))
        matrix = tuple(tuple(cols[j][i] for j in range(D.rank)) for i in range(B.rank))
        return PairMorphism(self.target, self.source, matrix)

    def __str__(self):
        return f"PairMorphism({self.source} -> {self.target}, {self.matrix})"


def compose(g: PairMorphism, f: PairMorphism) -> PairMorphism:
    """``g o f``."""
    if f.target.B != g.source.B:
        raise MorphismError("morphisms are not composable")
    spec = f.spec
    nu = g.target.B.partition
    rows = []
    for i, grow in enumerate(g.matrix):
        row = []
        for j in range(f.source.B.rank):
            acc = 0
            for k, a in enumerate(grow):
                b = f.matrix[k][j]
                if a and b:
                    acc = spec.add(acc, spec.mul(a, b))
            row.append(acc % spec.p ** nu[i])
        rows.append(tuple(row))
    return PairMorphism(f.source, g.target, tuple(rows))


def identity(x: Pair) -> PairMorphism:
    r = x.B.rank
    return PairMorphism(x, x, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))


def zero_morphism(x: Pair, y: Pair) -> PairMorphism:
    return PairMorphism(x, y, tuple((0,) * x.B.rank for _ in range(y.B.rank)))


def morphism_from_images(x: Pair, y: Pair, basis: Sequence[tuple[int, ...]], images: Sequence[tuple[int, ...]]) -> PairMorphism:
    """The map sending ``basis[k]`` to ``images[k]`` (both embedded vectors).

    ``basis`` must generate ``B``; the standard generators are expressed in
    it by solving, so the result is independent of that choice whenever the
    assignment extends to a homomorphism.
    """
    B, D = x.B, y.B
    spec = B.spec
    cols = []
    for j in range(B.rank):
        sol = solve_system(spec, list(basis), B.standard_generator(j).embedded)
        if not sol.consistent:
            raise MorphismError("basis does not generate the source module")
        acc = (0,) * D.rank
        for c, img in zip(sol.particular, images):
            if c:
                acc = vec_add(spec, acc, vec_scale(spec, c, img))
        cols.append(D.unembed(acc))
    matrix = tuple(tuple(cols[j][i] for j in range(B.rank)) for i in range(D.rank))
    return PairMorphism(x, y, matrix)


def inclusions(ds: DirectSum) -> list[PairMorphism]:
    """Canonical split monomorphisms ``X_k -> X_1 + ... + X_r``."""
    out = []
    total = ds.pair
    for x, place in zip(ds.summands, ds.placement):
        rows = [[0] * x.B.rank for _ in range(total.B.rank)]
        for i, pos in enumerate(place):
            rows[pos][i] = 1
        out.append(PairMorphism(x, total, tuple(tuple(r) for r in rows)))
    return out


def projections(ds: DirectSum) -> list[PairMorphism]:
    out = []
    total = ds.pair
    for x, place in zip(ds.summands, ds.placement):
        rows = [[0] * total.B.rank for _ in range(x.B.rank)]
        for i, pos in enumerate(place):
            rows[i][pos] = 1
        out.append(PairMorphism(total, x, tuple(tuple(r) for r in rows)))
    return out


# -- Hom groups ---------------------------------------------------------------------


@dataclass(frozen=True)
class HomGroup:
    """``{f in Hom_Lambda(B, D) : f(S) <= T}`` as a submodule of ``+ Lambda/(p^min(l_j, mu_i))``."""

    source: Pair
    target: Pair
    slots: tuple[tuple[int, int], ...]
    ambient: LambdaModule
    sub: Submodule

    @property
    def length(self) -> int:
        return self.sub.length

    @property
    def cardinality(self) -> int:
        return self.sub.cardinality

    @cached_property
    def structure(self) -> tuple[int, ...]:
        """Exponents of the cyclic factors, largest first."""
        n = self.sub.spec.n
        lengths = [self.sub.scalar_image(k).length for k in range(n + 1)]
        count_ge = [lengths[k] - lengths[k + 1] for k in range(n)]
        out = []
        for e in range(n, 0, -1):
            num = count_ge[e - 1] - (count_ge[e] if e < n else 0)
            out += [e] * num
        return tuple(out)

    def morphism(self, coords: Sequence[int]) -> PairMorphism:
        """Morphism with slot coordinates ``coords`` (residues in the ambient module)."""
        spec = self.source.spec
        lam, mu = self.source.B.partition, self.target.B.partition
        rows = [[0] * len(lam) for _ in mu]
        for z, (i, j) in zip(coords, self.slots):
            if z:
                rows[i][j] = spec.mul_p(z, max(0, mu[i] - lam[j])) % spec.p ** mu[i]
        return PairMorphism(self.source, self.target, tuple(tuple(r) for r in rows))

    def coords_of(self, f: PairMorphism) -> tuple[int, ...]:
        spec = self.source.spec
        lam, mu = self.source.B.partition, self.target.B.partition
        out = []
        for i, j in self.slots:
            e = max(0, mu[i] - lam[j])
            out.append((f.matrix[i][j] // spec.p**e) % spec.p ** min(lam[j], mu[i]))
        return tuple(out)

    @property
    def generators(self) -> list[PairMorphism]:
        return [self.morphism(g.coords) for g in self.sub.gens]

    def contains(self, f: PairMorphism) -> bool:
        return self.sub.contains(self.ambient.element(self.coords_of(f)))

    def random_element(self, rng: random.Random) -> PairMorphism:
        spec = self.sub.spec
        x = (0,) * self.ambient.rank
        for row in self.sub.rows:
            c = rng.randrange(spec.order)
            if c:
                x = vec_add(spec, x, vec_scale(spec, c, row))
        return self.morphism(self.ambient.unembed(x))

    def elements(self):
        for z in self.sub.elements():
            yield self.morphism(z.coords)


def _constrained_homs(x: Pair, y: Pair, S: Submodule, T: Submodule) -> HomGroup:
    if x.spec != y.spec:
        raise MorphismError("pairs over different rings")
    spec = x.spec
    lam, mu = x.B.partition, y.B.partition
    raw = [(i, j) for i in range(len(mu)) for j in range(len(lam))]
    slots = tuple(sorted(raw, key=lambda ij: -min(lam[ij[1]], mu[ij[0]])))
    ambient = LambdaModule(spec, tuple(min(lam[j], mu[i]) for i, j in slots))
    R = ambient.rank
    if R == 0:
        return HomGroup(x, y, slots, ambient, ambient.zero)
    sgens = list(S.rows)
    rD = y.B.rank
    width = len(sgens) * rD
    proto = HomGroup(x, y, slots, ambient, ambient.zero)
    rows = []
    for s in range(R):
        unit = [0] * R
        unit[s] = 1
        f = proto.morphism(unit)
        left = []
        for g in sgens:
            left += list(f.apply_embedded(g))
        right = ambient.embed(unit)
        rows.append(tuple(left) + tuple(right))
    for k in range(len(sgens)):
        for t in T.rows:
            left = [0] * width
            left[k * rD:(k + 1) * rD] = t
            rows.append(tuple(left) + (0,) * R)
    vecs = left_zero_rows(spec, rows, width, width + R)
    return HomGroup(x, y, slots, ambient, Submodule.span(ambient, vecs))


def hom_basis(x: Pair, y: Pair) -> HomGroup:
    """``Hom((B; A), (D; C))``."""
    return _constrained_homs(x, y, x.A, y.A)


def ideal_N(x: Pair, y: Pair) -> HomGroup:
    """``N(x, y) = {f : f(A+) <= C-}`` (automatically a subgroup of the Hom group)."""
    return _constrained_homs(x, y, x.a_plus, y.a_minus)


def in_ideal_N(f: PairMorphism) -> bool:
    return f.image(f.source.a_plus) <= f.target.a_minus


def quotient_dim_mod_N(x: Pair, y: Pair) -> int:
    H = hom_basis(x, y)
    N = ideal_N(x, y)
    if not N.sub <= H.sub:
        raise ArithmeticError("N is not contained in Hom")
    if not H.sub.scalar_image(1) <= N.sub:
        raise ArithmeticError("Hom/N is not annihilated by p")
    return H.length - N.length


def nilpotency_check(chain: Sequence[PairMorphism]) -> bool:
    """Whether the composite of ``chain`` (applied left to right) is zero."""
    if not chain:
        raise MorphismError("empty chain")
    total = chain[0]
    for f in chain[1:]:
        if f.source != total.target:
            raise MorphismError("chain is not composable")
        total = compose(f, total)
    return total.is_zero()


def explicit_nonzero_chain(spec) -> list[PairMorphism]:
    """``P_1^n -> P_2^n -p-> P_2^n -p-> ... -p-> P_2^n`` (``n`` maps, all in ``N``)."""
    n = spec.n
    if n < 2:
        raise ValueError("the chain needs n >= 2")
    p1, p2 = make_picket(spec, 1, n), make_picket(spec, 2, n)
    chain = [PairMorphism(p1, p2, ((1,),))]
    times_p = PairMorphism(p2, p2, ((spec.p,),))
    chain += [times_p] * (n - 1)
    return chain
