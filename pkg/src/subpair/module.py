"""Finitely generated modules over the base ring and their submodules.

A module ``B = Lambda/(p^l_1) + ... + Lambda/(p^l_r)`` is stored by its
partition.  Internally every element is kept in *embedded* coordinates: the
summand ``Lambda/(p^l)`` is identified with the ideal ``p^(n-l) Lambda`` of
``Lambda``, so ``B`` sits inside ``Lambda^r`` and all submodule arithmetic is
plain row reduction over ``Lambda``.  The mixed moduli disappear: a
coordinate equation "= 0 mod p^l" becomes "= 0" after multiplying by
``p^(n-l)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .kernels import howell_form
from .ring import RingElem, RingSpec

Vector = tuple[int, ...]


def howell(spec: RingSpec, rows: Iterable[Sequence[int]], ncols: int) -> list[Vector]:
    return howell_form([list(r) for r in rows], ncols, spec.p, spec.n, spec.code)


def _pivot(spec: RingSpec, row: Vector) -> tuple[int, int]:
    for c, x in enumerate(row):
        if x:
            return c, spec.valuation(x)
    raise ValueError("zero row has no pivot")


def vec_add(spec, a, b):
    return tuple(spec.add(x, y) for x, y in zip(a, b))


def vec_sub(spec, a, b):
    return tuple(spec.sub(x, y) for x, y in zip(a, b))


def vec_scale(spec, c, a):
    return tuple(spec.mul(c, x) if x else 0 for x in a)


def vec_mul_p(spec, a, e):
    return tuple(spec.mul_p(x, e) for x in a)


def reduce_by(spec: RingSpec, rows: Sequence[Vector], pivots, x: Sequence[int]):
    """Reduce ``x`` by Howell rows; returns ``(residue, quotients)``.

    ``residue`` is zero iff ``x`` lies in the span of ``rows``; in that case
    ``x = sum(quotients[k] * rows[k])``.
    """
    x = list(x)
    quots = []
    for row, (c, v) in zip(rows, pivots):
        xc = x[c]
        pv = spec.p**v
        if xc == 0 or xc % pv:
            quots.append(0)
            continue
        f = xc // pv
        quots.append(f)
        for k in range(c, len(x)):
            if row[k]:
                x[k] = spec.sub(x[k], spec.mul(f, row[k]))
    return tuple(x), quots


@dataclass(frozen=True)
class Solution:
    """Solutions ``c`` of ``sum(c_k * gens[k]) = rhs``: ``particular + span(homogeneous)``."""

    particular: Vector | None
    homogeneous: tuple[Vector, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve_system(spec: RingSpec, gens: Sequence[Sequence[int]], rhs: Sequence[int] | None = None) -> Solution:
    """Solve a linear system over Lambda by Howell reduction of ``[gens | I]``.

    ``gens`` are K vectors of width N; the unknowns are the K coefficients.
    With ``rhs=None`` only the homogeneous solutions are returned (with the
    zero vector as particular solution).
    """
    K = len(gens)
    N = len(gens[0]) if K else (len(rhs) if rhs is not None else 0)
    if any(len(g) != N for g in gens) or (rhs is not None and len(rhs) != N):
        raise ValueError("malformed system: inconsistent vector widths")
    aug = []
    for k, g in enumerate(gens):
        row = list(g) + [0] * K
        row[N + k] = 1
        aug.append(row)
    rows = howell(spec, aug, N + K)
    left = [(r, _pivot(spec, r)) for r in rows if _pivot(spec, r)[0] < N]
    homog = tuple(r[N:] for r in rows if _pivot(spec, r)[0] >= N)
    if rhs is None:
        return Solution(tuple([0] * K), homog)
    target = list(rhs) + [0] * K
    res, _ = reduce_by(spec, [r for r, _ in left], [pv for _, pv in left], target)
    if any(res[:N]):
        return Solution(None, homog)
    return Solution(tuple(spec.neg(x) for x in res[N:]), homog)


def left_zero_rows(spec: RingSpec, rows, split: int, ncols: int) -> list[Vector]:
    """Right halves of the rows of ``span(rows)`` whose first ``split`` entries vanish."""
    out = []
    for r in howell(spec, rows, ncols):
        if not any(r[:split]):
            out.append(r[split:])
    return out


@dataclass(frozen=True)
class LambdaModule:
    spec: RingSpec
    partition: tuple[int, ...]

    def __post_init__(self):
        part = tuple(int(x) for x in self.partition)
        object.__setattr__(self, "partition", part)
        if any(a < b for a, b in zip(part, part[1:])):
            raise ValueError(f"partition {part} is not weakly decreasing")
        if any(not 1 <= x <= self.spec.n for x in part):
            raise ValueError(f"partition parts must lie in [1, {self.spec.n}]")

    @property
    def rank(self) -> int:
        return len(self.partition)

    @property
    def length(self) -> int:
        return sum(self.partition)

    @property
    def cardinality(self) -> int:
        return self.spec.p**self.length

    @property
    def loewy_length(self) -> int:
        return max(self.partition, default=0)

    def embed(self, coords: Sequence[int]) -> Vector:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        spec = self.spec
        out = []
        for x, lam in zip(coords, self.partition):
            x = int(x) % spec.p**lam
            out.append(x * spec.p ** (spec.n - lam))
        return tuple(out)

    def unembed(self, vec: Sequence[int]) -> Vector:
        spec = self.spec
        return tuple(x // spec.p ** (spec.n - lam) for x, lam in zip(vec, self.partition))

    def is_embedded(self, vec: Sequence[int]) -> bool:
        return all(x % self.spec.p ** (self.spec.n - lam) == 0 for x, lam in zip(vec, self.partition))

    def element(self, coords) -> "ModElem":
        return ModElem(self, self.unembed(self.embed(coords)))

    def submodule(self, gens: Iterable) -> "Submodule":
        vecs = []
        for g in gens:
            if isinstance(g, ModElem):
                if g.module != self:
                    raise ValueError("generator from another module")
                vecs.append(g.embedded)
            else:
                vecs.append(self.embed(g))
        return Submodule.span(self, vecs)

    @cached_property
    def whole(self) -> "Submodule":
        spec = self.spec
        rows = []
        for i, lam in enumerate(self.partition):
            row = [0] * self.rank
            row[i] = spec.p ** (spec.n - lam)
            rows.append(tuple(row))
        return Submodule(self, tuple(rows))

    @cached_property
    def zero(self) -> "Submodule":
        return Submodule(self, ())

    @cached_property
    def socle(self) -> "Submodule":
        spec = self.spec
        rows = []
        for i in range(self.rank):
            row = [0] * self.rank
            row[i] = spec.p ** (spec.n - 1)
            rows.append(tuple(row))
        return Submodule(self, tuple(rows))

    def radical_power(self, ell: int) -> "Submodule":
        if not 0 <= ell <= self.spec.n:
            raise ValueError(f"ell={ell} outside [0, n]")
        return self.whole.scalar_image(ell)

    def elements(self) -> Iterator["ModElem"]:
        p = self.spec.p
        for coords in itertools.product(*(range(p**lam) for lam in self.partition)):
            yield ModElem(self, coords)

    def standard_generator(self, i: int) -> "ModElem":
        coords = [0] * self.rank
        coords[i] = 1
        return ModElem(self, tuple(coords))

    def height(self, x: "ModElem") -> int:
        """Largest m with ``x`` in ``p^m B``; decided by membership tests."""
        if not any(x.coords):
            raise ValueError("height of the zero element")
        for m in range(self.spec.n - 1, -1, -1):
            if self.radical_power(m).contains(x):
                return m
        raise AssertionError("unreachable: every element lies in p^0 B")

    def height_sequence(self, a: "ModElem") -> tuple[int, ...]:
        if not any(a.coords):
            raise ValueError("height sequence of the zero element")
        seq = []
        x = a
        while any(x.coords):
            seq.append(self.height(x))
            x = x.mul_p(1)
        return tuple(seq)

    def __str__(self):
        return "+".join(f"L/p^{lam}" for lam in self.partition) or "0"


@dataclass(frozen=True)
class ModElem:
    module: LambdaModule
    coords: Vector

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        p = self.module.spec.p
        if len(self.coords) != self.module.rank:
            raise ValueError("coordinate count does not match the module rank")
        for x, lam in zip(self.coords, self.module.partition):
            if not 0 <= x < p**lam:
                raise ValueError(f"coordinate {x} not reduced mod p^{lam}")

    @property
    def embedded(self) -> Vector:
        return self.module.embed(self.coords)

    @classmethod
    def from_embedded(cls, module: LambdaModule, vec) -> "ModElem":
        return cls(module, module.unembed(vec))

    def __add__(self, other: "ModElem") -> "ModElem":
        if other.module != self.module:
            raise ValueError("module mismatch")
        return ModElem.from_embedded(self.module, vec_add(self.module.spec, self.embedded, other.embedded))

    def __sub__(self, other: "ModElem") -> "ModElem":
        if other.module != self.module:
            raise ValueError("module mismatch")
        return ModElem.from_embedded(self.module, vec_sub(self.module.spec, self.embedded, other.embedded))

    def scale(self, c) -> "ModElem":
        """``c * self`` for an encoded ring element (int) or :class:`RingElem`."""
        c = c.value if isinstance(c, RingElem) else int(c)
        return ModElem.from_embedded(self.module, vec_scale(self.module.spec, c, self.embedded))

    def mul_p(self, e: int) -> "ModElem":
        return ModElem.from_embedded(self.module, vec_mul_p(self.module.spec, self.embedded, e))

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class Submodule:
    """A submodule stored by the Howell form of its embedded generators."""

    module: LambdaModule
    rows: tuple[Vector, ...]
    pivots: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.pivots and self.rows:
            object.__setattr__(self, "pivots", tuple(_pivot(self.module.spec, r) for r in self.rows))

    @classmethod
    def span(cls, module: LambdaModule, vecs: Iterable[Sequence[int]]) -> "Submodule":
        rows = howell(module.spec, vecs, module.rank)
        return cls(module, tuple(rows))

    @property
    def spec(self) -> RingSpec:
        return self.module.spec

    @property
    def gens(self) -> tuple[ModElem, ...]:
        return tuple(ModElem.from_embedded(self.module, r) for r in self.rows)

    @property
    def length(self) -> int:
        return sum(self.spec.n - v for _, v in self.pivots)

    @property
    def cardinality(self) -> int:
        return self.spec.p**self.length

    def is_zero(self) -> bool:
        return not self.rows

    def _vec(self, x) -> Vector:
        if isinstance(x, ModElem):
            if x.module != self.module:
                raise ValueError("element from another module")
            return x.embedded
        return tuple(x)

    def contains(self, x) -> bool:
        res, _ = reduce_by(self.spec, self.rows, self.pivots, self._vec(x))
        return not any(res)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def _same(self, other: "Submodule"):
        if other.module != self.module:
            raise ValueError("submodules of different modules")

    def __add__(self, other: "Submodule") -> "Submodule":
        self._same(other)
        if not other.rows:
            return self
        if not self.rows:
            return other
        return Submodule.span(self.module, self.rows + other.rows)

    def intersect(self, other: "Submodule") -> "Submodule":
        self._same(other)
        if not self.rows or not other.rows:
            return self.module.zero
        r = self.module.rank
        rows = [tuple(u) + tuple(u) for u in self.rows]
        rows += [tuple(v) + (0,) * r for v in other.rows]
        return Submodule.span(self.module, left_zero_rows(self.spec, rows, r, 2 * r))

    __and__ = intersect

    def __le__(self, other: "Submodule") -> bool:
        self._same(other)
        return all(other.contains(r) for r in self.rows)

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self != other

    def scalar_image(self, e: int) -> "Submodule":
        """``p^e U``."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        if e == 0:
            return self
        return Submodule.span(self.module, [vec_mul_p(self.spec, r, e) for r in self.rows])

    def scalar_preimage(self, e: int) -> "Submodule":
        """``p^-e U = {x in B : p^e x in U}``."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        if e == 0:
            return self
        if e >= self.spec.n:
            return self.module.whole
        r = self.module.rank
        rows = [vec_mul_p(self.spec, b, e) + tuple(b) for b in self.module.whole.rows]
        rows += [tuple(u) + (0,) * r for u in self.rows]
        return Submodule.span(self.module, left_zero_rows(self.spec, rows, r, 2 * r))

    def radical(self) -> "Submodule":
        return self.scalar_image(1)

    def elements(self) -> Iterator[ModElem]:
        """Every element exactly once (Howell rows give unique coefficients)."""
        spec = self.spec
        ranges = [range(spec.p ** (spec.n - v)) for _, v in self.pivots]
        zero = (0,) * self.module.rank
        for cs in itertools.product(*ranges):
            x = zero
            for c, row in zip(cs, self.rows):
                if c:
                    x = vec_add(spec, x, vec_scale(spec, c, row))
            yield ModElem.from_embedded(self.module, x)

    def min_generators(self) -> int:
        """Number of generators of a minimal generating set (``dim U/pU``)."""
        return self.length - self.scalar_image(1).length

    def __repr__(self):
        return f"Submodule({self.module}, gens={[g.coords for g in self.gens]})"


def canonicalize(module: LambdaModule, gens) -> Submodule:
    """Canonical generator matrix of the submodule spanned by ``gens`` (coordinate tuples)."""
    return module.submodule(gens)


def membership(U: Submodule, x: ModElem) -> bool:
    return U.contains(x)


def sum_(U: Submodule, V: Submodule) -> Submodule:
    return U + V


def intersect(U: Submodule, V: Submodule) -> Submodule:
    return U.intersect(V)


def scalar_image(U: Submodule, e: int) -> Submodule:
    return U.scalar_image(e)


def scalar_preimage(U: Submodule, e: int) -> Submodule:
    return U.scalar_preimage(e)


def socle(B: LambdaModule) -> Submodule:
    return B.socle


def radical_power(B: LambdaModule, ell: int) -> Submodule:
    return B.radical_power(ell)


def height_sequence(B: LambdaModule, a: ModElem) -> tuple[int, ...]:
    return B.height_sequence(a)
