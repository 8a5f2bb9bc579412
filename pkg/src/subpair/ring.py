"""The base rings ``Z/p^n`` and ``F_p[T]/(T^n)``.

Both are commutative local uniserial rings of length ``n`` with maximal ideal
generated by ``p`` (resp. ``T``) and residue field ``F_p``.  Elements are
encoded as ints in ``[0, p**n)``; see :mod:`subpair._pykernels` for the
packing used by the truncated polynomial ring.  The uniformizer is the int
``p`` in both encodings.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from . import _pykernels
from .kernels import TRUNCPOLY, ZMOD


class RingKind(enum.Enum):
    ZMOD = "zmod"
    TRUNCPOLY = "truncpoly"

    @property
    def code(self) -> int:
        return ZMOD if self is RingKind.ZMOD else TRUNCPOLY


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    kind: RingKind
    p: int
    n: int

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", RingKind(self.kind.lower()))
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.n < 1:
            raise ValueError(f"length n={self.n} must be positive")

    @classmethod
    def zmod(cls, p: int, n: int) -> "RingSpec":
        return cls(RingKind.ZMOD, p, n)

    @classmethod
    def truncpoly(cls, p: int, n: int) -> "RingSpec":
        return cls(RingKind.TRUNCPOLY, p, n)

    def __str__(self):
        if self.kind is RingKind.ZMOD:
            return f"Z/{self.p}^{self.n}"
        return f"F_{self.p}[T]/(T^{self.n})"

    @property
    def code(self) -> int:
        return self.kind.code

    @property
    def order(self) -> int:
        return self.p**self.n

    @cached_property
    def _ar(self):
        return _pykernels.arithmetic(self.p, self.n, self.code)

    # -- raw arithmetic on encoded ints -------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._ar.add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self._ar.sub(a, b)

    def neg(self, a: int) -> int:
        return self._ar.neg(a)

    def mul(self, a: int, b: int) -> int:
        return self._ar.mul(a, b)

    def mul_p(self, a: int, e: int) -> int:
        """``p**e * a``."""
        if e >= self.n:
            return 0
        return (a * self.p**e) % self.order

    def valuation(self, a: int) -> int:
        return _pykernels.valuation(a, self.p, self.n)

    def unit_part(self, a: int) -> int:
        if a == 0:
            raise ValueError("unit_part of zero")
        return a // self.p ** self.valuation(a)

    def inverse(self, a: int) -> int:
        if a % self.p == 0:
            raise ValueError(f"{a} is not a unit in {self}")
        return self._ar.inverse(a)

    def units(self, length: int | None = None) -> list[int]:
        """Units of ``Lambda/(p**length)`` as encoded residues."""
        length = self.n if length is None else length
        return [u for u in range(self.p**length) if u % self.p]

    # -- element wrappers -----------------------------------------------------

    def elem(self, value) -> "RingElem":
        if isinstance(value, RingElem):
            return value
        if isinstance(value, (list, tuple)):
            return RingElem.from_coefficients(self, value)
        return RingElem(self, int(value) % self.order if self.kind is RingKind.ZMOD else int(value))

    @property
    def zero(self) -> "RingElem":
        return RingElem(self, 0)

    @property
    def one(self) -> "RingElem":
        return RingElem(self, 1)

    @property
    def uniformizer(self) -> "RingElem":
        return RingElem(self, self.p if self.n > 1 else 0)


@dataclass(frozen=True)
class RingElem:
    spec: RingSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.order:
            raise ValueError(f"{self.value} is not a reduced residue for {self.spec}")

    @classmethod
    def from_coefficients(cls, spec: RingSpec, coeffs) -> "RingElem":
        if spec.kind is RingKind.ZMOD:
            raise TypeError("coefficient vectors only make sense for truncpoly")
        if len(coeffs) > spec.n:
            raise ValueError(f"more than n={spec.n} coefficients")
        x = 0
        for c in reversed(list(coeffs)):
            x = x * spec.p + int(c) % spec.p
        return cls(spec, x)

    def coefficients(self) -> tuple[int, ...]:
        return tuple(_pykernels._digits(self.value, self.spec.p, self.spec.n))

    def _check(self, other) -> "RingElem":
        if not isinstance(other, RingElem):
            other = self.spec.elem(other)
        if other.spec != self.spec:
            raise ValueError(f"ring mismatch: {self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return RingElem(self.spec, self.spec.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return RingElem(self.spec, self.spec.sub(self.value, other.value))

    def __neg__(self):
        return RingElem(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        other = self._check(other)
        return RingElem(self.spec, self.spec.mul(self.value, other.value))

    __rmul__ = __mul__

    def __bool__(self):
        return self.value != 0

    def valuation(self) -> int:
        return self.spec.valuation(self.value)

    def unit_part(self) -> "RingElem":
        return RingElem(self.spec, self.spec.unit_part(self.value))

    def inverse(self) -> "RingElem":
        return RingElem(self.spec, self.spec.inverse(self.value))

    def __repr__(self):
        if self.spec.kind is RingKind.ZMOD:
            return f"{self.value} (mod {self.spec.order})"
        terms = [f"{c}*T^{i}" if i else str(c) for i, c in enumerate(self.coefficients()) if c]
        return " + ".join(terms) or "0"


def add(a: RingElem, b: RingElem) -> RingElem:
    return a + b


def mul(a: RingElem, b: RingElem) -> RingElem:
    return a * b


def valuation(a: RingElem) -> int:
    return a.valuation()


def unit_part(a: RingElem) -> RingElem:
    return a.unit_part()


def inverse(u: RingElem) -> RingElem:
    return u.inverse()
