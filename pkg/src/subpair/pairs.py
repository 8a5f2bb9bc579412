"""Pairs ``(B; A)`` with ``p^m A = 0`` and the named indecomposables."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

from .module import LambdaModule, Submodule
from .ring import RingSpec


@dataclass(frozen=True)
class Pair:
    B: LambdaModule
    A: Submodule
    m: int = 2

    def __post_init__(self):
        if self.A.module != self.B:
            raise ValueError("A is not a submodule of B")
        if not self.A.scalar_image(self.m).is_zero():
            raise ValueError(f"p^{self.m} A != 0")

    @property
    def spec(self) -> RingSpec:
        return self.B.spec

    @cached_property
    def a_minus(self) -> Submodule:
        """``rad A = pA``."""
        return self.A.scalar_image(1)

    @cached_property
    def a_plus(self) -> Submodule:
        """``A + soc B``."""
        return self.A + self.B.socle

    def is_zero(self) -> bool:
        return self.B.rank == 0

    def __str__(self):
        return f"({self.B}; {[g.coords for g in self.A.gens]})"


def a_minus(x: Pair) -> Submodule:
    return x.a_minus


def a_plus(x: Pair) -> Submodule:
    return x.a_plus


_LABEL_RE = re.compile(r"^\s*([PQ])\s*[\[(]\s*(?:[a-z]+=)?(\d+)\s*,\s*(?:[a-z]+=)?(\d+)\s*[\])]\s*$")


@dataclass(frozen=True, order=True)
class Label:
    """``P(m, l)`` is the picket ``P_m^l``; ``Q(s, t)`` is ``Q_s^t``."""

    kind: str
    a: int
    b: int

    def __post_init__(self):
        if self.kind == "P":
            m, ell = self.a, self.b
            if not (0 <= m <= 2 and max(1, m) <= ell):
                raise ValueError(f"invalid picket indices m={m}, l={ell}")
        elif self.kind == "Q":
            s, t = self.a, self.b
            if not (1 <= s and s < t - 1):
                raise ValueError(f"invalid Q indices s={s}, t={t} (need 1 <= s < t-1)")
        else:
            raise ValueError(f"unknown label kind {self.kind!r}")

    @classmethod
    def P(cls, m: int, ell: int) -> "Label":
        return cls("P", m, ell)

    @classmethod
    def Q(cls, s: int, t: int) -> "Label":
        return cls("Q", s, t)

    @classmethod
    def parse(cls, text: str) -> "Label":
        mt = _LABEL_RE.match(text)
        if not mt:
            raise ValueError(f"cannot parse label {text!r}")
        return cls(mt.group(1), int(mt.group(2)), int(mt.group(3)))

    def check_length(self, n: int) -> None:
        if self.b > n:
            raise ValueError(f"{self} needs ring length >= {self.b}, got {n}")

    @property
    def partition(self) -> tuple[int, ...]:
        return (self.b,) if self.kind == "P" else (self.b, self.a)

    @property
    def a_length(self) -> int:
        return self.a if self.kind == "P" else 2

    def pair(self, spec: RingSpec) -> Pair:
        if self.kind == "P":
            return make_picket(spec, self.a, self.b)
        return make_Q(spec, self.a, self.b)

    def expected_height_sequence(self) -> tuple[int, ...]:
        if self.kind == "P":
            m, ell = self.a, self.b
            return tuple(range(ell - m, ell))
        return (self.a - 1, self.b - 1)

    def to_json(self) -> dict[str, Any]:
        if self.kind == "P":
            return {"kind": "P", "m": self.a, "l": self.b}
        return {"kind": "Q", "s": self.a, "t": self.b}

    def __str__(self):
        if self.kind == "P":
            return f"P[m={self.a},l={self.b}]"
        return f"Q[s={self.a},t={self.b}]"


def labels_s2(n: int) -> list[Label]:
    """All indecomposable labels of S_2 over a ring of length ``n``, report order."""
    out = [Label.P(m, ell) for m in range(3) for ell in range(max(1, m), n + 1)]
    out += [Label.Q(s, t) for s in range(1, n) for t in range(s + 2, n + 1)]
    return sorted(out)


def make_picket(spec: RingSpec, m: int, ell: int) -> Pair:
    label = Label.P(m, ell)
    label.check_length(spec.n)
    B = LambdaModule(spec, (ell,))
    A = B.radical_power(ell - m)
    return Pair(B, A)


def make_Q(spec: RingSpec, s: int, t: int) -> Pair:
    label = Label.Q(s, t)
    label.check_length(spec.n)
    B = LambdaModule(spec, (t, s))
    p = spec.p
    A = B.submodule([(p ** (t - 2), p ** (s - 1))])
    return Pair(B, A)


@dataclass(frozen=True)
class DirectSum:
    """A direct sum together with where each summand's coordinates landed."""

    pair: Pair
    summands: tuple[Pair, ...]
    placement: tuple[tuple[int, ...], ...]


def direct_sum_with_placement(pairs: Sequence[Pair], spec: RingSpec | None = None) -> DirectSum:
    pairs = list(pairs)
    if spec is None:
        if not pairs:
            raise ValueError("empty direct sum needs an explicit ring")
        spec = pairs[0].spec
    if any(x.spec != spec for x in pairs):
        raise ValueError("direct sum of pairs over different rings")
    parts = []
    for k, x in enumerate(pairs):
        for i, lam in enumerate(x.B.partition):
            parts.append((-lam, k, i))
    parts.sort()
    where = {}
    for pos, (_, k, i) in enumerate(parts):
        where[(k, i)] = pos
    B = LambdaModule(spec, tuple(-lam for lam, _, _ in parts))
    placement = tuple(tuple(where[(k, i)] for i in range(x.B.rank)) for k, x in enumerate(pairs))
    gens = []
    for x, place in zip(pairs, placement):
        for row in x.A.rows:
            v = [0] * B.rank
            for i, pos in enumerate(place):
                v[pos] = row[i]
            gens.append(tuple(v))
    A = Submodule.span(B, gens)
    m = max((x.m for x in pairs), default=2)
    return DirectSum(Pair(B, A, m), tuple(pairs), placement)


def direct_sum(pairs: Sequence[Pair], spec: RingSpec | None = None) -> Pair:
    return direct_sum_with_placement(pairs, spec).pair


def labels_direct_sum(spec: RingSpec, labels: Iterable[Label]) -> DirectSum:
    return direct_sum_with_placement([lab.pair(spec) for lab in labels], spec)


@dataclass(frozen=True)
class DecompReport:
    """Multiset of indecomposable labels, optionally with an isomorphism witness."""

    labels: tuple[tuple[Label, int], ...]
    witness: Any = field(default=None, compare=False)

    @classmethod
    def from_labels(cls, labels: Iterable[Label], witness=None) -> "DecompReport":
        c = Counter(labels)
        return cls(tuple(sorted(c.items())), witness)

    def multiset(self) -> Counter:
        return Counter(dict(self.labels))

    def expanded(self) -> list[Label]:
        return [lab for lab, k in self.labels for _ in range(k)]

    @property
    def partition(self) -> tuple[int, ...]:
        return tuple(sorted((x for lab in self.expanded() for x in lab.partition), reverse=True))

    @property
    def a_length(self) -> int:
        return sum(lab.a_length for lab in self.expanded())

    def is_indecomposable(self) -> bool:
        return sum(k for _, k in self.labels) == 1

    def __str__(self):
        return " + ".join(f"{k}*{lab}" if k > 1 else str(lab) for lab, k in self.labels) or "0"
