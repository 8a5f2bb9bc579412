"""Brute-force ground truth for small rings.

Everything here enumerates: all submodules of ``B``, orbits of
``Aut(B)`` on them, endomorphism rings of small pairs.  The cost is
exponential, so every entry point checks the size of ``B`` against a cap
(``SUBPAIR_MAX_CARDINALITY``, default ``2**12``).
"""

from __future__ import annotations

import itertools
import os
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator

from .functor import classify_s2
from .homs import PairMorphism, compose, identity
from .module import LambdaModule, Submodule
from .pairs import DecompReport, Pair, labels_direct_sum, labels_s2
from .ring import RingSpec

DEFAULT_MAX_CARDINALITY = 2**12


class CapExceeded(ValueError):
    pass


def max_cardinality() -> int:
    raw = os.environ.get("SUBPAIR_MAX_CARDINALITY")
    if raw is None:
        return DEFAULT_MAX_CARDINALITY
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"SUBPAIR_MAX_CARDINALITY must be an integer, got {raw!r}") from None


def check_cap(B: LambdaModule, cap: int | None = None) -> None:
    cap = max_cardinality() if cap is None else cap
    if B.cardinality > cap:
        raise CapExceeded(f"|B| = {B.cardinality} exceeds the cap {cap}")


def enumerate_submodules(B: LambdaModule, m: int = 2, cap: int | None = None) -> list[Submodule]:
    """All submodules ``A`` of ``B`` with ``p^m A = 0``, each once, sorted by rows."""
    check_cap(B, cap)
    torsion = B.whole if m >= B.spec.n else B.zero.scalar_preimage(m)
    cyclic = {}
    for x in torsion.elements():
        c = Submodule.span(B, [x.embedded])
        cyclic[c.rows] = c
    cyclic = [cyclic[k] for k in sorted(cyclic)]
    seen = {B.zero.rows: B.zero}
    frontier = [B.zero]
    while frontier:
        nxt = []
        for S in frontier:
            for c in cyclic:
                if c <= S:
                    continue
                T = S + c
                if T.rows not in seen:
                    seen[T.rows] = T
                    nxt.append(T)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


# -- automorphisms ------------------------------------------------------------------


def _plain(B: LambdaModule) -> Pair:
    return Pair(B, B.zero)


def _matrix_morphism(B: LambdaModule, rows) -> PairMorphism:
    x = _plain(B)
    return PairMorphism(x, x, tuple(tuple(r) for r in rows))


def _identity_rows(r: int) -> list[list[int]]:
    return [[int(i == j) for j in range(r)] for i in range(r)]


def automorphism_generators(B: LambdaModule) -> list[PairMorphism]:
    """Unit scalings, elementary transvections and swaps of equal parts."""
    spec = B.spec
    lam = B.partition
    r = B.rank
    gens = []
    for i in range(r):
        for u in spec.units(lam[i]):
            if u == 1:
                continue
            rows = _identity_rows(r)
            rows[i][i] = u
            gens.append(_matrix_morphism(B, rows))
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            rows = _identity_rows(r)
            # e_j -> e_j + p^e e_i
            rows[i][j] = spec.mul_p(1, max(0, lam[i] - lam[j])) % spec.p ** lam[i]
            gens.append(_matrix_morphism(B, rows))
    for i in range(r):
        for j in range(i + 1, r):
            if lam[i] == lam[j]:
                rows = _identity_rows(r)
                rows[i][i] = rows[j][j] = 0
                rows[i][j] = rows[j][i] = 1
                gens.append(_matrix_morphism(B, rows))
    return gens


def all_automorphisms(B: LambdaModule, cap: int = 2**14) -> list[PairMorphism]:
    """Every automorphism of ``B``, by running over all endomorphisms."""
    spec = B.spec
    lam = B.partition
    r = B.rank
    choices = []
    for i in range(r):
        for j in range(r):
            e = max(0, lam[i] - lam[j])
            choices.append([spec.mul_p(c, e) % spec.p ** lam[i] for c in range(spec.p ** min(lam[i], lam[j]))])
    total = 1
    for c in choices:
        total *= len(c)
    if total > cap:
        raise CapExceeded(f"|End(B)| = {total} exceeds the cap {cap}")
    out = []
    for entries in itertools.product(*choices):
        rows = [list(entries[i * r:(i + 1) * r]) for i in range(r)]
        f = _matrix_morphism(B, rows)
        if f.is_bijective():
            out.append(f)
    return out


def random_automorphism(B: LambdaModule, rng: random.Random, steps: int = 12) -> PairMorphism:
    """A product of random elementary automorphisms with random coefficients."""
    spec = B.spec
    lam = B.partition
    r = B.rank
    f = _matrix_morphism(B, _identity_rows(r))
    for _ in range(steps):
        rows = _identity_rows(r)
        kind = rng.randrange(3) if r > 1 else 0
        if kind == 0:
            i = rng.randrange(r)
            rows[i][i] = rng.choice(spec.units(lam[i]))
        elif kind == 1:
            i, j = rng.sample(range(r), 2)
            c = rng.randrange(spec.p ** lam[i])
            rows[i][j] = spec.mul_p(c, max(0, lam[i] - lam[j])) % spec.p ** lam[i]
        else:
            i, j = rng.sample(range(r), 2)
            if lam[i] != lam[j]:
                continue
            rows[i][i] = rows[j][j] = 0
            rows[i][j] = rows[j][i] = 1
        f = compose(_matrix_morphism(B, rows), f)
    return f


def scramble(x: Pair, rng: random.Random, steps: int = 12) -> Pair:
    """An isomorphic copy ``(B; g(A))`` for a random automorphism ``g``."""
    g = random_automorphism(x.B, rng, steps)
    return Pair(x.B, g.image(x.A), x.m)


def orbits(B: LambdaModule, subs: list[Submodule], gens: list[PairMorphism] | None = None) -> list[list[Submodule]]:
    """Partition ``subs`` (closed under Aut(B)) into orbits."""
    gens = automorphism_generators(B) if gens is None else gens
    index = {S.rows: k for k, S in enumerate(subs)}
    parent = list(range(len(subs)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k, S in enumerate(subs):
        for g in gens:
            T = g.image(S)
            if T.rows not in index:
                raise ValueError("submodule list is not closed under automorphisms")
            a, b = find(k), find(index[T.rows])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = defaultdict(list)
    for k, S in enumerate(subs):
        groups[find(k)].append(S)
    return [groups[k] for k in sorted(groups)]


def is_isomorphic_bruteforce(x: Pair, y: Pair, cap: int | None = None) -> bool:
    if x.spec != y.spec or x.B.partition != y.B.partition:
        return False
    check_cap(x.B, cap)
    if x.A.length != y.A.length:
        return False
    B = x.B
    target = Submodule.span(B, y.A.rows)
    gens = automorphism_generators(B)
    seen = {x.A.rows}
    frontier = [x.A]
    while frontier:
        nxt = []
        for S in frontier:
            if S == target:
                return True
            for g in gens:
                T = g.image(S)
                if T.rows not in seen:
                    seen.add(T.rows)
                    nxt.append(T)
        frontier = nxt
    return False


def endomorphisms(x: Pair, cap: int = 2**14) -> Iterator[PairMorphism]:
    """All endomorphisms of the pair ``x``."""
    spec = x.spec
    lam = x.B.partition
    r = x.B.rank
    choices = []
    for i in range(r):
        for j in range(r):
            e = max(0, lam[i] - lam[j])
            choices.append([spec.mul_p(c, e) % spec.p ** lam[i] for c in range(spec.p ** min(lam[i], lam[j]))])
    total = 1
    for c in choices:
        total *= len(c)
    if total > cap:
        raise CapExceeded(f"|End(B)| = {total} exceeds the cap {cap}")
    for entries in itertools.product(*choices):
        f = PairMorphism(x, x, tuple(tuple(entries[i * r:(i + 1) * r]) for i in range(r)))
        if f.is_valid():
            yield f


def is_indecomposable_bruteforce(x: Pair) -> bool:
    """Nonzero and without idempotent endomorphisms other than 0 and 1."""
    if x.is_zero():
        return False
    one = identity(x)
    for e in endomorphisms(x):
        if e.is_zero() or e == one:
            continue
        if compose(e, e) == e:
            return False
    return True


# -- census -----------------------------------------------------------------------


def partitions(max_parts: int, max_part: int, max_length: int | None = None) -> list[tuple[int, ...]]:
    """Nonempty partitions with bounded number of parts, part size and total."""
    out = []

    def rec(prefix, bound, remaining):
        if prefix:
            out.append(tuple(prefix))
        if len(prefix) == max_parts:
            return
        for x in range(min(bound, remaining), 0, -1):
            rec(prefix + [x], x, remaining - x)

    total = max_parts * max_part if max_length is None else max_length
    rec([], max_part, total)
    return sorted(out, key=lambda lam: (sum(lam), lam))


@dataclass
class CensusClass:
    partition: tuple[int, ...]
    representative: Submodule
    orbit_size: int
    report: DecompReport

    @property
    def pair(self) -> Pair:
        return Pair(self.representative.module, self.representative)


@dataclass
class Census:
    spec: RingSpec
    bounds: dict
    table: list[CensusClass] = field(default_factory=list)
    submodule_counts: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def indecomposables(self) -> list[CensusClass]:
        return [c for c in self.table if c.report.is_indecomposable()]

    def to_json(self) -> dict:
        return {
            "ring": {"kind": self.spec.kind.value, "p": self.spec.p, "n": self.spec.n},
            "bounds": dict(self.bounds),
            "classes": [
                {
                    "B": list(c.partition),
                    "A": [list(g.coords) for g in c.representative.gens],
                    "orbit_size": c.orbit_size,
                    "labels": [[str(lab), k] for lab, k in c.report.labels],
                }
                for c in self.table
            ],
            "checks": dict(self.checks),
            "failures": list(self.failures),
        }


def verify_census(
    spec: RingSpec,
    max_parts: int,
    max_part: int | None = None,
    max_length: int | None = None,
    cap: int | None = None,
) -> Census:
    """Enumerate all pairs in range, group them into isomorphism classes, cross-check classify_s2."""
    max_part = spec.n if max_part is None else min(max_part, spec.n)
    bounds = {"max_parts": max_parts, "max_part": max_part, "max_length": max_length}
    census = Census(spec, bounds)
    checks = dict.fromkeys(
        ["constant_on_orbits", "distinct_reports", "realizes_orbit", "indecomposables", "zero_or_cyclic", "heights"],
        True,
    )

    def fail(name, msg):
        checks[name] = False
        census.failures.append(f"{name}: {msg}")

    shapes = partitions(max_parts, max_part, max_length)
    for lam in shapes:
        check_cap(LambdaModule(spec, lam), cap)
    for lam in shapes:
        B = LambdaModule(spec, lam)
        subs = enumerate_submodules(B, 2, cap)
        census.submodule_counts[lam] = len(subs)
        index = {S.rows: k for k, S in enumerate(subs)}
        orbit_of = {}
        seen_reports = {}
        for orbit in orbits(B, subs):
            rep = orbit[0]
            reports = {classify_s2(Pair(B, S)).labels for S in orbit}
            report = classify_s2(Pair(B, rep))
            if len(reports) != 1:
                fail("constant_on_orbits", f"B={lam}, orbit of {rep.rows} gets {sorted(map(str, reports))}")
            if report.labels in seen_reports:
                fail("distinct_reports", f"B={lam}: orbits of {rep.rows} and {seen_reports[report.labels]} both get {report}")
            seen_reports[report.labels] = rep.rows
            for S in orbit:
                orbit_of[S.rows] = rep.rows
            census.table.append(CensusClass(lam, rep, len(orbit), report))
        for cls in census.table:
            if cls.partition != lam:
                continue
            model = labels_direct_sum(spec, cls.report.expanded()).pair
            key = model.A.rows
            if model.B != B or key not in index or orbit_of[key] != cls.representative.rows:
                fail("realizes_orbit", f"B={lam}: sum of {cls.report} is not in the orbit of {cls.representative.rows}")

    # indecomposable classes against the label list
    reachable = [
        lab
        for lab in labels_s2(spec.n)
        if len(lab.partition) <= max_parts
        and max(lab.partition) <= max_part
        and (max_length is None or sum(lab.partition) <= max_length)
    ]
    found = []
    heights = {}
    for cls in census.table:
        x = cls.pair
        single = cls.report.is_indecomposable()
        if len(cls.partition) <= 2 and is_indecomposable_bruteforce(x) != single:
            fail("indecomposables", f"B={cls.partition}, A={cls.representative.rows}: brute force disagrees with {cls.report}")
        if not single:
            continue
        (lab,) = cls.report.expanded()
        found.append(lab)
        if cls.representative.min_generators() > 1:
            fail("zero_or_cyclic", f"{lab}: A needs {cls.representative.min_generators()} generators")
            continue
        if cls.representative.is_zero():
            continue
        seq = x.B.height_sequence(cls.representative.gens[0])
        if seq != lab.expected_height_sequence():
            fail("heights", f"{lab}: height sequence {seq}, expected {lab.expected_height_sequence()}")
        if seq in heights and heights[seq] != lab:
            fail("heights", f"{lab} and {heights[seq]} share height sequence {seq}")
        heights[seq] = lab
    if sorted(found) != sorted(reachable):
        fail("indecomposables", f"found {sorted(map(str, found))}, expected {sorted(map(str, reachable))}")
    census.checks = checks
    return census



def random_pair(spec: RingSpec, rng: random.Random, max_rank: int = 3, max_gens: int = 3) -> Pair:
    """A pair with random partition and ``A`` spanned by random elements killed by ``p^2``."""
    r = rng.randint(1, max_rank)
    lam = tuple(sorted((rng.randint(1, spec.n) for _ in range(r)), reverse=True))
    B = LambdaModule(spec, lam)
    torsion = B.zero.scalar_preimage(min(2, spec.n))
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        v = (0,) * r
        for row in torsion.rows:
            c = rng.randrange(spec.order)
            v = tuple(spec.add(a, spec.mul(c, b)) for a, b in zip(v, row))
        gens.append(v)
    return Pair(B, Submodule.span(B, gens))
