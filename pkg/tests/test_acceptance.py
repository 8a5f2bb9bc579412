"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line that is printed in the pytest
terminal summary (and by ``python tests/test_acceptance.py``).
"""

import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402

from subpair import posetrep as pr  # noqa: E402
from subpair.cli import compare_rings_document, indecomposables_document  # noqa: E402
from subpair.functor import apply_F, apply_F_morphism, classify_s2, pair_to_label, tilde  # noqa: E402
from subpair.homs import compose, explicit_nonzero_chain, hom_basis, ideal_N, in_ideal_N, nilpotency_check, quotient_dim_mod_N  # noqa: E402
from subpair.module import Submodule  # noqa: E402
from subpair.oracle import random_pair, scramble, verify_census  # noqa: E402
from subpair.pairs import labels_direct_sum, labels_s2  # noqa: E402
from subpair.ring import RingSpec  # noqa: E402


def record(number, ok, detail, elapsed):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}  ({elapsed:.2f} s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_criterion_01_indecomposable_census():
    t = time.perf_counter()
    counts, ok = [], True
    for n in range(1, 7):
        doc = indecomposables_document(RingSpec.zmod(2, n))
        counts.append(doc["count"])
        ok &= doc["count"] == (n * n + 3 * n) // 2
        ok &= all(r["self_classifies"] for r in doc["labels"])
    elapsed = time.perf_counter() - t
    ok &= counts == [2, 5, 9, 14, 20, 27] and elapsed < 1.0
    assert record(1, ok, f"label counts {counts}, each self-classifies", elapsed)


def test_criterion_02_poset_census():
    t = time.perf_counter()
    ok, rows = True, []
    for n in range(2, 7):
        labels = pr.rep_labels(n)
        good = [l for l in labels if pr.satisfies_rep_prime(pr.make_indecomposable(l, 2, n))]
        rows.append((len(labels), len(good)))
        ok &= 2 * len(labels) == n * n + 7 * n and 2 * len(good) == n * n + 3 * n
    elapsed = time.perf_counter() - t
    ok &= elapsed < 1.0
    assert record(2, ok, f"(total, rep') for n=2..6: {rows}", elapsed)


def test_criterion_03_functor_table():
    t = time.perf_counter()
    ok, checked = True, 0
    for n in range(1, 7):
        for lab in labels_s2(n):
            F = apply_F(lab.pair(RingSpec.zmod(2, n)))
            target = pr.make_indecomposable(pair_to_label(lab), 2, n)
            same_invariants = pr.rank_invariants(F) == pr.rank_invariants(target)
            h = pr.find_isomorphism(F, target)
            ok &= same_invariants and h is not None and pr.is_isomorphism(h, F, target)
            checked += 1
    elapsed = time.perf_counter() - t
    ok &= elapsed < 5.0
    assert record(3, ok, f"{checked} table entries matched by invariants and explicit isomorphism", elapsed)


def test_criterion_04_round_trip():
    t = time.perf_counter()
    rng = random.Random(2024)
    recovered = witnessed = 0
    trials = 1000
    for _ in range(trials):
        spec = RingSpec.zmod(rng.choice([2, 3]), rng.randint(1, 4))
        labels = [rng.choice(labels_s2(spec.n)) for _ in range(rng.randint(1, 4))]
        x = scramble(labels_direct_sum(spec, labels).pair, rng)
        report = classify_s2(x, witness=True)
        recovered += report.multiset() == Counter(labels)
        f = report.witness
        g = f.inverse()
        witnessed += (
            g is not None
            and f.image(x.A) == f.target.A
            and g.image(f.target.A) == x.A
            and compose(g, f).matrix == tuple(tuple(int(i == j) for j in range(x.B.rank)) for i in range(x.B.rank))
        )
    elapsed = time.perf_counter() - t
    ok = recovered == witnessed == trials
    assert record(4, ok, f"recovered {recovered}/{trials}, witnesses verified {witnessed}/{trials}", elapsed)


@pytest.mark.slow
def test_criterion_05_oracle_agreement():
    t = time.perf_counter()
    census = verify_census(RingSpec.zmod(2, 3), max_parts=5, max_part=3, max_length=5)
    elapsed = time.perf_counter() - t
    ok = census.passed and elapsed < 600
    pairs = sum(census.submodule_counts.values())
    detail = f"{pairs} pairs in {len(census.table)} orbits over {len(census.submodule_counts)} shapes, checks {sorted(k for k, v in census.checks.items() if v)}"
    if census.failures:
        detail += f"; first failure: {census.failures[0]}"
    assert record(5, ok, detail, elapsed)


def test_criterion_06_lifting_dimension():
    t = time.perf_counter()
    ok, checked = True, 0
    for p in (2, 3):
        for n in range(1, 5):
            spec = RingSpec.zmod(p, n)
            pickets = [lab.pair(spec) for lab in labels_s2(n) if lab.kind == "P" and lab.a >= 1]
            for x in pickets:
                for y in pickets:
                    ok &= quotient_dim_mod_N(x, y) == pr.hom_dim(apply_F(x), apply_F(y))
                    checked += 1
    elapsed = time.perf_counter() - t
    ok &= elapsed < 30
    assert record(6, ok, f"{checked} ordered picket pairs, p in (2, 3), n <= 4", elapsed)


def test_criterion_07_nilpotency():
    t = time.perf_counter()
    rng = random.Random(77)
    zero_chains, nonzero_links, trials = 0, 0, 500
    for _ in range(trials):
        spec = RingSpec.zmod(rng.choice([2, 3]), rng.randint(1, 4))
        n = spec.n
        objects = [random_pair(spec, rng, max_rank=2) for _ in range(n + 2)]
        chain = [ideal_N(a, b).random_element(rng) for a, b in zip(objects, objects[1:])]
        assert all(in_ideal_N(f) for f in chain)
        nonzero_links += sum(not f.is_zero() for f in chain)
        zero_chains += nilpotency_check(chain)
    explicit = all(not nilpotency_check(explicit_nonzero_chain(RingSpec.zmod(p, n))) for p in (2, 3) for n in range(2, 5))
    elapsed = time.perf_counter() - t
    ok = zero_chains == trials and explicit and nonzero_links > 0
    assert record(7, ok, f"{zero_chains}/{trials} (n+1)-chains vanish ({nonzero_links} nonzero links); explicit n-chains nonzero: {explicit}", elapsed)


def test_criterion_08_kernel_is_N():
    t = time.perf_counter()
    rng = random.Random(88)
    agree, in_n, trials = 0, 0, 1000
    for _ in range(trials):
        spec = RingSpec(rng.choice(["zmod", "truncpoly"]), rng.choice([2, 3]), rng.randint(1, 4))
        x, y = random_pair(spec, rng, max_rank=2), random_pair(spec, rng, max_rank=2)
        f = hom_basis(x, y).random_element(rng)
        killed = not any(v for row in apply_F_morphism(f) for v in row)
        agree += killed == in_ideal_N(f)
        in_n += in_ideal_N(f)
    elapsed = time.perf_counter() - t
    ok = agree == trials and 0 < in_n < trials
    assert record(8, ok, f"{agree}/{trials} agree ({in_n} in N, {trials - in_n} outside)", elapsed)


def test_criterion_09_ring_independence():
    t = time.perf_counter()
    rng = random.Random(99)
    pairs = []
    for n in range(1, 5):
        spec = RingSpec.zmod(2, n)
        pairs += [(str(lab), lab.pair(spec)) for lab in labels_s2(n)]
    nlabels = len(pairs)
    for k in range(200):
        pairs.append((f"random {k}", random_pair(RingSpec.zmod(2, rng.randint(1, 4)), rng)))
    doc = compare_rings_document(pairs)
    same = sum(r["identical"] for r in doc["pairs"])
    elapsed = time.perf_counter() - t
    ok = doc["identical"]
    assert record(9, ok, f"{same}/{len(pairs)} identical ({nlabels} labels, 200 random pairs)", elapsed)


def _random_submodule(B, rng, max_gens=3):
    spec = B.spec
    gens = [tuple(rng.randrange(spec.p**lam) for lam in B.partition) for _ in range(rng.randint(0, max_gens))]
    return B.submodule(gens)


def _random_inside(U, rng, max_gens=2):
    spec = U.spec
    vecs = []
    for _ in range(rng.randint(0, max_gens)):
        v = (0,) * U.module.rank
        for row in U.rows:
            c = rng.randrange(spec.order)
            v = tuple(spec.add(a, spec.mul(c, b)) for a, b in zip(v, row))
        vecs.append(v)
    return Submodule.span(U.module, vecs)


def test_criterion_10_tilde_lemma():
    t = time.perf_counter()
    rng = random.Random(1010)
    trials = 1000
    failures = []
    strict_meet = strict_sum = 0
    conditional_meet = conditional_sum = 0
    for k in range(trials):
        spec = RingSpec(rng.choice(["zmod", "truncpoly"]), rng.choice([2, 3]), rng.randint(2, 4))
        x = random_pair(spec, rng)
        B = x.B
        mode = k % 4
        C = _random_submodule(B, rng)
        if mode == 1:
            C = C + x.a_minus
        elif mode == 2:
            C = _random_inside(x.a_plus, rng)
        C2 = _random_submodule(B, rng)
        if mode == 3:
            C2 = C + C2  # C <= C2
        tc, tc2 = tilde(x, C), tilde(x, C2)
        if C <= C2 and not tc <= tc2:
            failures.append(("monotone", k))
        meet, joined = tilde(x, C & C2), tc & tc2
        if not meet <= joined:
            failures.append(("meet inclusion", k))
        if x.a_minus <= C or x.a_minus <= C2:
            conditional_meet += 1
            if meet.space != joined.space:
                failures.append(("meet equality", k))
        elif meet.space != joined.space:
            strict_meet += 1
        total, summed = tilde(x, C + C2), tc + tc2
        if not summed <= total:
            failures.append(("sum inclusion", k))
        if C <= x.a_plus or C2 <= x.a_plus:
            conditional_sum += 1
            if summed.space != total.space:
                failures.append(("sum equality", k))
        elif summed.space != total.space:
            strict_sum += 1
    elapsed = time.perf_counter() - t
    ok = not failures and strict_meet > 0 and strict_sum > 0
    detail = (
        f"{trials} triples, {len(failures)} violations; equality cases checked {conditional_meet}/{conditional_sum}; "
        f"strict inclusions witnessed: meet {strict_meet}, sum {strict_sum}"
    )
    assert record(10, ok, detail, elapsed)


if __name__ == "__main__":
    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                status = 1
    sys.exit(status)
