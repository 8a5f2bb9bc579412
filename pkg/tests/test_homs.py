import itertools
import random

import pytest

from subpair import posetrep as pr
from subpair.functor import apply_F, apply_F_morphism
from subpair.homs import (
    MorphismError,
    PairMorphism,
    compose,
    explicit_nonzero_chain,
    hom_basis,
    ideal_N,
    identity,
    in_ideal_N,
    inclusions,
    nilpotency_check,
    projections,
    quotient_dim_mod_N,
    zero_morphism,
)
from subpair.module import LambdaModule
from subpair.oracle import random_pair
from subpair.pairs import Label, Pair, direct_sum, direct_sum_with_placement, labels_s2, make_picket
from subpair.ring import RingSpec

S3 = RingSpec.zmod(2, 3)


def _all_matrices(x, y):
    spec = x.spec
    lam, mu = x.B.partition, y.B.partition
    choices = []
    for i in range(len(mu)):
        for j in range(len(lam)):
            e = max(0, mu[i] - lam[j])
            choices.append([spec.mul_p(c, e) % spec.p ** mu[i] for c in range(spec.p ** min(lam[j], mu[i]))])
    for entries in itertools.product(*choices):
        yield PairMorphism(x, y, tuple(tuple(entries[i * len(lam):(i + 1) * len(lam)]) for i in range(len(mu))))


def test_morphism_validation():
    x = make_picket(S3, 0, 1)
    y = make_picket(S3, 0, 3)
    # Z/2 -> Z/8 must land in 4Z/8
    with pytest.raises(MorphismError):
        PairMorphism(x, y, ((2,),))
    assert PairMorphism(x, y, ((4,),)).is_valid()
    with pytest.raises(MorphismError):
        PairMorphism(y, y, ((8,),))
    with pytest.raises(MorphismError):
        PairMorphism(x, y, ((4, 0),))


def test_hom_examples():
    B = LambdaModule(S3, (3, 2, 1))
    D = LambdaModule(S3, (2, 1))
    x = Pair(B, B.zero)
    y = Pair(D, D.submodule([(2, 1)]))
    H = hom_basis(x, y)
    assert H.length == sum(min(l, m) for l in B.partition for m in D.partition)
    assert hom_basis(make_picket(S3, 1, 1), make_picket(S3, 0, 1)).length == 0
    q = Label.Q(1, 3).pair(S3)
    assert hom_basis(q, q).contains(identity(q))


@pytest.mark.parametrize("seed", range(4))
def test_hom_matches_enumeration(seed):
    rng = random.Random(seed)
    for _ in range(6):
        spec = RingSpec.zmod(rng.choice([2, 3]), 2)
        x, y = random_pair(spec, rng, max_rank=2, max_gens=2), random_pair(spec, rng, max_rank=2, max_gens=2)
        if sum(min(l, m) for l in x.B.partition for m in y.B.partition) > 8:
            continue
        valid = {f.matrix for f in _all_matrices(x, y) if f.is_valid()}
        inN = {f.matrix for f in _all_matrices(x, y) if f.is_valid() and in_ideal_N(f)}
        H, N = hom_basis(x, y), ideal_N(x, y)
        assert {f.matrix for f in H.elements()} == valid
        assert {f.matrix for f in N.elements()} == inN


def test_structure():
    x = Pair(LambdaModule(S3, (3, 1)), LambdaModule(S3, (3, 1)).zero)
    assert hom_basis(x, x).structure == (3, 1, 1, 1)


def test_in_ideal_N_examples():
    for ell in range(1, 4):
        x = make_picket(S3, 1, ell)
        assert in_ideal_N(zero_morphism(x, x))
        assert not in_ideal_N(identity(x))
    x = make_picket(S3, 2, 3)
    assert in_ideal_N(PairMorphism(x, x, ((2,),)))


def test_quotient_dim_examples():
    x = make_picket(S3, 0, 2)
    assert quotient_dim_mod_N(x, x) == pr.hom_dim(apply_F(x), apply_F(x)) == 1
    a, b = make_picket(S3, 1, 2), Label.Q(1, 3).pair(S3)
    c = make_picket(S3, 2, 3)
    assert quotient_dim_mod_N(direct_sum([a, b]), c) == quotient_dim_mod_N(a, c) + quotient_dim_mod_N(b, c)


def test_quotient_dim_matches_rep_homs_on_socle_contained_pickets():
    for n in range(1, 4):
        spec = RingSpec.zmod(3, n)
        pickets = [lab.pair(spec) for lab in labels_s2(n) if lab.kind == "P" and lab.a >= 1]
        for x in pickets:
            for y in pickets:
                assert quotient_dim_mod_N(x, y) == pr.hom_dim(apply_F(x), apply_F(y))


def test_N_is_an_ideal():
    rng = random.Random(21)
    for _ in range(60):
        spec = RingSpec.zmod(rng.choice([2, 3]), rng.randint(1, 3))
        w, x, y, z = (random_pair(spec, rng, max_rank=2) for _ in range(4))
        f = ideal_N(x, y).random_element(rng)
        g = ideal_N(x, y).random_element(rng)
        assert in_ideal_N(f) and in_ideal_N(f + g)
        a = hom_basis(w, x).random_element(rng)
        b = hom_basis(y, z).random_element(rng)
        assert in_ideal_N(compose(f, a)) and in_ideal_N(compose(b, f))


def test_kernel_is_N():
    rng = random.Random(22)
    seen = {True: 0, False: 0}
    for _ in range(150):
        spec = RingSpec(rng.choice(["zmod", "truncpoly"]), rng.choice([2, 3]), rng.randint(1, 3))
        x, y = random_pair(spec, rng, max_rank=2), random_pair(spec, rng, max_rank=2)
        f = hom_basis(x, y).random_element(rng)
        zero = not any(v for row in apply_F_morphism(f) for v in row)
        assert zero == in_ideal_N(f)
        seen[zero] += 1
    assert seen[True] and seen[False]


def test_nilpotency():
    for n in range(2, 5):
        chain = explicit_nonzero_chain(RingSpec.zmod(2, n))
        assert len(chain) == n and all(in_ideal_N(f) for f in chain)
        assert not nilpotency_check(chain)
    x = make_picket(S3, 2, 3)
    assert nilpotency_check([identity(x), zero_morphism(x, x)])
    with pytest.raises(MorphismError):
        nilpotency_check([identity(x), identity(make_picket(S3, 1, 1))])


def test_inverse_and_composition():
    q = Label.Q(1, 3).pair(S3)
    f = PairMorphism(q, q, ((3, 0), (1, 1)))
    assert f.is_valid()
    g = f.inverse()
    assert g is not None and compose(f, g) == identity(q)
    assert PairMorphism(q, q, ((2, 0), (0, 1))).inverse() is None


def test_inclusions_and_projections():
    a, b = Label.Q(1, 3).pair(S3), make_picket(S3, 2, 2)
    ds = direct_sum_with_placement([a, b])
    incs, projs = inclusions(ds), projections(ds)
    for k, (i, p) in enumerate(zip(incs, projs)):
        assert i.is_valid() and p.is_valid()
        assert compose(p, i) == identity(ds.summands[k])
    total = compose(incs[0], projs[0]) + compose(incs[1], projs[1])
    assert total == identity(ds.pair)
