import pytest
from hypothesis import given
from hypothesis import strategies as st

from subpair.ring import RingElem, RingKind, RingSpec, is_prime

from conftest import ring_specs


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        RingSpec.zmod(4, 2)
    with pytest.raises(ValueError):
        RingSpec.zmod(2, 0)
    assert RingSpec("TruncPoly", 3, 2).kind is RingKind.TRUNCPOLY


def test_is_prime():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_zmod_arithmetic():
    s = RingSpec.zmod(2, 3)
    assert s.order == 8
    assert s.mul(3, 5) == 7
    assert s.valuation(4) == 2 and s.valuation(0) == 3
    assert s.unit_part(6) == 3
    assert s.inverse(3) == 3
    with pytest.raises(ValueError):
        s.inverse(2)


def test_truncpoly_arithmetic():
    s = RingSpec.truncpoly(2, 3)
    one_plus_t = RingElem.from_coefficients(s, [1, 1])
    # (1+T)^2 = 1 + T^2 in characteristic 2
    assert (one_plus_t * one_plus_t).coefficients() == (1, 0, 1)
    # 1 + 1 = 0, unlike Z/8
    assert s.add(1, 1) == 0
    t = s.uniformizer
    assert (t * t * t).value == 0
    assert s.valuation(t.value) == 1


@given(ring_specs(), st.data())
def test_field_axioms(spec, data):
    q = spec.order
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert spec.mul(a, spec.add(b, c)) == spec.add(spec.mul(a, b), spec.mul(a, c))
    assert spec.mul(a, b) == spec.mul(b, a)
    assert spec.add(a, spec.neg(a)) == 0
    if a % spec.p:
        assert spec.mul(a, spec.inverse(a)) == 1


@given(ring_specs(), st.data())
def test_valuation_and_unit_part(spec, data):
    a = data.draw(st.integers(1, spec.order - 1))
    v = spec.valuation(a)
    u = spec.unit_part(a)
    assert u % spec.p
    assert spec.mul_p(u, v) == a
    b = data.draw(st.integers(0, spec.order - 1))
    assert spec.valuation(spec.mul(a, b)) == min(spec.n, v + spec.valuation(b))


def test_units_listing():
    s = RingSpec.zmod(3, 2)
    assert s.units(1) == [1, 2]
    assert len(s.units()) == 6
