import random

import pytest

from ffcurve.errors import (
    DivisionByZeroError,
    FieldMismatchError,
    NoEmbeddingError,
    NonPrimeError,
    ReducibleModulusError,
)
from ffcurve.field import (
    binom_det_mod_p,
    binom_mod_p,
    embed,
    frobenius_pow,
    make_field,
    subfield_member,
)


def test_make_field_defaults_are_deterministic():
    f4 = make_field(2, 2)
    assert f4.modulus == (1, 1, 1)  # w^2 + w + 1, the unique irreducible quadratic
    f9 = make_field(3, 2)
    assert f9.modulus == (1, 0, 1)  # w^2 + 1, since -1 is a non-square mod 3
    assert make_field(2, 2) is f4


def test_make_field_rejects_bad_input():
    with pytest.raises(NonPrimeError):
        make_field(4, 1)
    with pytest.raises(ReducibleModulusError):
        make_field(2, 2, [1, 0, 1])  # (x+1)^2
    with pytest.raises(ReducibleModulusError):
        make_field(3, 2, [1, 1])  # wrong degree


def test_f4_arithmetic_table():
    f4 = make_field(2, 2, [1, 1, 1])
    w = f4.gen()
    one = f4.one()
    assert w * w == w + one            # modulus relation
    assert one / w == w + one          # w*(w+1) = 1
    assert w ** 3 == one               # multiplicative order divides 3
    with pytest.raises(DivisionByZeroError):
        one / f4.zero()


def test_field_mismatch_detected():
    f4 = make_field(2, 2)
    f9 = make_field(3, 2)
    with pytest.raises(FieldMismatchError):
        f4.gen() + f9.gen()


@pytest.mark.parametrize("p,h", [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2)])
def test_field_axioms_random(p, h):
    field = make_field(p, h)
    rng = random.Random(1234 + p * h)
    for _ in range(1000):
        a = field.random_element(rng)
        b = field.random_element(rng)
        c = field.random_element(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inverse() == field.one()


def test_frobenius_pow():
    f4 = make_field(2, 2)
    w = f4.gen()
    assert frobenius_pow(w, 1) == w * w == w + 1
    assert frobenius_pow(f4.one(), 1) == f4.one()
    assert frobenius_pow(w, 2) == w  # full orbit returns


@pytest.mark.parametrize("p,h", [(2, 2), (2, 4), (3, 2), (2, 8)])
def test_frobenius_identity_exhaustive(p, h):
    field = make_field(p, h)
    for a in field.elements():
        assert frobenius_pow(a, h) == a


def test_embed_basics():
    f2 = make_field(2, 1)
    f4 = make_field(2, 2)
    f8 = make_field(2, 3)
    f16 = make_field(2, 4)
    assert embed(f2.one(), f2, f4) == f4.one()
    with pytest.raises(NoEmbeddingError):
        embed(f4.gen(), f4, f8)  # 2 does not divide 3
    # homomorphism + Frobenius compatibility, exhaustively on F_4 -> F_16
    images = {}
    for a in f4.elements():
        ia = embed(a, f4, f16)
        images[a.c] = ia
        assert embed(a * a, f4, f16) == ia * ia
    for a in f4.elements():
        for b in f4.elements():
            assert embed(a + b, f4, f16) == images[a.c] + images[b.c]
            assert embed(a * b, f4, f16) == images[a.c] * images[b.c]
    # injectivity
    assert len({v.c for v in images.values()}) == f4.order


def test_embedded_elements_lie_in_subfield():
    f9 = make_field(3, 2)
    f81 = make_field(3, 4)
    for a in f9.elements():
        ia = embed(a, f9, f81)
        assert subfield_member(ia, 9)


def test_binom_mod_p_examples():
    assert binom_mod_p(7, 3, 2) == 1
    assert binom_mod_p(5, 2, 2) == 0
    for p, h in [(2, 1), (2, 2), (3, 1), (3, 2), (7, 1)]:
        q = p ** h
        assert binom_mod_p(q * q + q + 1, 1, p) == 1
    assert binom_mod_p(3, 5, 7) == 0  # r > k gives 0


def test_binom_mod_p_against_integer_oracle():
    import math
    for p in (2, 3, 5):
        for k in range(65):
            for r in range(65):
                assert binom_mod_p(k, r, p) == math.comb(k, r) % p


def test_binom_det_examples():
    for p in (2, 3, 5, 7):
        assert binom_det_mod_p((0, 1, 2), (0, 1, 2), p) == 1
    # rows (0,1,3), cols (0,1,2), p=3: direct 3x3 integer determinant is 3
    assert binom_det_mod_p((0, 1, 3), (0, 1, 2), 3) == 0
    # rows (0,1,4), cols (0,1,2), p=2: C(4,2)=6 and C(4,1)=4 both vanish mod 2
    assert binom_det_mod_p((0, 1, 4), (0, 1, 2), 2) == 0


def test_serialization_round_trip():
    f8 = make_field(2, 3)
    p, h, mod = f8.serialize()
    assert make_field(p, h, mod) is f8
