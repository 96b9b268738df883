import random

import pytest

from fmzv.errors import InvalidParameters, WeightNotReducible
from fmzv.field import (
    Fp2,
    PrimeField,
    find_nonresidue,
    inverse_table,
    is_prime,
    reduce_rational,
)
from fractions import Fraction


def test_basic_ops(f5, f7):
    f3 = PrimeField(3)
    assert f5.mul(3, 4) == 2
    assert f7.add(6, 6) == 5
    assert f3.sub(0, 1) == 2
    assert f5.neg(2) == 3
    assert f5.element(-1) == 4


def test_inverses(f5, f7):
    f13 = PrimeField(13)
    assert f5.inv(2) == 3
    assert f7.inv(1) == 1
    assert f13.inv(5) == 8
    with pytest.raises(ZeroDivisionError):
        f5.inv(0)
    with pytest.raises(ZeroDivisionError):
        f5.inv(10)  # 10 = 0 mod 5


def test_pow_negative_exponent(f7):
    assert f7.pow(3, -1) == f7.inv(3)
    assert f7.pow(3, -2) == f7.inv(3 * 3 % 7)
    assert f7.pow(0, 0) == 1


def test_modulus_validation():
    for bad in (4, 9, 15, 2, 1, 0, -7, 2**31):
        with pytest.raises(InvalidParameters):
            PrimeField(bad)
    with pytest.raises(InvalidParameters):
        PrimeField(3.0)  # type: ignore[arg-type]
    # largest prime below 2^31 is fine
    PrimeField(2147483629)


def test_is_prime_values():
    def trial(n):
        if n < 2:
            return False
        i = 2
        while i * i <= n:
            if n % i == 0:
                return False
            i += 1
        return True

    for n in list(range(0, 500)) + [561, 1105, 41041, 2147483629, 2147483647]:
        assert is_prime(n) == trial(n), n


def test_batch_inverse(f5, f7, f11):
    assert f5.batch_inverse([1, 2, 3, 4]) == [1, 3, 2, 4]
    assert f7.batch_inverse([]) == []
    rng = random.Random(42)
    xs = [rng.randrange(1, 11) for _ in range(1000)]
    assert f11.batch_inverse(xs) == [f11.inv(x) for x in xs]
    with pytest.raises(ZeroDivisionError, match="index 2"):
        f5.batch_inverse([1, 2, 5, 3])


def test_inverse_table():
    for p in (3, 5, 13, 101):
        field = PrimeField(p)
        table = inverse_table(p)
        assert all(table[n] == field.inv(n) for n in range(1, p))


def test_find_nonresidue():
    assert find_nonresidue(3) == 2
    assert find_nonresidue(5) == 2
    assert find_nonresidue(7) == 3  # 2^3 = 1, 3^3 = 6 = -1 mod 7
    for p in (11, 13, 101, 499):
        d = find_nonresidue(p)
        assert pow(d, (p - 1) // 2, p) == p - 1


def test_field_axioms_randomized():
    rng = random.Random(7)
    for p in (5, 13, 101):
        field = PrimeField(p)
        for _ in range(50):
            x, y, z = (rng.randrange(p) for _ in range(3))
            assert field.add(field.add(x, y), z) == field.add(x, field.add(y, z))
            assert field.mul(field.mul(x, y), z) == field.mul(x, field.mul(y, z))
            assert field.mul(x, field.add(y, z)) == field.add(field.mul(x, y), field.mul(x, z))
            if x % p:
                assert field.mul(x, field.inv(x)) == 1


def test_fp2_basics(f5):
    qf = Fp2(f5)
    w = (0, 1)
    assert qf.mul(w, w) == (qf.delta, 0)
    assert qf.add((1, 2), (4, 4)) == (0, 1)
    assert qf.embed(7) == (2, 0)
    assert qf.in_base((3, 0)) and not qf.in_base((3, 1))
    with pytest.raises(ZeroDivisionError):
        qf.inv((0, 0))
    with pytest.raises(InvalidParameters):
        Fp2(f5, delta=4)  # 4 = 2^2 is a residue


def test_fp2_axioms_and_inverse():
    rng = random.Random(11)
    for p in (5, 13, 101):
        qf = Fp2(PrimeField(p))
        one = qf.embed(1)
        for _ in range(40):
            x = (rng.randrange(p), rng.randrange(p))
            y = (rng.randrange(p), rng.randrange(p))
            z = (rng.randrange(p), rng.randrange(p))
            assert qf.mul(qf.mul(x, y), z) == qf.mul(x, qf.mul(y, z))
            assert qf.mul(x, qf.add(y, z)) == qf.add(qf.mul(x, y), qf.mul(x, z))
            if x != (0, 0):
                assert qf.mul(x, qf.inv(x)) == one


def test_fp2_frobenius_order():
    # x^(p^2) = x for all x: the field really is GF(p^2)
    rng = random.Random(13)
    for p in (5, 7, 13):
        qf = Fp2(PrimeField(p))
        for _ in range(20):
            x = (rng.randrange(p), rng.randrange(p))
            assert qf.pow(x, p * p) == x


def test_fp2_batch_inverse():
    rng = random.Random(17)
    qf = Fp2(PrimeField(13))
    xs = [(rng.randrange(13), rng.randrange(1, 13)) for _ in range(100)]
    assert qf.batch_inverse(xs) == [qf.inv(x) for x in xs]
    with pytest.raises(ZeroDivisionError, match="index 1"):
        qf.batch_inverse([(1, 1), (0, 0)])


def test_reduce_rational(f5, f7):
    assert reduce_rational(Fraction(1, 2), f5) == 3
    assert reduce_rational(Fraction(3, 1), f7) == 3
    assert reduce_rational(Fraction(-1, 3), f5) == 3  # -1 * 2 = -2 = 3 mod 5
    with pytest.raises(WeightNotReducible):
        reduce_rational(Fraction(1, 5), f5)
