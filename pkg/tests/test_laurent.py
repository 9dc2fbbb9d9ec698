import math

import pytest

from qbloch.laurent import LaurentPoly, norm1


def test_zero_coefficients_dropped():
    assert LaurentPoly({0: 1, 3: 0}) == LaurentPoly.one()
    assert LaurentPoly({5: 0}).is_zero()
    assert not LaurentPoly.zero()


def test_basic_arithmetic():
    one_plus_q = LaurentPoly({0: 1, 1: 1})
    one_minus_q = LaurentPoly({0: 1, 1: -1})
    assert one_plus_q * one_minus_q == LaurentPoly({0: 1, 2: -1})
    assert one_plus_q + one_minus_q == LaurentPoly({0: 2})
    assert one_plus_q - one_plus_q == LaurentPoly.zero()
    assert -one_minus_q == LaurentPoly({0: -1, 1: 1})
    assert 1 - LaurentPoly({1: 1}) == one_minus_q


def test_negative_exponents():
    f = LaurentPoly({-2: 3, 1: -1})
    assert f.min_exp == -2 and f.max_exp == 1
    assert f.shift(2) == LaurentPoly({0: 3, 3: -1})
    x = 0.5
    assert math.isclose(f(x), 3 * x**-2 - x)


def test_pow_and_binomial_coefficient():
    f = (LaurentPoly({0: 1, 1: 1})) ** 64
    assert f.coeff(32) == math.comb(64, 32)   # exact big-int arithmetic
    assert f.coeff(0) == 1 and f.coeff(64) == 1
    assert norm1(f) == 2**64


def test_monomial_and_eval():
    m = LaurentPoly.monomial(-3, 7)
    z = 2.0 + 1.0j
    assert m(z) == 7 * z**-3


def test_norm1():
    assert norm1(LaurentPoly({0: 3, 2: -4})) == 7
    assert norm1(LaurentPoly.zero()) == 0


def test_json_round_trip():
    f = LaurentPoly({-1: 2**80, 4: -5})
    assert LaurentPoly.from_json_obj(f.to_json_obj()) == f


def test_eq_hash():
    a = LaurentPoly({0: 1, 1: 1})
    b = LaurentPoly({1: 1, 0: 1})
    assert a == b and hash(a) == hash(b)
    assert a != LaurentPoly({0: 1})


def test_pow_negative_exponent_rejected():
    with pytest.raises(ValueError):
        (LaurentPoly.one() + LaurentPoly.monomial(1)) ** -1
