from fractions import Fraction

import pytest

from qbloch.errors import PolytopeError
from qbloch.laurent import LaurentPoly
from qbloch.qterm import (LinForm, QTerm, QuadForm, SpecialQTerm,
                          eval_qterm_exact, eval_special_exact,
                          four_one_special, newton_polytope_points,
                          one_variable_family, q_binomial, q_factorial,
                          q_pochhammer_ratio)


def test_linform_affine_and_homog():
    f = LinForm((2, -1), 3)
    assert f((1, 4)) == 2 - 4 + 3
    assert f.homog((1.0, 4.0)) == -2.0          # constant dropped
    g = f + LinForm((0, 1), -3)
    assert g((1, 4)) == 2 and (-g)((1, 4)) == -2
    assert (f - f).is_zero()


def test_quadform_exact_integer_values():
    # Q(k) = -k(k+1)/2 realized by M = [[-1]], QL = (-1/2)
    Q = QuadForm(((-1,),), (Fraction(-1, 2),))
    assert [Q((k,)) for k in range(5)] == [0, -1, -3, -6, -10]
    assert all(isinstance(Q((k,)), int) for k in range(5))


def test_quadform_symmetry_required():
    with pytest.raises(ValueError):
        QuadForm(((0, 1), (2, 0)), (Fraction(0), Fraction(0)))


def test_quadform_integrality_required():
    # M[ii] + 2 QL_i must be even so that Q is integer on Z^n
    with pytest.raises(ValueError):
        QuadForm(((1,),), (Fraction(0),))
    QuadForm(((1,),), (Fraction(1, 2),))   # fine


def test_q_factorial_small():
    assert q_factorial(0) == LaurentPoly.one()
    assert q_factorial(3) == LaurentPoly({0: 1, 1: -1, 2: -1, 4: 1, 5: 1, 6: -1})
    assert q_factorial(5)(1.0) == 0.0     # (q)_n vanishes at q = 1 for n >= 1
    with pytest.raises(ValueError):
        q_factorial(-1)


def test_q_binomial_matches_factorial_ratio():
    for n in range(8):
        for m in range(n + 1):
            assert (q_binomial(n, m) * q_factorial(m) * q_factorial(n - m)
                    == q_factorial(n))


def test_q_binomial_counts():
    import math
    assert q_binomial(4, 2) == LaurentPoly({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
    for n, m in ((6, 3), (9, 4)):
        # coefficients are nonnegative and sum to binomial(n, m)
        f = q_binomial(n, m)
        assert all(v > 0 for _, v in f.items())
        assert sum(v for _, v in f.items()) == math.comb(n, m)
    with pytest.raises(ValueError):
        q_binomial(3, 5)


def test_q_pochhammer_ratio():
    assert q_pochhammer_ratio(5, 2) * q_factorial(2) == q_factorial(5)
    with pytest.raises(ValueError):
        q_pochhammer_ratio(2, 5)


def test_eval_qterm_exact_one_variable():
    t = one_variable_family(-1, 2, -1)
    num, den = eval_qterm_exact(t, (3,))
    want = (q_factorial(3) * q_factorial(3) * -1).shift(-6)   # Q((3,)) = -6
    assert num == want and den == LaurentPoly.one()


def test_eval_special_exact_is_the_stated_ratio():
    t = four_one_special()
    n, k = 4, 2
    got = eval_special_exact(t, (n, k))
    want = (q_pochhammer_ratio(n + k, n) * q_pochhammer_ratio(n - 1, n - 1 - k)
            ).shift(-n * k)
    assert got == want


def test_admissibility_and_polytope_points():
    t = four_one_special()
    assert t.admissible((4, 0)) and t.admissible((4, 3))
    assert not t.admissible((4, 4))       # k <= n-1
    assert not t.admissible((4, -1))
    for n in (1, 2, 7):
        assert newton_polytope_points(t, n) == [(k,) for k in range(n)]


def test_unbounded_polytope_rejected():
    z = LinForm((0, 0), 0)
    with pytest.raises(PolytopeError):
        SpecialQTerm(1, QuadForm(((0, 0), (0, 0)), (Fraction(0), Fraction(0))),
                     z, 1, ((z, z, LinForm((0, 1), 0), z),))


def test_one_variable_family_encoding():
    t = one_variable_family(-1, 2, -1)
    assert t.r == 0 and t.epsilon == -1 and len(t.factors) == 2
    assert t.Q.matrix == ((-1,),)
    with pytest.raises(ValueError):
        one_variable_family(1, -1, 1)


def test_shape_mismatch_rejected():
    Q = QuadForm(((0,),), (Fraction(0),))
    with pytest.raises(ValueError):
        QTerm(1, Q, LinForm((0, 0), 0), 1, ())   # r=1 needs 2x2 Q


def test_special_to_qterm_consistency():
    t = four_one_special()
    full = t.to_qterm()
    # the flattened plain term gives the same exact value as a num/den pair
    for k in ((3, 1), (5, 4), (6, 0)):
        num, den = eval_qterm_exact(full, k)
        assert num == eval_special_exact(t, k) * den


def test_json_obj_round_trip_values():
    t = four_one_special()
    obj = t.to_json_obj()
    assert obj["r"] == 1 and obj["factors"] == []
    assert len(obj["quads"]) == 2
    t2 = one_variable_family(2, 1, 1)
    assert t2.to_json_obj()["Q"]["linear"] == ["1"]
