import random
from fractions import Fraction

import pytest

from qcongruence.cyclotomic import cyclotomic
from qcongruence.polycore import LaurentPoly, Poly, one_minus_q, valuation_at
from qcongruence.qseries import (
    FactoredProduct,
    FamilySpec,
    SeriesSum,
    central_q_binomial,
    classical_term_value,
    eta_product_coefficients,
    q_integer,
    q_pochhammer,
    sum_truncated,
    term_of,
    term_value_at_one,
)

# ---------------------------------------------------------------------------
# independent oracle: build each term by direct per-factor expansion and add
# the fractions naively over fully expanded denominators.


def poch_laurent(start, step, count):
    acc = LaurentPoly.one()
    for i in range(count):
        acc = acc * one_minus_q(start + step * i)
    return acc


def naive_term(spec, k):
    s, t = spec.base, spec.t
    fam = spec.family
    if fam == "C":
        num = LaurentPoly(q_integer(4 * k + 1, s)) * poch_laurent(s, 2 * s, k) ** 4
        den = poch_laurent(2 * s, 2 * s, k) ** 4
    elif fam == "M":
        num = poch_laurent(s, 2 * s, k) ** 4 * LaurentPoly.one().shift(2 * s * k)
        den = poch_laurent(2 * s, 2 * s, k) ** 4
    elif fam == "J":
        pb, qb = spec.prefix_base or s, spec.qint_base or s
        num = (LaurentPoly(q_integer(6 * k + 1, qb))
               * poch_laurent(s, 2 * s, k) ** 2
               * poch_laurent(2 * s, 4 * s, k)).shift(pb * k * k)
        den = poch_laurent(4 * s, 4 * s, k) ** 3
    elif fam == "C_PARAM":
        num = (LaurentPoly(q_integer(4 * k + 1, s))
               * poch_laurent(s + t, 2 * s, k) * poch_laurent(s - t, 2 * s, k)
               * poch_laurent(s, 2 * s, k) ** 2)
        den = (poch_laurent(2 * s + t, 2 * s, k)
               * poch_laurent(2 * s - t, 2 * s, k)
               * poch_laurent(2 * s, 2 * s, k) ** 2)
    else:  # J_PARAM
        pb, qb = spec.prefix_base or s, spec.qint_base or s
        num = (LaurentPoly(q_integer(6 * k + 1, qb))
               * poch_laurent(s + t, 2 * s, k) * poch_laurent(s - t, 2 * s, k)
               * poch_laurent(2 * s, 4 * s, k)).shift(pb * k * k)
        den = (poch_laurent(4 * s + t, 4 * s, k)
               * poch_laurent(4 * s - t, 4 * s, k)
               * poch_laurent(4 * s, 4 * s, k))
    return num, den


def naive_sum(spec):
    num, den = LaurentPoly.zero(), LaurentPoly.one()
    for k in range(spec.upper + 1):
        nk, dk = naive_term(spec, k)
        num = num * dk + nk * den
        den = den * dk
    return num, den


def assert_same_rational(series: SeriesSum, num: LaurentPoly,
                         den: LaurentPoly):
    left = series.numerator * den
    right = (num * series.denominator.expand()).scale(series.scalar_den)
    assert left == right


ALL_SPECS = [
    FamilySpec("C", 1, 12), FamilySpec("C", 2, 9),
    FamilySpec("J", 1, 12), FamilySpec("J", 2, 8),
    FamilySpec("M", 1, 12), FamilySpec("M", 3, 7),
    FamilySpec("C_PARAM", 1, 10, 3), FamilySpec("C_PARAM", 1, 9, -5),
    FamilySpec("C_PARAM", 3, 7, 5),
    FamilySpec("J_PARAM", 1, 9, 3), FamilySpec("J_PARAM", 2, 7, -7),
    FamilySpec("J_PARAM", 3, 6, 5, prefix_base=1, qint_base=2),
]


# ---------------------------------------------------------------------------
# q_integer / q_pochhammer


def test_q_integer():
    assert q_integer(1, 1) == Poly([1])
    assert q_integer(3, 1) == Poly([1, 1, 1])
    assert q_integer(5, 3).coeffs == (1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1)
    with pytest.raises(ValueError):
        q_integer(0)


def test_q_pochhammer():
    fp, zero = q_pochhammer(1, 2, 0)
    assert fp.is_one() and not zero
    fp, zero = q_pochhammer(1, 2, 2)
    assert fp.factors == {1: 1, 3: 1} and fp.is_unit_free() and not zero
    fp, zero = q_pochhammer(-2, 2, 1)
    assert (fp.sign, fp.power, fp.factors) == (-1, -2, {2: 1}) and not zero
    fp, zero = q_pochhammer(-2, 2, 2)
    assert zero  # second factor is 1 - q^0
    # expansion equals the direct product whenever nothing vanished
    for (start, step, count) in [(1, 2, 4), (-5, 2, 3), (-3, 2, 5), (4, 4, 3)]:
        fp, zero = q_pochhammer(start, step, count)
        assert not zero
        assert fp.expand() == poch_laurent(start, step, count)


def test_factored_product_validation():
    with pytest.raises(ValueError):
        FactoredProduct(1, 0, {0: 1})
    with pytest.raises(ValueError):
        FactoredProduct(2, 0, {})


# ---------------------------------------------------------------------------
# terms


def test_term_c_k0_and_k1():
    num, den = term_of(FamilySpec("C", 1, 1), 0)
    assert num == LaurentPoly.one() and den.is_one()
    num, den = term_of(FamilySpec("C", 1, 1), 1)
    expected = LaurentPoly(q_integer(5)) * one_minus_q(1) ** 4
    assert num == expected
    assert den.factors == {2: 4}


def test_term_j_k1():
    num, den = term_of(FamilySpec("J", 1, 1), 1)
    expected = (LaurentPoly(q_integer(7)) * one_minus_q(1) ** 2
                * one_minus_q(2)).shift(1)
    assert num == expected
    assert den.factors == {4: 3}


def test_terms_match_naive_expansion():
    for spec in ALL_SPECS:
        for k in range(0, min(spec.upper, 6) + 1):
            num, den = term_of(spec, k)
            nnum, nden = naive_term(spec, k)
            assert num * nden == nnum * den.expand(), (spec, k)


def test_parametric_term_truncates_at_vanishing_numerator():
    # t = -3: the numerator factor ladder hits 1 - q^0 beyond k = 1
    spec = FamilySpec("C_PARAM", 1, 4, -3)
    num, _ = term_of(spec, 2)
    assert num.is_zero()
    assert not term_of(spec, 1)[0].is_zero()


def test_denominator_vanishing_is_an_error():
    # odd t keeps every family denominator exponent odd, hence nonzero;
    # even t is rejected up front
    with pytest.raises(ValueError):
        FamilySpec("C_PARAM", 1, 3, 2)
    # a zero factor reaching a denominator position is an error
    from qcongruence.qseries import _Accumulator
    acc = _Accumulator()
    with pytest.raises(ZeroDivisionError):
        acc.absorb(LaurentPoly.one(), [2, 0])


# ---------------------------------------------------------------------------
# sums


def test_sum_k0_is_one():
    for family in ("C", "J", "M"):
        s = sum_truncated(FamilySpec(family, 1, 0))
        assert s.numerator == LaurentPoly.one()
        assert s.denominator.is_one()


def test_sum_c_one_step():
    s = sum_truncated(FamilySpec("C", 1, 1))
    expected_num = (one_minus_q(2) ** 4
                    + LaurentPoly(q_integer(5)) * one_minus_q(1) ** 4)
    assert s.numerator == expected_num
    assert s.denominator.factors == {2: 4}


def test_sum_m_two_steps_matches_naive():
    spec = FamilySpec("M", 1, 2)
    assert_same_rational(sum_truncated(spec), *naive_sum(spec))


def test_sums_match_naive_all_families():
    for spec in ALL_SPECS:
        assert_same_rational(sum_truncated(spec), *naive_sum(spec))


def test_sum_denominator_is_last_term_denominator():
    for spec in ALL_SPECS[:6]:
        s = sum_truncated(spec)
        assert s.denominator.factors == term_of(spec, spec.upper)[1].factors


# ---------------------------------------------------------------------------
# factored-product valuations vs division oracle


def test_ord_cyclotomic_matches_division_valuation():
    rng = random.Random(424242)
    for _ in range(500):
        factors = {}
        for _ in range(rng.randint(1, 6)):
            m = rng.randint(1, 12)
            factors[m] = factors.get(m, 0) + rng.randint(1, 3)
        fp = FactoredProduct(rng.choice([1, -1]), rng.randint(-5, 5), factors)
        d = rng.randint(2, 12)
        assert fp.ord_cyclotomic(d) == valuation_at(fp.expand(),
                                                    cyclotomic(d))


# ---------------------------------------------------------------------------
# classical values


def test_classical_term_values():
    assert classical_term_value("C", 1) == Fraction(5, 16)
    assert classical_term_value("J", 1) == Fraction(7, 32)
    assert classical_term_value("C", 2) == 9 * Fraction(3, 8) ** 4
    assert classical_term_value("M", 2) == Fraction(81, 4096)


def test_q_terms_specialize_to_classical_values():
    for family in ("C", "J", "M"):
        for k in range(31):
            assert term_value_at_one(family, k) \
                == classical_term_value(family, k), (family, k)


def test_central_q_binomial():
    assert central_q_binomial(0) == Poly([1])
    assert central_q_binomial(1) == Poly([1, 1])  # 1 + q
    assert central_q_binomial(2, 1) == Poly([1, 1, 2, 1, 1])


# ---------------------------------------------------------------------------
# eta product


def test_eta_coefficients_small():
    gammas = eta_product_coefficients(8)
    assert gammas[0] == 1
    assert gammas[1] == 0
    assert gammas[2] == -4
    # mini-oracle to degree 3: q (1-q^2)^4 ... == q - 4 q^3 + O(q^4)
    assert gammas[:3] == [1, 0, -4]


def test_eta_even_coefficients_vanish():
    gammas = eta_product_coefficients(60)
    assert all(gammas[i] == 0 for i in range(1, 60, 2))
