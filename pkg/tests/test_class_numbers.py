from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from agm_jellyfish import make_field
from agm_jellyfish.class_numbers import (
    BadDiscriminant,
    BadResidue,
    NotFundamental,
    TooLarge,
    factor_discriminant,
    gauss_h,
    gauss_r3_prediction,
    hurwitz_H,
    hurwitz_H_formula,
    is_fundamental,
    kronecker,
    m_fq,
    r3,
    r3_table,
    reduced_forms,
    valid_traces,
    verify_schoof_identity,
)
from agm_jellyfish.legendre import annotate_swarm
from agm_jellyfish.swarm import build_swarm


def test_reduced_forms():
    assert [tuple(f) for f in reduced_forms(-15, True)] == [(1, 1, 4), (2, 1, 2)]
    assert [tuple(f) for f in reduced_forms(-3, True)] == [(1, 1, 1)]
    assert [tuple(f) for f in reduced_forms(-4, True)] == [(1, 0, 1)]
    assert [tuple(f) for f in reduced_forms(-12)] == [(1, 0, 3), (2, 2, 2)]
    with pytest.raises(BadDiscriminant):
        reduced_forms(-5)
    with pytest.raises(BadDiscriminant):
        reduced_forms(8)


def test_forms_have_discriminant():
    for D in range(-3, -400, -1):
        if D % 4 in (0, 1):
            for f in reduced_forms(D):
                assert f.discriminant == D
                assert abs(f.b) <= f.a <= f.c


def test_gauss_h():
    assert gauss_h(-15) == 2 and gauss_h(-3) == 1 and gauss_h(-4) == 1
    assert gauss_h(-23) == 3 and gauss_h(-163) == 1
    with pytest.raises(NotFundamental):
        gauss_h(-12)


def test_is_fundamental():
    assert [D for D in range(-1, -25, -1) if is_fundamental(D)] == [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24]


def test_hurwitz_examples():
    assert hurwitz_H(15) == 2
    assert hurwitz_H(3) == Fraction(1, 3)
    assert hurwitz_H(4) == Fraction(1, 2)
    assert hurwitz_H(12) == Fraction(4, 3) == hurwitz_H_formula(12)
    assert hurwitz_H_formula(15) == 2
    for N in (1, 2, 5, 0, -3):
        with pytest.raises(BadResidue):
            hurwitz_H(N)


def test_factor_discriminant():
    fac = factor_discriminant(12)
    assert (fac.D, fac.f, fac.w) == (-3, 2, 3)
    fac = factor_discriminant(16)
    assert (fac.D, fac.f, fac.w) == (-4, 2, 2)
    fac = factor_discriminant(15)
    assert (fac.D, fac.f, fac.w) == (-15, 1, 1)


def test_hurwitz_formula_agrees_up_to_2000():
    for N in range(3, 2001):
        if N % 4 in (0, 3):
            assert hurwitz_H(N) == hurwitz_H_formula(N), N


def legendre_symbol(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 19, 97, 101])
def test_kronecker_is_legendre_for_odd_primes(p):
    for a in range(-2 * p, 2 * p):
        assert kronecker(a, p) == legendre_symbol(a, p)


def test_kronecker_matches_field_phi():
    for q in (7, 11, 19, 23, 43):
        F = make_field(q)
        for a in range(q):
            assert kronecker(a, q) == F.phi_table[a]


@given(st.integers(-500, 500), st.integers(1, 200), st.integers(1, 200))
def test_kronecker_multiplicative_in_n(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_at_two():
    assert [kronecker(a, 2) for a in (1, 3, 5, 7, 2)] == [1, -1, -1, 1, 0]
    assert kronecker(-1, -1) == -1 and kronecker(5, 0) == 0 and kronecker(-1, 0) == 1


def test_r3():
    assert r3(0) == 1 and r3(1) == 6 and r3(3) == 8 and r3(7) == 0
    assert r3(1) == 12 * hurwitz_H(4)
    assert r3(3) == 24 * hurwitz_H(3)
    table = r3_table(300)
    assert all(table[n] == r3(n) for n in range(301))
    with pytest.raises(TooLarge):
        r3(10**7)
    with pytest.raises(TooLarge):
        r3_table(10**7)


def test_gauss_r3_relation_small():
    for n in range(1, 500):
        assert gauss_r3_prediction(n) == r3(n), n


def test_m_fq_f19():
    sw = annotate_swarm(build_swarm(make_field(19)))
    assert m_fq(sw, -4) == 2 and m_fq(sw, 4) == 2 and m_fq(sw, 2) == 0


def test_m_fq_needs_annotation():
    with pytest.raises(ValueError):
        m_fq(build_swarm(make_field(19)), 4)


def test_valid_traces():
    assert valid_traces(19) == [-4, 4]
    assert valid_traces(7) == []
    assert valid_traces(23) == [-8, 8]  # s = 0 is excluded


def test_schoof_f19_and_f7():
    rep = verify_schoof_identity(19)
    assert rep.ok and [(r.s, r.N, r.H, r.M) for r in rep.rows] == [(-4, 15, 2, 2), (4, 15, 2, 2)]
    assert str(rep.rows[0]) == "-4, 15, 2, 2, OK"
    rep = verify_schoof_identity(7)
    assert rep.ok and rep.rows == [] and rep.zero_skipped


@pytest.mark.parametrize("q", [11, 23, 31, 43, 47, 59, 67, 71, 79, 83])
def test_schoof_identity(q):
    assert verify_schoof_identity(q).ok
