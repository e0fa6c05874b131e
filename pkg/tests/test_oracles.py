import random
from fractions import Fraction as F

import pytest
from mpmath import mp

from shiftcert.oracles import (ParamVector, S_GRID, direct_quartic_form, lemma2_quartic_form, oracle_trials,
                               quadratic_hypo_test, quadratic_scan, random_param_vector)
from shiftcert.quartic import quartic_certificate
from shiftcert.shifts import hyponormal_check, default_family, parse_family

TOL = mp.mpf(10) ** -40


@pytest.fixture(scope="module")
def fam():
    return default_family()


def test_single_basis_vector(fam):
    s = fam.at(F(2, 3))
    p = ParamVector.real((1, 0, 0, 0), (1,))
    with mp.workprec(256):
        assert abs(direct_quartic_form(s, p) - mp.mpf(2) / 3) < TOL
        assert abs(lemma2_quartic_form(s, p) - mp.mpf(2) / 3) < TOL


def test_leading_term_with_c_only(fam):
    # x = e_0, lambda = (1, 0, 0, c): |c|^2 r_0 plus the Delta_0 corner u_0
    s = fam.at(F(2, 3))
    c = F(3, 2)
    p = ParamVector.real((1, 0, 0, c), (1,))
    with mp.workprec(256):
        r0 = mp.mpf(2) / 3 * mp.mpf(3) / 4 * mp.mpf(4) / 5 * mp.mpf(5) / 6
        expected = (mp.mpf(c.numerator) / c.denominator) ** 2 * r0 + mp.mpf(2) / 3
        assert abs(lemma2_quartic_form(s, p) - expected) < TOL
        assert abs(direct_quartic_form(s, p) - expected) < TOL


def test_plain_hyponormality_form(fam):
    s = fam.at(F(2, 3))
    x = (F(1), F(-2), F(1, 3), F(5))
    p = ParamVector.real((1, 0, 0, 0), x)
    expected = sum((s.alpha_sq(n) - s.alpha_sq(n - 1)) * v * v for n, v in enumerate(x))
    with mp.workprec(256):
        assert abs(direct_quartic_form(s, p) - mp.mpf(expected.numerator) / expected.denominator) < TOL
    assert direct_quartic_form(s, p).real >= 0


@pytest.mark.parametrize("x", [F(2, 3), F(667, 990), F(7, 10)])
def test_two_evaluation_paths_agree(fam, x):
    rows = oracle_trials(fam.at(x), trials=100, seed=42)
    assert len(rows) == 100
    for r in rows:
        assert r["relative_difference"] <= TOL, r["trial"]
        assert r["imag"] <= TOL, r["trial"]


def test_trials_are_reproducible(fam):
    a = oracle_trials(fam.at(F(7, 10)), trials=5, seed=9)
    b = oracle_trials(fam.at(F(7, 10)), trials=5, seed=9)
    assert [r["direct"] for r in a] == [r["direct"] for r in b]


def test_low_precision_rejected(fam):
    with pytest.raises(ValueError):
        direct_quartic_form(fam.at(F(2, 3)), ParamVector.real((1, 0, 0, 0), (1,)), precision=64)


def test_param_vector_needs_nonzero_x():
    with pytest.raises(ValueError):
        ParamVector.real((1, 0, 0, 0), (0, 0))


@pytest.mark.parametrize("x", [F(2, 3), F(667, 990)])
def test_certified_points_have_nonnegative_forms(fam, x):
    assert quartic_certificate(fam, x).certified
    s = fam.at(x)
    rng = random.Random(42)
    with mp.workprec(256):
        for _ in range(200):
            p = random_param_vector(rng, 12)
            v = direct_quartic_form(s, p)
            assert v.real >= -mp.mpf(10) ** -30 * (1 + abs(v))


def test_quadratic_examples(fam):
    assert quadratic_hypo_test(fam.at(F(2, 3)), 1, 20).certified
    assert quadratic_hypo_test(fam.at(F(2, 3)), 10, 20).certified
    assert quadratic_hypo_test(fam.at(F(4, 5)), 0, 10).refuted
    unweighted = parse_family("prefix [ ] tail 1 from 0")
    assert quadratic_hypo_test(unweighted.at(F(1)), 0, 5).certified


def test_quadratic_at_zero_matches_hyponormal_check(fam):
    for x in (F(1, 2), F(3, 4), F(4, 5), F(7, 10)):
        s = fam.at(x)
        assert quadratic_hypo_test(s, 0, 12).verdict == hyponormal_check(s, 12).verdict


def test_quadratic_matrix_entries(fam):
    from shiftcert.shifts.commutator import polynomial_self_commutator
    s = fam.at(F(7, 10))
    sv = F(3, 2)
    m = polynomial_self_commutator(s, [1, sv], 6)
    A = s.alpha_sq
    gamma = [F(1)]
    for n in range(7):
        gamma.append(gamma[-1] * A(n))
    for n in range(6):
        diag = (A(n) - A(n - 1)) + sv * sv * (A(n) * A(n + 1) - A(n - 1) * A(n - 2))
        assert m[n, n] == gamma[n] * diag
        assert m[n, n + 1] == gamma[n + 1] * sv * (A(n + 1) - A(n - 1))
        if n + 2 <= 6:
            assert m[n, n + 2] == 0


def test_quadratic_scan(fam):
    cert = quadratic_scan(fam.at(F(2, 3)))
    assert cert.certified
    assert cert.data["grid"] == list(S_GRID)
    assert quadratic_scan(fam.at(F(4, 5))).refuted
