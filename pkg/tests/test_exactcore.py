import math
import random
from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftcert.exactcore import (AlgebraicRoot, Poly, SymMatrix, X, all_principal_minors, det_fraction_free,
                                 is_psd, max_diag_slack, poly_nonneg_threshold, principal_minors, psd_check)
from shiftcert.exactcore import upoly

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def sym(rows):
    return SymMatrix.from_rows([[F(v) for v in r] for r in rows])


def leibniz_det(rows):
    n = len(rows)
    total = F(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = F(1)
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total


# -- Poly ---------------------------------------------------------------------

def test_poly_arithmetic_and_printing():
    p = (X - F(3, 4)) * (X + 1)
    assert p == X ** 2 + F(1, 4) * X - F(3, 4)
    assert str(F(3, 4) * X) == "3/4*X"
    assert p.degree("X") == 2
    assert (p / (X + 1)) == X - F(3, 4)


def test_poly_inexact_division_raises():
    with pytest.raises(ValueError):
        (X ** 2 + 1) / (X + 1)


def test_poly_multivariate_exact_division():
    a, b = Poly.var("A2"), Poly.var("B2")
    p = (a * X - b + 3) * (a + b * X ** 2)
    assert p / (a + b * X ** 2) == a * X - b + 3


def test_poly_subs_and_coefficients():
    a = Poly.var("A2")
    p = (1 - X) * a ** 2 + F(1, 7) * a + X
    assert p.subs({"X": F(1, 2)}) == F(1, 2) * a ** 2 + F(1, 7) * a + F(1, 2)
    coeffs = p.coefficients(["A2"])
    assert coeffs[(2,)] == 1 - X
    assert coeffs[(0,)] == X
    assert list(coeffs) == [(0,), (1,), (2,)]


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=4), st.lists(rationals, min_size=1, max_size=4), rationals)
def test_poly_evaluation_is_a_ring_map(c1, c2, t):
    p, q = Poly.from_univariate(c1, "X"), Poly.from_univariate(c2, "X")
    ev = lambda r: r.evaluate({"X": t})
    assert ev(p + q) == ev(p) + ev(q)
    assert ev(p * q) == ev(p) * ev(q)
    assert ev(p - q) == ev(p) - ev(q)


# -- determinants -------------------------------------------------------------

def test_det_examples():
    assert det_fraction_free(sym([[1, F(1, 2)], [F(1, 2), F(1, 3)]])) == F(1, 12)
    assert det_fraction_free([]) == 1
    assert det_fraction_free(sym([[1]])) == 1
    assert det_fraction_free(sym([[0, 1], [1, 0]])) == -1


def test_det_symbolic_entries():
    m = SymMatrix.from_rows([[F(3, 5) * X, F(1, 2) * X], [F(1, 2) * X, F(3, 7) * X]])
    assert det_fraction_free(m) == X ** 2 / 140


def test_det_matches_leibniz_on_1000_random_4x4():
    rng = random.Random(7)
    for trial in range(1000):
        if trial % 2:
            rows = [[F(rng.randint(-9, 9)) for _ in range(4)] for _ in range(4)]
        else:
            # sparse symmetric rational matrices exercise the pivot swap
            rows = [[F(0)] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(i, 4):
                    v = F(rng.randint(-9, 9), rng.randint(1, 5)) if rng.random() > 0.3 else F(0)
                    rows[i][j] = rows[j][i] = v
        assert det_fraction_free(rows) == leibniz_det(rows)


def test_principal_minors():
    m = sym([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
    assert principal_minors(m) == [2, 3, 4]
    assert principal_minors(m)[-1] == det_fraction_free(m)
    assert len(all_principal_minors(m)) == 7
    assert principal_minors(sym([[2, 0], [0, 3]])) == [2, 6]
    assert principal_minors(sym([[F(1, 2), F(1, 3)], [F(1, 3), F(1, 4)]])) == [F(1, 2), F(1, 72)]


def test_principal_minors_symbolic():
    theta1 = SymMatrix.from_rows([[F(3, 5) * X, F(1, 2) * X], [F(1, 2) * X, F(3, 7) * X]])
    assert principal_minors(theta1) == [F(3, 5) * X, X ** 2 / 140]


# -- PSD ----------------------------------------------------------------------

def test_psd_refutation_witness_is_exact():
    m = sym([[1, 2], [2, 1]])
    cert = psd_check(m)
    assert cert.refuted
    v = cert.witness["vector"]
    assert m.quad_form(v) == cert.witness["value"] < 0


def test_certified_matrices_have_nonnegative_forms():
    rng = random.Random(3)
    m = sym([[2, -1, 0], [-1, 2, -1], [0, -1, 1]])
    assert psd_check(m).certified
    for _ in range(100):
        v = [F(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(3)]
        assert m.quad_form(v) >= 0


def test_psd_zero_and_singular():
    cert = psd_check(sym([[0, 0], [0, 0]]))
    assert cert.certified and cert.rank == 0
    cert = psd_check(sym([[1, 1], [1, 1]]))
    assert cert.certified and cert.rank == 1


def test_psd_zero_diagonal_coupling_refuted():
    m = sym([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    cert = psd_check(m)
    assert cert.refuted
    assert m.quad_form(cert.witness["vector"]) < 0


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
def test_gram_matrices_are_psd_and_rank_matches(vectors):
    # G = V V^T is PSD; its rank is the rank of V
    g = SymMatrix.from_function(3, lambda i, j: sum(a * b for a, b in zip(vectors[i], vectors[j])))
    cert = psd_check(g)
    assert cert.certified
    if det_fraction_free(g) != 0:
        assert cert.rank == 3


@settings(max_examples=80, deadline=None)
@given(st.lists(rationals, min_size=6, max_size=6), st.lists(rationals.filter(lambda q: q != 0), min_size=3,
                                                              max_size=3))
def test_psd_verdict_is_congruence_invariant(entries, d):
    a, b, c, e, f, g = entries
    m = SymMatrix.from_rows([[a, b, c], [b, e, f], [c, f, g]])
    assert psd_check(m).verdict == psd_check(m.congruence(d)).verdict
    refuted = psd_check(m)
    if refuted.refuted:
        assert m.quad_form(refuted.witness["vector"]) < 0


def test_max_diag_slack():
    m = sym([[2, 1], [1, 1]])
    assert max_diag_slack(m, 0) == 1
    reduced = m.with_diagonal(0, 1)
    assert is_psd(reduced) and psd_check(reduced).rank == 1
    with pytest.raises(ValueError):
        max_diag_slack(sym([[1, 0], [0, 0]]), 0)


# -- univariate roots and thresholds ---------------------------------------------

def test_threshold_examples():
    assert poly_nonneg_threshold([F(3, 4) - X], 0) == F(3, 4)
    assert poly_nonneg_threshold([(X - F(1, 2)) ** 2 * (1 - X)], 0) == 1
    assert poly_nonneg_threshold([1 + X ** 2], 0) is math.inf
    assert poly_nonneg_threshold([X * X - 2], 0) == 0
    root = poly_nonneg_threshold([2 - X ** 2], 0)
    assert isinstance(root, AlgebraicRoot)
    assert root.lo < F(14142135623731, 10 ** 13) and root.hi - root.lo <= F(1, 10 ** 12)
    assert root.lo ** 2 < 2 < root.hi ** 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=4), min_size=1, max_size=3))
def test_threshold_is_tight(coeff_lists):
    ps = [Poly.from_univariate([F(c) for c in cs], "X") for cs in coeff_lists]
    ps = [p for p in ps if not p.is_zero()]
    t = poly_nonneg_threshold(ps, 0)
    if t is math.inf or isinstance(t, AlgebraicRoot) or t == 0:
        return
    assert all(p.evaluate({"X": t}) >= 0 for p in ps)
    assert any(p.evaluate({"X": t + F(1, 10 ** 6)}) < 0 for p in ps)


def test_threshold_binding_index():
    value, idx = poly_nonneg_threshold([1 - X, F(1, 2) - X, 2 - X], 0, with_index=True)
    assert (value, idx) == (F(1, 2), 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=5, max_denominator=9), min_size=1, max_size=4, unique=True))
def test_rational_roots_found_exactly(roots):
    p = Poly.const(1)
    for r in roots:
        p = p * (r - X) if r == min(roots) else p * (X - r) ** 2
    # only the smallest root has odd multiplicity
    assert poly_nonneg_threshold([p], -1) == (min(roots) if min(roots) > -1 else math.inf)


def test_sturm_count_against_known_roots():
    p = upoly.mul(upoly.mul([-1, 1], [-2, 1]), [-3, 1])  # (x-1)(x-2)(x-3)
    chain = upoly.sturm_chain(p)
    assert upoly.count_roots(chain, F(0), F(10)) == 3
    assert upoly.count_roots(chain, F(3, 2), F(5, 2)) == 1


def test_simplest_between():
    assert upoly.simplest_between(F(1, 3), F(1, 2)) == F(1, 2)
    assert upoly.simplest_between(F(3, 10), F(4, 10)) == F(1, 3)
    assert upoly.simplest_between(F(-1), F(1)) == 0
