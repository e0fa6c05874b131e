from fractions import Fraction as F

import pytest

from shiftcert.exactcore import SymMatrix, X, det_fraction_free
from shiftcert.khypo import (determinant_split_residual, hankel_matrix, hilbert_segment, hilbert_type_det,
                             hk_closed_form, hk_from_split, k_hyponormal_test, k_hypo_threshold, split_matrices)
from shiftcert.shifts import MomentSequence, default_family, parse_family

# H_k values computed independently from the closed form by hand and frozen here.
H = {1: F(3, 4), 2: F(24, 35), 3: F(200, 297), 4: F(75, 112), 5: F(147, 220), 6: F(1568, 2349)}


@pytest.fixture(scope="module")
def fam():
    return default_family()


def test_hankel_examples(fam):
    a = hankel_matrix(MomentSequence(fam), 0, 1)
    assert a.rows() == [[1, X], [X, F(3, 4) * X]]
    a3 = hankel_matrix(MomentSequence(fam), 0, 3)
    for i in range(4):
        for j in range(4):
            if i == j == 0:
                assert a3[0, 0] == 1
            else:
                assert a3[i, j] == 3 * X / (i + j + 2)
    s = fam.at(F(2, 3))
    assert hankel_matrix(MomentSequence(s), 1, 1).rows() == [[F(2, 3), F(1, 2)], [F(1, 2), F(2, 5)]]


def test_hankel_structure(fam):
    a = hankel_matrix(MomentSequence(fam.at(F(7, 10))), 2, 4)
    assert a.base == 2 and a.order == 4
    for i in range(5):
        for j in range(5):
            assert a[i, j] == a[max(0, i + j - 4), min(4, i + j)]


@pytest.mark.parametrize("k", range(1, 7))
def test_threshold_equals_closed_form(fam, k):
    assert hk_closed_form(k) == H[k]
    assert k_hypo_threshold(fam, k) == H[k]


def test_closed_form_examples():
    assert hk_closed_form(2) == F(24, 35)
    assert hk_closed_form(4) == F(75, 112)
    assert F(2, 3) < hk_closed_form(100) < hk_closed_form(99) < F(3, 4)
    with pytest.raises(ValueError):
        hk_closed_form(0)


def test_closed_form_decreasing():
    vals = [hk_closed_form(k) for k in range(1, 51)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(F(2, 3) < v <= F(3, 4) for v in vals)


@pytest.mark.parametrize("k", range(1, 7))
def test_determinant_split_identity(fam, k):
    assert determinant_split_residual(fam, k).is_zero()
    assert hk_from_split(k) == H[k]


def test_split_matrices_shapes():
    b, c = split_matrices(3)
    assert b.dim == 4 and c.dim == 3
    assert b[0, 0] == F(1, 2) and c[0, 0] == F(1, 4)


@pytest.mark.parametrize("nn", range(1, 7))
@pytest.mark.parametrize("p", range(0, 5))
def test_hilbert_type_det(nn, p):
    assert hilbert_type_det(nn, p) == det_fraction_free(hilbert_segment(nn, p))


def test_hilbert_examples():
    assert hilbert_type_det(1, 0) == 1
    assert hilbert_type_det(2, 0) == F(1, 12)
    direct = SymMatrix.from_function(3, lambda i, j: F(1, 2 + i + j + 1))
    assert hilbert_type_det(3, 2) == det_fraction_free(direct)
    with pytest.raises(ValueError, match="unsupported p"):
        hilbert_type_det(2, F(1, 2))


def test_k_hyponormal_examples(fam):
    assert k_hyponormal_test(fam.at(F(2, 3)), 3).certified
    cert = k_hyponormal_test(fam.at(F(667, 990)), 3)
    assert cert.refuted and cert.witness["n"] == 0
    boundary = k_hyponormal_test(fam.at(F(24, 35)), 2)
    assert boundary.certified and boundary.rank == 2
    assert any("rank-deficient" in n for n in boundary.notes)


def test_k_hyponormal_witness_is_exact(fam):
    s = fam.at(F(7, 10))
    cert = k_hyponormal_test(s, 2)
    assert cert.refuted
    a = hankel_matrix(MomentSequence(s), cert.witness["n"], 2)
    assert a.quad_form(cert.witness["vector"]) < 0


def test_higher_order_implies_lower(fam):
    xs = [F(2, 3) + F(j, 120) for j in range(10)]
    for x in xs:
        s = fam.at(x)
        verdicts = [k_hyponormal_test(s, k).certified for k in range(1, 6)]
        for k in range(1, 5):
            if verdicts[k]:
                assert verdicts[k - 1]


def test_verified_up_to_n_without_subnormal_tail():
    f = parse_family("prefix [ x ] tail (n+2)/(n+3) from 1")
    cert = k_hyponormal_test(f.at(F(2, 3)), 2, N=6)
    assert cert.certified
    assert "verified up to n = 6" in cert.notes


def test_empty_feasibility():
    f = parse_family("prefix [ 2 + x ] tail 1/2 from 1")
    with pytest.raises(ValueError, match="empty feasibility"):
        k_hypo_threshold(f, 1)
