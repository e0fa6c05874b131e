"""Acceptance suite: one PASS/FAIL line per criterion, each under its time budget."""

import io
import time
from fractions import Fraction as F

import pytest
from mpmath import mp

from shiftcert.cli import run
from shiftcert.exactcore import det_fraction_free
from shiftcert.khypo import (DEFAULT_N, determinant_split_residual, hilbert_segment, hilbert_type_det, hk_closed_form,
                             k_hyponormal_test, k_hypo_threshold)
from shiftcert.oracles import oracle_trials, quadratic_scan
from shiftcert.quartic import (build_delta_tilde, four_hyponormal_test, harvest, nested_determinants_test,
                               quartic_blocks, quartic_certificate)
from shiftcert.shifts import hyponormal_check, default_family

XI = F(22580899, 33531912)
LEDGER = {
    "theta1": (F(1, 84), F(5, 12)),
    "theta2": (F(1, 2450), F(612, 1225)),
    "delta0": (F(1, 11760), F(1411, 2352)),
    "delta2": (F(1, 62720), F(627, 12544)),
    "delta3": (F(1, 211680), F(1411, 42336)),
    "delta4": (F(1, 604800), F(2057, 86400)),
}
REDUCED_RANK = {"theta1": 1, "theta2": 2, "delta0": 3, "delta2": 3, "delta3": 3, "delta4": 3}


@pytest.fixture(scope="module")
def fam():
    return default_family()


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, started, budget, detail=""):
        elapsed = time.perf_counter() - started
        ok = ok and elapsed < budget
        with capsys.disabled():
            line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.2f}s, budget {budget}s)"
            print("\n" + line + (f" {detail}" if detail else ""))
        assert ok, detail
    return emit


def cli(*argv):
    return run(list(argv), io.StringIO(), io.StringIO())


def test_criterion_01_thresholds(fam, report):
    t = time.perf_counter()
    got = {k: k_hypo_threshold(fam, k) for k in range(1, 7)}
    ok = all(got[k] == hk_closed_form(k) for k in got) and got[2] == F(24, 35) and got[3] == F(200, 297)
    report(1, "k-hyponormality thresholds k=1..6", ok, t, 10, "" if ok else str(got))


def test_criterion_02_determinant_split(fam, report):
    t = time.perf_counter()
    ok = all(determinant_split_residual(fam, k).is_zero() for k in range(1, 7))
    report(2, "determinant split identity k=1..6", ok, t, 10)


def test_criterion_03_hilbert_determinant(report):
    t = time.perf_counter()
    bad = [(nn, p) for nn in range(1, 7) for p in range(0, 5)
           if hilbert_type_det(nn, p) != det_fraction_free(hilbert_segment(nn, p))]
    report(3, "Hilbert-type determinant closed form", not bad, t, 5, str(bad) if bad else "")


def test_criterion_04_slack_ledger(fam, report):
    t = time.perf_counter()
    ledger = harvest(quartic_blocks(fam))
    got = {r.source: (r.slack, r.reduced_diagonal) for r in ledger}
    ok = got == LEDGER
    for x in (F(2, 3), F(667, 990), F(44, 63)):
        for name, (cert, _) in ledger.check_reduced(x).items():
            ok = ok and cert.certified and cert.rank == REDUCED_RANK[name]
    report(4, "slack ledger and reduced ranks", ok, t, 30, "" if ok else str(got))


def test_criterion_05_xi(fam, report):
    t = time.perf_counter()
    rep, value = nested_determinants_test(build_delta_tilde(fam))
    binding = rep.binding_entries()
    ok = value == XI and bool(binding)
    names = ", ".join(f"minor {e.minor} monomial {e.exponent}" for e in binding)
    detail = f"binding: {names}" if ok else f"expected {XI}, computed {value}"
    report(5, "nested determinants threshold", ok, t, 300, detail)


def test_criterion_06_gap(report):
    t = time.perf_counter()
    mid = (F(200, 297) + F(667, 990)) / 2
    ok = True
    for x in (F(667, 990), mid):
        xs = f"{x.numerator}/{x.denominator}"
        ok = ok and cli("check-khypo", "--x", xs, "--k", "3") == 1
        ok = ok and cli("quartic-certify", "--x", xs) == 0
    report(6, "quartically hyponormal but not 3-hyponormal", ok, t, 300)


def test_criterion_07_block_test_matches_hankel(fam, report):
    t = time.perf_counter()
    xs = [F(3, 5) + (F(54, 75) - F(3, 5)) * j / 20 for j in range(1, 20)] + [F(75, 112)]
    bad = [x for x in xs if four_hyponormal_test(fam.at(x)).verdict != k_hyponormal_test(fam.at(x), 4).verdict]
    report(7, "4-hyponormal block test agrees with Hankel k=4", len(xs) == 20 and not bad, t, 60, str(bad) if bad else "")


def test_criterion_08_oracle(fam, report):
    t = time.perf_counter()
    tol = mp.mpf(10) ** -40
    rows = oracle_trials(fam.at(F(667, 990)), trials=100, seed=42, precision=256)
    worst = max(r["relative_difference"] for r in rows)
    ok = len(rows) == 100 and worst <= tol and all(r["imag"] <= tol for r in rows)
    report(8, "direct and block-sum quartic forms agree", ok, t, 60, f"max relative difference {mp.nstr(worst, 3)}")


def test_criterion_09_subnormal_sanity(fam, report):
    t = time.perf_counter()
    s = fam.at(F(2, 3))
    results = {"hypo": hyponormal_check(s, DEFAULT_N).certified}
    results.update({f"k={k}": k_hyponormal_test(s, k).certified for k in range(1, 7)})
    results["4-hypo"] = four_hyponormal_test(s).certified
    results["quartic"] = quartic_certificate(fam, F(2, 3)).certified
    results["quad-scan"] = quadratic_scan(s).certified
    bad = [k for k, v in results.items() if not v]
    report(9, "every test certifies x = 2/3", not bad, t, 300, str(bad) if bad else "")


def test_criterion_10_monotone(report):
    t = time.perf_counter()
    vals = [hk_closed_form(k) for k in range(1, 51)]
    ok = all(a > b for a, b in zip(vals, vals[1:])) and all(F(2, 3) < v <= F(3, 4) for v in vals)
    report(10, "H_k strictly decreasing inside (2/3, 3/4]", ok, t, 1)
