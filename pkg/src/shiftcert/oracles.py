"""Independent numerical cross-checks of the quartic form, and a truncated quadratic hyponormality test."""

import random
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .certificate import Certificate, Verdict
from .exactcore import psd_check
from .quartic.blocks import quartic_blocks
from .shifts import ShiftInstance, hyponormal_check
from .shifts.commutator import polynomial_self_commutator

DEFAULT_PRECISION = 256
DEFAULT_SEED = 42
S_GRID = (Fraction(0), Fraction(1, 4), Fraction(1), Fraction(4), Fraction(16), Fraction(10 ** 6))


@dataclass(frozen=True)
class ParamVector:
    """lam = (1, a, b, c) and a finitely supported x; complex entries are (re, im) Fraction pairs."""

    lam: tuple
    x: tuple

    def __post_init__(self):
        if len(self.lam) != 4:
            raise ValueError("lam needs four entries")
        if not self.x or all(re == 0 and im == 0 for re, im in self.x):
            raise ValueError("x must have a nonzero entry")

    @property
    def support(self):
        return len(self.x)

    @classmethod
    def real(cls, lam, x):
        return cls(tuple((Fraction(v), Fraction(0)) for v in lam), tuple((Fraction(v), Fraction(0)) for v in x))


def random_param_vector(rng: random.Random, max_support=12):
    def q():
        return Fraction(rng.randint(-60, 60), rng.randint(1, 12))

    lam = ((Fraction(1), Fraction(0)),) + tuple((q(), q()) for _ in range(3))
    n = rng.randint(1, max_support)
    x = [(q(), q()) for _ in range(n)]
    if all(re == 0 and im == 0 for re, im in x):
        x[0] = (Fraction(1), Fraction(0))
    return ParamVector(lam, tuple(x))


def _mpq(q):
    return mp.mpf(q.numerator) / q.denominator


def _mpc(pair):
    return mp.mpc(_mpq(pair[0]), _mpq(pair[1]))


def _inner(u, v):
    return mp.fsum(u[k] * mp.conj(v[k]) for k in u if k in v)


def direct_quartic_form(s: ShiftInstance, p: ParamVector, precision=DEFAULT_PRECISION):
    """sum_{i,j} lam_i conj(lam_j) <[W*^j, W^i] x, x>, from shift powers applied to x.

    Returns an mpc; its imaginary part is rounding noise.
    """
    if precision < 128:
        raise ValueError("precision must be at least 128 bits")
    with mp.workprec(precision):
        alpha = {n: mp.sqrt(_mpq(s.alpha_sq(n))) for n in range(p.support + 4)}
        x = {n: _mpc(v) for n, v in enumerate(p.x)}
        lam = [_mpc(v) for v in p.lam]
        fwd, bwd = [x], [x]
        for _ in range(4):
            prev = fwd[-1]
            fwd.append({n + 1: alpha[n] * v for n, v in prev.items()})
            prev = bwd[-1]
            bwd.append({n - 1: alpha[n - 1] * v for n, v in prev.items() if n >= 1})
        total = mp.mpc(0)
        for i in range(1, 5):
            for j in range(1, 5):
                term = _inner(fwd[i], fwd[j]) - _inner(bwd[j], bwd[i])
                total += lam[i - 1] * mp.conj(lam[j - 1]) * term
        return +total


def _block_form(m, y):
    n = len(y)
    return mp.fsum(m[j][k] * y[k] * mp.conj(y[j]) for j in range(n) for k in range(n))


def lemma2_quartic_form(s: ShiftInstance, p: ParamVector, precision=DEFAULT_PRECISION):
    """The same form as a sum over the blocks: |c|^2 r_0 |x_0|^2 + Theta_1 + Theta_2 + sum_i Delta_i."""
    if precision < 128:
        raise ValueError("precision must be at least 128 bits")
    blocks = quartic_blocks(s)
    with mp.workprec(precision):
        L = p.support
        x = [_mpc(v) for v in p.x] + [mp.mpc(0)] * 4
        lam = [_mpc(v) for v in p.lam]
        w = [mp.conj(v) for v in lam]  # weights multiplying x_{i+j} inside a block
        total = abs(lam[3]) ** 2 * _mpq(blocks.r0) * abs(x[0]) ** 2
        total += _block_form(blocks.theta1.numeric(mp), [w[2] * x[0], w[3] * x[1]])
        total += _block_form(blocks.theta2.numeric(mp), [w[1] * x[0], w[2] * x[1], w[3] * x[2]])
        for i in range(L):
            y = [w[j] * x[i + j] for j in range(4)]
            total += _block_form(blocks.delta(i).numeric(mp), y)
        return +total


def compare_forms(s, p, precision=DEFAULT_PRECISION):
    """(direct, block sum, |difference| / (1 + |direct|))."""
    with mp.workprec(precision):
        d = direct_quartic_form(s, p, precision)
        l2 = lemma2_quartic_form(s, p, precision)
        return d, l2, abs(d - l2) / (1 + abs(d))


def oracle_trials(s, trials=100, seed=DEFAULT_SEED, precision=DEFAULT_PRECISION, max_support=12):
    """Seeded comparison of the two evaluation paths; rows sorted by trial index."""
    rng = random.Random(seed)
    rows = []
    with mp.workprec(precision):
        for t in range(trials):
            p = random_param_vector(rng, max_support)
            d, l2, rel = compare_forms(s, p, precision)
            scale = 1 + abs(d)
            rows.append({"trial": t, "support": p.support, "direct": d, "block_sum": l2, "relative_difference": rel,
                         "imag": max(abs(d.imag), abs(l2.imag)) / scale, "scaled_value": d.real / scale})
    return rows


def quadratic_hypo_test(s: ShiftInstance, sv, N):
    """PSD of the self-commutator of W + s W^2 compressed to e_0..e_N.

    REFUTED is conclusive; CERTIFIED only says the truncation passes.
    """
    if N < 3:
        raise ValueError("N must be >= 3")
    sv = Fraction(sv)
    if sv < 0:
        raise ValueError("s must be nonnegative")
    claim = f"W + ({sv})W^2 is hyponormal"
    m = polynomial_self_commutator(s, [1, sv], N)
    cert = psd_check(m)
    if cert.refuted:
        return Certificate(Verdict.REFUTED, claim, witness=cert.witness, notes=cert.notes)
    return Certificate(Verdict.CERTIFIED, claim, rank=cert.rank, data={"s": sv, "N": N},
                       notes=[f"necessary condition only: compression to e_0..e_{N} is PSD"])


def quadratic_scan(s, N=20, grid=S_GRID):
    """quadratic_hypo_test over a grid of s; REFUTED if any grid point fails."""
    results = [(sv, quadratic_hypo_test(s, sv, N)) for sv in grid]
    bad = [(sv, c) for sv, c in results if c.refuted]
    claim = "W + sW^2 hyponormal on the s grid"
    data = {"grid": [sv for sv, _ in results], "verdicts": [c.verdict.value for _, c in results], "N": N}
    if bad:
        sv, c = bad[0]
        return Certificate(Verdict.REFUTED, claim, witness={"s": sv, **c.witness}, data=data)
    return Certificate(Verdict.CERTIFIED, claim, data=data,
                       notes=[f"necessary condition only: each truncation to e_0..e_{N} is PSD"])


def hyponormal_agrees(s, N=20):
    """quadratic_hypo_test at s = 0 and hyponormal_check give the same verdict."""
    return quadratic_hypo_test(s, 0, N).verdict is hyponormal_check(s, N).verdict
