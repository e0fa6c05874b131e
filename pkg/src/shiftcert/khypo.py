"""k-hyponormality of weighted shifts through Hankel moment matrices."""

import math
from fractions import Fraction

from .certificate import Certificate, Verdict
from .exactcore import (AlgebraicRoot, Poly, SymMatrix, X, det_fraction_free, poly_nonneg_threshold,
                        principal_minors, psd_check)
from .shifts import MomentSequence, ShiftInstance, WeightFamily

DEFAULT_N = 25


class HankelMatrix(SymMatrix):
    """A(n; k) = (gamma_{n+i+j})_{0<=i,j<=k}."""

    __slots__ = ("base", "order")

    def __init__(self, moments, n, k):
        super().__init__(k + 1, [[moments[n + i + j] for j in range(i, k + 1)] for i in range(k + 1)])
        self.base = n
        self.order = k


def _moments(src):
    return src if isinstance(src, MomentSequence) else MomentSequence(src)


def hankel_matrix(m, n, k):
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    return HankelMatrix(_moments(m), n, k)


def k_hyponormal_test(s: ShiftInstance, k, N=DEFAULT_N):
    """PSD of A(n; k), n = 0..N, or only the n below the tail start when the tail is declared subnormal.

    A(n; k) for n >= tail_start is gamma_n times the Hankel matrix of the shift
    restricted to span{e_m : m >= n}; a subnormal tail makes those PSD.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    fam = s.family
    claim = f"weighted shift is {k}-hyponormal"
    moments = MomentSequence(s)
    notes = []
    if fam.tail_subnormal:
        last = max(fam.tail_start - 1, 0)
        notes.append(f"subnormal tail declared ({fam.justification}); A(n;{k}) for n >= "
                     f"{fam.tail_start} is PSD, so n = 0..{last} is decisive")
    else:
        last = N
    ranks = {}
    for n in range(last + 1):
        cert = psd_check(hankel_matrix(moments, n, k))
        if cert.refuted:
            return Certificate(Verdict.REFUTED, claim, witness={"n": n, **cert.witness},
                               notes=notes + [f"A({n};{k}) is not PSD"] + cert.notes)
        ranks[n] = cert.rank
    deficient = [n for n, r in ranks.items() if r < k + 1]
    if deficient:
        notes.append(f"rank-deficient Hankel matrix at n in {deficient} (boundary case)")
    if not fam.tail_subnormal:
        notes.append(f"verified up to n = {N}")
    return Certificate(Verdict.CERTIFIED, claim, rank=ranks[0],
                       data={"checked_n": list(range(last + 1)), "all_n": fam.tail_subnormal,
                             "ranks": [ranks[n] for n in sorted(ranks)]}, notes=notes)


def k_hypo_threshold(f: WeightFamily, k, with_report=False):
    """Largest x with A(0; k)(x) PSD: the threshold of all leading principal minors in X.

    When the tail is subnormal and starts at 1 this is the exact k-hyponormality threshold.
    """
    if f.tail_start > 1:
        raise ValueError("symbolic thresholds need the parameter confined to alpha_0 (tail_start <= 1)")
    minors = [Poly.coerce(p) for p in principal_minors(hankel_matrix(MomentSequence(f), 0, k))]
    floor = f.x_domain.lo
    value, idx = poly_nonneg_threshold(minors, floor, with_index=True)
    if value == floor:
        raise ValueError("empty feasibility: no admissible x above the domain floor")
    if with_report:
        return value, {"minors": minors, "binding_minor": None if idx is None else idx + 1}
    return value


def hk_closed_form(k):
    """2(k+1)^2 (k+2)^2 / (3k(k+3)(k^2+3k+4))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(2 * (k + 1) ** 2 * (k + 2) ** 2, 3 * k * (k + 3) * (k * k + 3 * k + 4))


def hilbert_segment(nn, p):
    """h_ij = 1 / (p + i + j - 1), 1 <= i, j <= nn."""
    return SymMatrix.from_function(nn, lambda i, j: Fraction(1, p + i + j + 1))


def hilbert_type_det(nn, p):
    """det (1/(p+i+j-1)) = (1!...(nn-1)!)^2 prod Gamma(p+i) / prod Gamma(nn+p+i), integer p."""
    p = Fraction(p)
    if p.denominator != 1:
        raise ValueError("unsupported p: only integer p is handled")
    p = int(p)
    if nn < 1 or p < 0:
        raise ValueError("need nn >= 1 and p >= 0")
    num = math.prod(math.factorial(i) for i in range(1, nn)) ** 2
    num *= math.prod(math.factorial(p + i - 1) for i in range(1, nn + 1))
    den = math.prod(math.factorial(nn + p + i - 1) for i in range(1, nn + 1))
    return Fraction(num, den)


def split_matrices(k):
    """B and C from the row-expansion argument: A with its 1/(3x) corner replaced by 1/2, and A minus row/col 0."""
    b = SymMatrix.from_function(k + 1, lambda i, j: Fraction(1, i + j + 2))
    c = SymMatrix.from_function(k, lambda i, j: Fraction(1, i + j + 4))
    return b, c


def determinant_split_residual(f: WeightFamily, k):
    """Clear denominators in det A - ((2-3X)/(6X)) det C - det B; returns the residual polynomial.

    A is A(0;k)/(3X), so 6X (3X)^(k+1) times the identity reads
    6X det A(0;k) - (3X)^(k+1) ((2-3X) det C + 6X det B) = 0.
    """
    det_a0 = Poly.coerce(det_fraction_free(hankel_matrix(MomentSequence(f), 0, k)))
    b, c = split_matrices(k)
    det_b, det_c = det_fraction_free(b), det_fraction_free(c)
    return 6 * X * det_a0 - (3 * X) ** (k + 1) * ((2 - 3 * X) * det_c + 6 * X * det_b)


def hk_from_split(k):
    """Root of (2-3x) det C + 6x det B, the sign change of det A."""
    b, c = split_matrices(k)
    det_b, det_c = det_fraction_free(b), det_fraction_free(c)
    return 2 * det_c / (3 * det_c - 6 * det_b)


def threshold_text(t):
    if t is math.inf:
        return "inf"
    if isinstance(t, AlgebraicRoot):
        return f"root in ({t.lo}, {t.hi})"
    return str(t)
