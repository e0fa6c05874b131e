"""The augmented block: Delta_1 plus harvested slacks, its minors, and the coefficientwise threshold."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..exactcore import Poly, SymMatrix, poly_nonneg_threshold, principal_minors
from ..exactcore import upoly
from ..exactcore.threshold import _earlier, nonneg_limit
from .blocks import quartic_blocks, rationalize_block
from .slack import SlackLedger, harvest

MAGNITUDES = ("a", "b", "c")
SQUARES = ("A2", "B2", "C2")


def even_substitute(p: Poly):
    """Rewrite a^2k b^2l c^2m as A2^k B2^l C2^m; odd powers of a, b or c are an error."""
    out = Poly.const(0)
    for mono, coef in p.terms.items():
        term = Poly.const(coef)
        for v, e in mono:
            if v in MAGNITUDES:
                if e % 2:
                    raise ValueError(f"odd power of {v} in a minor: parameters do not enter in modulus-square form")
                term = term * Poly.var(SQUARES[MAGNITUDES.index(v)], e // 2)
            else:
                term = term * Poly.var(v, e)
        out = out + term
    return out


@dataclass
class DeltaTilde:
    """Rationalized Delta_1 with slacks, over Q[X, a, b, c] (a, b, c >= 0 magnitudes).

    ``raw_diagonal`` holds the diagonal in the block's own coordinates over
    Q[X, A2, B2, C2]; ``minors`` are the leading principal minors in the same
    coordinates (rationalized minors divided by the congruence factors).
    """

    matrix: SymMatrix
    dsq: tuple
    raw_diagonal: list
    minors: list
    ledger: SlackLedger
    base: object = field(repr=False, default=None)

    def matrix_at(self, x, a, b, c):
        env = {"X": Fraction(x), "a": Fraction(a), "b": Fraction(b), "c": Fraction(c)}
        return self.matrix.subs(env)

    def minors_at(self, x):
        return [m.subs({"X": Fraction(x)}) for m in self.minors]


def build_delta_tilde(f):
    return _build(f)


@lru_cache(maxsize=8)
def _build(f):
    blocks = quartic_blocks(f)
    ledger = harvest(blocks)
    base = blocks.delta(1)
    dsq = base.dsq
    rat = rationalize_block(base)
    scale = [Poly.const(1)] + [Poly.var(v) for v in MAGNITUDES]
    extra = [Poly.const(0) for _ in range(4)]
    raw_extra = [Poly.const(0) for _ in range(4)]
    for rec in ledger:
        weight = Poly.const(1) if rec.monomial == "1" else Poly.var(MAGNITUDES[SQUARES.index(rec.monomial)], 2)
        extra[rec.destination] = extra[rec.destination] + rec.slack * weight
        raw_extra[rec.destination] = raw_extra[rec.destination] + rec.slack * even_substitute(weight)

    def entry(j, k):
        v = scale[j] * scale[k] * rat[j, k]
        if j == k:
            v = v + dsq[j] * extra[j]
        return v

    matrix = SymMatrix.from_function(4, entry)
    for j in range(4):
        for k in range(j + 1, 4):
            e = Poly.coerce(matrix[j, k])
            want = (j > 0) + 1
            degs = {sum(x for v, x in m if v in MAGNITUDES) for m in e.terms}
            if degs - {want}:
                raise ValueError(f"structural mismatch: entry ({j}, {k}) is not homogeneous of degree {want} in a, b, c")
    raw_diag = []
    for j in range(4):
        coef = Poly.coerce(base.diagonal(j))
        w = Poly.const(1) if j == 0 else Poly.var(SQUARES[j - 1])
        raw_diag.append(coef * w + raw_extra[j])
    minors = []
    factor = Poly.const(1)
    for k, m in enumerate(principal_minors(matrix)):
        factor = factor * dsq[k]
        minors.append(even_substitute(Poly.coerce(m)) / factor)
    return DeltaTilde(matrix, dsq, raw_diag, minors, ledger, base)


# -- coefficient report -------------------------------------------------------

@dataclass
class CoefficientEntry:
    minor: int  # order of the leading minor, 1..4
    exponent: tuple  # powers of (A2, B2, C2)
    coefficient: Poly  # in X
    limit: object  # sup of x with coefficient >= 0 on (floor, x]
    sign: str = ""  # on the certified range

    def to_dict(self):
        return {"minor": self.minor, "exponent": list(self.exponent), "coefficient": _poly_json(self.coefficient),
                "sign": self.sign, "limit": _limit_json(self.limit)}


def _poly_json(p):
    """{"X^k": "p/q"} with exact coefficients, ascending powers."""
    coeffs = Poly.coerce(p).univariate_coeffs("X")
    from ..certificate import fmt
    return {f"X^{k}": fmt(c) for k, c in enumerate(coeffs) if c != 0}


def _limit_json(t):
    from ..certificate import to_jsonable
    return "inf" if t is math.inf else to_jsonable(t)


@dataclass
class CoefficientReport:
    floor: Fraction
    threshold: object
    entries: list
    binding: list  # indices into entries whose limit equals the threshold
    constant_terms_positive: bool

    def binding_entries(self):
        return [self.entries[i] for i in self.binding]

    def to_dict(self):
        from ..certificate import to_jsonable
        return {
            "floor": to_jsonable(self.floor),
            "threshold": _limit_json(self.threshold),
            "binding": [{"minor": e.minor, "exponent": list(e.exponent)} for e in self.binding_entries()],
            "constant_terms_positive": self.constant_terms_positive,
            "coefficients": [e.to_dict() for e in self.entries],
        }


def _same_bound(a, b):
    if a is math.inf or b is math.inf:
        return a is b
    return not _earlier(a, b) and not _earlier(b, a)


def _positive_on(p, lo, hi):
    """p > 0 on all of (lo, hi]."""
    dense = upoly.trim(Poly.coerce(p).univariate_coeffs("X"))
    if not dense or upoly.sign_right_of(dense, lo) <= 0:
        return False
    if upoly.degree(dense) < 1:
        return True
    sf = upoly.divmod_(dense, upoly.pgcd(dense, upoly.derivative(dense)))[0]
    root = upoly.smallest_root_above(sf, lo)
    if root is None:
        return True
    return hi is not math.inf and _earlier(hi, root)


def _sign_on(p, lo, hi):
    """Sign of p on (lo, hi] (the range where every coefficient is nonnegative)."""
    if p.is_zero():
        return "zero"
    if nonneg_limit(p.univariate_coeffs("X"), lo) == lo:
        return "negative"
    return "positive" if _positive_on(p, lo, hi) else "nonnegative"


def nested_determinants_test(d: DeltaTilde, floor=Fraction(0)):
    """Coefficientwise positivity threshold of the four minors, with a per-coefficient report."""
    entries = []
    for k, m in enumerate(d.minors, start=1):
        for exp, coef in m.coefficients(SQUARES).items():
            if coef.is_zero():
                continue
            entries.append(CoefficientEntry(k, exp, coef, nonneg_limit(coef.univariate_coeffs("X"), floor)))
    threshold, idx = poly_nonneg_threshold([e.coefficient for e in entries], floor, with_index=True)
    binding = [i for i, e in enumerate(entries) if _same_bound(e.limit, threshold)] if idx is not None else []
    for e in entries:
        e.sign = _sign_on(e.coefficient, floor, threshold)
    const_ok = all(_positive_on(m.coefficients(SQUARES).get((0, 0, 0), Poly.const(0)), floor, threshold)
                   for m in d.minors)
    return CoefficientReport(Fraction(floor), threshold, entries, binding, const_ok), threshold
