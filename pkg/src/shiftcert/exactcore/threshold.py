"""Largest parameter value keeping a family of univariate polynomials nonnegative."""

import math
from fractions import Fraction

from . import upoly
from .poly import Poly
from .upoly import AlgebraicRoot


def _dense(p, var):
    if isinstance(p, Poly):
        return upoly.trim(p.univariate_coeffs(var))
    return upoly.trim(p)


def nonneg_limit(p, floor):
    """sup{t : p >= 0 on (floor, t]} for one polynomial given as a dense list."""
    floor = Fraction(floor)
    if not p:
        return math.inf
    if upoly.sign_right_of(p, floor) < 0:
        return floor
    odd = upoly.odd_multiplicity_part(p)
    if upoly.degree(odd) < 1:
        return math.inf
    root = upoly.smallest_root_above(odd, floor)
    return math.inf if root is None else root


def _key(t):
    if t is math.inf:
        return (math.inf, 0)
    if isinstance(t, AlgebraicRoot):
        return (t.lo, 1)
    return (t, 0)


def poly_nonneg_threshold(ps, floor, var="X", with_index=False):
    """Supremum of x* such that every p in ``ps`` is >= 0 on (floor, x*].

    Each p is a Poly in ``var`` only (or a dense coefficient list).  The result is
    a Fraction, ``math.inf``, or an ``AlgebraicRoot`` isolating an irrational bound
    to width <= 1e-12.  With ``with_index`` the index of a binding polynomial is
    returned as well (None when unbounded).
    """
    best, best_i = math.inf, None
    for i, p in enumerate(ps):
        lim = nonneg_limit(_dense(p, var), floor)
        if lim is math.inf:
            continue
        if best is math.inf or _earlier(lim, best):
            best, best_i = lim, i
    return (best, best_i) if with_index else best


def _bounds(t):
    if isinstance(t, AlgebraicRoot):
        return t.lo, t.hi, True
    return t, t, False


def _earlier(a, b, max_refine=400):
    """True when bound a lies strictly below bound b (coincident roots compare equal)."""
    for _ in range(max_refine):
        a_lo, a_hi, a_open = _bounds(a)
        b_lo, b_hi, b_open = _bounds(b)
        if a_hi < b_lo or (a_hi == b_lo and (a_open or b_open)):
            return True
        if b_hi <= a_lo:
            return False
        if not (a_open or b_open):
            return a < b
        if a_open:
            a = _refine(a)
        if b_open:
            b = _refine(b)
    return False


def _refine(r):
    mid = (r.lo + r.hi) / 2
    v = upoly.evaluate(r.poly, mid)
    if v == 0:
        return mid
    if upoly.sign(v) == upoly.sign(upoly.evaluate(r.poly, r.hi)):
        return AlgebraicRoot(r.poly, r.lo, mid)
    return AlgebraicRoot(r.poly, mid, r.hi)
