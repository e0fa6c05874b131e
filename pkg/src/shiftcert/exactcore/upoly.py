"""Dense univariate polynomials over Q: Euclid, Sturm chains, exact root isolation.

Coefficient lists are low degree first and always trimmed (no trailing zeros);
the zero polynomial is ``[]``.
"""

from fractions import Fraction
from math import gcd, lcm


def trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([a * c for a in p])


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    p = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        c = p[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[i + shift] -= c * b
        p = trim(p)
    return trim(quot), p


def monic(p):
    return [c / p[-1] for c in p] if p else []


def pgcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign(v):
    return (v > 0) - (v < 0)


def taylor_shift(p, a):
    """Coefficients of p(a + t) in t."""
    out = []
    for c in reversed(p):
        # out <- out * (t + a) + c
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, b in enumerate(out):
            nxt[i + 1] += b
            nxt[i] += a * b
        nxt[0] += c
        out = nxt
    return trim(out)


def sign_right_of(p, a):
    """Sign of p on (a, a + eps) for all small eps > 0."""
    for c in taylor_shift(p, a):
        if c:
            return sign(c)
    return 0


def squarefree_factors(p):
    """Yun's algorithm: monic [f1, f2, ...] with p = lc * f1 * f2^2 * f3^3 * ..."""
    p = trim(p)
    if degree(p) < 1:
        return []
    dp = derivative(p)
    a = pgcd(p, dp)
    b = divmod_(p, a)[0]
    c = divmod_(dp, a)[0]
    d = sub(c, derivative(b))
    factors = []
    while degree(b) >= 1:
        a = pgcd(b, d)
        factors.append(a)
        b = divmod_(b, a)[0]
        c = divmod_(d, a)[0]
        d = sub(c, derivative(b))
    return factors


def odd_multiplicity_part(p):
    """Monic square-free polynomial whose roots are exactly the odd-multiplicity roots of p."""
    out = [Fraction(1)]
    for i, f in enumerate(squarefree_factors(p), start=1):
        if i % 2 == 1:
            out = mul(out, f)
    return monic(out)


def sturm_chain(p):
    chain = [trim(p), derivative(p)]
    while chain[-1]:
        r = divmod_(chain[-2], chain[-1])[1]
        chain.append([-c for c in r])
    chain.pop()
    return chain


def _variations(chain, x):
    signs = [s for s in (sign(evaluate(q, x)) for q in chain) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(chain, lo, hi):
    """Distinct real roots in (lo, hi] of the chain's square-free leader."""
    return _variations(chain, lo) - _variations(chain, hi)


def cauchy_bound(p):
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def simplest_between(lo, hi):
    """Fraction with the smallest denominator in the closed interval [lo, hi] (lo <= hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if Fraction(fl) == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part fl; recurse on reciprocals of the fractional parts.
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def primitive_integer(p):
    den = lcm(*(c.denominator for c in p)) if p else 1
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints


class AlgebraicRoot:
    """Irrational real root of ``poly`` isolated in the open interval (lo, hi)."""

    def __init__(self, poly, lo, hi):
        self.poly = poly
        self.lo = lo
        self.hi = hi

    def __repr__(self):
        return f"AlgebraicRoot(poly={self.poly!r}, lo={self.lo}, hi={self.hi})"

    def __eq__(self, other):
        return (isinstance(other, AlgebraicRoot) and self.poly == other.poly
                and self.lo == other.lo and self.hi == other.hi)

    def __hash__(self):
        return hash((tuple(self.poly), self.lo, self.hi))


def smallest_root_above(p, floor, width=Fraction(1, 10**12)):
    """Smallest real root r > floor of the square-free polynomial p.

    Returns a Fraction when the root is rational, an AlgebraicRoot otherwise,
    and None when p has no root above ``floor``.
    """
    p = monic(trim(p))
    if degree(p) < 1:
        return None
    chain = sturm_chain(p)
    hi = max(cauchy_bound(p), Fraction(floor) + 1)
    lo = Fraction(floor)
    if count_roots(chain, lo, hi) == 0:
        return None
    # Shrink hi until (lo, hi] holds exactly one root, the smallest.
    while count_roots(chain, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_roots(chain, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    if evaluate(p, hi) == 0:
        return hi
    # Rational roots have denominators dividing the leading coefficient of the integer form.
    ip = primitive_integer(p)
    lead = abs(ip[-1])
    sep = Fraction(1, 2 * lead * lead)
    s_lo = sign(evaluate(p, lo)) if evaluate(p, lo) != 0 else -sign(evaluate(p, hi))
    while hi - lo > min(sep, width):
        mid = (lo + hi) / 2
        v = evaluate(p, mid)
        if v == 0:
            return mid
        if sign(v) == s_lo:
            lo = mid
        else:
            hi = mid
        if hi - lo <= sep:
            cand = simplest_between(lo, hi)
            if cand.denominator <= lead and evaluate(p, cand) == 0:
                return cand
    cand = simplest_between(lo, hi)
    if evaluate(p, cand) == 0:
        return cand
    return AlgebraicRoot(p, lo, hi)


class RatFunc:
    """Reduced univariate rational function num/den over Q with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = trim(num)
        den = trim(den) if den is not None else [Fraction(1)]
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        g = pgcd(num, den) if num else [Fraction(1)]
        if degree(g) > 0:
            num = divmod_(num, g)[0]
            den = divmod_(den, g)[0]
        lead = den[-1]
        self.num = scale(num, 1 / lead)
        self.den = scale(den, 1 / lead)

    @classmethod
    def const(cls, c):
        return cls([Fraction(c)])

    @classmethod
    def var(cls):
        return cls([Fraction(0), Fraction(1)])

    def __add__(self, o):
        o = _as_ratfunc(o)
        return RatFunc(add(mul(self.num, o.den), mul(o.num, self.den)), mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc([-c for c in self.num], self.den)

    def __sub__(self, o):
        return self + (-_as_ratfunc(o))

    def __rsub__(self, o):
        return _as_ratfunc(o) - self

    def __mul__(self, o):
        o = _as_ratfunc(o)
        return RatFunc(mul(self.num, o.num), mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _as_ratfunc(o)
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(mul(self.num, o.den), mul(self.den, o.num))

    def __rtruediv__(self, o):
        return _as_ratfunc(o) / self

    def __eq__(self, o):
        try:
            o = _as_ratfunc(o)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def is_polynomial(self):
        return degree(self.den) == 0

    def is_constant(self):
        return self.is_polynomial() and degree(self.num) <= 0

    def __call__(self, x):
        d = evaluate(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return evaluate(self.num, x) / d

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"


def _as_ratfunc(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, (int, Fraction)):
        return RatFunc.const(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to RatFunc")
