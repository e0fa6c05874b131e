"""Positivity on the nonnegative orthant by absorbing negative terms with two-term AM-GM.

For nonnegative variables and monomials m1, m2 with m1*m2 = m^2,
t1*m1 + t2*m2 >= 2 sqrt(t1 t2) m >= eps*m as soon as 4*t1*t2 >= eps^2.
Each negative coefficient is paid for from two positive ones; whatever is left
over stays nonnegative, and the constant keeps a positive remainder.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


@dataclass(frozen=True)
class Absorption:
    target: tuple
    eps: Fraction  # magnitude of the negative coefficient
    first: tuple
    t1: Fraction
    second: tuple
    t2: Fraction

    def to_dict(self):
        return {"target": list(self.target), "eps": self.eps, "first": list(self.first), "t1": self.t1,
                "second": list(self.second), "t2": self.t2}


def _sqrt_up(q, digits=30):
    """Rational r >= sqrt(q)."""
    scale = 10 ** digits
    n = q.numerator * scale * scale // q.denominator
    return Fraction(isqrt(n) + 1, scale)


def _pairs(target, available):
    want = tuple(2 * e for e in target)
    avail = sorted(available, key=lambda e: (sum(e), e))
    out = []
    for i, e1 in enumerate(avail):
        e2 = tuple(w - x for w, x in zip(want, e1))
        if min(e2) < 0 or e2 not in available or e2 <= e1:
            continue
        out.append((e1, e2))
    return out


def amgm_certificate(coeffs):
    """``coeffs``: exponent tuple -> Fraction.  Returns (list of Absorption, leftover) or None.

    Success proves the polynomial is strictly positive on the closed nonnegative orthant.
    """
    zero = None
    budget = {}
    negatives = []
    for e, c in coeffs.items():
        c = Fraction(c)
        if not any(e):
            zero = e
        if c > 0:
            budget[e] = c
        elif c < 0:
            negatives.append((e, -c))
    if zero is None or budget.get(zero, 0) <= 0:
        return None
    # keep half the constant in reserve so the remainder stays positive
    reserve = budget[zero] / 2
    budget[zero] -= reserve
    steps = []
    for target, eps in sorted(negatives, key=lambda t: (sum(t[0]), t[0])):
        for e1, e2 in _pairs(target, set(budget)):
            b1, b2 = budget[e1], budget[e2]
            if b1 <= 0 or b2 <= 0:
                continue
            need = eps * eps / (4 * b1 * b2)
            if need > 1:
                continue
            theta = min(_sqrt_up(need), Fraction(1))
            t1, t2 = b1 * theta, b2 * theta
            assert 4 * t1 * t2 >= eps * eps
            budget[e1] -= t1
            budget[e2] -= t2
            steps.append(Absorption(target, eps, e1, t1, e2, t2))
            break
        else:
            return None
    budget[zero] += reserve
    return steps, budget
