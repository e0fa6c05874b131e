"""Coefficient families and block matrices of the quartic hyponormality form.

Every off-diagonal block entry is a signed square root sqrt(w_i) etc. that
factors as (product of consecutive weights) * (rational core).  Blocks are kept
as ``SymRadMatrix``: a rational core matrix plus the squared cumulative weight
products ``dsq`` of the diagonal congruence that clears the radicals.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..exactcore import Poly, SymMatrix
from ..exactcore.linalg import _norm
from ..exactcore.poly import as_fraction


def _clean(v):
    if isinstance(v, Poly):
        return v.constant_value() if v.is_constant() else v
    return Fraction(v)


@dataclass(frozen=True)
class BlockCoefficients:
    """u..r at index i.  ``*_core`` are the rational factors of the signed roots:
    sqrt(w_i) = alpha_i * w_core, sqrt(s_i) = alpha_i alpha_{i+1} * s_core,
    sqrt(t_i) = alpha_i * t_core, sqrt(q_i) = alpha_i alpha_{i+1} alpha_{i+2} * q_core,
    sqrt(f_i) = alpha_i alpha_{i+1} * f_core, sqrt(g_i) = alpha_i * g_core.
    """

    i: int
    u: object
    v: object
    p: object
    r: object
    w_core: object
    s_core: object
    t_core: object
    q_core: object
    f_core: object
    g_core: object
    weights: tuple  # alpha_i^2 .. alpha_{i+3}^2

    @property
    def w(self):
        return _clean(self.weights[0] * self.w_core ** 2)

    @property
    def s(self):
        return _clean(self.weights[0] * self.weights[1] * self.s_core ** 2)

    @property
    def t(self):
        return _clean(self.weights[0] * self.t_core ** 2)

    @property
    def q(self):
        return _clean(self.weights[0] * self.weights[1] * self.weights[2] * self.q_core ** 2)

    @property
    def f(self):
        return _clean(self.weights[0] * self.weights[1] * self.f_core ** 2)

    @property
    def g(self):
        return _clean(self.weights[0] * self.g_core ** 2)


def lemma2_coefficients(src, i):
    """Exact u_i, ..., r_i for a ShiftInstance (Fractions) or WeightFamily (Polys in X); alpha_{-j} = 0."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    A = src.alpha_sq
    a = {k: A(k) for k in range(i - 4, i + 4)}
    return BlockCoefficients(
        i=i,
        u=_clean(a[i] - a[i - 1]),
        v=_clean(a[i] * a[i + 1] - a[i - 1] * a[i - 2]),
        p=_clean(a[i] * a[i + 1] * a[i + 2] - a[i - 1] * a[i - 2] * a[i - 3]),
        r=_clean(a[i] * a[i + 1] * a[i + 2] * a[i + 3] - a[i - 1] * a[i - 2] * a[i - 3] * a[i - 4]),
        w_core=_clean(a[i + 1] - a[i - 1]),
        s_core=_clean(a[i + 2] - a[i - 1]),
        t_core=_clean(a[i + 1] * a[i + 2] - a[i - 1] * a[i - 2]),
        q_core=_clean(a[i + 3] - a[i - 1]),
        f_core=_clean(a[i + 2] * a[i + 3] - a[i - 1] * a[i - 2]),
        g_core=_clean(a[i + 1] * a[i + 2] * a[i + 3] - a[i - 1] * a[i - 2] * a[i - 3]),
        weights=tuple(a[k] for k in range(i, i + 4)),
    )


class SymRadMatrix:
    """Symmetric M with M[j][k] = core[j][k] * sqrt(dsq[k] / dsq[j]) for j <= k.

    ``dsq[0]`` is 1 and dsq[j] is the squared product of the first j weights of
    the block, so diag(sqrt(dsq)) M diag(sqrt(dsq)) has entries core[j][k]*dsq[k].
    """

    def __init__(self, core: SymMatrix, dsq):
        if len(dsq) != core.dim:
            raise ValueError("congruence vector length does not match the block")
        self.core = core
        self.dsq = tuple(_clean(d) for d in dsq)

    @property
    def dim(self):
        return self.core.dim

    @classmethod
    def from_entries(cls, entries, dsq):
        """Build from explicit ``(coef, radicand)`` entries, checking they follow the declared congruence.

        ``entries[j][k]`` for j <= k gives M[j][k] = coef * sqrt(radicand); the
        radicand must be a rational square times dsq[k] / dsq[j].
        """
        n = len(dsq)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            for k in range(j, n):
                coef, rad = entries[j][k]
                coef, rad = Fraction(coef), Fraction(rad)
                if coef == 0:
                    continue
                if j == k:
                    if rad != 1:
                        raise ValueError("not rationalizable by declared congruence: radical on the diagonal")
                    rows[j][j] = coef
                    continue
                ratio = rad * Fraction(dsq[j]) / Fraction(dsq[k])
                root = _rational_sqrt(ratio)
                if root is None:
                    raise ValueError(f"not rationalizable by declared congruence at entry ({j}, {k})")
                rows[j][k] = rows[k][j] = coef * root
        return cls(SymMatrix.from_rows(rows), dsq)

    def entry(self, j, k):
        """(coefficient, radicand) with M[j][k] = coefficient * sqrt(radicand)."""
        if j > k:
            j, k = k, j
        return self.core[j, k], _clean(Poly.coerce(self.dsq[k]) / self.dsq[j]) if j != k else Fraction(1)

    def diagonal(self, j):
        return self.core[j, j]

    def with_diagonal(self, j, value):
        return SymRadMatrix(self.core.with_diagonal(j, value), self.dsq)

    def subs(self, mapping):
        return SymRadMatrix(self.core.subs(mapping), [d.subs(mapping) if isinstance(d, Poly) else d
                                                      for d in self.dsq])

    def at(self, x):
        return self.subs({"X": Fraction(x)})

    def numeric(self, mp):
        """Entries as mpmath numbers (needs rational data)."""
        n = self.dim
        out = [[None] * n for _ in range(n)]
        for j in range(n):
            for k in range(j, n):
                coef, rad = self.entry(j, k)
                val = _mpq(mp, as_fraction(coef)) * mp.sqrt(_mpq(mp, as_fraction(rad)))
                out[j][k] = out[k][j] = val
        return out


def _mpq(mp, q):
    return mp.mpf(q.numerator) / q.denominator


def _rational_sqrt(q):
    from math import isqrt
    q = Fraction(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    return Fraction(n, d) if n * n == q.numerator and d * d == q.denominator else None


def rationalize_block(m: SymRadMatrix):
    """diag(d) M diag(d): an all-rational (or all-Poly) symmetric matrix; PSD is unchanged."""
    return SymMatrix.from_function(m.dim, lambda j, k: m.core[j, k] * m.dsq[max(j, k)])


# -- blocks -------------------------------------------------------------------

def delta_block(src, i):
    """Delta_i acting on (x_i, conj(a) x_{i+1}, conj(b) x_{i+2}, conj(c) x_{i+3})."""
    c0, c1, c2 = (lemma2_coefficients(src, k) for k in (i, i + 1, i + 2))
    r3 = lemma2_coefficients(src, i + 3).r
    rows = [
        [c0.u, c0.w_core, c0.s_core, c0.q_core],
        [c0.w_core, c1.v, c1.t_core, c1.f_core],
        [c0.s_core, c1.t_core, c2.p, c2.g_core],
        [c0.q_core, c1.f_core, c2.g_core, r3],
    ]
    A = src.alpha_sq
    dsq = [Fraction(1), A(i), A(i) * A(i + 1), A(i) * A(i + 1) * A(i + 2)]
    return SymRadMatrix(SymMatrix.from_rows(rows), dsq)


def theta1_block(src):
    """Theta_1 acting on (conj(b) x_0, conj(c) x_1)."""
    c0, c1 = lemma2_coefficients(src, 0), lemma2_coefficients(src, 1)
    return SymRadMatrix(SymMatrix.from_rows([[c0.p, c0.g_core], [c0.g_core, c1.r]]), [1, src.alpha_sq(0)])


def theta2_block(src):
    """Theta_2 acting on (conj(a) x_0, conj(b) x_1, conj(c) x_2)."""
    c0, c1, c2 = (lemma2_coefficients(src, k) for k in range(3))
    rows = [
        [c0.v, c0.t_core, c0.f_core],
        [c0.t_core, c1.p, c1.g_core],
        [c0.f_core, c1.g_core, c2.r],
    ]
    A = src.alpha_sq
    return SymRadMatrix(SymMatrix.from_rows(rows), [1, A(0), A(0) * A(1)])


class QuarticBlocks:
    """Theta_1, Theta_2 and Delta_i (built lazily) for one instance or family."""

    def __init__(self, src):
        self.src = src
        self.theta1 = theta1_block(src)
        self.theta2 = theta2_block(src)
        self.r0 = lemma2_coefficients(src, 0).r
        self._delta = lru_cache(maxsize=None)(lambda i: delta_block(src, i))

    def delta(self, i):
        return self._delta(i)

    def named(self, name):
        if name.startswith("delta"):
            return self.delta(int(name[5:]))
        return getattr(self, name)


def quartic_blocks(src):
    return QuarticBlocks(src)


def block_sizes_ok(m):  # pragma: no cover - debugging aid
    return all(isinstance(_norm(v), (Fraction, Poly)) for row in m.core.rows() for v in row)
