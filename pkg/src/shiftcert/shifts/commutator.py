"""Exact self-commutator of a real polynomial in a weighted shift, compressed to e_0..e_N."""

from fractions import Fraction

from ..exactcore import SymMatrix


def polynomial_self_commutator(s, coeffs, N):
    """[p(W)*, p(W)] on span{e_0..e_N} for p(W) = sum coeffs[i-1] W^i, real rational coefficients.

    Entry (m, n), m <= n, carries the radical alpha_m...alpha_{n-1}; the returned
    matrix is its congruate by diag(alpha_0...alpha_{k-1}), so entry (m, n) is
    gamma_n times a rational number and PSD is unchanged.
    """
    lam = [Fraction(c) for c in coeffs]
    k = len(lam)
    A = s.alpha_sq

    def run(lo, hi):  # prod_{t=lo}^{hi-1} alpha_t^2, zero when an index is negative
        out = Fraction(1)
        for t in range(lo, hi):
            out *= A(t)
        return out

    gamma = [run(0, n) for n in range(N + 1)]

    def entry(m, n):
        gap = n - m
        total = Fraction(0)
        for i in range(1, k + 1):
            j = i + gap
            if j <= k:
                total += lam[i - 1] * lam[j - 1] * run(n, n + i)  # <p e_n, p e_m>
        for j in range(1, k + 1):
            i = j + gap
            if i <= k:
                total -= lam[i - 1] * lam[j - 1] * run(m - j, m)  # <p* e_n, p* e_m>
        return gamma[n] * total

    return SymMatrix.from_function(N + 1, entry)
