"""Sparse multivariate polynomials with exact rational coefficients."""

from fractions import Fraction
from numbers import Rational

# Canonical variable order; unknown names sort after these, alphabetically.
VAR_ORDER = ("X", "A2", "B2", "C2", "a", "b", "c", "n")


def _var_rank(name):
    try:
        return (VAR_ORDER.index(name), name)
    except ValueError:
        return (len(VAR_ORDER), name)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: _var_rank(ve[0])))


def _mono_div(m1, m2):
    """m1 / m2 as a monomial, or None if m2 does not divide m1."""
    exps = dict(m1)
    for v, e in m2:
        left = exps.get(v, 0) - e
        if left < 0:
            return None
        if left:
            exps[v] = left
        else:
            exps.pop(v, None)
    return tuple(sorted(exps.items(), key=lambda ve: _var_rank(ve[0])))


def mono_degree(m):
    return sum(e for _, e in m)


def mono_key(m):
    """Graded lex key with X < A2 < B2 < C2 (so C2 is compared first within a degree)."""
    exps = dict(m)
    known = tuple(exps.pop(v, 0) for v in reversed(VAR_ORDER))
    return (mono_degree(m), known, tuple(sorted(exps.items())))


class Poly:
    """Immutable polynomial; ``terms`` maps a monomial (sorted ``(var, exp)`` pairs) to a Fraction."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coef in terms.items():
                if coef:
                    clean[mono] = Fraction(coef)
        self.terms = clean
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, value):
        return cls({(): Fraction(value)})

    @classmethod
    def var(cls, name, power=1):
        return cls({((name, power),): Fraction(1)})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Rational)):
            return cls.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Poly")

    # -- predicates ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not m for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def variables(self):
        names = {v for m in self.terms for v, _ in m}
        return tuple(sorted(names, key=_var_rank))

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(mono_degree(m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            other = Fraction(other)
            return Poly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        """Division by a scalar, or exact division by a polynomial (raises if inexact)."""
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            other = Fraction(other)
            return Poly({m: c / other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self / other.constant_value()
        quotient, remainder = self.divmod_exact(other)
        if not remainder.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return quotient

    def __rtruediv__(self, other):
        return Poly.coerce(other) / self

    def divmod_exact(self, divisor):
        """Leading-term division in lex order; the remainder is zero iff ``divisor`` divides ``self``."""
        names = sorted(set(self.variables()) | set(divisor.variables()), key=_var_rank)

        def lex(m):
            md = dict(m)
            return tuple(md.get(v, 0) for v in names)

        lead_m = max(divisor.terms, key=lex)
        lead_c = divisor.terms[lead_m]
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem, key=lex)
            t = _mono_div(m, lead_m)
            if t is None:
                return Poly(quot), Poly(rem)
            c = rem[m] / lead_c
            quot[t] = quot.get(t, 0) + c
            for dm, dc in divisor.terms.items():
                pm = _mono_mul(t, dm)
                val = rem.get(pm, 0) - c * dc
                if val:
                    rem[pm] = val
                else:
                    rem.pop(pm, None)
        return Poly(quot), Poly()

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation / restructuring -----------------------------------
    def subs(self, mapping):
        """Substitute values (Fractions or Polys) for variables."""
        out = Poly()
        for m, c in self.terms.items():
            term = Poly.const(c)
            keep = []
            for v, e in m:
                if v in mapping:
                    term = term * (Poly.coerce(mapping[v]) ** e)
                else:
                    keep.append((v, e))
            if keep:
                term = term * Poly({tuple(keep): 1})
            out = out + term
        return out

    def evaluate(self, mapping):
        """Fully evaluate to a Fraction; every variable must be bound."""
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val *= Fraction(mapping[v]) ** e
            total += val
        return total

    def rename(self, mapping):
        out = {}
        for m, c in self.terms.items():
            nm = tuple(sorted(((mapping.get(v, v), e) for v, e in m), key=lambda ve: _var_rank(ve[0])))
            out[nm] = out.get(nm, 0) + c
        return Poly(out)

    def coefficients(self, variables):
        """Split by monomials in ``variables``; values are Polys in the remaining variables.

        Keys are exponent tuples aligned with ``variables``; iteration order is graded lex.
        """
        variables = tuple(variables)
        groups = {}
        for m, c in self.terms.items():
            md = dict(m)
            key = tuple(md.pop(v, 0) for v in variables)
            rest = tuple(sorted(md.items(), key=lambda ve: _var_rank(ve[0])))
            groups.setdefault(key, {})[rest] = c
        ordered = sorted(groups, key=lambda k: (sum(k), k))
        return {k: Poly(groups[k]) for k in ordered}

    def univariate_coeffs(self, var):
        """Dense coefficient list (low degree first) of a polynomial in ``var`` alone."""
        extra = set(self.variables()) - {var}
        if extra:
            raise ValueError(f"polynomial involves {sorted(extra)} besides {var}")
        deg = max(self.degree(var), 0)
        coeffs = [Fraction(0)] * (deg + 1)
        for m, c in self.terms.items():
            coeffs[dict(m).get(var, 0)] = c
        return coeffs

    @classmethod
    def from_univariate(cls, coeffs, var):
        return cls({(((var, i),) if i else ()): c for i, c in enumerate(coeffs)})

    # -- printing -----------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


X = Poly.var("X")


def as_fraction(value):
    """Collapse a constant Poly to a Fraction; pass Fractions through."""
    if isinstance(value, Poly):
        return value.constant_value()
    return Fraction(value)
