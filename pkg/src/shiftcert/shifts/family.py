"""Weight families, their rational instances, moments, and the hyponormality test."""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..certificate import Certificate, Verdict
from ..exactcore import upoly
from ..exactcore.poly import Poly
from . import expr as E
from .expr import FamilyParseError, Parser

DEFAULT_FAMILY_TEXT = "prefix [ x ] tail (n+2)/(n+3) from 1 subnormal_tail"
DEFAULT_JUSTIFICATION = "declared in the family description"
BERGMAN_JUSTIFICATION = ("weights (n+2)/(n+3), n >= 1, restrict the Bergman-type shift "
                         "to a tail subspace, which is subnormal")

# Number of tail indices sampled for positivity when a symbolic argument is unavailable.
TAIL_SAMPLE = 200


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction | None  # None means +infinity
    lo_closed: bool = False
    hi_closed: bool = False

    def __contains__(self, x):
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return x < self.hi or (x == self.hi and self.hi_closed)

    def to_text(self):
        if self.hi is None:
            raise ValueError("an unbounded domain has no textual form")
        return (("[" if self.lo_closed else "(") + f"{E.fmt_rational(self.lo)}, {E.fmt_rational(self.hi)}"
                + ("]" if self.hi_closed else ")"))


DEFAULT_DOMAIN = Interval(Fraction(0), None)


@dataclass(frozen=True)
class WeightFamily:
    """Squared weights: ``prefix_sq[n]`` (expressions in x) for n < tail_start, then ``tail_sq(n)``."""

    prefix_sq: tuple
    tail_sq: object
    tail_start: int
    x_domain: Interval = DEFAULT_DOMAIN
    tail_subnormal: bool = False
    justification: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.prefix_sq) != self.tail_start:
            raise FamilyParseError(
                f"prefix has {len(self.prefix_sq)} entries but the tail starts at {self.tail_start}")
        for i, e in enumerate(self.prefix_sq):
            if E.variables(e) - {"x"}:
                raise FamilyParseError(f"prefix entry {i} may only use x")
        if E.variables(self.tail_sq) - {"n"}:
            raise FamilyParseError("tail expression may only use n")

    # -- squared weights ------------------------------------------------
    def prefix_value(self, i, x):
        return E.evaluate(self.prefix_sq[i], {"x": x})

    def tail_value(self, n):
        return E.evaluate(self.tail_sq, {"n": n})

    def tail_ratfunc(self):
        return E.to_ratfunc(self.tail_sq, "n")

    def alpha_sq(self, n):
        """Symbolic squared weight: Poly in X for prefix indices, Fraction on the tail, 0 for n < 0."""
        if n < 0:
            return Fraction(0)
        if n < self.tail_start:
            rf = E.to_ratfunc(self.prefix_sq[n], "x")
            if not rf.is_polynomial():
                raise ValueError(f"prefix entry {n} is not polynomial in x; symbolic analysis needs polynomials")
            p = Poly.from_univariate(upoly.scale(rf.num, 1 / rf.den[0]), "X")
            return p.constant_value() if p.is_constant() else p
        return self.tail_value(n)

    def at(self, x):
        return ShiftInstance(self, Fraction(x))

    def to_text(self):
        return print_family(self)


@dataclass(frozen=True)
class ShiftInstance:
    family: WeightFamily
    x: Fraction

    def __post_init__(self):
        if self.x not in self.family.x_domain:
            raise ValueError(f"x = {E.fmt_rational(self.x)} lies outside the family domain")
        for i in range(self.family.tail_start):
            if self.family.prefix_value(i, self.x) <= 0:
                raise ValueError(f"squared weight {i} is not positive at x = {E.fmt_rational(self.x)}")

    def alpha_sq(self, n):
        if n < 0:
            return Fraction(0)
        if n < self.family.tail_start:
            return self.family.prefix_value(n, self.x)
        return self.family.tail_value(n)


class MomentSequence:
    """gamma_0 = 1, gamma_{k+1} = gamma_k * alpha_k^2, for an instance (Fractions) or a family (Polys in X)."""

    def __init__(self, source):
        self.source = source
        self._cache = [Fraction(1)]

    def __getitem__(self, k):
        return moment(self, k)


def moment(m, k):
    if k < 0:
        raise ValueError("moment index must be nonnegative")
    cache = m._cache
    # Extend a local copy so concurrent readers never observe a partial list.
    if k >= len(cache):
        values = list(cache)
        while len(values) <= k:
            nxt = values[-1] * m.source.alpha_sq(len(values) - 1)
            if isinstance(nxt, Poly) and nxt.is_constant():
                nxt = nxt.constant_value()
            values.append(nxt)
        m._cache = values
        cache = values
    return cache[k]


# -- text format --------------------------------------------------------------

def parse_family(text):
    """Parse the textual family format; raises FamilyParseError with line/column."""
    p = Parser(text)
    p.expect("prefix", "'prefix'")
    p.expect("[", "'['")
    prefix = []
    if not p.accept("]"):
        prefix.append(p.expr())
        while p.accept(","):
            prefix.append(p.expr())
        if not p.accept("]"):
            raise p.error("expected ',' or ']' closing the prefix list")
    p.expect("tail", "'tail'")
    tail = p.expr()
    p.expect("from", "'from'")
    start_tok = p.tok
    start = p.integer()
    domain = DEFAULT_DOMAIN
    if p.accept("domain"):
        if p.accept("("):
            lo_closed = False
        elif p.accept("["):
            lo_closed = True
        else:
            raise p.error("expected '(' or '[' opening the domain")
        lo = p.rational()
        p.expect(",", "','")
        hi = p.rational()
        if p.accept(")"):
            hi_closed = False
        elif p.accept("]"):
            hi_closed = True
        else:
            raise p.error("expected ')' or ']' closing the domain")
        if not lo < hi:
            raise p.error("empty domain", start_tok)
        domain = Interval(lo, hi, lo_closed, hi_closed)
    subnormal = p.accept("subnormal_tail")
    if p.tok.kind != "eof":
        raise p.error("unexpected trailing input")
    try:
        fam = WeightFamily(tuple(prefix), tail, start, domain, subnormal,
                           DEFAULT_JUSTIFICATION if subnormal else "")
    except FamilyParseError as exc:
        raise FamilyParseError(str(exc), start_tok.line, start_tok.col) from None
    validate_family(fam)
    return fam


def print_family(f):
    parts = ["prefix [ " + ", ".join(E.to_text(e) for e in f.prefix_sq) + (" ]" if f.prefix_sq else "]"),
             "tail", E.to_text(f.tail_sq), "from", str(f.tail_start)]
    if f.x_domain != DEFAULT_DOMAIN:
        parts += ["domain", f.x_domain.to_text()]
    if f.tail_subnormal:
        parts.append("subnormal_tail")
    return " ".join(parts)


def validate_family(f):
    """Semantic checks: prefix entries not provably nonpositive at a domain end, tail positive."""
    dom = f.x_domain
    for i, e in enumerate(f.prefix_sq):
        for end, closed in ((dom.lo, dom.lo_closed), (dom.hi, dom.hi_closed)):
            if end is None:
                continue
            try:
                v = E.evaluate(e, {"x": end})
            except ZeroDivisionError:
                continue
            if v < 0 or (v == 0 and closed):
                raise FamilyParseError(
                    f"prefix entry {i} ({E.to_text(e)}) is nonpositive at domain endpoint {E.fmt_rational(end)}")
    if not tail_positive(f):
        raise FamilyParseError("tail expression is not positive for every n >= tail start")


def _shifted_signs(poly, start):
    return [upoly.sign(c) for c in upoly.taylor_shift(poly, Fraction(start))]


def tail_positive(f):
    rf = f.tail_ratfunc()
    num, den = _shifted_signs(rf.num, f.tail_start), _shifted_signs(rf.den, f.tail_start)
    if num and den and num[0] > 0 and den[0] > 0 and min(num) >= 0 and min(den) >= 0:
        return True
    try:
        return all(f.tail_value(n) > 0 for n in range(f.tail_start, f.tail_start + TAIL_SAMPLE))
    except ZeroDivisionError:
        return False


def family_to_json(f):
    return {
        "prefix_sq": [E.to_text(e) for e in f.prefix_sq],
        "tail_sq": E.to_text(f.tail_sq),
        "tail_start": f.tail_start,
        "x_domain": None if f.x_domain == DEFAULT_DOMAIN else {
            "lo": E.fmt_rational(f.x_domain.lo), "hi": E.fmt_rational(f.x_domain.hi),
            "lo_closed": f.x_domain.lo_closed, "hi_closed": f.x_domain.hi_closed},
        "tail_subnormal": f.tail_subnormal,
        "justification": f.justification,
    }


def family_from_json(doc):
    if isinstance(doc, str):
        doc = json.loads(doc)
    dom = doc.get("x_domain")
    domain = DEFAULT_DOMAIN if dom is None else Interval(
        parse_rational(dom["lo"]), None if dom.get("hi") is None else parse_rational(dom["hi"]),
        bool(dom.get("lo_closed", False)), bool(dom.get("hi_closed", False)))
    subnormal = bool(doc.get("tail_subnormal", False))
    fam = WeightFamily(
        tuple(E.parse_expr(t) for t in doc["prefix_sq"]), E.parse_expr(doc["tail_sq"]), int(doc["tail_start"]),
        domain, subnormal, doc.get("justification") or (DEFAULT_JUSTIFICATION if subnormal else ""))
    validate_family(fam)
    return fam


def load_family(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return family_from_json(text)
    return parse_family(text)


def parse_rational(text):
    """Parse "p/q" or "p"; decimals and other forms are rejected."""
    text = str(text).strip()
    sign = -1 if text.startswith("-") else 1
    body = text[1:] if sign < 0 else text
    num, _, den = body.partition("/")
    if not num.isdigit() or (den and not den.isdigit()):
        raise ValueError(f"not an exact rational 'p/q': {text!r}")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return sign * Fraction(int(num), int(den) if den else 1)


def default_family():
    """alpha_0^2 = x, alpha_n^2 = (n+2)/(n+3) for n >= 1, on x > 0."""
    fam = parse_family(DEFAULT_FAMILY_TEXT)
    return WeightFamily(fam.prefix_sq, fam.tail_sq, fam.tail_start, fam.x_domain, True, BERGMAN_JUSTIFICATION)


# -- hyponormality ------------------------------------------------------------

def tail_monotone(f):
    """Decide tail_sq(n+1) >= tail_sq(n) for all n >= tail_start from shifted coefficient signs.

    Returns True when proven, None when the sign pattern is not conclusive.
    """
    rf = f.tail_ratfunc()
    step = E.to_ratfunc(E.BinOp("+", E.Var("n"), E.Num(Fraction(1))), "n")
    shifted = _compose(rf, step)
    diff = shifted - rf
    num = _shifted_signs(diff.num, f.tail_start)
    den = _shifted_signs(diff.den, f.tail_start)
    if not diff.num:
        return True
    if den and den[0] > 0 and min(den) >= 0 and min(num) >= 0:
        return True
    return None


def _compose(rf, inner):
    """rf(inner(n)) for univariate rational functions."""
    def horner(coeffs):
        acc = upoly.RatFunc.const(0)
        for c in reversed(coeffs):
            acc = acc * inner + c
        return acc
    return horner(rf.num) / horner(rf.den)


def hyponormal_check(s, N):
    """alpha_n^2 <= alpha_{n+1}^2 for n < N exactly, extended to all n by tail monotonicity."""
    if N < 1:
        raise ValueError("N must be >= 1")
    claim = "weighted shift is hyponormal"
    limit = max(N, s.family.tail_start)
    for n in range(limit):
        a, b = s.alpha_sq(n), s.alpha_sq(n + 1)
        if a > b:
            return Certificate(Verdict.REFUTED, claim, witness={"n": n, "alpha_sq_n": a, "alpha_sq_n+1": b},
                               notes=[f"alpha_{n}^2 = {E.fmt_rational(a)} > alpha_{n + 1}^2 = {E.fmt_rational(b)}"])
    notes = [f"alpha_n^2 <= alpha_(n+1)^2 verified exactly for n < {limit}"]
    boundary = [n for n in range(limit) if s.alpha_sq(n) == s.alpha_sq(n + 1)]
    if boundary:
        notes.append(f"equality at n in {boundary}")
    if tail_monotone(s.family):
        notes.append("tail_sq(n+1) - tail_sq(n) >= 0 for all n >= tail start (coefficient signs)")
        return Certificate(Verdict.CERTIFIED, claim, data={"checked_up_to": limit, "all_n": True}, notes=notes)
    notes.append(f"tail monotonicity not decided symbolically; verified up to n = {limit}")
    return Certificate(Verdict.INCONCLUSIVE, claim, data={"checked_up_to": limit, "all_n": False}, notes=notes)
