"""Weight-family text format: tokenizer, recursive-descent parser and printer.

Grammar (whitespace and newlines are insignificant)::

    family   := "prefix" "[" exprlist? "]" "tail" expr "from" INT ("domain" interval)? ("subnormal_tail")?
    exprlist := expr ("," expr)*
    expr     := term (("+"|"-") term)*
    term     := factor (("*"|"/") factor)*
    factor   := RATIONAL | "x" | "n" | "(" expr ")" | "-" factor
    RATIONAL := INT ("/" INT)?
    interval := ("("|"[") RATIONAL "," RATIONAL (")"|"]")
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from ..exactcore.upoly import RatFunc


class FamilyParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


# -- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "n"


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


def variables(e):
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Num):
        return set()
    if isinstance(e, Neg):
        return variables(e.operand)
    return variables(e.left) | variables(e.right)


def evaluate(e, env):
    """Exact value with variables bound in ``env`` (name -> Fraction)."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return Fraction(env[e.name])
    if isinstance(e, Neg):
        return -evaluate(e.operand, env)
    a, b = evaluate(e.left, env), evaluate(e.right, env)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if b == 0:
        raise ZeroDivisionError(f"division by zero evaluating {to_text(e)}")
    return a / b


def to_ratfunc(e, var):
    """Univariate rational function in ``var``; any other variable is an error."""
    if isinstance(e, Num):
        return RatFunc.const(e.value)
    if isinstance(e, Var):
        if e.name != var:
            raise ValueError(f"expression uses '{e.name}' where only '{var}' is allowed")
        return RatFunc.var()
    if isinstance(e, Neg):
        return -to_ratfunc(e.operand, var)
    a, b = to_ratfunc(e.left, var), to_ratfunc(e.right, var)
    return {"+": a.__add__, "-": a.__sub__, "*": a.__mul__, "/": a.__truediv__}[e.op](b)


# -- printing ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def fmt_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _canon(e):
    """Negative literals become negations, which is how the parser reads them."""
    if isinstance(e, Num):
        return Neg(Num(-e.value)) if e.value < 0 else e
    if isinstance(e, Neg):
        return Neg(_canon(e.operand))
    if isinstance(e, BinOp):
        return BinOp(e.op, _canon(e.left), _canon(e.right))
    return e


def to_text(e, parent_prec=0):
    """Canonical text; parsing it back and printing again gives the same text."""
    return _text(_canon(e), parent_prec)


def _text(e, parent_prec):
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Num):
        text = fmt_rational(e.value)
        # A bare "p/q" next to * or / would re-associate when parsed.
        if e.value.denominator != 1 and parent_prec >= 2:
            return f"({text})"
        return text
    if isinstance(e, Neg):
        return "-" + _text(e.operand, 3)
    prec = _PREC[e.op]
    left = _text(e.left, prec)
    if prec == 2:
        # Bracket anything that could re-associate with a following "/INT" when parsed.
        int_over_int = (isinstance(e.left, Num) and e.left.value.denominator == 1 and e.op == "/"
                        and isinstance(e.right, Num) and e.right.value.denominator == 1)
        nested = isinstance(e.left, Neg) or (isinstance(e.left, BinOp) and _PREC[e.left.op] == 2)
        if int_over_int or nested:
            left = f"({left})"
    right = _text(e.right, prec + 1)
    text = f"{left}{e.op}{right}" if prec == 2 else f"{left} {e.op} {right}"
    if prec < parent_prec:
        return f"({text})"
    return text


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z_]+)|(?P<sym>[-+*/()\[\],])|(?P<bad>\S))")
KEYWORDS = {"prefix", "tail", "from", "domain", "subnormal_tail"}


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "word", "sym", "eof"
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    pos = 0
    line_starts = [0] + [i + 1 for i, ch in enumerate(text) if ch == "\n"]

    def locate(offset):
        line = max(i for i, start in enumerate(line_starts) if start <= offset)
        return line + 1, offset - line_starts[line] + 1

    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            break
        kind = m.lastgroup
        start = m.start(kind)
        line, col = locate(start)
        if kind == "bad":
            raise FamilyParseError(f"unexpected character {m.group(kind)!r}", line, col)
        tokens.append(Token(kind, m.group(kind), line, col))
        pos = m.end()
    line, col = locate(len(text))
    tokens.append(Token("eof", "", line, col))
    return tokens


class Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return FamilyParseError(f"{message} (found {found})", tok.line, tok.col)

    def accept(self, text):
        if self.tok.kind in ("sym", "word") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text, what=None):
        if not self.accept(text):
            raise self.error(f"expected {what or repr(text)}")

    def integer(self):
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        value = int(self.tok.text)
        self.i += 1
        return value

    def rational(self):
        neg = self.accept("-")
        p = self.integer()
        if self.accept("/"):
            q = self.integer()
            if q == 0:
                raise self.error("zero denominator", self.tokens[self.i - 1])
            value = Fraction(p, q)
        else:
            value = Fraction(p)
        return -value if neg else value

    # expressions
    def expr(self):
        node = self.term()
        while self.tok.kind == "sym" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "sym" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            nxt, after = self.tok, self.tokens[self.i + 1] if self.i + 1 < len(self.tokens) else None
            if nxt.kind == "sym" and nxt.text == "/" and after is not None and after.kind == "int":
                self.i += 2
                if int(after.text) == 0:
                    raise self.error("zero denominator", after)
                return Num(Fraction(int(tok.text), int(after.text)))
            return Num(Fraction(int(tok.text)))
        if tok.kind == "word" and tok.text in ("x", "n"):
            self.i += 1
            return Var(tok.text)
        if self.accept("("):
            node = self.expr()
            self.expect(")", "')'")
            return node
        if self.accept("-"):
            return Neg(self.factor())
        raise self.error("expected a number, 'x', 'n', '(' or '-'")


def parse_expr(text):
    p = Parser(text)
    node = p.expr()
    if p.tok.kind != "eof":
        raise p.error("unexpected trailing input")
    return node
