"""Verdict objects shared by every test in the package."""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


class Verdict(str, enum.Enum):
    CERTIFIED = "CERTIFIED"
    REFUTED = "REFUTED"
    INCONCLUSIVE = "INCONCLUSIVE"

    @property
    def exit_code(self):
        return {"CERTIFIED": 0, "REFUTED": 1, "INCONCLUSIVE": 2}[self.value]


@dataclass
class Certificate:
    """Outcome of an exact decision.

    ``claim`` says what was decided.  ``witness`` holds refutation data (a vector,
    an index, parameter values); ``data`` holds certifying data such as pivots or
    coefficient tables.  ``notes`` is the human-readable transcript.
    """

    verdict: Verdict
    claim: str
    rank: int | None = None
    witness: Any = None
    data: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def certified(self):
        return self.verdict is Verdict.CERTIFIED

    @property
    def refuted(self):
        return self.verdict is Verdict.REFUTED

    def to_dict(self):
        out = {"verdict": self.verdict.value, "claim": self.claim}
        if self.rank is not None:
            out["rank"] = self.rank
        if self.witness is not None:
            out["witness"] = to_jsonable(self.witness)
        if self.data:
            out["data"] = to_jsonable(self.data)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def fmt(q):
    """Exact "p/q" string (or "p" for integers)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_jsonable(obj):
    from .exactcore.poly import Poly
    from .exactcore.upoly import AlgebraicRoot

    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, float):
        # Only non-exact diagnostics (oracle magnitudes) ever reach here.
        return repr(obj)
    if isinstance(obj, Certificate):
        return obj.to_dict()
    if isinstance(obj, Verdict):
        return obj.value
    if isinstance(obj, Poly):
        return str(obj)
    if isinstance(obj, AlgebraicRoot):
        return {"polynomial": [fmt(c) for c in obj.poly], "interval": [fmt(obj.lo), fmt(obj.hi)]}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)
