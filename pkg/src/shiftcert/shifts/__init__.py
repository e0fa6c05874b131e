"""Weight families, instances, moments and the basic hyponormality check."""

from .expr import FamilyParseError, parse_expr
from .family import (DEFAULT_FAMILY_TEXT, Interval, MomentSequence, ShiftInstance, WeightFamily,
                     family_from_json, family_to_json, hyponormal_check, load_family, moment,
                     default_family, parse_family, parse_rational, print_family, tail_monotone)

__all__ = [
    "DEFAULT_FAMILY_TEXT", "FamilyParseError", "Interval", "MomentSequence", "ShiftInstance",
    "WeightFamily", "family_from_json", "family_to_json", "hyponormal_check", "load_family", "moment",
    "default_family", "parse_expr", "parse_family", "parse_rational", "print_family", "tail_monotone",
]
