"""Diagonal slack harvesting from the blocks neighbouring Delta_1."""

from dataclasses import dataclass
from fractions import Fraction

from ..exactcore import Poly, max_diag_slack, psd_check
from .blocks import QuarticBlocks, rationalize_block

# (block, i, offset, diagonal position).  Delta_i acts on conj(lambda_j) x_{i+j}
# with lambda = (1, a, b, c); Theta_1 and Theta_2 are Delta_{-2} and Delta_{-1}
# with the vanishing leading rows dropped, so their position p is full position p + offset.
HARVEST_PLAN = (
    ("theta1", -2, 2, 1),
    ("theta2", -1, 1, 1),
    ("delta0", 0, 0, 1),
    ("delta2", 2, 0, 0),
    ("delta3", 3, 0, 0),
    ("delta4", 4, 0, 0),
)
MONOMIALS = ("1", "A2", "B2", "C2")
TARGET_START = 1  # the augmented block is built on Delta_1, acting on x_1..x_4


@dataclass(frozen=True)
class SlackRecord:
    source: str
    position: int  # 0-based diagonal position inside the source block
    slack: object  # harvested amount in the block's own (radical) coordinates
    reduced_diagonal: object
    destination: int  # 0-based diagonal position in Delta-tilde
    monomial: str  # which |parameter|^2 multiplies the slack there

    def to_dict(self):
        return {"source": self.source, "position": self.position, "slack": self.slack,
                "reduced_diagonal": self.reduced_diagonal, "destination": self.destination,
                "monomial": self.monomial}


def block_slack(block, pos):
    """Largest delta with block - delta * E_pos still PSD, in the block's radical coordinates.

    Computed on the rationalized block and divided back by the congruence factor.
    """
    rational = max_diag_slack(rationalize_block(block), pos)
    out = Poly.coerce(rational) / block.dsq[pos]
    return out.constant_value() if out.is_constant() else out


def reduced_block(block, pos, slack):
    return block.with_diagonal(pos, block.diagonal(pos) - slack)


class SlackLedger:
    def __init__(self, records, reduced):
        self.records = list(records)
        self.reduced = dict(reduced)  # source name -> reduced SymRadMatrix

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def by_source(self, name):
        return next(r for r in self.records if r.source == name)

    def diagonal_additions(self):
        """destination -> list of (slack, monomial)."""
        out = {}
        for r in self.records:
            out.setdefault(r.destination, []).append((r.slack, r.monomial))
        return out

    def check_reduced(self, x):
        """psd_check of every reduced block at X = x; expected rank is dim - 1."""
        results = {}
        for r in self.records:
            block = self.reduced[r.source]
            cert = psd_check(rationalize_block(block.at(x)))
            results[r.source] = (cert, block.dim - 1)
        return results

    def to_dict(self):
        return {"records": [r.to_dict() for r in self.records]}


def harvest(blocks: QuarticBlocks):
    """Run the harvest plan; slacks must not depend on X (the augmented block would not be linear otherwise)."""
    records, reduced = [], {}
    for name, start, offset, pos in HARVEST_PLAN:
        block = blocks.named(name)
        delta = block_slack(block, pos)
        if isinstance(delta, Poly):
            raise ValueError(f"structural mismatch: slack harvested from {name} depends on {sorted(delta.variables())}")
        if delta <= 0:
            raise ValueError(f"structural mismatch: no positive slack in {name} at position {pos}")
        red = reduced_block(block, pos, delta)
        full = pos + offset
        dest = start + full - TARGET_START
        if not 0 <= dest < 4:
            raise ValueError(f"structural mismatch: {name} position {pos} does not overlap the augmented block")
        records.append(SlackRecord(name, pos, Fraction(delta), _clean(red.diagonal(pos)), dest, MONOMIALS[full]))
        reduced[name] = red
    return SlackLedger(records, reduced)


def _clean(v):
    if isinstance(v, Poly) and v.is_constant():
        return v.constant_value()
    return v
