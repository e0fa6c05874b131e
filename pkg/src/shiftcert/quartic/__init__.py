"""Quartic (weak 4-) hyponormality: blocks, slack harvesting, the augmented block and certificates."""

from .amgm import amgm_certificate
from .certify import four_hyponormal_test, gap_interval, quartic_certificate, quartic_threshold
from .delta_tilde import CoefficientReport, DeltaTilde, build_delta_tilde, nested_determinants_test
from .blocks import (BlockCoefficients, QuarticBlocks, SymRadMatrix, delta_block, lemma2_coefficients,
                     quartic_blocks, rationalize_block, theta1_block, theta2_block)
from .slack import HARVEST_PLAN, SlackLedger, SlackRecord, block_slack, harvest

__all__ = [
    "CoefficientReport", "DeltaTilde", "HARVEST_PLAN", "BlockCoefficients", "QuarticBlocks", "SlackLedger",
    "SlackRecord", "SymRadMatrix", "amgm_certificate", "block_slack", "build_delta_tilde", "delta_block",
    "four_hyponormal_test", "gap_interval", "harvest", "lemma2_coefficients", "nested_determinants_test",
    "quartic_blocks", "quartic_certificate", "quartic_threshold", "rationalize_block", "theta1_block",
    "theta2_block",
]
