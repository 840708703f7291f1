"""Winner determination: positional scoring rules and the Condorcet rule.

Both rules are voting correspondences: they return the full set of winners
and never break ties internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Election,
    ScoreVector,
    margin_matrix,
    normalize_score_vector,
    profile_scores,
    score_vector,
)

PRESET_NAMES = ("plurality", "veto", "borda")


@dataclass(frozen=True)
class ScoringRule:
    vector: ScoreVector

    def winners(self, election: Election, excluded: frozenset[int] = frozenset()) -> frozenset[int]:
        return scoring_winners(election, self.vector, excluded)

    def describe(self) -> str:
        return "scoring(" + ",".join(str(e) for e in self.vector.entries) + ")"


@dataclass(frozen=True)
class CondorcetRule:
    def winners(self, election: Election, excluded: frozenset[int] = frozenset()) -> frozenset[int]:
        return condorcet_winners(election, excluded)

    def describe(self) -> str:
        return "condorcet"


VotingRule = ScoringRule | CondorcetRule


def preset_vector(name: str, m: int) -> ScoreVector:
    """Plurality, veto, or Borda vector of length ``m`` (already normalized)."""
    if m < 2:
        raise ValueError("preset vectors need at least 2 candidates")
    if name == "plurality":
        return score_vector([1] + [0] * (m - 1))
    if name == "veto":
        return score_vector([1] * (m - 1) + [0])
    if name == "borda":
        return score_vector(list(range(m - 1, -1, -1)))
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")


def scoring_winners(
    election: Election, vector: ScoreVector, excluded: frozenset[int] = frozenset()
) -> frozenset[int]:
    """Exact argmax set of the score totals over the surviving groups."""
    totals = profile_scores(election, vector, excluded)
    top = max(totals)
    return frozenset(c for c, s in enumerate(totals) if s == top)


def condorcet_winners(
    election: Election, excluded: frozenset[int] = frozenset()
) -> frozenset[int]:
    """The Condorcet winner if one exists, otherwise every candidate."""
    mat = margin_matrix(election, excluded)
    m = election.num_candidates
    for x in range(m):
        if all(mat[x][y] > 0 for y in range(m) if y != x):
            return frozenset({x})
    return frozenset(range(m))


def rule_winners(
    election: Election, rule: VotingRule, excluded: frozenset[int] = frozenset()
) -> frozenset[int]:
    return rule.winners(election, excluded)


def resolve_rule(spec: str | ScoreVector | VotingRule, m: int) -> VotingRule:
    """Turn a CLI-style rule spec into a rule for an ``m``-candidate election.

    Accepts a preset name, ``condorcet``, ``vector:a1,a2,...`` (entries may be
    fractions like ``3/2``), an explicit ScoreVector, or an already-built rule.
    Explicit vectors are normalized, which never changes the winner set.
    """
    if isinstance(spec, (ScoringRule, CondorcetRule)):
        if isinstance(spec, ScoringRule) and len(spec.vector) != m:
            raise ValueError(f"rule vector length {len(spec.vector)} != {m} candidates")
        return spec
    if isinstance(spec, ScoreVector):
        if len(spec) != m:
            raise ValueError(f"score vector length {len(spec)} != {m} candidates")
        return ScoringRule(normalize_score_vector(spec))
    if spec == "condorcet":
        return CondorcetRule()
    if spec in PRESET_NAMES:
        return ScoringRule(preset_vector(spec, m))
    if spec.startswith("vector:"):
        entries = [Fraction(part) for part in spec[len("vector:") :].split(",")]
        if len(entries) != m:
            raise ValueError(f"vector spec has {len(entries)} entries, election has {m} candidates")
        return ScoringRule(normalize_score_vector(score_vector(entries)))
    raise ValueError(f"unknown rule spec {spec!r}")
