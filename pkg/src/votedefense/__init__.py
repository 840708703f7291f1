"""Solvers, oracles, and heuristics for vote-deletion election control.

Elections are collections of voter groups; an attacker deletes groups, a
defender protects them.  This package decides whether a defense commitment
can survive every attack (and conversely whether an attack beats every
defense), generates hard reduction instances with known answers, and runs
the greedy-defense experiment pipeline.
"""

from .core import (
    Candidate,
    Election,
    EnumerationLimitError,
    InstanceParams,
    LinearOrder,
    MarginMatrix,
    ScoreTotals,
    ScoreVector,
    VoteBundle,
    VoterGroup,
    election_from_names,
    group_scores,
    make_group,
    margin_matrix,
    normalize_score_vector,
    profile_scores,
    score_vector,
)
from .gadgets import (
    GadgetInstance,
    MarginTarget,
    gadget_clique,
    gadget_hitting_set,
    gadget_ksum,
    gadget_set_cover,
    margin_target,
    mcgarvey,
    realize_margins,
    swap_pair_profile,
)
from .gen import GenConfig, gen_impartial, gen_two_frontrunner
from .heuristics import GreedyCategory, GreedyOutcome, greedy1, greedy2
from .io import (
    ElectionFormatError,
    load_election,
    parse_election,
    save_election,
    serialize_election,
)
from .oracle import (
    AttackWitness,
    attack_oracle,
    brute_attack_oracle,
    condorcet_attack_oracle,
    scoring_attack_oracle,
)
from .rules import (
    CondorcetRule,
    ScoringRule,
    VotingRule,
    condorcet_winners,
    preset_vector,
    resolve_rule,
    rule_winners,
    scoring_winners,
)
from .solvers import (
    DefenseStrategy,
    SolveResult,
    SolveStats,
    solve_attack_exact,
    solve_defense_brute,
    solve_defense_fpt,
    verify_attack_set,
)

__version__ = "0.1.0"
