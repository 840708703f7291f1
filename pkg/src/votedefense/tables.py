"""Compiled per-group score and margin tables.

Solvers and oracles evaluate winner sets thousands of times while only the
set of deleted groups changes.  These tables precompute each group's
contribution once so a single evaluation is a few integer subtractions.

Score entries are rescaled to integers by the least common multiple of the
vector's denominators; this is an exact positive affine map, so winner sets,
greedy orderings, and all tie comparisons are unchanged.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .core import Election, ScoreVector, group_margins
from .rules import CondorcetRule, ScoringRule, VotingRule


class ScoreTable:
    """Integer per-group scores for a fixed election and score vector."""

    def __init__(self, election: Election, vector: ScoreVector):
        if len(vector) != election.num_candidates:
            raise ValueError("score vector length must equal the number of candidates")
        self.election = election
        self.m = election.num_candidates
        self.n = election.num_groups
        denom_lcm = math.lcm(*(e.denominator for e in vector.entries))
        scaled = [int(e * denom_lcm) for e in vector.entries]
        self.scale = Fraction(denom_lcm)
        rows: list[list[int]] = []
        for group in election.groups:
            row = [0] * self.m
            for bundle in group.bundles:
                count = bundle.count
                ranking = bundle.order.ranking
                for pos in range(self.m):
                    row[ranking[pos]] += count * scaled[pos]
            rows.append(row)
        self.group_rows = rows
        self.totals = [sum(r[c] for r in rows) for c in range(self.m)]
        self._pair_cache: dict[tuple[int, int], tuple[int, list[tuple[int, int]]]] = {}
        self._original: frozenset[int] | None = None
        self._tie_splitters: list[int] | None = None

    @property
    def original_winners(self) -> frozenset[int]:
        if self._original is None:
            self._original = self.winners()
        return self._original

    @property
    def tie_splitters(self) -> list[int]:
        """Groups scoring two original co-winners unequally, in index order."""
        if self._tie_splitters is None:
            winners = sorted(self.original_winners)
            first = winners[0]
            self._tie_splitters = [
                g
                for g, row in enumerate(self.group_rows)
                if any(row[a] != row[first] for a in winners[1:])
            ]
        return self._tie_splitters

    def winners(self, excluded: Iterable[int] = ()) -> frozenset[int]:
        current = list(self.totals)
        for g in excluded:
            row = self.group_rows[g]
            for c in range(self.m):
                current[c] -= row[c]
        top = max(current)
        return frozenset(c for c, s in enumerate(current) if s == top)

    def pair_gap_and_margins(self, w: int, c: int) -> tuple[int, list[tuple[int, int]]]:
        """Gap s(w) - s(c) plus per-group margins sorted by (-margin, index).

        Only strictly positive margins appear in the list: deleting any other
        group cannot shrink the pair's gap.
        """
        key = (w, c)
        cached = self._pair_cache.get(key)
        if cached is not None:
            return cached
        gap = self.totals[w] - self.totals[c]
        margins = [
            (row[w] - row[c], g)
            for g, row in enumerate(self.group_rows)
            if row[w] > row[c]
        ]
        margins.sort(key=lambda t: (-t[0], t[1]))
        self._pair_cache[key] = (gap, margins)
        return gap, margins


class MarginTable:
    """Integer per-group pairwise margins for a fixed election."""

    def __init__(self, election: Election):
        self.election = election
        self.m = election.num_candidates
        self.n = election.num_groups
        self.group_mats = [group_margins(g, self.m) for g in election.groups]
        totals = [[0] * self.m for _ in range(self.m)]
        for mat in self.group_mats:
            for x in range(self.m):
                row = mat[x]
                for y in range(self.m):
                    totals[x][y] += row[y]
        self.totals = totals
        self._pair_cache: dict[tuple[int, int], tuple[int, list[tuple[int, int]]]] = {}
        self._original_cw: int | None = -1  # -1: not computed yet

    @property
    def original_condorcet_winner(self) -> int | None:
        if self._original_cw == -1:
            self._original_cw = self.condorcet_winner()
        return self._original_cw

    @property
    def original_winners(self) -> frozenset[int]:
        cw = self.original_condorcet_winner
        return frozenset(range(self.m)) if cw is None else frozenset({cw})

    def condorcet_winner(self, excluded: Iterable[int] = ()) -> int | None:
        current = [row[:] for row in self.totals]
        for g in excluded:
            mat = self.group_mats[g]
            for x in range(self.m):
                mrow = mat[x]
                crow = current[x]
                for y in range(self.m):
                    crow[y] -= mrow[y]
        for x in range(self.m):
            if all(current[x][y] > 0 for y in range(self.m) if y != x):
                return x
        return None

    def winners(self, excluded: Iterable[int] = ()) -> frozenset[int]:
        cw = self.condorcet_winner(excluded)
        if cw is None:
            return frozenset(range(self.m))
        return frozenset({cw})

    def pair_gap_and_margins(self, c: int, d: int) -> tuple[int, list[tuple[int, int]]]:
        """Total margin D(c, d) plus positive per-group margins, sorted."""
        key = (c, d)
        cached = self._pair_cache.get(key)
        if cached is not None:
            return cached
        gap = self.totals[c][d]
        margins = [
            (mat[c][d], g) for g, mat in enumerate(self.group_mats) if mat[c][d] > 0
        ]
        margins.sort(key=lambda t: (-t[0], t[1]))
        self._pair_cache[key] = (gap, margins)
        return gap, margins


def build_table(election: Election, rule: VotingRule) -> ScoreTable | MarginTable:
    if isinstance(rule, ScoringRule):
        return ScoreTable(election, rule.vector)
    if isinstance(rule, CondorcetRule):
        return MarginTable(election)
    raise TypeError(f"unsupported rule {rule!r}")
