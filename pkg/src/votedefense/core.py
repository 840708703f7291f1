"""Election data model: candidates, voter groups, score vectors, margins.

Elections are stored in the compact multiplicity encoding: every voter group
lists its distinct ballot orders once, each with a count.  All scores are
exact rationals and all margin arithmetic is integer, so ties are detected
exactly.  Every type here is immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

#: Per-candidate exact rational score totals, indexed by candidate index.
ScoreTotals = tuple[Fraction, ...]

#: Antisymmetric integer matrix of pairwise margins, row-major.
MarginMatrix = tuple[tuple[int, ...], ...]


class EnumerationLimitError(RuntimeError):
    """Raised when a brute-force enumeration would exceed its subset cap."""


@dataclass(frozen=True)
class Candidate:
    index: int
    name: str


@dataclass(frozen=True)
class LinearOrder:
    """A strict ranking of all candidates, most-preferred first."""

    ranking: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.ranking)
        if sorted(self.ranking) != list(range(m)):
            raise ValueError(f"ranking {self.ranking!r} is not a permutation of 0..{m - 1}")

    def __len__(self) -> int:
        return len(self.ranking)


@dataclass(frozen=True)
class VoteBundle:
    """One distinct ballot order together with its multiplicity."""

    order: LinearOrder
    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError(f"bundle count must be >= 1, got {self.count}")


@dataclass(frozen=True)
class VoterGroup:
    """An attackable/defendable unit of ballots (e.g. a precinct).

    Empty groups are legal; some reduction gadgets pad with them.
    """

    bundles: tuple[VoteBundle, ...] = ()
    label: str | None = None

    def __post_init__(self) -> None:
        orders = [b.order.ranking for b in self.bundles]
        if len(set(orders)) != len(orders):
            raise ValueError("duplicate ballot orders in group; merge multiplicities first")

    @property
    def total_voters(self) -> int:
        return sum(b.count for b in self.bundles)


def make_group(
    votes: Iterable[tuple[Sequence[int], int]], label: str | None = None
) -> VoterGroup:
    """Build a group from (order, count) pairs, merging duplicate orders.

    Orders are kept in first-appearance order; counts of repeated orders add up.
    """
    merged: dict[tuple[int, ...], int] = {}
    for order, count in votes:
        if count == 0:
            continue
        key = tuple(order)
        merged[key] = merged.get(key, 0) + count
    bundles = tuple(VoteBundle(LinearOrder(o), c) for o, c in merged.items())
    return VoterGroup(bundles, label)


@dataclass(frozen=True)
class Election:
    candidates: tuple[Candidate, ...]
    groups: tuple[VoterGroup, ...]

    def __post_init__(self) -> None:
        m = len(self.candidates)
        if m < 1:
            raise ValueError("election needs at least one candidate")
        for i, cand in enumerate(self.candidates):
            if cand.index != i:
                raise ValueError(f"candidate at position {i} has index {cand.index}")
        names = [c.name for c in self.candidates]
        if len(set(names)) != len(names):
            raise ValueError("candidate names must be unique")
        if len(self.groups) < 1:
            raise ValueError("election needs at least one voter group")
        for g, group in enumerate(self.groups):
            for bundle in group.bundles:
                if len(bundle.order) != m:
                    raise ValueError(
                        f"group {g} has an order over {len(bundle.order)} candidates, expected {m}"
                    )

    @property
    def num_candidates(self) -> int:
        return len(self.candidates)

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    @property
    def total_voters(self) -> int:
        return sum(g.total_voters for g in self.groups)


def election_from_names(names: Sequence[str], groups: Iterable[VoterGroup]) -> Election:
    candidates = tuple(Candidate(i, n) for i, n in enumerate(names))
    return Election(candidates, tuple(groups))


@dataclass(frozen=True)
class InstanceParams:
    """Budgets: how many groups the attacker / defender may touch."""

    k_a: int
    k_d: int

    def __post_init__(self) -> None:
        if self.k_a < 0 or self.k_d < 0:
            raise ValueError("budgets must be non-negative")


@dataclass(frozen=True)
class ScoreVector:
    """Non-increasing positional scores with exact rational entries."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) < 2:
            raise ValueError("score vector needs length >= 2")
        for a, b in zip(self.entries, self.entries[1:]):
            if a < b:
                raise ValueError("score vector entries must be non-increasing")
        if self.entries[0] == self.entries[-1]:
            raise ValueError("score vector must not be constant")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_normalized(self) -> bool:
        """True iff some drop equals one and everything after it is zero."""
        ent = self.entries
        for j in range(len(ent) - 1):
            if ent[j] - ent[j + 1] == 1 and all(e == 0 for e in ent[j + 1 :]):
                return True
        return False


def score_vector(raw: Sequence[Fraction | int]) -> ScoreVector:
    return ScoreVector(tuple(Fraction(x) for x in raw))


def normalize_score_vector(raw: Sequence[Fraction | int] | ScoreVector) -> ScoreVector:
    """Return the affinely-equivalent canonical form of a score vector.

    Subtracts the last entry from everything, then divides by the value at
    the last strict drop, so that drop becomes exactly one and the tail is
    all zeros.  Idempotent on already-normalized vectors.
    """
    vec = raw if isinstance(raw, ScoreVector) else score_vector(raw)
    shifted = [e - vec.entries[-1] for e in vec.entries]
    # After the shift the tail is zero; the last nonzero entry is the divisor.
    divisor = next(e for e in reversed(shifted) if e != 0)
    return ScoreVector(tuple(e / divisor for e in shifted))


def group_scores(group: VoterGroup, vector: ScoreVector) -> ScoreTotals:
    """Per-candidate score contributed by one voter group."""
    m = len(vector)
    totals = [Fraction(0)] * m
    for bundle in group.bundles:
        for pos, cand in enumerate(bundle.order.ranking):
            totals[cand] += bundle.count * vector.entries[pos]
    return tuple(totals)


def profile_scores(
    election: Election, vector: ScoreVector, excluded: frozenset[int] = frozenset()
) -> ScoreTotals:
    """Score totals over all groups not in ``excluded``."""
    if len(vector) != election.num_candidates:
        raise ValueError("score vector length must equal the number of candidates")
    totals = [Fraction(0)] * election.num_candidates
    for g, group in enumerate(election.groups):
        if g in excluded:
            continue
        for cand, s in enumerate(group_scores(group, vector)):
            totals[cand] += s
    return tuple(totals)


def group_margins(group: VoterGroup, m: int) -> MarginMatrix:
    """Pairwise margin matrix D(x, y) contributed by one voter group."""
    mat = [[0] * m for _ in range(m)]
    for bundle in group.bundles:
        ranking = bundle.order.ranking
        for i in range(m):
            x = ranking[i]
            for j in range(i + 1, m):
                y = ranking[j]
                mat[x][y] += bundle.count
                mat[y][x] -= bundle.count
    return tuple(tuple(row) for row in mat)


def margin_matrix(
    election: Election, excluded: frozenset[int] = frozenset()
) -> MarginMatrix:
    """Pairwise margins over all votes in groups not in ``excluded``."""
    m = election.num_candidates
    mat = [[0] * m for _ in range(m)]
    for g, group in enumerate(election.groups):
        if g in excluded:
            continue
        gm = group_margins(group, m)
        for x in range(m):
            for y in range(m):
                mat[x][y] += gm[x][y]
    return tuple(tuple(row) for row in mat)
