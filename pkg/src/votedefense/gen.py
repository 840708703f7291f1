"""Statistical voting-profile generators for the experiment harness.

Randomness comes from Python's Mersenne Twister (random.Random) seeded
explicitly; permutations and subset draws use our own Fisher-Yates so that
identical seeds replay bit-exactly regardless of Python version.  Profile
i of a batch is generated from derive_profile_seed(master_seed, i), which
makes parallel and serial harness runs produce identical elections.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Election, VoterGroup, election_from_names, make_group

_MIX = 0x9E3779B97F4A7C15


def derive_profile_seed(master_seed: int, index: int) -> int:
    return (master_seed * _MIX + index + 1) % 2**64


@dataclass(frozen=True)
class GenConfig:
    m: int
    n: int
    g: int
    model: str  # "uniform" or "two_frontrunner"
    seed: int
    top_pair: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError("need at least 2 candidates")
        if self.g < 1 or self.n % self.g:
            raise ValueError(f"class count {self.g} must divide voter count {self.n}")
        if self.model not in ("uniform", "two_frontrunner"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "two_frontrunner":
            if self.top_pair is None:
                raise ValueError("two_frontrunner model needs a top_pair")
            a, b = self.top_pair
            if a == b or not (0 <= a < self.m and 0 <= b < self.m):
                raise ValueError("top_pair must be two distinct candidates")


def _shuffled(rng: random.Random, items: list) -> list:
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = rng.randrange(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def _uniform_order(rng: random.Random, m: int) -> tuple[int, ...]:
    return tuple(_shuffled(rng, list(range(m))))


def _top_fixed_order(rng: random.Random, m: int, top: int) -> tuple[int, ...]:
    rest = [c for c in range(m) if c != top]
    return tuple([top] + _shuffled(rng, rest))


def _classes_to_election(config: GenConfig, orders: list[tuple[int, ...]]) -> Election:
    size = config.n // config.g
    groups: list[VoterGroup] = []
    for cls in range(config.g):
        chunk = orders[cls * size : (cls + 1) * size]
        groups.append(make_group(((o, 1) for o in chunk), label=f"class{cls}"))
    names = [f"c{i}" for i in range(config.m)]
    return election_from_names(names, groups)


def gen_impartial(config: GenConfig) -> Election:
    """n ballots drawn uniformly over all strict orders, split into g classes."""
    if config.model != "uniform":
        raise ValueError("config model must be 'uniform'")
    rng = random.Random(config.seed)
    orders = [_uniform_order(rng, config.m) for _ in range(config.n)]
    return _classes_to_election(config, orders)


def gen_two_frontrunner(config: GenConfig) -> Election:
    """Two-frontrunner model: 40% rank a first, 40% rank b first, 20% uniform.

    Counts are exact per profile (floors, remainder into the uniform block);
    ballots are shuffled before class assignment so blocks do not line up
    with classes.
    """
    if config.model != "two_frontrunner":
        raise ValueError("config model must be 'two_frontrunner'")
    assert config.top_pair is not None
    a, b = config.top_pair
    rng = random.Random(config.seed)
    n_a = 2 * config.n // 5
    n_b = 2 * config.n // 5
    orders = [_top_fixed_order(rng, config.m, a) for _ in range(n_a)]
    orders += [_top_fixed_order(rng, config.m, b) for _ in range(n_b)]
    orders += [_uniform_order(rng, config.m) for _ in range(config.n - n_a - n_b)]
    orders = _shuffled(rng, orders)
    return _classes_to_election(config, orders)


def generate(config: GenConfig) -> Election:
    if config.model == "uniform":
        return gen_impartial(config)
    return gen_two_frontrunner(config)
