"""Move proposers for the nested-interval game, behind one duck-typed surface.

A strategy exposes ``name`` and ``propose(state, set_desc) -> Fraction`` and
must be deterministic given (state, set, seed): randomized strategies derive
their generator per move from the seed and the move index, so replaying a
state replays the move.

Spec strings accepted by the CLI and the service:
  "perfect" | "enumeration:farey" | "enumeration:dyadic" | "midpoint"
  | "random:SEED" | "script:PATH"
"""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from .baker import GameState, Player
from .rational import ONE, ZERO, midpoint, parse_rational
from .sets import (
    CountableSet,
    FiniteSet,
    NAMED_ENUMERATIONS,
    SetDescription,
)


class ScriptExhausted(Exception):
    """A scripted strategy ran past the end of its move list."""


class MidpointStrategy:
    """Always proposes the midpoint of the current legal open interval."""

    name = "midpoint"

    def propose(self, state: GameState, set_desc=None) -> Fraction:
        return midpoint(state.lower, state.upper)


class ScriptedStrategy:
    """Plays a fixed move list verbatim; legality is the engine's problem.

    The next move is indexed by how many this side has already made, so a
    replayed state gets the same value again.
    """

    def __init__(self, moves, name: str = "script"):
        self.moves = tuple(Fraction(m) for m in moves)
        self.name = name

    def propose(self, state: GameState, set_desc=None) -> Fraction:
        index = sum(1 for p, _ in state.history if p is state.to_move)
        if index >= len(self.moves):
            raise ScriptExhausted(f"script has only {len(self.moves)} moves")
        return self.moves[index]


def _dyadic_strictly_between(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    """Uniform pick from the coarsest dyadic grid offering 256+ interior points."""
    width = hi - lo
    m = max(0, width.denominator.bit_length() - width.numerator.bit_length())
    while True:
        scale = 1 << m
        k_lo = (lo.numerator * scale) // lo.denominator + 1
        k_hi = -((-hi.numerator * scale) // hi.denominator) - 1
        if k_hi - k_lo >= 255:
            break
        m += 1
    return Fraction(rng.randint(k_lo, k_hi), scale)


class SeededRandomStrategy:
    """Uniformly chosen dyadic strictly inside the legal interval.

    The generator is the stdlib Mersenne Twister, re-seeded per move from
    (seed, move index); identical seeds therefore give identical traces.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.name = f"random:{self.seed}"

    def propose(self, state: GameState, set_desc=None) -> Fraction:
        rng = random.Random(f"baker:{self.seed}:{len(state.history)}")
        return _dyadic_strictly_between(rng, state.lower, state.upper)


class EnumerationStrategy:
    """Second-player rule: in round n, play the enumeration's nth value when
    it is legal, otherwise a deterministic midpoint fallback (or a seeded
    random fallback when configured).
    """

    def __init__(self, enumeration, fallback_seed: int | None = None):
        self.enumeration = enumeration
        self.fallback_seed = fallback_seed
        label = getattr(enumeration, "name", "enumeration")
        self.name = f"enumeration:{label}"

    def propose(self, state: GameState, set_desc=None) -> Fraction:
        n = state.round + 1
        candidate = self.enumeration.nth(n)
        if state.lower < candidate < state.upper:
            return candidate
        if self.fallback_seed is None:
            return midpoint(state.lower, state.upper)
        rng = random.Random(f"enumfall:{self.fallback_seed}:{len(state.history)}")
        return _dyadic_strictly_between(rng, state.lower, state.upper)


class PerfectStrategy:
    """First-player rule over a perfect set S.

    Opening move from (0,1): the set's least point when it is positive (it
    is right-approachable by minimality), else the deterministic
    right-select over (0,1). Afterwards: right_select(S, lower, upper),
    which exists because the previous own move was right-approachable and
    the set is perfect.
    """

    def __init__(self, set_desc: SetDescription):
        if not set_desc.is_perfect():
            raise ValueError("perfect-play strategy requires a perfect set")
        self.set_desc = set_desc
        self.name = "perfect"

    def propose(self, state: GameState, set_desc=None) -> Fraction:
        s = self.set_desc
        fresh_opening = (
            state.round == 0
            and state.to_move is Player.ALICE
            and state.lower == ZERO
            and state.upper == ONE
        )
        if fresh_opening:
            least = s.infimum()
            if least > ZERO:
                return least
            pick = s.right_select(ZERO, ONE)
        else:
            pick = s.right_select(state.lower, state.upper)
        if pick is None:
            raise ValueError(
                "no right-approachable point strictly inside "
                f"({state.lower}, {state.upper})"
            )
        return pick


def bob_enumeration(enumeration, fallback_seed: int | None = None) -> EnumerationStrategy:
    return EnumerationStrategy(enumeration, fallback_seed)


def alice_perfect(set_desc: SetDescription) -> PerfectStrategy:
    return PerfectStrategy(set_desc)


def midpoint_strategy() -> MidpointStrategy:
    return MidpointStrategy()


def scripted_strategy(moves) -> ScriptedStrategy:
    return ScriptedStrategy(moves)


def seeded_random_strategy(seed: int) -> SeededRandomStrategy:
    return SeededRandomStrategy(seed)


def enumeration_for_set(set_desc) -> object:
    """The enumeration a set description carries, if any."""
    if isinstance(set_desc, CountableSet):
        return set_desc.enumeration
    if isinstance(set_desc, FiniteSet) and set_desc.points:
        return set_desc
    raise ValueError("the set in play does not define an enumeration")


def parse_strategy_spec(text: str, *, set_desc: SetDescription | None = None):
    """Build a strategy from its CLI/service spec string."""
    if text == "midpoint":
        return MidpointStrategy()
    if text == "perfect":
        if set_desc is None:
            raise ValueError("'perfect' needs the set in play")
        return PerfectStrategy(set_desc)
    if text == "enumeration":
        return EnumerationStrategy(enumeration_for_set(set_desc))
    if text.startswith("enumeration:"):
        name = text.split(":", 1)[1]
        if name not in NAMED_ENUMERATIONS:
            raise ValueError(f"unknown enumeration {name!r}")
        return EnumerationStrategy(NAMED_ENUMERATIONS[name]())
    if text.startswith("random:"):
        return SeededRandomStrategy(int(text.split(":", 1)[1]))
    if text.startswith("script:"):
        path = Path(text.split(":", 1)[1])
        moves = [
            parse_rational(line)
            for line in path.read_text().splitlines()
            if line.strip()
        ]
        return ScriptedStrategy(moves, name=f"script:{path}")
    raise ValueError(f"unknown strategy spec {text!r}")
