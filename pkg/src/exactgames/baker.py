"""The alternating-move state machine for the nested-interval game on [0,1].

Two players tighten an open interval: starting from (0,1), the mover must
pick a rational strictly between the current bounds; the first player's
picks become the new lower bound, the second player's the new upper bound.
A *round* is one pick by each. The engine enforces strict legality exactly,
keeps the full history, and reports the enclosure (a_N, b_N) that pins down
the limit of any continuation. It never declares a winner — claims about
truncated play belong to the certificate checkers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .rational import ONE, ZERO, format_rational, parse_rational
from .sets import SetDescription, set_from_spec, set_to_spec


class Player(enum.Enum):
    ALICE = "alice"
    BOB = "bob"

    @property
    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


class MoveError(Exception):
    """A proposed value breaks the strict betweenness rule."""

    def __init__(self, kind: str, value: Fraction, bound: Fraction):
        self.kind = kind  # "too-low" | "too-high"
        self.value = value
        self.bound = bound
        word = "exceed" if kind == "too-low" else "stay below"
        super().__init__(f"{value} must {word} {bound}")

    @property
    def violated_bound(self) -> str:
        if self.kind == "too-low":
            return f"must exceed {format_rational(self.bound)}"
        return f"must be below {format_rational(self.bound)}"


class StrategyFault(Exception):
    """A strategy proposed an illegal move; never repaired, always surfaced."""

    def __init__(self, player: Player, round_number: int, value, reason: str):
        self.player = player
        self.round_number = round_number
        self.value = value
        self.reason = reason
        super().__init__(
            f"{player.value} faulted in round {round_number}: {reason}"
        )


@dataclass(frozen=True)
class GameState:
    """Immutable snapshot between moves.

    ``lower``/``upper`` are the latest first-player/second-player values
    (initially 0 and 1); ``round`` counts completed rounds; history holds
    every (player, value) in order.
    """

    lower: Fraction = ZERO
    upper: Fraction = ONE
    round: int = 0
    to_move: Player = Player.ALICE
    history: tuple[tuple[Player, Fraction], ...] = ()


def new_game() -> GameState:
    return GameState()


def apply_move(state: GameState, value: Fraction) -> GameState:
    """Validate and apply one move, returning the successor state.

    Raises MoveError (too-low / too-high, carrying the violated bound) on
    any non-strict proposal; the input state is never mutated.
    """
    if value <= state.lower:
        raise MoveError("too-low", value, state.lower)
    if value >= state.upper:
        raise MoveError("too-high", value, state.upper)
    history = state.history + ((state.to_move, value),)
    if state.to_move is Player.ALICE:
        return GameState(value, state.upper, state.round, Player.BOB, history)
    return GameState(state.lower, value, state.round + 1, Player.ALICE, history)


@dataclass(frozen=True)
class Trace:
    """A finished prefix of a game: the set in play plus the full move list."""

    set_desc: SetDescription | None
    moves: tuple[tuple[Player, Fraction], ...]
    rounds: int

    @property
    def enclosure(self) -> tuple[Fraction, Fraction]:
        if self.rounds < 1:
            raise ValueError("no complete round, no enclosure")
        return self.moves[2 * self.rounds - 2][1], self.moves[2 * self.rounds - 1][1]

    def lower_values(self) -> list[Fraction]:
        return [v for p, v in self.moves if p is Player.ALICE]

    def upper_values(self) -> list[Fraction]:
        return [v for p, v in self.moves if p is Player.BOB]

    def to_document(self) -> dict:
        a_n, b_n = self.enclosure
        return {
            "game": "baker",
            "set": set_to_spec(self.set_desc) if self.set_desc is not None else None,
            "rounds": self.rounds,
            "moves": [
                {"player": p.value, "value": format_rational(v)} for p, v in self.moves
            ],
            "enclosure": [format_rational(a_n), format_rational(b_n)],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "Trace":
        if doc.get("game") != "baker":
            raise ValueError(f"not a baker trace: game={doc.get('game')!r}")
        set_desc = set_from_spec(doc["set"]) if doc.get("set") is not None else None
        moves = tuple(
            (Player(m["player"]), parse_rational(m["value"])) for m in doc["moves"]
        )
        trace = cls(set_desc, moves, int(doc["rounds"]))
        stored = tuple(parse_rational(t) for t in doc["enclosure"])
        if trace.rounds < 1 or len(moves) != 2 * trace.rounds:
            raise ValueError("move count does not match the round count")
        if stored != trace.enclosure:
            raise ValueError("stored enclosure disagrees with the move list")
        return trace


def alpha_enclosure(trace: Trace) -> tuple[Fraction, Fraction]:
    """(a_N, b_N): any legal continuation's limit lies in [a_N, b_N)."""
    return trace.enclosure


def play(alice, bob, rounds: int, set_desc: SetDescription | None) -> Trace:
    """Run exactly ``rounds`` full rounds of strategy-vs-strategy play.

    Illegal proposals surface as StrategyFault naming the offender; they are
    never corrected.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    state = new_game()
    strategies = {Player.ALICE: alice, Player.BOB: bob}
    for n in range(1, rounds + 1):
        for player in (Player.ALICE, Player.BOB):
            value = strategies[player].propose(state, set_desc)
            try:
                state = apply_move(state, value)
            except MoveError as err:
                raise StrategyFault(player, n, value, str(err)) from err
    return Trace(set_desc, state.history, rounds)
