"""The Banach–Mazur game on [0,1]: players nest closed intervals.

The first player (anna) picks a closed interval inside [0,1], the second
(bartek) a closed interval inside that, and so on. Intervals must be
nondegenerate, so the intersection of the chain is always nonempty. The
second player's constructive half targets a meagre set presented as an
ordered sequence of nowhere-dense descriptions F_1, F_2, ...: on his nth
move he plays a closed interval avoiding the closure of F_n, and the
round-N certificate checks the final interval misses every listed closure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .rational import ONE, ZERO, format_rational, parse_rational
from .sets import (
    CantorSet,
    CountableSet,
    FareyEnumeration,
    FiniteSet,
    IntervalUnion,
    SetDescription,
    UnionSet,
    set_from_spec,
    set_to_spec,
)
from .strategies import _dyadic_strictly_between


class PresentationError(Exception):
    """A set presented as nowhere dense is not (or is not expressible here)."""


class IntervalMoveError(Exception):
    """An interval move violates containment or degeneracy rules."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class IntervalStrategyFault(Exception):
    def __init__(self, role: str, round_number: int, reason: str):
        self.role = role
        self.round_number = round_number
        self.reason = reason
        super().__init__(f"{role} faulted in round {round_number}: {reason}")


@dataclass(frozen=True)
class ClosedInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError(f"closed interval must be nondegenerate: [{self.lo},{self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains_interval(self, other: "ClosedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def as_strings(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]


# ---------------------------------------------------------------------------
# nowhere-dense presentations and the avoidance rule


def _flatten_nowhere_dense(f: SetDescription, points: list[Fraction]) -> bool:
    """Collect the point atoms of f into `points`; return True if the Cantor
    set is among the atoms. Rejects presentations with interior."""
    if isinstance(f, FiniteSet):
        points.extend(f.points)
        return False
    if isinstance(f, IntervalUnion):
        bad = [(lo, hi) for lo, hi in f.components if lo != hi]
        if bad:
            raise PresentationError(
                f"interval component [{bad[0][0]},{bad[0][1]}] has interior; "
                "not nowhere dense"
            )
        points.extend(lo for lo, _ in f.components)
        return False
    if isinstance(f, CantorSet):
        return True
    if isinstance(f, UnionSet):
        return any([_flatten_nowhere_dense(p, points) for p in f.parts])
    if isinstance(f, CountableSet):
        raise PresentationError(
            "a dense enumeration is not nowhere dense; present its points "
            "one at a time instead"
        )
    raise PresentationError(f"unsupported nowhere-dense presentation: {f!r}")


def avoid_interval(interval: ClosedInterval, f: SetDescription) -> ClosedInterval:
    """A nondegenerate closed J inside `interval` with J disjoint from
    closure(f).

    Deterministic rule: among the components of the interval minus
    closure(f), take the leftmost of maximal length and return its middle
    half [c + L/4, c + 3L/4].
    """
    points: list[Fraction] = []
    has_cantor = _flatten_nowhere_dense(f, points)
    lo, hi = interval.lo, interval.hi
    cuts = sorted({p for p in points if lo < p < hi})
    pieces: list[tuple[Fraction, Fraction]] = []
    if not has_cantor:
        bounds = [lo, *cuts, hi]
        pieces = list(zip(bounds, bounds[1:]))
    else:
        # every window of width w holds a Cantor-free component of length
        # > w/27, and the cut points split it into at most len(cuts)+1 parts,
        # so this threshold cannot miss the maximal component
        min_len = interval.width / (54 * (len(cuts) + 1))
        for c, d in CantorSet().free_components(lo, hi, min_len):
            inner = [p for p in cuts if c < p < d]
            bounds = [c, *inner, d]
            pieces.extend(zip(bounds, bounds[1:]))
    if not pieces:
        raise PresentationError("no room left inside the interval; presentation is not nowhere dense")
    c, d = max(pieces, key=lambda piece: (piece[1] - piece[0], -piece[0]))
    length = d - c
    if length <= 0:
        raise PresentationError("presentation leaves no nondegenerate free component")
    return ClosedInterval(c + length / 4, c + 3 * length / 4)


class FareySingletons:
    """F_n = the singleton of the nth rational in farey order."""

    kind = "farey-singletons"

    def __init__(self):
        self._enum = FareyEnumeration()

    def nth(self, n: int) -> SetDescription:
        return FiniteSet((self._enum.nth(n),))

    def to_document(self) -> dict:
        return {"kind": self.kind}


class ConstantPresentation:
    """F_n = the same nowhere-dense set every round."""

    kind = "constant"

    def __init__(self, set_desc: SetDescription):
        self.set_desc = set_desc

    def nth(self, n: int) -> SetDescription:
        return self.set_desc

    def to_document(self) -> dict:
        return {"kind": self.kind, "set": set_to_spec(self.set_desc)}


class CyclePresentation:
    """F_n cycles through a finite list of nowhere-dense sets."""

    kind = "cycle"

    def __init__(self, sets):
        self.sets = tuple(sets)
        if not self.sets:
            raise ValueError("cycle presentation needs at least one set")

    def nth(self, n: int) -> SetDescription:
        return self.sets[(n - 1) % len(self.sets)]

    def to_document(self) -> dict:
        return {"kind": self.kind, "sets": [set_to_spec(s) for s in self.sets]}


def presentation_from_document(doc: dict):
    kind = doc.get("kind")
    if kind == "farey-singletons":
        return FareySingletons()
    if kind == "constant":
        return ConstantPresentation(set_from_spec(doc["set"]))
    if kind == "cycle":
        return CyclePresentation([set_from_spec(d) for d in doc["sets"]])
    raise ValueError(f"unknown presentation kind {kind!r}")


# ---------------------------------------------------------------------------
# engine


@dataclass(frozen=True)
class BMState:
    intervals: tuple[ClosedInterval, ...] = ()

    @property
    def to_move(self) -> str:
        return "anna" if len(self.intervals) % 2 == 0 else "bartek"

    @property
    def current(self) -> ClosedInterval | None:
        return self.intervals[-1] if self.intervals else None


def bm_new() -> BMState:
    return BMState()


def bm_apply(state: BMState, interval: ClosedInterval) -> BMState:
    if state.intervals:
        prev = state.intervals[-1]
        if not prev.contains_interval(interval):
            raise IntervalMoveError(
                f"[{interval.lo},{interval.hi}] is not contained in "
                f"[{prev.lo},{prev.hi}]"
            )
    elif not (ZERO <= interval.lo and interval.hi <= ONE):
        raise IntervalMoveError("the opening interval must sit inside [0,1]")
    return BMState(state.intervals + (interval,))


class BartekMeagreStrategy:
    """On his nth move, avoid the closure of the nth presented set."""

    name = "meagre"

    def __init__(self, presentation):
        self.presentation = presentation

    def propose(self, state: BMState) -> ClosedInterval:
        n = len(state.intervals) // 2 + 1
        return avoid_interval(state.current, self.presentation.nth(n))


class MiddleHalfClosed:
    """Neutral mover: the middle half of the current interval."""

    name = "middle"

    def propose(self, state: BMState) -> ClosedInterval:
        cur = state.current or ClosedInterval(ZERO, ONE)
        w = cur.width
        return ClosedInterval(cur.lo + w / 4, cur.hi - w / 4)


class SeededRandomClosed:
    """Random dyadic sub-interval, deterministic per (seed, move index)."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.name = f"random:{self.seed}"

    def propose(self, state: BMState) -> ClosedInterval:
        cur = state.current or ClosedInterval(ZERO, ONE)
        rng = random.Random(f"bm:{self.seed}:{len(state.intervals)}")
        third = cur.width / 3
        new_lo = _dyadic_strictly_between(rng, cur.lo, cur.lo + third)
        new_hi = _dyadic_strictly_between(rng, cur.hi - third, cur.hi)
        return ClosedInterval(new_lo, new_hi)


class ScriptedClosed:
    name = "script"

    def __init__(self, intervals):
        self.intervals = tuple(intervals)

    def propose(self, state: BMState) -> ClosedInterval:
        index = len(state.intervals) // 2
        if index >= len(self.intervals):
            raise IntervalMoveError("interval script exhausted")
        return self.intervals[index]


@dataclass(frozen=True)
class BMTrace:
    presentation: object
    moves: tuple[tuple[str, ClosedInterval], ...]
    rounds: int

    @property
    def final(self) -> ClosedInterval:
        if not self.moves:
            raise ValueError("empty trace has no final interval")
        return self.moves[-1][1]

    def to_document(self) -> dict:
        return {
            "game": "banach-mazur",
            "presentation": self.presentation.to_document(),
            "rounds": self.rounds,
            "moves": [
                {"player": role, "interval": iv.as_strings(), "closed": True}
                for role, iv in self.moves
            ],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "BMTrace":
        if doc.get("game") != "banach-mazur":
            raise ValueError(f"not a banach-mazur trace: game={doc.get('game')!r}")
        moves = tuple(
            (
                m["player"],
                ClosedInterval(parse_rational(m["interval"][0]), parse_rational(m["interval"][1])),
            )
            for m in doc["moves"]
        )
        return cls(presentation_from_document(doc["presentation"]), moves, int(doc["rounds"]))


def bm_play(anna, bartek, rounds: int, presentation) -> BMTrace:
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    state = bm_new()
    movers = {"anna": anna, "bartek": bartek}
    for n in range(1, rounds + 1):
        for role in ("anna", "bartek"):
            try:
                interval = movers[role].propose(state)
                state = bm_apply(state, interval)
            except (IntervalMoveError, ValueError, PresentationError) as err:
                raise IntervalStrategyFault(role, n, str(err)) from err
    roles = ["anna" if i % 2 == 0 else "bartek" for i in range(len(state.intervals))]
    return BMTrace(presentation, tuple(zip(roles, state.intervals)), rounds)


BM_CLAIM = (
    "meagre avoidance: the final interval is exactly disjoint from the closures "
    "F_1..F_N; nested nondegenerate closed intervals share at least one point, "
    "and any such point avoids every listed set"
)


@dataclass(frozen=True)
class BMCertificate:
    rounds: int
    final: ClosedInterval | None
    checked: tuple[dict, ...]

    claim = BM_CLAIM

    def to_document(self) -> dict:
        return {
            "certificate": "banach-mazur",
            "claim": self.claim,
            "rounds": self.rounds,
            "final": self.final.as_strings() if self.final else None,
            "items": list(self.checked),
        }


def bm_certificate(trace: BMTrace, rounds: int | None = None) -> BMCertificate:
    """Recheck all containments and the disjointness of the final interval
    from every presented closure F_1..F_N. N=0 is a vacuous pass."""
    from .certificates import CertificateError

    n_rounds = trace.rounds if rounds is None else rounds
    state = bm_new()
    for i, (role, interval) in enumerate(trace.moves):
        expected = "anna" if i % 2 == 0 else "bartek"
        if role != expected:
            raise CertificateError("moves out of turn", index=i // 2 + 1)
        try:
            state = bm_apply(state, interval)
        except IntervalMoveError as err:
            raise CertificateError(str(err), index=i // 2 + 1) from err
    if n_rounds == 0:
        return BMCertificate(0, state.current, ())
    if len(trace.moves) < 2 * n_rounds:
        raise CertificateError("trace has fewer rounds than requested")
    final = state.current
    checked = []
    for k in range(1, n_rounds + 1):
        f_k = trace.presentation.nth(k)
        if f_k.meets_closed(final.lo, final.hi):
            raise CertificateError(
                "final interval meets a presented closure", index=k
            )
        checked.append({"k": k, "set": set_to_spec(f_k), "disjoint": True})
    return BMCertificate(n_rounds, final, tuple(checked))
