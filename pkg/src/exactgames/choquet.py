"""The Choquet game: players nest non-empty open intervals in an ambient space.

The ambient is either the full unit interval (complete) or the rationals
inside it (incomplete). The first player (pierre) opens, the second (paul)
answers inside it, and so on; the second player tries to keep the
intersection nonempty. Two constructive halves are provided:

* paul's complete-space rule shrinks to a concentric interval of diameter
  at most 2^-n whose closure sits strictly inside the previous open — the
  exact hypotheses that force a common point in a complete space;
* pierre's countable rule fences the nth enumerated rational out of his
  (n+1)th open, so over the rational ambient nothing survives to the
  intersection.

Open sets are restricted to single open intervals; both rules need no more.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .rational import ONE, ZERO, format_rational, parse_rational
from .sets import NAMED_ENUMERATIONS
from .strategies import _dyadic_strictly_between


class Ambient(enum.Enum):
    UNIT_INTERVAL = "unit-interval"
    RATIONALS = "rationals"


class OpenMoveError(Exception):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class OpenStrategyFault(Exception):
    def __init__(self, role: str, round_number: int, reason: str):
        self.role = role
        self.round_number = round_number
        self.reason = reason
        super().__init__(f"{role} faulted in round {round_number}: {reason}")


@dataclass(frozen=True)
class OpenInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError(f"open interval must be nondegenerate: ({self.lo},{self.hi})")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains_point(self, q: Fraction) -> bool:
        return self.lo < q < self.hi

    def contains_open(self, other: "OpenInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_closure_of(self, other: "OpenInterval") -> bool:
        return self.lo < other.lo and other.hi < self.hi

    def as_strings(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]


@dataclass(frozen=True)
class ChoquetState:
    ambient: Ambient
    intervals: tuple[OpenInterval, ...] = ()

    @property
    def to_move(self) -> str:
        return "pierre" if len(self.intervals) % 2 == 0 else "paul"

    @property
    def current(self) -> OpenInterval | None:
        return self.intervals[-1] if self.intervals else None


def choquet_new(ambient: Ambient) -> ChoquetState:
    return ChoquetState(ambient)


def choquet_apply(state: ChoquetState, interval: OpenInterval) -> ChoquetState:
    # a nondegenerate rational interval always meets the rational ambient,
    # so the empty-in-ambient rejection can never fire here; containment and
    # nondegeneracy are the live rules
    if not (ZERO <= interval.lo and interval.hi <= ONE):
        raise OpenMoveError("open sets must sit inside the ambient [0,1]")
    if state.intervals and not state.intervals[-1].contains_open(interval):
        prev = state.intervals[-1]
        raise OpenMoveError(
            f"({interval.lo},{interval.hi}) is not contained in ({prev.lo},{prev.hi})"
        )
    return ChoquetState(state.ambient, state.intervals + (interval,))


class PaulCompleteStrategy:
    """Concentric shrink with summable diameters: on his nth move inside
    U = (l,h), play (m-d, m+d) with m the midpoint and
    d = min((h-l)/4, 2^-(n+1)): the closure stays strictly inside U and the
    diameter is at most 2^-n."""

    name = "complete"

    def propose(self, state: ChoquetState) -> OpenInterval:
        if state.ambient is not Ambient.UNIT_INTERVAL:
            raise ValueError("the complete-space rule runs over the unit interval")
        n = len(state.intervals) // 2 + 1
        cur = state.current
        mid = (cur.lo + cur.hi) / 2
        d = min(cur.width / 4, Fraction(1, 2 ** (n + 1)))
        return OpenInterval(mid - d, mid + d)


class PierreExcludeStrategy:
    """Fence the kth enumerated rational out of the (k+1)th open: keep the
    wider side of the current interval split at q_k (left on ties), or a
    concentric half-shrink when q_k is already outside."""

    def __init__(self, enumeration):
        self.enumeration = enumeration
        self.name = f"exclude:{getattr(enumeration, 'name', 'enumeration')}"

    def propose(self, state: ChoquetState) -> OpenInterval:
        if not state.intervals:
            return OpenInterval(ZERO, ONE)
        k = len(state.intervals) // 2
        q = self.enumeration.nth(k)
        cur = state.current
        if cur.contains_point(q):
            left = OpenInterval(cur.lo, q)
            right = OpenInterval(q, cur.hi)
            return left if left.width >= right.width else right
        w = cur.width
        return OpenInterval(cur.lo + w / 4, cur.hi - w / 4)


class MiddleHalfOpen:
    name = "middle"

    def propose(self, state: ChoquetState) -> OpenInterval:
        cur = state.current
        if cur is None:
            return OpenInterval(Fraction(1, 4), Fraction(3, 4))
        w = cur.width
        return OpenInterval(cur.lo + w / 4, cur.hi - w / 4)


class SeededRandomOpen:
    def __init__(self, seed: int):
        self.seed = int(seed)
        self.name = f"random:{self.seed}"

    def propose(self, state: ChoquetState) -> OpenInterval:
        cur = state.current or OpenInterval(ZERO, ONE)
        rng = random.Random(f"choquet:{self.seed}:{len(state.intervals)}")
        third = cur.width / 3
        lo = _dyadic_strictly_between(rng, cur.lo, cur.lo + third)
        hi = _dyadic_strictly_between(rng, cur.hi - third, cur.hi)
        return OpenInterval(lo, hi)


class ScriptedOpens:
    name = "script"

    def __init__(self, intervals):
        self.intervals = tuple(intervals)

    def propose(self, state: ChoquetState) -> OpenInterval:
        index = len(state.intervals) // 2
        if index >= len(self.intervals):
            raise OpenMoveError("interval script exhausted")
        return self.intervals[index]


@dataclass(frozen=True)
class ChoquetTrace:
    ambient: Ambient
    moves: tuple[tuple[str, OpenInterval], ...]
    rounds: int
    enumeration_name: str | None = None

    def opens_of(self, role: str) -> list[OpenInterval]:
        return [iv for r, iv in self.moves if r == role]

    def to_document(self) -> dict:
        return {
            "game": "choquet",
            "ambient": self.ambient.value,
            "enumeration": self.enumeration_name,
            "rounds": self.rounds,
            "moves": [
                {"player": role, "interval": iv.as_strings(), "open": True}
                for role, iv in self.moves
            ],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "ChoquetTrace":
        if doc.get("game") != "choquet":
            raise ValueError(f"not a choquet trace: game={doc.get('game')!r}")
        moves = tuple(
            (
                m["player"],
                OpenInterval(parse_rational(m["interval"][0]), parse_rational(m["interval"][1])),
            )
            for m in doc["moves"]
        )
        return cls(Ambient(doc["ambient"]), moves, int(doc["rounds"]), doc.get("enumeration"))


def choquet_play(pierre, paul, rounds: int, ambient: Ambient) -> ChoquetTrace:
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    state = choquet_new(ambient)
    movers = {"pierre": pierre, "paul": paul}
    for n in range(1, rounds + 1):
        for role in ("pierre", "paul"):
            try:
                state = choquet_apply(state, movers[role].propose(state))
            except (OpenMoveError, ValueError) as err:
                raise OpenStrategyFault(role, n, str(err)) from err
    roles = ["pierre" if i % 2 == 0 else "paul" for i in range(len(state.intervals))]
    enum_name = getattr(getattr(pierre, "enumeration", None), "name", None)
    return ChoquetTrace(ambient, tuple(zip(roles, state.intervals)), rounds, enum_name)


PAUL_CLAIM = (
    "complete-space win: the second player's opens nest with closures strictly "
    "inside their predecessors and diameters at most 2^-n; in the complete unit "
    "interval they intersect in exactly one point, located inside "
    "[sup of left endpoints, inf of right endpoints]"
)
PIERRE_CLAIM = (
    "countable exhaustion: the kth enumerated rational lies outside the (k+1)th "
    "open for every checked k, and the enumeration exhausts the rational ambient, "
    "so the intersection within the ambient is empty"
)


@dataclass(frozen=True)
class PaulCertificate:
    rounds: int
    enclosure: tuple[Fraction, Fraction]
    widths: tuple[Fraction, ...]

    claim = PAUL_CLAIM

    def to_document(self) -> dict:
        lo, hi = self.enclosure
        return {
            "certificate": "choquet-paul",
            "claim": self.claim,
            "rounds": self.rounds,
            "enclosure": [format_rational(lo), format_rational(hi)],
            "widths": [format_rational(w) for w in self.widths],
        }


@dataclass(frozen=True)
class PierreCertificate:
    checked: tuple[dict, ...]

    claim = PIERRE_CLAIM

    def to_document(self) -> dict:
        return {
            "certificate": "choquet-pierre",
            "claim": self.claim,
            "items": list(self.checked),
        }


def _recheck_nesting(trace: ChoquetTrace) -> None:
    from .certificates import CertificateError

    state = choquet_new(trace.ambient)
    for i, (role, interval) in enumerate(trace.moves):
        expected = "pierre" if i % 2 == 0 else "paul"
        if role != expected:
            raise CertificateError("moves out of turn", index=i // 2 + 1)
        try:
            state = choquet_apply(state, interval)
        except OpenMoveError as err:
            raise CertificateError(str(err), index=i // 2 + 1) from err


def choquet_paul_certificate(trace: ChoquetTrace) -> PaulCertificate:
    """Exact check of the complete-space hypotheses over the whole trace."""
    from .certificates import CertificateError

    _recheck_nesting(trace)
    answers = trace.opens_of("paul")
    if len(answers) < trace.rounds:
        raise CertificateError("trace is missing second-player answers")
    widths = []
    for n, v_n in enumerate(answers[: trace.rounds], start=1):
        if v_n.width > Fraction(1, 2**n):
            raise CertificateError(
                f"diameter {format_rational(v_n.width)} exceeds 2^-{n}", index=n
            )
        widths.append(v_n.width)
        if n > 1 and not answers[n - 2].contains_closure_of(v_n):
            raise CertificateError(
                "closure not strictly inside the previous answer", index=n
            )
    enclosure = (
        max(v.lo for v in answers[: trace.rounds]),
        min(v.hi for v in answers[: trace.rounds]),
    )
    if not enclosure[0] < enclosure[1]:
        raise CertificateError("empty enclosure; nesting must have failed")
    return PaulCertificate(trace.rounds, enclosure, tuple(widths))


def choquet_pierre_certificate(trace: ChoquetTrace, enumeration=None) -> PierreCertificate:
    """Empty-intersection witness over the rational ambient.

    Refused outright when the ambient is the full unit interval: the
    enumeration does not exhaust it, so excluding every enumerated point
    says nothing about emptiness there.
    """
    from .certificates import CertificateError

    if trace.ambient is not Ambient.RATIONALS:
        raise CertificateError(
            "ambient is not exhausted by a rational enumeration; "
            "empty-intersection claim unavailable over the unit interval"
        )
    if enumeration is None:
        name = trace.enumeration_name
        if name not in NAMED_ENUMERATIONS:
            raise CertificateError(f"trace names no usable enumeration ({name!r})")
        enumeration = NAMED_ENUMERATIONS[name]()
    _recheck_nesting(trace)
    opens = trace.opens_of("pierre")
    checked = []
    for k in range(1, len(opens)):
        q_k = enumeration.nth(k)
        if opens[k].contains_point(q_k):
            raise CertificateError(
                f"enumerated point {format_rational(q_k)} survives into open {k + 1}",
                index=k,
                value=q_k,
            )
        checked.append(
            {"k": k, "value": format_rational(q_k), "excluded_from": opens[k].as_strings()}
        )
    return PierreCertificate(tuple(checked))
