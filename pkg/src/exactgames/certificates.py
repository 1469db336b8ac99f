"""Finite, machine-checkable witnesses for truncated game traces.

Each checker re-derives everything from the trace by exact comparisons; it
never trusts the strategy that produced the moves. A certificate that cannot
be established raises CertificateError naming the offending index — that is
a legitimate outcome for a non-conforming trace, not a checker bug.

The claim strings spell out what a passing certificate establishes about
the (infinite) continuation of the truncated play.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .baker import MoveError, Trace, apply_move, new_game
from .rational import format_rational
from .sets import PointClass, SetDescription
from .strategies import enumeration_for_set

LEGALITY_CLAIM = (
    "strict chain: 0 < a_1 < ... < a_N < b_N < ... < b_1 < 1 holds exactly, "
    "so the enclosures are nested and nonempty"
)
EXCLUSION_CLAIM = (
    "countable avoidance: every enumerated candidate s_k with k <= N lies on or "
    "outside the final enclosure (a_N, b_N); the limit of any legal continuation "
    "stays strictly inside every enclosure, hence differs from each s_k"
)
MEMBERSHIP_CLAIM = (
    "closed-set membership: every lower value a_n is right-approachable in the "
    "closed set S (hence in S); the a_n increase strictly, so the limit of any "
    "legal continuation is a limit point of S and therefore belongs to S"
)
CONVERGENCE_CLAIM = (
    "monotone convergence: enclosure widths shrink strictly; the increasing, "
    "bounded lower values converge, and the limit sits in every enclosure"
)


class CertificateError(Exception):
    """A certificate claim failed at a specific index."""

    def __init__(self, reason: str, index: int | None = None, value=None):
        self.reason = reason
        self.index = index
        self.value = value
        at = f" at index {index}" if index is not None else ""
        super().__init__(f"{reason}{at}")


@dataclass(frozen=True)
class LegalityReport:
    ok: bool
    failure: dict | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_document(self) -> dict:
        return {
            "certificate": "legality",
            "claim": LEGALITY_CLAIM,
            "ok": self.ok,
            "failure": self.failure,
        }


def check_legality(trace: Trace) -> LegalityReport:
    """Replay the trace through the engine's own transition, pinpointing the
    first violation (one code path for legality everywhere)."""
    if len(trace.moves) != 2 * trace.rounds:
        return LegalityReport(
            False, {"round": None, "reason": "move count does not match rounds"}
        )
    state = new_game()
    for player, value in trace.moves:
        round_number = state.round + 1
        if player is not state.to_move:
            return LegalityReport(
                False,
                {
                    "round": round_number,
                    "player": player.value,
                    "reason": "out of turn",
                },
            )
        try:
            state = apply_move(state, value)
        except MoveError as err:
            return LegalityReport(
                False,
                {
                    "round": round_number,
                    "player": player.value,
                    "value": format_rational(value),
                    "reason": err.violated_bound,
                },
            )
    return LegalityReport(True)


class Verdict(enum.Enum):
    BELOW = "below-enclosure"  # s_k <= a_N
    ABOVE = "above-enclosure"  # s_k >= b_N


@dataclass(frozen=True)
class ExclusionItem:
    index: int
    value: Fraction
    verdict: Verdict
    case: str | None = None


@dataclass(frozen=True)
class ExclusionCertificate:
    rounds: int
    enclosure: tuple[Fraction, Fraction]
    items: tuple[ExclusionItem, ...]

    claim = EXCLUSION_CLAIM

    def to_document(self) -> dict:
        a_n, b_n = self.enclosure
        return {
            "certificate": "exclusion",
            "claim": self.claim,
            "rounds": self.rounds,
            "enclosure": [format_rational(a_n), format_rational(b_n)],
            "items": [
                {
                    "k": item.index,
                    "value": format_rational(item.value),
                    "verdict": item.verdict.value,
                    **({"case": item.case} if item.case is not None else {}),
                }
                for item in self.items
            ],
        }


def exclusion_certificate(
    trace: Trace, enumeration=None, *, verbose: bool = False
) -> ExclusionCertificate:
    """Establish s_k <= a_N or s_k >= b_N for every k <= N.

    The enumeration is re-derived from the trace's set unless given
    explicitly. Fails (CertificateError) at the first s_k strictly inside
    the final enclosure — for a second player who followed the enumeration
    rule that would indicate an engine or strategy bug.
    """
    if enumeration is None:
        enumeration = enumeration_for_set(trace.set_desc)
    a_final, b_final = trace.enclosure
    lows = trace.lower_values()
    ups = trace.upper_values()
    items = []
    for k in range(1, trace.rounds + 1):
        s_k = enumeration.nth(k)
        if s_k <= a_final:
            verdict = Verdict.BELOW
        elif s_k >= b_final:
            verdict = Verdict.ABOVE
        else:
            raise CertificateError(
                f"enumerated value {format_rational(s_k)} lies strictly inside "
                f"the final enclosure ({format_rational(a_final)}, {format_rational(b_final)})",
                index=k,
                value=s_k,
            )
        case = None
        if verbose:
            upper_before = ups[k - 2] if k >= 2 else None
            if ups[k - 1] == s_k:
                case = "played"
            elif s_k <= lows[k - 1]:
                case = "was-too-low"
            elif upper_before is None or s_k >= upper_before:
                case = "was-too-high"
            else:
                case = "displaced-later"
        items.append(ExclusionItem(k, s_k, verdict, case))
    return ExclusionCertificate(trace.rounds, (a_final, b_final), tuple(items))


@dataclass(frozen=True)
class MembershipRecord:
    round: int
    value: Fraction
    point_class: PointClass


@dataclass(frozen=True)
class MembershipCertificate:
    records: tuple[MembershipRecord, ...]

    claim = MEMBERSHIP_CLAIM

    def to_document(self) -> dict:
        return {
            "certificate": "membership",
            "claim": self.claim,
            "rounds": len(self.records),
            "items": [
                {
                    "n": r.round,
                    "value": format_rational(r.value),
                    "in_set": r.point_class.in_set,
                    "right_approachable": r.point_class.right_approachable,
                    "left_approachable": r.point_class.left_approachable,
                }
                for r in self.records
            ],
        }


def membership_certificate(
    trace: Trace, set_desc: SetDescription | None = None
) -> MembershipCertificate:
    """Verify that every lower value is right-approachable in the perfect set."""
    s = set_desc if set_desc is not None else trace.set_desc
    if s is None:
        raise ValueError("membership certificate needs the set in play")
    if not s.is_perfect():
        raise ValueError("membership certificate is defined over perfect sets")
    records = []
    for n, a_n in enumerate(trace.lower_values(), start=1):
        pc = s.classify(a_n)
        if pc.right_approachable is not True:
            raise CertificateError(
                f"lower value {format_rational(a_n)} is not right-approachable",
                index=n,
                value=a_n,
            )
        records.append(MembershipRecord(n, a_n, pc))
    return MembershipCertificate(tuple(records))


@dataclass(frozen=True)
class ConvergenceReport:
    widths: tuple[Fraction, ...]

    claim = CONVERGENCE_CLAIM

    def to_document(self) -> dict:
        return {
            "certificate": "convergence",
            "claim": self.claim,
            "widths": [format_rational(w) for w in self.widths],
        }


def convergence_report(trace: Trace) -> ConvergenceReport:
    """Per-round enclosure widths, verified strictly decreasing. Needs N >= 2."""
    if trace.rounds < 2:
        raise ValueError("convergence report needs at least two rounds")
    lows = trace.lower_values()
    ups = trace.upper_values()
    widths = tuple(u - l for l, u in zip(lows, ups))
    for n in range(1, len(widths)):
        if not widths[n] < widths[n - 1]:
            raise CertificateError(
                "enclosure width failed to shrink", index=n + 1, value=widths[n]
            )
    return ConvergenceReport(widths)
