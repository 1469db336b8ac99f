"""Computable subsets of [0,1] with exact membership and approachability oracles.

Five kinds of description are supported: finite unions of closed intervals,
the middle-thirds Cantor set, finite point sets, countable enumerations
(farey / dyadic order), and finite unions of the above. Every oracle answer
is exact — booleans are never approximate, and infima are returned as the
actual rationals. The only deliberately partial answers are the
approachability flags of bare enumerations, which come back as ``None``
(unknown) because an enumeration alone does not decide them.

A point q is *right-approachable* (q ∈ S⁺) when every interval (q, q+e)
meets S, and *left-approachable* (S⁻) symmetrically; q is a limit point of
S exactly when it is approachable from at least one side.

Cantor-set queries run on integers: the depth-k pieces of the construction
are the intervals [m/3^k, (m+1)/3^k] for surviving m, so locating gaps and
selecting gap endpoints only ever compares integer cross-products.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction

from .rational import ONE, ZERO, parse_rational

MAX_COVER_DEPTH = 20


@dataclass(frozen=True)
class PointClass:
    """Membership plus one-sided approachability of a point in a set."""

    in_set: bool
    right_approachable: bool | None
    left_approachable: bool | None

    @property
    def is_limit_point(self) -> bool | None:
        if self.right_approachable or self.left_approachable:
            return True
        if self.right_approachable is None or self.left_approachable is None:
            return None
        return False


class SetDescription(ABC):
    """A subset of [0,1] supporting the exact oracle operations."""

    @abstractmethod
    def contains(self, q: Fraction) -> bool: ...

    @abstractmethod
    def classify(self, q: Fraction) -> PointClass: ...

    @abstractmethod
    def is_empty(self) -> bool: ...

    @abstractmethod
    def infimum(self) -> Fraction:
        """Greatest lower bound of the set; rejects the empty set."""

    @abstractmethod
    def infimum_within(self, x: Fraction, z: Fraction) -> Fraction | None:
        """inf((x,z) ∩ S) exactly, or None when the intersection is empty.

        The returned value need not itself lie in (x,z) ∩ S.
        """

    @abstractmethod
    def right_select(self, a: Fraction, b: Fraction) -> Fraction | None:
        """A deterministic right-approachable point of S strictly inside (a,b)."""

    @abstractmethod
    def is_perfect(self) -> bool: ...

    @abstractmethod
    def meets_closed(self, lo: Fraction, hi: Fraction) -> bool:
        """Exact test of S ∩ [lo,hi] != empty."""

    @abstractmethod
    def to_spec(self) -> dict: ...


def _check_open_interval(x: Fraction, z: Fraction) -> None:
    if x >= z:
        raise ValueError(f"need x < z, got {x} >= {z}")


# ---------------------------------------------------------------------------
# interval unions


@dataclass(frozen=True)
class IntervalUnion(SetDescription):
    """Ordered, pairwise-disjoint closed intervals within [0,1].

    A component with lo == hi is a single point; those are what make a
    description imperfect.
    """

    components: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        prev_hi = None
        for lo, hi in self.components:
            if not (ZERO <= lo <= hi <= ONE):
                raise ValueError(f"component [{lo},{hi}] out of order or outside [0,1]")
            if prev_hi is not None and lo <= prev_hi:
                raise ValueError("components must be sorted and pairwise disjoint")
            prev_hi = hi

    @classmethod
    def from_endpoints(cls, pairs) -> "IntervalUnion":
        """Build from arbitrary [lo,hi] pairs, sorting and merging overlaps."""
        items = sorted((Fraction(lo), Fraction(hi)) for lo, hi in pairs)
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        return cls(tuple(merged))

    def is_empty(self) -> bool:
        return not self.components

    def contains(self, q: Fraction) -> bool:
        return any(lo <= q <= hi for lo, hi in self.components)

    def classify(self, q: Fraction) -> PointClass:
        in_set = right = left = False
        for lo, hi in self.components:
            if lo <= q <= hi:
                in_set = True
            if lo <= q < hi:
                right = True
            if lo < q <= hi:
                left = True
        return PointClass(in_set, right, left)

    def infimum(self) -> Fraction:
        if not self.components:
            raise ValueError("empty set has no infimum")
        return self.components[0][0]

    def infimum_within(self, x: Fraction, z: Fraction) -> Fraction | None:
        _check_open_interval(x, z)
        for lo, hi in self.components:
            if lo < z and hi > x:
                return max(lo, x)
        return None

    def right_select(self, a: Fraction, b: Fraction) -> Fraction | None:
        # midpoint of the leftmost nondegenerate component of S ∩ (a,b)
        _check_open_interval(a, b)
        for lo, hi in self.components:
            c, d = max(lo, a), min(hi, b)
            if c < d:
                return (c + d) / 2
        return None

    def is_perfect(self) -> bool:
        return bool(self.components) and all(lo < hi for lo, hi in self.components)

    def meets_closed(self, lo: Fraction, hi: Fraction) -> bool:
        return any(c_lo <= hi and c_hi >= lo for c_lo, c_hi in self.components)

    def to_spec(self) -> dict:
        return {
            "type": "intervals",
            "items": [[str(lo), str(hi)] for lo, hi in self.components],
        }


# ---------------------------------------------------------------------------
# the middle-thirds Cantor set


def _locate_gap(q: Fraction) -> tuple[Fraction, Fraction]:
    """The removed open gap strictly containing q. Caller guarantees q is in one."""
    den = q.denominator
    t = q.numerator          # q scaled: num * 3^(k+1) against den-scaled endpoints
    md = 0                   # m * den for the current piece [m/3^k, (m+1)/3^k]
    p3 = 1
    while True:
        p3 *= 3
        t *= 3
        g_lo = 3 * md + den
        g_hi = 3 * md + 2 * den
        if g_lo < t < g_hi:
            m = md // den
            return Fraction(3 * m + 1, p3), Fraction(3 * m + 2, p3)
        if t <= g_lo:
            md = 3 * md
        else:
            md = 3 * md + 2 * den


class CantorSet(SetDescription):
    """The standard middle-thirds Cantor set on [0,1].

    Membership: some ternary expansion of q uses only digits 0 and 2. The
    canonical expansion is consulted first, then the trailing-2s alternate,
    so e.g. 1/3 = 0.0(2) is a member even though its preferred form 0.1 is
    not all-{0,2}.
    """

    def __eq__(self, other):
        return isinstance(other, CantorSet)

    def __hash__(self):
        return hash(CantorSet)

    def __repr__(self):
        return "CantorSet()"

    def is_empty(self) -> bool:
        return False

    @staticmethod
    def _route(q: Fraction) -> tuple[bool, bool, tuple[int, ...] | None]:
        """(member_via_canonical, member_via_alternate, terminating_digits).

        terminating_digits is None for non-terminating expansions. Stops at
        the first digit 1 instead of materializing the (possibly enormous)
        period, so membership stays cheap for the denominators games produce.
        """
        num, den = q.numerator, q.denominator
        if num == 0:
            return True, False, ()
        if num == den:
            return True, False, None  # 1 = 0.(2)
        reduced = den
        length = 0
        while reduced % 3 == 0:
            reduced //= 3
            length += 1
        if reduced == 1:
            # q = num / 3^length: the expansion is just num in base 3
            digits = [0] * length
            m = num
            for i in range(length - 1, -1, -1):
                m, digits[i] = divmod(m, 3)
            body_clean = all(d != 1 for d in digits[:-1])
            canonical = body_clean and digits[-1] != 1
            alternate = body_clean and digits[-1] == 1
            return canonical, alternate, tuple(digits)
        # non-terminating: a digit 1 anywhere settles it; only the (rare)
        # all-{0,2} streams need the remainder cycle confirmed
        r = num
        seen = set()
        while r not in seen:
            seen.add(r)
            digit, r = divmod(3 * r, den)
            if digit == 1:
                return False, False, None
        return True, False, None

    def contains(self, q: Fraction) -> bool:
        if not (ZERO <= q <= ONE):
            return False
        canonical, alternate, _ = self._route(q)
        return canonical or alternate

    def classify(self, q: Fraction) -> PointClass:
        if not (ZERO <= q <= ONE):
            return PointClass(False, False, False)
        canonical, alternate, digits = self._route(q)
        if not (canonical or alternate):
            # strictly inside a removed gap: unreachable from either side
            return PointClass(False, False, False)
        if q == ZERO:
            return PointClass(True, True, False)
        if q == ONE:
            return PointClass(True, False, True)
        if digits is not None:
            if canonical:
                # 0.t1..tk2 with ti in {0,2}: right endpoint of a removed gap
                return PointClass(True, True, False)
            # member only via the trailing-2s form: left endpoint of a gap
            return PointClass(True, False, True)
        return PointClass(True, True, True)

    def infimum(self) -> Fraction:
        return ZERO

    def infimum_within(self, x: Fraction, z: Fraction) -> Fraction | None:
        _check_open_interval(x, z)
        if z <= ZERO or x >= ONE:
            return None
        if x < ZERO:
            return ZERO
        pc = self.classify(x)
        if pc.right_approachable:
            return x
        if pc.in_set:
            # left endpoint of a gap of width 3^-L, L the terminating length
            digits = self._route(x)[2]
            gap_hi = x + Fraction(1, 3 ** len(digits))
        else:
            gap_hi = _locate_gap(x)[1]
        return gap_hi if gap_hi < z else None

    def right_select(self, a: Fraction, b: Fraction) -> Fraction | None:
        # right endpoint of the shallowest removed gap inside (a,b), leftmost
        # on ties; gap right endpoints are exactly the left ends of surviving
        # pieces, hence right-approachable members.
        _check_open_interval(a, b)
        an, ad = a.numerator, a.denominator
        bn, bd = b.numerator, b.denominator
        frontier = [0]
        p3 = 1
        while frontier:
            p3 *= 3
            a_scaled = an * p3
            b_scaled = bn * p3
            nxt = []
            for m in frontier:
                g2 = 3 * m + 2
                if g2 * ad > a_scaled and g2 * bd < b_scaled:
                    return Fraction(g2, p3)
                for c in (3 * m, g2):
                    if c * bd < b_scaled and (c + 1) * ad > a_scaled:
                        nxt.append(c)
            frontier = nxt
        return None

    def is_perfect(self) -> bool:
        return True

    def meets_closed(self, lo: Fraction, hi: Fraction) -> bool:
        if lo > hi:
            return False
        if self.contains(lo) or self.contains(hi):
            return True
        if lo >= hi:
            return False
        return self.infimum_within(lo, hi) is not None

    def free_components(
        self, lo: Fraction, hi: Fraction, min_len: Fraction
    ) -> list[tuple[Fraction, Fraction]]:
        """Components of [lo,hi] minus the Cantor set with length > min_len.

        Each component is (a piece of) a removed gap clipped to [lo,hi]; when
        [lo,hi] sits inside a single gap the whole of it comes back. Sorted
        ascending.
        """
        if not (ZERO <= lo < hi <= ONE):
            raise ValueError("free_components expects [lo,hi] inside [0,1]")
        if min_len <= 0:
            raise ValueError("min_len must be positive")
        lon, lod = lo.numerator, lo.denominator
        hin, hid = hi.numerator, hi.denominator
        out: list[tuple[Fraction, Fraction]] = []
        frontier = [0]
        scale = 1  # 3^k for the current frontier depth k
        while frontier:
            scale *= 3  # gaps of depth-k pieces live at 3^(k+1)
            lo_scaled = lon * scale
            hi_scaled = hin * scale
            # descendants only carry gaps of length <= 1/(3*scale)
            descend = min_len.denominator > 3 * scale * min_len.numerator
            nxt = []
            for m in frontier:
                g1 = Fraction(3 * m + 1, scale)
                g2 = Fraction(3 * m + 2, scale)
                c = g1 if g1 > lo else lo
                d = g2 if g2 < hi else hi
                if d - c > min_len:
                    out.append((c, d))
                if descend:
                    for child in (3 * m, 3 * m + 2):
                        if child * hid < hi_scaled and (child + 1) * lod > lo_scaled:
                            nxt.append(child)
            frontier = nxt
        return sorted(out)

    def to_spec(self) -> dict:
        return {"type": "cantor"}


# ---------------------------------------------------------------------------
# finite point sets (also the "explicit list" enumeration)


@dataclass(frozen=True)
class FiniteSet(SetDescription):
    """Finitely many rational points, in a fixed listed order.

    The listed order doubles as an enumeration: nth() cycles through the
    list so that the map stays total.
    """

    points: tuple[Fraction, ...]

    def __post_init__(self):
        for p in self.points:
            if not (ZERO <= p <= ONE):
                raise ValueError(f"point {p} outside [0,1]")

    name = "explicit"

    def is_empty(self) -> bool:
        return not self.points

    def contains(self, q: Fraction) -> bool:
        return q in self.points

    def classify(self, q: Fraction) -> PointClass:
        # every point of a finite set is isolated
        return PointClass(q in self.points, False, False)

    def infimum(self) -> Fraction:
        if not self.points:
            raise ValueError("empty set has no infimum")
        return min(self.points)

    def infimum_within(self, x: Fraction, z: Fraction) -> Fraction | None:
        _check_open_interval(x, z)
        inside = [p for p in self.points if x < p < z]
        return min(inside) if inside else None

    def right_select(self, a: Fraction, b: Fraction) -> Fraction | None:
        _check_open_interval(a, b)
        return None

    def is_perfect(self) -> bool:
        return False

    def meets_closed(self, lo: Fraction, hi: Fraction) -> bool:
        return any(lo <= p <= hi for p in self.points)

    def nth(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("enumeration indices start at 1")
        if not self.points:
            raise ValueError("cannot enumerate an empty list")
        return self.points[(n - 1) % len(self.points)]

    def to_spec(self) -> dict:
        return {"type": "finite", "points": [str(p) for p in self.points]}


# ---------------------------------------------------------------------------
# countable enumerations


class FareyEnumeration:
    """All rationals in (0,1), ordered by denominator then numerator:
    1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 2/5, ...
    """

    name = "farey"

    def __init__(self):
        self._cache: list[Fraction] = []
        self._next_den = 2

    def nth(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("enumeration indices start at 1")
        while len(self._cache) < n:
            d = self._next_den
            self._cache.extend(
                Fraction(p, d) for p in range(1, d) if math.gcd(p, d) == 1
            )
            self._next_den += 1
        return self._cache[n - 1]

    def __eq__(self, other):
        return isinstance(other, FareyEnumeration)

    def __hash__(self):
        return hash(FareyEnumeration)


class DyadicEnumeration:
    """Dyadics k/2^m in (0,1), by level: 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, ..."""

    name = "dyadic"

    def nth(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("enumeration indices start at 1")
        m, block = 1, 1
        while n > block:
            n -= block
            m += 1
            block *= 2
        return Fraction(2 * n - 1, 2**m)

    def __eq__(self, other):
        return isinstance(other, DyadicEnumeration)

    def __hash__(self):
        return hash(DyadicEnumeration)


NAMED_ENUMERATIONS = {"farey": FareyEnumeration, "dyadic": DyadicEnumeration}


@dataclass(frozen=True, eq=False)
class CountableSet(SetDescription):
    """The value set of a farey/dyadic enumeration.

    Membership is decided by scanning the enumeration until its (kind-wise
    nondecreasing) denominators pass the query's, so the answer stays exact.
    Approachability is *not* decidable from a bare enumeration and comes
    back as unknown.
    """

    enumeration: object

    def __eq__(self, other):
        return isinstance(other, CountableSet) and self.enumeration == other.enumeration

    def __hash__(self):
        return hash((CountableSet, type(self.enumeration)))

    def is_empty(self) -> bool:
        return False

    def nth(self, n: int) -> Fraction:
        return self.enumeration.nth(n)

    def contains(self, q: Fraction) -> bool:
        if not (ZERO <= q <= ONE):
            return False
        n = 1
        while True:
            s = self.enumeration.nth(n)
            if s.denominator > q.denominator:
                return False
            if s == q:
                return True
            n += 1

    def classify(self, q: Fraction) -> PointClass:
        return PointClass(self.contains(q), None, None)

    def infimum(self) -> Fraction:
        # both supported orders run through 1/d for every d, so the greatest
        # lower bound of the value set is 0
        return ZERO

    def infimum_within(self, x: Fraction, z: Fraction) -> Fraction | None:
        _check_open_interval(x, z)
        lo, hi = max(x, ZERO), min(z, ONE)
        if lo < hi:
            return lo  # the value set is dense in [0,1]
        return None

    def right_select(self, a: Fraction, b: Fraction) -> Fraction | None:
        raise ValueError("approachability is not decidable from an enumeration")

    def is_perfect(self) -> bool:
        raise ValueError("perfectness is not decidable from an enumeration")

    def meets_closed(self, lo: Fraction, hi: Fraction) -> bool:
        if lo > hi:
            return False
        if lo == hi:
            return self.contains(lo)
        c, d = max(lo, ZERO), min(hi, ONE)
        if c < d:
            return True
        return c == d and self.contains(c)

    def to_spec(self) -> dict:
        return {"type": "enumeration", "name": self.enumeration.name}


# ---------------------------------------------------------------------------
# finite unions


def _or3(flags: list[bool | None]) -> bool | None:
    if any(f is True for f in flags):
        return True
    if any(f is None for f in flags):
        return None
    return False


@dataclass(frozen=True)
class UnionSet(SetDescription):
    """Finite union of set descriptions; oracles combine pointwise."""

    parts: tuple[SetDescription, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("union needs at least one part")

    def is_empty(self) -> bool:
        return all(p.is_empty() for p in self.parts)

    def contains(self, q: Fraction) -> bool:
        return any(p.contains(q) for p in self.parts)

    def classify(self, q: Fraction) -> PointClass:
        classes = [p.classify(q) for p in self.parts]
        return PointClass(
            any(c.in_set for c in classes),
            _or3([c.right_approachable for c in classes]),
            _or3([c.left_approachable for c in classes]),
        )

    def infimum(self) -> Fraction:
        infs = [p.infimum() for p in self.parts if not p.is_empty()]
        if not infs:
            raise ValueError("empty set has no infimum")
        return min(infs)

    def infimum_within(self, x: Fraction, z: Fraction) -> Fraction | None:
        _check_open_interval(x, z)
        found = [g for p in self.parts if (g := p.infimum_within(x, z)) is not None]
        return min(found) if found else None

    def right_select(self, a: Fraction, b: Fraction) -> Fraction | None:
        picks: list[Fraction] = []
        undecidable = False
        for p in self.parts:
            try:
                r = p.right_select(a, b)
            except ValueError:
                undecidable = True
                continue
            if r is not None:
                picks.append(r)
        if picks:
            return min(picks)
        if undecidable:
            raise ValueError("approachability is not decidable for some union part")
        return None

    def _suspect_points(self, out: list[Fraction]) -> None:
        for p in self.parts:
            if isinstance(p, CountableSet):
                raise ValueError("perfectness is not decidable from an enumeration")
            if isinstance(p, FiniteSet):
                out.extend(p.points)
            elif isinstance(p, IntervalUnion):
                out.extend(lo for lo, hi in p.components if lo == hi)
            elif isinstance(p, UnionSet):
                p._suspect_points(out)

    def is_perfect(self) -> bool:
        # exact for unions of interval/Cantor/finite parts: the only possible
        # non-limit points are degenerate-component and finite-set points
        # (gathered recursively), each checked against the whole union — a
        # point isolated in its own part may still be absorbed by a sibling
        if self.is_empty():
            return False
        suspects: list[Fraction] = []
        self._suspect_points(suspects)
        return all(self.classify(s).is_limit_point is True for s in suspects)

    def meets_closed(self, lo: Fraction, hi: Fraction) -> bool:
        return any(p.meets_closed(lo, hi) for p in self.parts)

    def to_spec(self) -> dict:
        return {"type": "union", "of": [p.to_spec() for p in self.parts]}


# ---------------------------------------------------------------------------
# spec-string documents


def set_from_spec(doc: dict) -> SetDescription:
    """Build a description from its wire document (see to_spec counterparts)."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValueError("set spec must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "cantor":
        return CantorSet()
    if kind == "intervals":
        pairs = [
            (parse_rational(lo), parse_rational(hi)) for lo, hi in doc["items"]
        ]
        return IntervalUnion.from_endpoints(pairs)
    if kind == "finite":
        return FiniteSet(tuple(parse_rational(p) for p in doc["points"]))
    if kind == "enumeration":
        name = doc.get("name")
        if name == "explicit":
            return FiniteSet(tuple(parse_rational(p) for p in doc.get("points", [])))
        if name not in NAMED_ENUMERATIONS:
            raise ValueError(f"unknown enumeration {name!r}")
        return CountableSet(NAMED_ENUMERATIONS[name]())
    if kind == "union":
        return UnionSet(tuple(set_from_spec(d) for d in doc["of"]))
    raise ValueError(f"unknown set type {kind!r}")


def set_to_spec(s: SetDescription) -> dict:
    return s.to_spec()


# ---------------------------------------------------------------------------
# operations in the flat, spec-facing form


def contains(s: SetDescription, q: Fraction) -> bool:
    return s.contains(q)


def inf_of(s: SetDescription) -> Fraction:
    return s.infimum()


def inf_in_interval(s: SetDescription, x: Fraction, z: Fraction) -> Fraction | None:
    return s.infimum_within(x, z)


def classify_point(s: SetDescription, q: Fraction) -> PointClass:
    return s.classify(q)


def right_select(s: SetDescription, a: Fraction, b: Fraction) -> Fraction | None:
    return s.right_select(a, b)


def is_perfect(s: SetDescription) -> bool:
    return s.is_perfect()


def cantor_cover(k: int) -> IntervalUnion:
    """The depth-k middle-thirds cover: 2^k closed intervals of width 3^-k."""
    if not (0 <= k <= MAX_COVER_DEPTH):
        raise ValueError(f"cover depth must be within 0..{MAX_COVER_DEPTH}")
    ms = [0]
    for _ in range(k):
        ms = [c for m in ms for c in (3 * m, 3 * m + 2)]
    p3 = 3**k
    return IntervalUnion(tuple((Fraction(m, p3), Fraction(m + 1, p3)) for m in ms))


@dataclass(frozen=True)
class RefinementWitness:
    """The three nested set points and the infimum they pin down."""

    low: Fraction
    mid: Fraction
    high: Fraction
    infimum: Fraction


def refine_right_approachable_witness(
    s: SetDescription, a: Fraction, epsilon: Fraction
) -> RefinementWitness:
    """Pick set points a < low < mid < high < a+epsilon and return
    inf((low, high) ∩ S), which is again right-approachable.

    Requires a ∈ S⁺ and epsilon > 0. The witness satisfies
    low <= infimum <= mid, and the infimum lies strictly inside (a, a+epsilon).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if s.classify(a).right_approachable is not True:
        raise ValueError(f"{a} is not right-approachable in the set")
    high = s.right_select(a, a + epsilon)
    if high is None:
        raise ValueError("no selectable point in the window")
    mid = s.right_select(a, high)
    low = s.right_select(a, mid)
    if mid is None or low is None:
        raise ValueError("window unexpectedly exhausted")
    gamma = s.infimum_within(low, high)
    if gamma is None:
        raise AssertionError("interval around a chosen set point cannot be empty")
    return RefinementWitness(low, mid, high, gamma)


def refine_right_approachable(
    s: SetDescription, a: Fraction, epsilon: Fraction
) -> Fraction:
    """The selected right-approachable point of S inside (a, a+epsilon)."""
    return refine_right_approachable_witness(s, a, epsilon).infimum
