"""Exact-arithmetic engines, strategies, and certificates for nested-interval
games on the unit interval, plus a CLI and an interactive play service."""

from .rational import (
    TernaryExpansion,
    compare,
    format_rational,
    midpoint,
    parse_rational,
    ternary_digits,
)
from .sets import (
    CantorSet,
    CountableSet,
    DyadicEnumeration,
    FareyEnumeration,
    FiniteSet,
    IntervalUnion,
    PointClass,
    SetDescription,
    UnionSet,
    cantor_cover,
    classify_point,
    contains,
    inf_in_interval,
    inf_of,
    is_perfect,
    refine_right_approachable,
    refine_right_approachable_witness,
    right_select,
    set_from_spec,
    set_to_spec,
)
from .baker import (
    GameState,
    MoveError,
    Player,
    StrategyFault,
    Trace,
    alpha_enclosure,
    apply_move,
    new_game,
    play,
)
from .strategies import (
    alice_perfect,
    bob_enumeration,
    midpoint_strategy,
    parse_strategy_spec,
    scripted_strategy,
    seeded_random_strategy,
)
from .certificates import (
    CertificateError,
    check_legality,
    convergence_report,
    exclusion_certificate,
    membership_certificate,
)

__version__ = "0.1.0"
