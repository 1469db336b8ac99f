"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Timed suites assert their stated wall-clock budgets.
"""

import json
import random
import threading
import time
import urllib.request
from fractions import Fraction
from pathlib import Path

from exactgames.baker import play
from exactgames.banach_mazur import (
    BartekMeagreStrategy,
    ConstantPresentation,
    CyclePresentation,
    FareySingletons,
    ScriptedClosed,
    SeededRandomClosed,
    bm_certificate,
    bm_play,
)
from exactgames.certificates import (
    check_legality,
    exclusion_certificate,
    membership_certificate,
)
from exactgames.choquet import (
    Ambient,
    MiddleHalfOpen,
    PaulCompleteStrategy,
    PierreExcludeStrategy,
    choquet_paul_certificate,
    choquet_pierre_certificate,
    choquet_play,
)
from exactgames.cli import main as cli_main
from exactgames.sets import (
    CantorSet,
    CountableSet,
    FareyEnumeration,
    FiniteSet,
    IntervalUnion,
    UnionSet,
    cantor_cover,
    refine_right_approachable_witness,
)
from exactgames.service import make_server
from exactgames.strategies import (
    alice_perfect,
    bob_enumeration,
    midpoint_strategy,
    seeded_random_strategy,
)

from oracles import in_cover, inf_in_interval_cover

F = Fraction
C = CantorSet()
GOLDEN = Path(__file__).parent / "data" / "golden_baker_farey_n10.json"


def iu(*pairs):
    return IntervalUnion(tuple((F(a), F(b)) for a, b in pairs))


PERFECT_CORPUS = [
    C,
    iu((0, 1)),
    iu((0, F(1, 3)), (F(2, 3), 1)),
    iu((F(1, 3), F(1, 2))),
    iu((F(1, 4), F(3, 4))),
    UnionSet((iu((0, F(1, 4))), C)),
    UnionSet((iu((0, F(1, 3))), iu((F(1, 2), F(3, 4))))),
]


def _pass(name: str, detail: str) -> None:
    print(f"PASS [{name}]: {detail}")


def test_countable_exclusion_suite(tmp_path):
    started = time.monotonic()
    farey_set = CountableSet(FareyEnumeration())
    for seed in range(1, 21):
        trace = play(
            seeded_random_strategy(seed),
            bob_enumeration(FareyEnumeration()),
            500,
            farey_set,
        )
        report = check_legality(trace)
        assert report, (seed, report.failure)
        cert = exclusion_certificate(trace)
        assert len(cert.items) == 500, seed
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"budget exceeded: {elapsed:.2f}s"

    out = tmp_path / "golden_candidate.json"
    assert cli_main([
        "play", "--game", "baker", "--set", "farey", "--alice", "midpoint",
        "--bob", "enumeration:farey", "--rounds", "10", "--trace", str(out),
    ]) == 0
    assert out.read_bytes() == GOLDEN.read_bytes(), "golden trace drifted"
    _pass(
        "countable-exclusion",
        f"20 seeds x 500 rounds legal + fully excluded in {elapsed:.2f}s; "
        "N=10 golden trace byte-identical",
    )


def test_perfect_membership_suite():
    started = time.monotonic()
    sets = [C, iu((0, 1)), iu((0, F(1, 3)), (F(2, 3), 1))]
    runs = 0
    for set_desc in sets:
        opponents = [midpoint_strategy()] + [
            seeded_random_strategy(seed) for seed in range(1, 21)
        ]
        for opponent in opponents:
            trace = play(alice_perfect(set_desc), opponent, 256, set_desc)
            cert = membership_certificate(trace)
            assert len(cert.records) == 256
            runs += 1
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"budget exceeded: {elapsed:.2f}s"
    _pass(
        "perfect-membership",
        f"{runs} runs x 256 rounds, no fault, every move right-approachable, "
        f"{elapsed:.2f}s",
    )


def test_approachability_suite_infimum():
    for set_desc in PERFECT_CORPUS:
        least = set_desc.infimum()
        assert set_desc.classify(least).right_approachable is True, set_desc
    _pass(
        "approachability/infimum",
        f"inf right-approachable on all {len(PERFECT_CORPUS)} perfect corpus sets",
    )


def test_approachability_suite_refinement():
    rng = random.Random(1711)
    plus_points = {
        0: [F(0), F(2, 3), F(2, 9), F(8, 9), F(2, 27), F(242, 243)],
        1: [F(0), F(1, 8), F(1, 2), F(7, 8)],
        2: [F(0), F(1, 4), F(2, 3), F(5, 6)],
        3: [F(1, 3), F(2, 5), F(49, 100)],
        4: [F(1, 4), F(1, 2), F(7, 10)],
        5: [F(0), F(1, 8), F(2, 3), F(8, 9)],
        6: [F(0), F(1, 4), F(1, 2), F(7, 10)],
    }
    checked = 0
    while checked < 200:
        index = rng.randrange(len(PERFECT_CORPUS))
        set_desc = PERFECT_CORPUS[index]
        a = rng.choice(plus_points[index])
        epsilon = F(rng.randint(1, 64), 256)
        witness = refine_right_approachable_witness(set_desc, a, epsilon)
        gamma = witness.infimum
        assert a < gamma < a + epsilon, (set_desc, a, epsilon)
        assert witness.low <= gamma <= witness.mid
        assert set_desc.classify(gamma).right_approachable is True
        checked += 1
    _pass("approachability/refinement", "200 randomized (S, a, eps) instances verified")


def test_approachability_suite_inf_cross_check():
    rng = random.Random(20260808)
    pairs = []
    while len(pairs) < 500:
        x_den = rng.randint(2, 200)
        x_num = rng.randint(0, x_den - 1)
        z_den = rng.randint(2, 200)
        z_num = rng.randint(1, z_den)
        x, z = F(x_num, x_den), F(z_num, z_den)
        if x < z:
            pairs.append((x, z))
    for x, z in pairs:
        got = C.infimum_within(x, z)
        stable_prev = inf_in_interval_cover(x, z, 11)
        brute = inf_in_interval_cover(x, z, 12)
        assert stable_prev == brute, f"cover infimum not stabilized by 12 at ({x},{z})"
        assert got == brute, (x, z, got, brute)
    _pass(
        "approachability/inf-cross-check",
        "500 random rational intervals: depth-12 cover infimum stabilized and equal",
    )


def test_cantor_oracle_suite():
    worst_exclusion = 0
    for q in range(1, 244):
        for p in range(0, q + 1):
            value = F(p, q)
            if C.contains(value):
                assert all(in_cover(value, k) for k in range(1, 13)), value
            else:
                for k in range(1, 41):
                    if not in_cover(value, k):
                        worst_exclusion = max(worst_exclusion, k)
                        break
                else:
                    raise AssertionError(f"{value} not excluded by depth 40")

    endpoints = 0
    for depth in range(1, 6):
        for lo, hi in cantor_cover(depth - 1).components:
            width = hi - lo
            g1, g2 = lo + width / 3, lo + 2 * width / 3
            left_end = C.classify(g1)
            right_end = C.classify(g2)
            assert (left_end.right_approachable, left_end.left_approachable) == (False, True)
            assert (right_end.right_approachable, right_end.left_approachable) == (True, False)
            endpoints += 2
    _pass(
        "cantor-oracle",
        f"all p/q, q<=243 two-sided vs covers (worst exclusion depth "
        f"{worst_exclusion}); {endpoints} gap endpoints classified by side",
    )


def test_banach_mazur_suite():
    started = time.monotonic()
    presentations = [
        FareySingletons(),
        ConstantPresentation(C),
        CyclePresentation([
            UnionSet((FiniteSet((F(1, 2),)), FiniteSet((F(1, 3), F(2, 3))))),
            FiniteSet((F(3, 4), F(1, 4))),
            UnionSet((C, FiniteSet((F(1, 2), F(5, 6))))),
        ]),
    ]
    runs = 0
    for presentation in presentations:
        recorded = None
        for seed in (1, 2, 3):
            bartek = BartekMeagreStrategy(presentation)
            trace = bm_play(SeededRandomClosed(seed), bartek, 50, presentation)
            cert = bm_certificate(trace)
            assert cert.rounds == 50
            runs += 1
            if recorded is None:
                recorded = [iv for role, iv in trace.moves if role == "anna"]
        # scripted anna: replay the recorded random moves move-for-move
        scripted = ScriptedClosed(recorded)
        replay = bm_play(scripted, BartekMeagreStrategy(presentation), 50, presentation)
        assert bm_certificate(replay).rounds == 50
        runs += 1
    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"budget exceeded: {elapsed:.2f}s"
    _pass(
        "banach-mazur",
        f"{runs} runs x 50 rounds: final interval exactly avoids every "
        f"presented closure, {elapsed:.2f}s",
    )


def test_choquet_suite(capsys):
    paul_trace = choquet_play(
        MiddleHalfOpen(), PaulCompleteStrategy(), 30, Ambient.UNIT_INTERVAL
    )
    paul_cert = choquet_paul_certificate(paul_trace)
    lo, hi = paul_cert.enclosure
    assert hi - lo <= F(1, 2**30)

    pierre_trace = choquet_play(
        PierreExcludeStrategy(FareyEnumeration()),
        MiddleHalfOpen(),
        51,
        Ambient.RATIONALS,
    )
    pierre_cert = choquet_pierre_certificate(pierre_trace)
    assert len(pierre_cert.checked) == 50
    enum = FareyEnumeration()
    opens = pierre_trace.opens_of("pierre")
    for k in range(1, 51):
        assert not opens[k].contains_point(enum.nth(k)), k

    assert cli_main(["baire-demo", "--rounds", "30"]) == 0
    output = capsys.readouterr().out
    assert "concentric-shrink certificate: a common point survives" in output
    assert "exclusion certificate refused" in output
    _pass(
        "choquet",
        f"paul width {hi - lo} <= 2^-30; pierre excluded q_1..q_50 over the "
        "rationals; baire-demo shows the refusal on [0,1]",
    )


def test_determinism_of_trace_files(tmp_path):
    configs = [
        ["play", "--set", "farey", "--alice", "random:11",
         "--bob", "enumeration:farey", "--rounds", "60"],
        ["play", "--set", "cantor", "--alice", "perfect",
         "--bob", "random:4", "--rounds", "40"],
        ["play", "--game", "banach-mazur", "--presentation", "farey-singletons",
         "--anna", "random:2", "--bartek", "meagre", "--rounds", "25"],
        ["play", "--game", "choquet", "--ambient", "rationals",
         "--pierre", "exclude:farey", "--paul", "middle", "--rounds", "25"],
    ]
    for index, argv in enumerate(configs):
        first = tmp_path / f"{index}_a.json"
        second = tmp_path / f"{index}_b.json"
        assert cli_main([*argv, "--trace", str(first)]) == 0
        assert cli_main([*argv, "--trace", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes(), argv
    _pass("determinism", f"{len(configs)} configs reproduced byte-identical traces")


def _api(base, path, method="GET", body=None):
    data = json.dumps(body).encode() if body is not None else None
    request = urllib.request.Request(
        base + path, data=data, method=method,
        headers={"Content-Type": "application/json"} if data else {},
    )
    with urllib.request.urlopen(request) as response:
        return json.loads(response.read())


def test_end_to_end_service_traces(tmp_path):
    server = make_server("127.0.0.1", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        verified = []

        view = _api(base, "/api/sessions", "POST", {
            "game": "baker", "set": "cantor", "human_role": "bob",
            "engine": "perfect",
        })
        assert view["moves"][0]["value"] == "2/3"
        for _ in range(5):
            bounds = view["bounds"]
            mid = (F(bounds["lower"]) + F(bounds["upper"])) / 2
            view = _api(base, f"/api/sessions/{view['id']}/moves", "POST",
                        {"value": str(mid)})
        doc = _api(base, f"/api/sessions/{view['id']}/trace")
        path = tmp_path / "baker_membership.json"
        path.write_text(json.dumps(doc))
        assert cli_main(["verify", "--trace", str(path), "--certificate", "membership"]) == 0
        assert cli_main(["verify", "--trace", str(path), "--certificate", "legality"]) == 0
        verified.append("membership")

        view = _api(base, "/api/sessions", "POST", {
            "game": "baker", "set": "farey", "human_role": "alice",
            "engine": "enumeration:farey",
        })
        rng = random.Random(5)
        for _ in range(6):
            bounds = view["bounds"]
            lower, upper = F(bounds["lower"]), F(bounds["upper"])
            step = (upper - lower) / rng.randint(3, 9)
            view = _api(base, f"/api/sessions/{view['id']}/moves", "POST",
                        {"value": str(lower + step)})
        doc = _api(base, f"/api/sessions/{view['id']}/trace")
        path = tmp_path / "baker_exclusion.json"
        path.write_text(json.dumps(doc))
        assert cli_main(["verify", "--trace", str(path), "--certificate", "exclusion"]) == 0
        verified.append("exclusion")

        view = _api(base, "/api/sessions", "POST", {
            "game": "banach-mazur", "presentation": "farey-singletons",
            "human_role": "anna", "engine": "meagre",
        })
        view = _api(base, f"/api/sessions/{view['id']}/moves", "POST",
                    {"value": ["0", "1"]})
        for _ in range(4):
            lo, hi = (F(t) for t in view["current_interval"])
            width = hi - lo
            view = _api(base, f"/api/sessions/{view['id']}/moves", "POST",
                        {"value": [str(lo + width / 4), str(hi - width / 4)]})
        doc = _api(base, f"/api/sessions/{view['id']}/trace")
        path = tmp_path / "bm.json"
        path.write_text(json.dumps(doc))
        assert cli_main(["verify", "--trace", str(path), "--certificate", "banach-mazur"]) == 0
        verified.append("banach-mazur")

        view = _api(base, "/api/sessions", "POST", {
            "game": "choquet", "ambient": "unit-interval",
            "human_role": "pierre", "engine": "complete",
        })
        view = _api(base, f"/api/sessions/{view['id']}/moves", "POST",
                    {"value": ["0", "1"]})
        for _ in range(4):
            lo, hi = (F(t) for t in view["current_interval"])
            width = hi - lo
            view = _api(base, f"/api/sessions/{view['id']}/moves", "POST",
                        {"value": [str(lo + width / 8), str(hi - width / 8)]})
        doc = _api(base, f"/api/sessions/{view['id']}/trace")
        path = tmp_path / "choquet.json"
        path.write_text(json.dumps(doc))
        assert cli_main(["verify", "--trace", str(path), "--certificate", "choquet-paul"]) == 0
        verified.append("choquet-paul")
    finally:
        server.shutdown()
        server.server_close()
    _pass(
        "end-to-end",
        f"service traces verified via cli for: {', '.join(verified)}; "
        "suite ran with no webui built",
    )
