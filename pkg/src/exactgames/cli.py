"""Command-line interface.

Subcommands:
    play        run a game to N rounds, print the outcome, optionally write
                the trace document
    verify      run a certificate checker against a trace file
    serve       start the interactive HTTP session service
    baire-demo  the paired demonstrations: the exclusion strategy empties the
                rational ambient, while over the complete unit interval the
                concentric strategy's certificate succeeds and the
                empty-intersection claim is refused
"""

from __future__ import annotations

import argparse
import json
import sys

from .baker import StrategyFault, Trace, play
from .banach_mazur import (
    BMTrace,
    BartekMeagreStrategy,
    IntervalStrategyFault,
    MiddleHalfClosed,
    PresentationError,
    SeededRandomClosed,
    bm_certificate,
    bm_play,
)
from .certificates import (
    CertificateError,
    check_legality,
    convergence_report,
    exclusion_certificate,
    membership_certificate,
)
from .choquet import (
    Ambient,
    ChoquetTrace,
    MiddleHalfOpen,
    OpenStrategyFault,
    PaulCompleteStrategy,
    PierreExcludeStrategy,
    SeededRandomOpen,
    choquet_paul_certificate,
    choquet_pierre_certificate,
    choquet_play,
)
from .docio import dumps_document, read_document, write_document
from .rational import format_rational
from .sets import NAMED_ENUMERATIONS
from .service import (
    PRESENTATION_PRESETS,
    SET_PRESETS,
    make_server,
    resolve_presentation,
    resolve_set_spec,
)
from .strategies import ScriptExhausted, parse_strategy_spec


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _set_argument(text: str):
    if text in SET_PRESETS or not text.lstrip().startswith("{"):
        return resolve_set_spec(text)
    return resolve_set_spec(json.loads(text))


def _presentation_argument(text: str):
    if text in PRESENTATION_PRESETS or not text.lstrip().startswith("{"):
        return resolve_presentation(text)
    return resolve_presentation(json.loads(text))


def _bm_strategy(text: str, presentation):
    if text == "meagre":
        return BartekMeagreStrategy(presentation)
    if text == "middle":
        return MiddleHalfClosed()
    if text.startswith("random:"):
        return SeededRandomClosed(int(text.split(":", 1)[1]))
    raise ValueError(f"unknown banach-mazur strategy {text!r}")


def _choquet_strategy(text: str):
    if text == "complete":
        return PaulCompleteStrategy()
    if text.startswith("exclude:"):
        name = text.split(":", 1)[1]
        if name not in NAMED_ENUMERATIONS:
            raise ValueError(f"unknown enumeration {name!r}")
        return PierreExcludeStrategy(NAMED_ENUMERATIONS[name]())
    if text == "middle":
        return MiddleHalfOpen()
    if text.startswith("random:"):
        return SeededRandomOpen(int(text.split(":", 1)[1]))
    raise ValueError(f"unknown choquet strategy {text!r}")


def _emit(args, document: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(dumps_document(document))
    else:
        for line in text_lines:
            print(line)


def cmd_play(args) -> int:
    if args.game == "baker":
        set_desc = _set_argument(args.set)
        alice = parse_strategy_spec(args.alice, set_desc=set_desc)
        bob = parse_strategy_spec(args.bob, set_desc=set_desc)
        trace = play(alice, bob, args.rounds, set_desc)
        a_n, b_n = trace.enclosure
        doc = trace.to_document()
        lines = [
            f"baker: {args.rounds} rounds, alice={args.alice} bob={args.bob}",
            f"enclosure: ({format_rational(a_n)}, {format_rational(b_n)})",
            f"width: {format_rational(b_n - a_n)}",
        ]
    elif args.game == "banach-mazur":
        presentation = _presentation_argument(args.presentation)
        anna = _bm_strategy(args.anna, presentation)
        bartek = _bm_strategy(args.bartek, presentation)
        trace = bm_play(anna, bartek, args.rounds, presentation)
        doc = trace.to_document()
        final = trace.final
        lines = [
            f"banach-mazur: {args.rounds} rounds, anna={args.anna} bartek={args.bartek}",
            f"final interval: [{format_rational(final.lo)}, {format_rational(final.hi)}]",
        ]
    else:
        ambient = Ambient(args.ambient)
        pierre = _choquet_strategy(args.pierre)
        paul = _choquet_strategy(args.paul)
        trace = choquet_play(pierre, paul, args.rounds, ambient)
        doc = trace.to_document()
        last = trace.moves[-1][1]
        lines = [
            f"choquet on {ambient.value}: {args.rounds} rounds, "
            f"pierre={args.pierre} paul={args.paul}",
            f"last open: ({format_rational(last.lo)}, {format_rational(last.hi)})",
        ]
    if args.trace:
        write_document(args.trace, doc)
        lines.append(f"trace written to {args.trace}")
    _emit(args, doc, lines)
    return 0


def _verify_baker(args, doc):
    trace = Trace.from_document(doc)
    kind = args.certificate
    if kind == "legality":
        report = check_legality(trace)
        if not report:
            return report.to_document(), [f"legality: FAIL {report.failure}"], 1
        return report.to_document(), ["legality: OK (strict chain verified)"], 0
    if kind == "exclusion":
        cert = exclusion_certificate(trace, verbose=args.verbose)
        a_n, b_n = cert.enclosure
        return (
            cert.to_document(),
            [
                f"exclusion: OK — {len(cert.items)} enumerated values excluded from "
                f"({format_rational(a_n)}, {format_rational(b_n)})"
            ],
            0,
        )
    if kind == "membership":
        cert = membership_certificate(trace)
        return (
            cert.to_document(),
            [f"membership: OK — {len(cert.records)} lower values right-approachable"],
            0,
        )
    if kind == "convergence":
        report = convergence_report(trace)
        return (
            report.to_document(),
            [f"convergence: OK — widths down to {format_rational(report.widths[-1])}"],
            0,
        )
    raise ValueError(f"certificate {kind!r} does not apply to baker traces")


def cmd_verify(args) -> int:
    doc = read_document(args.trace)
    game = doc.get("game")
    if game == "baker":
        out, lines, code = _verify_baker(args, doc)
    elif game == "banach-mazur":
        if args.certificate not in ("banach-mazur", "legality"):
            raise ValueError(f"certificate {args.certificate!r} does not apply to banach-mazur traces")
        cert = bm_certificate(BMTrace.from_document(doc))
        final = cert.final
        out, lines, code = (
            cert.to_document(),
            [
                f"banach-mazur: OK — final [{format_rational(final.lo)}, "
                f"{format_rational(final.hi)}] avoids all {cert.rounds} presented sets"
            ],
            0,
        )
    elif game == "choquet":
        trace = ChoquetTrace.from_document(doc)
        if args.certificate == "choquet-paul":
            cert = choquet_paul_certificate(trace)
            lo, hi = cert.enclosure
            out, lines, code = (
                cert.to_document(),
                [
                    f"choquet-paul: OK — enclosure [{format_rational(lo)}, {format_rational(hi)}], "
                    f"width {format_rational(hi - lo)}"
                ],
                0,
            )
        elif args.certificate == "choquet-pierre":
            cert = choquet_pierre_certificate(trace)
            out, lines, code = (
                cert.to_document(),
                [f"choquet-pierre: OK — {len(cert.checked)} enumerated points excluded"],
                0,
            )
        else:
            raise ValueError(f"certificate {args.certificate!r} does not apply to choquet traces")
    else:
        raise ValueError(f"unknown game in trace: {game!r}")
    _emit(args, out, lines)
    return code


def cmd_serve(args) -> int:
    server = make_server(args.host, args.port, trace_dir=args.trace_dir, ui_dir=args.ui)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}/ (Ctrl-C to stop)", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def cmd_baire_demo(args) -> int:
    rounds = args.rounds
    enum_name = "farey"
    outcomes = []

    rational_trace = choquet_play(
        PierreExcludeStrategy(NAMED_ENUMERATIONS[enum_name]()),
        MiddleHalfOpen(),
        rounds + 1,
        Ambient.RATIONALS,
    )
    try:
        pierre_cert = choquet_pierre_certificate(rational_trace)
        outcomes.append(("rational ambient: exclusion certificate", True,
                         f"{len(pierre_cert.checked)} points fenced out; intersection empty in the ambient"))
    except CertificateError as err:
        outcomes.append(("rational ambient: exclusion certificate", False, str(err)))

    unit_trace = choquet_play(
        PierreExcludeStrategy(NAMED_ENUMERATIONS[enum_name]()),
        PaulCompleteStrategy(),
        rounds,
        Ambient.UNIT_INTERVAL,
    )
    try:
        paul_cert = choquet_paul_certificate(unit_trace)
        lo, hi = paul_cert.enclosure
        outcomes.append(("unit interval: concentric-shrink certificate", True,
                         f"a common point survives in [{format_rational(lo)}, {format_rational(hi)}]"))
    except CertificateError as err:
        outcomes.append(("unit interval: concentric-shrink certificate", False, str(err)))

    try:
        choquet_pierre_certificate(unit_trace)
        outcomes.append(("unit interval: exclusion certificate", True,
                         "unexpectedly succeeded"))
        refused = False
    except CertificateError as err:
        outcomes.append(("unit interval: exclusion certificate refused", True, str(err)))
        refused = True

    expected = outcomes[0][1] and outcomes[1][1] and refused
    for title, ok, detail in outcomes:
        print(f"[{'ok' if ok else 'FAIL'}] {title}: {detail}")
    if expected:
        print(
            "conclusion: no open subset of the complete interval is a countable "
            "union of closed sets with empty interior — demonstrated at desk scale"
        )
        return 0
    print("conclusion: demonstration FAILED; see lines above")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exactgames",
        description="exact-arithmetic nested-interval games: play, verify, serve",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_play = sub.add_parser("play", help="run a game between two strategies")
    p_play.add_argument("--game", choices=["baker", "banach-mazur", "choquet"], default="baker")
    p_play.add_argument("--rounds", type=positive_int, required=True)
    p_play.add_argument("--trace", help="write the trace document to this path")
    p_play.add_argument("--format", choices=["text", "json"], default="text")
    p_play.add_argument("--set", default="cantor", help="baker: set preset or JSON spec")
    p_play.add_argument("--alice", default="midpoint")
    p_play.add_argument("--bob", default="midpoint")
    p_play.add_argument("--presentation", default="farey-singletons",
                        help="banach-mazur: presentation preset or JSON")
    p_play.add_argument("--anna", default="middle")
    p_play.add_argument("--bartek", default="meagre")
    p_play.add_argument("--ambient", choices=["unit-interval", "rationals"],
                        default="unit-interval")
    p_play.add_argument("--pierre", default="middle")
    p_play.add_argument("--paul", default="complete")
    p_play.set_defaults(handler=cmd_play)

    p_verify = sub.add_parser("verify", help="check a certificate against a trace file")
    p_verify.add_argument("--trace", required=True)
    p_verify.add_argument(
        "--certificate",
        required=True,
        choices=[
            "legality",
            "exclusion",
            "membership",
            "convergence",
            "banach-mazur",
            "choquet-paul",
            "choquet-pierre",
        ],
    )
    p_verify.add_argument("--verbose", action="store_true",
                          help="exclusion: record which rule case covered each value")
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    p_verify.set_defaults(handler=cmd_verify)

    p_serve = sub.add_parser("serve", help="start the interactive session service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--trace-dir", help="persist session traces into this directory")
    p_serve.add_argument("--ui", help="also serve a built web UI from this directory")
    p_serve.set_defaults(handler=cmd_serve)

    p_demo = sub.add_parser("baire-demo", help="run the paired nested-open demonstrations")
    p_demo.add_argument("--rounds", type=positive_int, default=30)
    p_demo.add_argument("--format", choices=["text", "json"], default="text")
    p_demo.set_defaults(handler=cmd_baire_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except CertificateError as err:
        print(f"certificate FAILED: {err}", file=sys.stderr)
        return 1
    except (StrategyFault, IntervalStrategyFault, OpenStrategyFault, ScriptExhausted) as err:
        print(f"strategy fault: {err}", file=sys.stderr)
        return 1
    except (PresentationError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
