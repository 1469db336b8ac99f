"""HTTP session service: a human plays one side, the engine plays the other.

Endpoints (JSON bodies):
    POST /api/sessions                  create a session
    GET  /api/sessions/{id}             read-only view
    POST /api/sessions/{id}/moves       submit the human move; the engine
                                        reply (if any) rides the same response
    GET  /api/sessions/{id}/trace       the trace document so far

Sessions live in memory; each one serializes its mutations behind a lock.
The engine answers synchronously inside the move request. Move validation
goes through the same engine transition the CLI uses — the service adds no
second rule book. Illegal moves return 422 with the violated bound and
leave the session untouched.
"""

from __future__ import annotations

import json
import re
import secrets
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .baker import MoveError, Trace, apply_move, new_game
from .banach_mazur import (
    BartekMeagreStrategy,
    BMTrace,
    ClosedInterval,
    IntervalMoveError,
    MiddleHalfClosed as BMMiddle,
    SeededRandomClosed,
    bm_apply,
    bm_new,
    presentation_from_document,
)
from .choquet import (
    Ambient,
    ChoquetTrace,
    MiddleHalfOpen,
    OpenInterval,
    OpenMoveError,
    PaulCompleteStrategy,
    PierreExcludeStrategy,
    SeededRandomOpen,
    choquet_apply,
    choquet_new,
)
from .docio import dumps_document
from .rational import RationalParseError, format_rational, parse_rational
from .sets import NAMED_ENUMERATIONS, set_from_spec, set_to_spec
from .strategies import parse_strategy_spec


class ValidationError(Exception):
    """Bad session configuration; reported with the reason."""


class WrongTurn(Exception):
    """The session is not waiting for a human move."""


class MoveRejection(Exception):
    def __init__(self, reason: str, violated_bound: str | None = None):
        self.reason = reason
        self.violated_bound = violated_bound
        super().__init__(reason)


SET_PRESETS = {
    "cantor": {"type": "cantor"},
    "unit": {"type": "intervals", "items": [["0", "1"]]},
    "unit-interval": {"type": "intervals", "items": [["0", "1"]]},
    "farey": {"type": "enumeration", "name": "farey"},
    "dyadic": {"type": "enumeration", "name": "dyadic"},
}

PRESENTATION_PRESETS = {
    "farey-singletons": {"kind": "farey-singletons"},
    "cantor": {"kind": "constant", "set": {"type": "cantor"}},
}


def resolve_set_spec(value):
    if isinstance(value, str):
        if value not in SET_PRESETS:
            raise ValidationError(f"unknown set preset {value!r}")
        value = SET_PRESETS[value]
    try:
        return set_from_spec(value)
    except (ValueError, KeyError, TypeError) as err:
        raise ValidationError(f"bad set spec: {err}") from err


def resolve_presentation(value):
    if isinstance(value, str):
        if value not in PRESENTATION_PRESETS:
            raise ValidationError(f"unknown presentation preset {value!r}")
        value = PRESENTATION_PRESETS[value]
    try:
        return presentation_from_document(value)
    except (ValueError, KeyError, TypeError) as err:
        raise ValidationError(f"bad presentation: {err}") from err


def _parse_interval_value(value, factory):
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, str) for v in value)
    ):
        raise MoveRejection('interval moves need a ["lo","hi"] pair of rationals')
    try:
        lo = parse_rational(value[0], allow_decimal=True)
        hi = parse_rational(value[1], allow_decimal=True)
    except RationalParseError as err:
        raise MoveRejection(str(err)) from err
    try:
        return factory(lo, hi)
    except ValueError as err:
        raise MoveRejection(str(err)) from err


class BakerAdapter:
    game = "baker"
    roles = ("alice", "bob")

    def __init__(self, config):
        if "set" not in config:
            raise ValidationError("baker sessions need a 'set'")
        self.set_desc = resolve_set_spec(config["set"])
        engine_spec = config.get("engine", "midpoint")
        try:
            self.engine = parse_strategy_spec(engine_spec, set_desc=self.set_desc)
        except (ValueError, OSError) as err:
            raise ValidationError(f"bad engine strategy: {err}") from err
        self.engine_spec = engine_spec
        self.state = new_game()

    def to_move_role(self) -> str:
        return self.state.to_move.value

    def rounds_played(self) -> int:
        return self.state.round

    def apply_human(self, value):
        if not isinstance(value, str):
            raise MoveRejection("baker moves are 'p/q' strings")
        try:
            q = parse_rational(value, allow_decimal=True)
        except RationalParseError as err:
            raise MoveRejection(str(err)) from err
        try:
            self.state = apply_move(self.state, q)
        except MoveError as err:
            raise MoveRejection(str(err), err.violated_bound) from err

    def apply_engine(self):
        value = self.engine.propose(self.state, self.set_desc)
        self.state = apply_move(self.state, value)

    def moves_json(self, human_role):
        return [
            {
                "player": p.value,
                "by": "human" if p.value == human_role else "engine",
                "value": format_rational(v),
            }
            for p, v in self.state.history
        ]

    def view_extra(self):
        enclosure = None
        if self.state.round >= 1:
            trace = Trace(self.set_desc, self.state.history[: 2 * self.state.round], self.state.round)
            a_n, b_n = trace.enclosure
            enclosure = [format_rational(a_n), format_rational(b_n)]
        return {
            "set": set_to_spec(self.set_desc),
            "bounds": {
                "lower": format_rational(self.state.lower),
                "upper": format_rational(self.state.upper),
            },
            "enclosure": enclosure,
        }

    def trace_document(self):
        if self.state.round < 1:
            raise ValidationError("no complete round yet")
        trace = Trace(self.set_desc, self.state.history[: 2 * self.state.round], self.state.round)
        return trace.to_document()


class BanachMazurAdapter:
    game = "banach-mazur"
    roles = ("anna", "bartek")

    def __init__(self, config):
        if "presentation" not in config:
            raise ValidationError("banach-mazur sessions need a 'presentation'")
        self.presentation = resolve_presentation(config["presentation"])
        engine_spec = config.get("engine", "middle")
        human_role = config.get("human_role")
        engine_role = "bartek" if human_role == "anna" else "anna"
        if engine_spec == "meagre":
            if engine_role != "bartek":
                raise ValidationError("the meagre strategy plays the second role (bartek)")
            self.engine = BartekMeagreStrategy(self.presentation)
        elif engine_spec == "middle":
            self.engine = BMMiddle()
        elif engine_spec.startswith("random:"):
            self.engine = SeededRandomClosed(int(engine_spec.split(":", 1)[1]))
        else:
            raise ValidationError(f"unknown banach-mazur strategy {engine_spec!r}")
        self.engine_spec = engine_spec
        self.state = bm_new()

    def to_move_role(self) -> str:
        return self.state.to_move

    def rounds_played(self) -> int:
        return len(self.state.intervals) // 2

    def apply_human(self, value):
        interval = _parse_interval_value(value, ClosedInterval)
        try:
            self.state = bm_apply(self.state, interval)
        except IntervalMoveError as err:
            raise MoveRejection(str(err)) from err

    def apply_engine(self):
        self.state = bm_apply(self.state, self.engine.propose(self.state))

    def moves_json(self, human_role):
        return [
            {
                "player": "anna" if i % 2 == 0 else "bartek",
                "by": "human" if ("anna" if i % 2 == 0 else "bartek") == human_role else "engine",
                "interval": iv.as_strings(),
                "closed": True,
            }
            for i, iv in enumerate(self.state.intervals)
        ]

    def view_extra(self):
        cur = self.state.current
        return {
            "presentation": self.presentation.to_document(),
            "current_interval": cur.as_strings() if cur else None,
        }

    def _trace(self):
        n = self.rounds_played()
        roles = ["anna" if i % 2 == 0 else "bartek" for i in range(2 * n)]
        return BMTrace(self.presentation, tuple(zip(roles, self.state.intervals[: 2 * n])), n)

    def trace_document(self):
        if self.rounds_played() < 1:
            raise ValidationError("no complete round yet")
        return self._trace().to_document()


class ChoquetAdapter:
    game = "choquet"
    roles = ("pierre", "paul")

    def __init__(self, config):
        ambient_text = config.get("ambient", "unit-interval")
        try:
            self.ambient = Ambient(ambient_text)
        except ValueError:
            raise ValidationError(f"unknown ambient {ambient_text!r}") from None
        engine_spec = config.get("engine", "middle")
        human_role = config.get("human_role")
        engine_role = "paul" if human_role == "pierre" else "pierre"
        self.enumeration_name = None
        if engine_spec == "complete":
            if engine_role != "paul":
                raise ValidationError("the complete-space strategy plays the second role (paul)")
            if self.ambient is not Ambient.UNIT_INTERVAL:
                raise ValidationError("the complete-space strategy needs the unit-interval ambient")
            self.engine = PaulCompleteStrategy()
        elif engine_spec.startswith("exclude:"):
            if engine_role != "pierre":
                raise ValidationError("the exclusion strategy plays the first role (pierre)")
            name = engine_spec.split(":", 1)[1]
            if name not in NAMED_ENUMERATIONS:
                raise ValidationError(f"unknown enumeration {name!r}")
            self.engine = PierreExcludeStrategy(NAMED_ENUMERATIONS[name]())
            self.enumeration_name = name
        elif engine_spec == "middle":
            self.engine = MiddleHalfOpen()
        elif engine_spec.startswith("random:"):
            self.engine = SeededRandomOpen(int(engine_spec.split(":", 1)[1]))
        else:
            raise ValidationError(f"unknown choquet strategy {engine_spec!r}")
        self.engine_spec = engine_spec
        self.state = choquet_new(self.ambient)

    def to_move_role(self) -> str:
        return self.state.to_move

    def rounds_played(self) -> int:
        return len(self.state.intervals) // 2

    def apply_human(self, value):
        interval = _parse_interval_value(value, OpenInterval)
        try:
            self.state = choquet_apply(self.state, interval)
        except OpenMoveError as err:
            raise MoveRejection(str(err)) from err

    def apply_engine(self):
        self.state = choquet_apply(self.state, self.engine.propose(self.state))

    def moves_json(self, human_role):
        return [
            {
                "player": "pierre" if i % 2 == 0 else "paul",
                "by": "human" if ("pierre" if i % 2 == 0 else "paul") == human_role else "engine",
                "interval": iv.as_strings(),
                "open": True,
            }
            for i, iv in enumerate(self.state.intervals)
        ]

    def view_extra(self):
        cur = self.state.current
        return {
            "ambient": self.ambient.value,
            "current_interval": cur.as_strings() if cur else None,
        }

    def _trace(self):
        n = self.rounds_played()
        roles = ["pierre" if i % 2 == 0 else "paul" for i in range(2 * n)]
        return ChoquetTrace(
            self.ambient, tuple(zip(roles, self.state.intervals[: 2 * n])), n, self.enumeration_name
        )

    def trace_document(self):
        if self.rounds_played() < 1:
            raise ValidationError("no complete round yet")
        return self._trace().to_document()


ADAPTERS = {
    "baker": BakerAdapter,
    "banach-mazur": BanachMazurAdapter,
    "choquet": ChoquetAdapter,
}


@dataclass
class Session:
    id: str
    adapter: object
    human_role: str
    status: str  # awaiting-human | awaiting-engine | faulted | closed
    max_rounds: int | None
    fault: dict | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def view(self) -> dict:
        return {
            "id": self.id,
            "game": self.adapter.game,
            "status": self.status,
            "human_role": self.human_role,
            "engine": self.adapter.engine_spec,
            "rounds_played": self.adapter.rounds_played(),
            "max_rounds": self.max_rounds,
            "to_move": self.adapter.to_move_role(),
            "moves": self.adapter.moves_json(self.human_role),
            "fault": self.fault,
            **self.adapter.view_extra(),
        }


class SessionStore:
    def __init__(self, trace_dir=None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.trace_dir = Path(trace_dir) if trace_dir else None

    def create(self, config: dict) -> Session:
        game = config.get("game", "baker")
        if game not in ADAPTERS:
            raise ValidationError(f"unknown game {game!r}")
        adapter = ADAPTERS[game](config)
        human_role = config.get("human_role")
        if human_role not in adapter.roles:
            raise ValidationError(
                f"human_role must be one of {adapter.roles} for {game}"
            )
        max_rounds = config.get("max_rounds")
        if max_rounds is not None and (not isinstance(max_rounds, int) or max_rounds < 1):
            raise ValidationError("max_rounds must be a positive integer")
        session = Session(
            id=secrets.token_hex(8),
            adapter=adapter,
            human_role=human_role,
            status="awaiting-human",
            max_rounds=max_rounds,
        )
        self._run_engine(session)  # engine opens when it moves first
        with self._lock:
            self._sessions[session.id] = session
        self._log_trace(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session

    def _closed(self, session) -> bool:
        return (
            session.max_rounds is not None
            and session.adapter.rounds_played() >= session.max_rounds
        )

    def _run_engine(self, session) -> None:
        """Let the engine move while it is its turn (at most once per round
        boundary here, since roles strictly alternate)."""
        if session.status in ("faulted", "closed"):
            return
        while (
            session.adapter.to_move_role() != session.human_role
            and not self._closed(session)
        ):
            try:
                session.adapter.apply_engine()
            except Exception as err:  # engine strategies must not fault; surface it
                session.status = "faulted"
                session.fault = {
                    "by": "engine",
                    "reason": str(err),
                }
                return
        session.status = "closed" if self._closed(session) else "awaiting-human"

    def post_move(self, session_id: str, value) -> Session:
        session = self.get(session_id)
        with session.lock:
            if session.status != "awaiting-human":
                raise WrongTurn(f"session is {session.status}")
            session.adapter.apply_human(value)
            if self._closed(session):
                session.status = "closed"
            else:
                session.status = "awaiting-engine"
                self._run_engine(session)
        self._log_trace(session)
        return session

    def _log_trace(self, session) -> None:
        if self.trace_dir is None or session.adapter.rounds_played() < 1:
            return
        self.trace_dir.mkdir(parents=True, exist_ok=True)
        path = self.trace_dir / f"{session.id}.json"
        path.write_text(dumps_document(session.adapter.trace_document()))


_SESSION_RE = re.compile(r"^/api/sessions/([0-9a-f]+)$")
_MOVES_RE = re.compile(r"^/api/sessions/([0-9a-f]+)/moves$")
_TRACE_RE = re.compile(r"^/api/sessions/([0-9a-f]+)/trace$")

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".map": "application/json",
    ".json": "application/json",
}


class ServiceHandler(BaseHTTPRequestHandler):
    server_version = "exactgames"

    # --- helpers ---------------------------------------------------------
    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise ValueError("empty body")
        return json.loads(raw)

    def log_message(self, *args):  # quiet by default
        pass

    # --- routing ---------------------------------------------------------
    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_POST(self):
        store = self.server.store
        try:
            if self.path == "/api/sessions":
                config = self._read_json()
                session = store.create(config)
                self._send_json(201, session.view())
                return
            match = _MOVES_RE.match(self.path)
            if match:
                body = self._read_json()
                if "value" not in body:
                    raise ValueError("move body needs a 'value' field")
                session = store.post_move(match.group(1), body["value"])
                self._send_json(200, session.view())
                return
            self._send_json(404, {"error": "not-found", "reason": "unknown endpoint"})
        except KeyError:
            self._send_json(404, {"error": "unknown-session", "reason": "no such session"})
        except ValidationError as err:
            self._send_json(422, {"error": "invalid-session", "reason": str(err)})
        except WrongTurn as err:
            self._send_json(409, {"error": "wrong-turn", "reason": str(err)})
        except MoveRejection as err:
            self._send_json(
                422,
                {
                    "error": "illegal-move",
                    "reason": err.reason,
                    "violated_bound": err.violated_bound,
                },
            )
        except ValueError as err:
            self._send_json(400, {"error": "bad-request", "reason": str(err)})

    def do_GET(self):
        store = self.server.store
        try:
            match = _SESSION_RE.match(self.path)
            if match:
                self._send_json(200, store.get(match.group(1)).view())
                return
            match = _TRACE_RE.match(self.path)
            if match:
                session = store.get(match.group(1))
                try:
                    doc = session.adapter.trace_document()
                except ValidationError as err:
                    self._send_json(409, {"error": "no-trace", "reason": str(err)})
                    return
                self._send_json(200, doc)
                return
            if self._serve_static():
                return
            self._send_json(404, {"error": "not-found", "reason": "unknown endpoint"})
        except KeyError:
            self._send_json(404, {"error": "unknown-session", "reason": "no such session"})

    def _serve_static(self) -> bool:
        ui_dir = self.server.ui_dir
        if ui_dir is None or self.path.startswith("/api/"):
            return False
        rel = self.path.lstrip("/") or "index.html"
        target = (ui_dir / rel).resolve()
        if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
            return False
        body = target.read_bytes()
        self.send_response(200)
        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)
        return True


def make_server(host: str = "127.0.0.1", port: int = 8000, trace_dir=None, ui_dir=None):
    server = ThreadingHTTPServer((host, port), ServiceHandler)
    server.store = SessionStore(trace_dir)
    server.ui_dir = Path(ui_dir) if ui_dir else None
    return server
