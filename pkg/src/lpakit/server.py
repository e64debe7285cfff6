"""JSON-over-HTTP session API for the interactive mutation explorer.

Endpoints:

- ``GET  /seeds``                   list of built-in seed names
- ``POST /session``                 body {"seed": name} -> {"session", "seed"}
- ``POST /session/{id}/mutate``     body {"slot": 1-based} -> {"session", "seed"}
- ``POST /session/{id}/undo``       -> {"session", "seed"}
- ``GET  /session/{id}/path``       -> {"session", "path", "seed"}

Sessions are held in memory (a restart forgets them); mutations within one
session are serialized by a per-session lock.  The rendered seed carries the
cluster expansions, exchange polynomials, hat denominators, the variable
names when the class is classified, and the orbit label when available.
"""

from __future__ import annotations

import json
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any

from .catalog import BUILTIN_NAMES
from .context import ClassContext, get_context
from .seed import Seed, canonical_key, mutate


class Session:
    def __init__(self, name: str, ctx: ClassContext):
        self.name = name
        self.ctx = ctx
        self.stack: list[Seed] = [ctx.seed]
        self.path: list[int] = []
        self.lock = threading.Lock()

    @property
    def current(self) -> Seed:
        return self.stack[-1]


class SessionStore:
    def __init__(self, workers: int = 1):
        self.workers = workers
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()

    def create(self, name: str) -> tuple[str, Session]:
        if name not in BUILTIN_NAMES:
            raise KeyError(f"unknown seed {name!r}; available: {', '.join(BUILTIN_NAMES)}")
        ctx = get_context(name, workers=self.workers)
        session = Session(name, ctx)
        sid = uuid.uuid4().hex[:12]
        with self.lock:
            self.sessions[sid] = session
        return sid, session

    def get(self, sid: str) -> Session | None:
        with self.lock:
            return self.sessions.get(sid)


def render_seed(seed: Seed, ctx: ClassContext | None) -> dict[str, Any]:
    table = seed.table
    doc: dict[str, Any] = {
        "rank": seed.rank,
        "cluster": [e.expansion.text() for e in seed.entries],
        "exchange": [e.exchange.text() for e in seed.entries],
        "hat_denominators": [table.mono_text(d) for d in seed.hat_denominators],
        "cluster_names": None,
        "orbit": None,
    }
    if ctx is not None and ctx.labeling is not None:
        try:
            doc["cluster_names"] = ctx.labeling.names_of_seed(seed)
        except KeyError:
            pass
        key = canonical_key(seed)
        if key in ctx.graph.nodes:
            doc["orbit"] = ctx.orbit_label_of(key)
    return doc


class _Handler(BaseHTTPRequestHandler):
    store: SessionStore

    def log_message(self, fmt: str, *args: Any) -> None:  # keep stdout clean
        pass

    def _send(self, status: int, payload: dict[str, Any]) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _error(self, status: int, message: str) -> None:
        self._send(status, {"error": message})

    def _body(self) -> dict[str, Any]:
        length = int(self.headers.get("Content-Length") or 0)
        if not length:
            return {}
        try:
            data = json.loads(self.rfile.read(length).decode("utf-8"))
        except json.JSONDecodeError:
            raise ValueError("request body is not valid JSON")
        if not isinstance(data, dict):
            raise ValueError("request body must be a JSON object")
        return data

    def do_OPTIONS(self) -> None:
        self._send(200, {})

    def do_GET(self) -> None:
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        if parts == ["seeds"]:
            self._send(200, {"seeds": list(BUILTIN_NAMES)})
            return
        if len(parts) == 3 and parts[0] == "session" and parts[2] == "path":
            session = self.store.get(parts[1])
            if session is None:
                self._error(404, f"unknown session {parts[1]!r}")
                return
            with session.lock:
                self._send(
                    200,
                    {
                        "session": parts[1],
                        "path": [s + 1 for s in session.path],
                        "seed": render_seed(session.current, session.ctx),
                    },
                )
            return
        self._error(404, f"no such endpoint: GET {self.path}")

    def do_POST(self) -> None:
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        try:
            body = self._body()
        except ValueError as exc:
            self._error(400, str(exc))
            return
        if parts == ["session"]:
            name = body.get("seed")
            if not isinstance(name, str):
                self._error(400, "body must contain a 'seed' name")
                return
            try:
                sid, session = self.store.create(name)
            except KeyError as exc:
                self._error(400, str(exc.args[0]))
                return
            self._send(
                200, {"session": sid, "seed": render_seed(session.current, session.ctx)}
            )
            return
        if len(parts) == 3 and parts[0] == "session":
            session = self.store.get(parts[1])
            if session is None:
                self._error(404, f"unknown session {parts[1]!r}")
                return
            if parts[2] == "mutate":
                slot = body.get("slot")
                if not isinstance(slot, int) or not 1 <= slot <= session.current.rank:
                    self._error(
                        400,
                        f"'slot' must be an integer in 1..{session.current.rank}, got {slot!r}",
                    )
                    return
                with session.lock:
                    mutated = mutate(session.current, slot - 1)
                    session.stack.append(mutated)
                    session.path.append(slot - 1)
                    self._send(
                        200,
                        {"session": parts[1], "seed": render_seed(mutated, session.ctx)},
                    )
                return
            if parts[2] == "undo":
                with session.lock:
                    if not session.path:
                        self._error(400, "nothing to undo")
                        return
                    session.stack.pop()
                    session.path.pop()
                    self._send(
                        200,
                        {
                            "session": parts[1],
                            "seed": render_seed(session.current, session.ctx),
                        },
                    )
                return
        self._error(404, f"no such endpoint: POST {self.path}")


def make_server(port: int, workers: int = 1) -> ThreadingHTTPServer:
    handler = type("Handler", (_Handler,), {"store": SessionStore(workers)})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve(port: int, workers: int = 1) -> None:
    httpd = make_server(port, workers)
    print(f"serving on http://127.0.0.1:{port}")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
