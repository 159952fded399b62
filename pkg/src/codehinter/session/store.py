"""Append-only JSON-lines event persistence, one log per session.

Files live under the data directory as <session-id>.events.jsonl with one
JSON object per line carrying exactly (seq, at, kind, payload); the project
config is kept alongside in <session-id>.config.json.
"""

from __future__ import annotations

import json
import os
import threading
import uuid

from codehinter.errors import CorruptLog, SessionNotFound
from codehinter.runner import ProjectConfig
from codehinter.session.machine import SessionEvent
from codehinter.trace import utc_now_rfc3339


class EventStore:
    def __init__(self, data_dir: str):
        self.data_dir = data_dir
        os.makedirs(data_dir, exist_ok=True)
        self._locks: dict[str, threading.RLock] = {}
        self._locks_guard = threading.Lock()
        self._seq: dict[str, int] = {}

    def _events_path(self, session_id: str) -> str:
        return os.path.join(self.data_dir, f"{session_id}.events.jsonl")

    def _config_path(self, session_id: str) -> str:
        return os.path.join(self.data_dir, f"{session_id}.config.json")

    def lock(self, session_id: str) -> threading.RLock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.RLock())

    def create_session(self, config: ProjectConfig) -> str:
        session_id = uuid.uuid4().hex[:12]
        with open(self._config_path(session_id), "w", encoding="utf-8") as fh:
            json.dump(
                {"config": config.to_jsonable(), "created_at": utc_now_rfc3339()},
                fh,
                indent=2,
            )
        open(self._events_path(session_id), "w", encoding="utf-8").close()
        self._seq[session_id] = 0
        return session_id

    def exists(self, session_id: str) -> bool:
        return os.path.isfile(self._events_path(session_id))

    def list_sessions(self) -> list[str]:
        return sorted(
            name[: -len(".events.jsonl")]
            for name in os.listdir(self.data_dir)
            if name.endswith(".events.jsonl")
        )

    def load_config(self, session_id: str) -> ProjectConfig:
        path = self._config_path(session_id)
        if not os.path.isfile(path):
            raise SessionNotFound(f"no session {session_id!r}")
        with open(path, "r", encoding="utf-8") as fh:
            return ProjectConfig.from_jsonable(json.load(fh)["config"])

    def events(self, session_id: str) -> list[SessionEvent]:
        path = self._events_path(session_id)
        if not os.path.isfile(path):
            raise SessionNotFound(f"no session {session_id!r}")
        out = []
        with open(path, "r", encoding="utf-8") as fh:
            for n, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorruptLog(f"line {n} of {path} is not JSON: {exc.msg}") from None
                if not isinstance(obj, dict) or set(obj) != {"seq", "at", "kind", "payload"}:
                    raise CorruptLog(f"line {n} of {path} has wrong fields")
                out.append(SessionEvent.from_jsonable(obj))
        return out

    def append(self, session_id: str, kind: str, payload: dict) -> SessionEvent:
        """Append one event under the session lock; seq stays dense."""
        with self.lock(session_id):
            if session_id not in self._seq:
                self._seq[session_id] = len(self.events(session_id))
            event = SessionEvent(
                seq=self._seq[session_id] + 1,
                at=utc_now_rfc3339(),
                kind=kind,
                payload=payload,
            )
            with open(self._events_path(session_id), "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event.to_jsonable(), ensure_ascii=False) + "\n")
            self._seq[session_id] = event.seq
            return event
