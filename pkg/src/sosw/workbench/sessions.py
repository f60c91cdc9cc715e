"""Interactive step sessions over the registered languages.

A session pins a language and a program; each step widget inside it keeps
a current state and the history of chosen labels, so the client can step,
undo and reset. Sessions are server-side, independently locked, and
evicted after 30 minutes idle. A ``version`` counter guards against stale
step requests: a client that sends the version it last saw is rejected
when another request advanced the widget in the meantime.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from .registry import Registry, StepsWidget, resolve_semantics, sorted_successors, step_snapshot

IDLE_EVICTION_SECONDS = 30 * 60


class SessionError(Exception):
    pass


class StaleStepError(SessionError):
    """The successor list changed since the client last looked."""


@dataclass
class StepPanel:
    spec: StepsWidget
    semantics: object
    initial: object
    current: object
    history: list = field(default_factory=list)  # of (label, chosen index, previous state)
    version: int = 0

    def snapshot(self) -> dict:
        return step_snapshot(
            self.spec, self.semantics, self.current, self.version,
            [(label, choice) for (label, choice, _) in self.history],
        )


class Session:
    def __init__(self, config, program_text: str, program):
        self.id = uuid.uuid4().hex
        self.config = config
        self.program_text = program_text
        self.program = program
        self.panels: dict[str, StepPanel] = {}
        self.lock = threading.Lock()
        self.last_access = time.monotonic()

    def _panel(self, widget_name: str) -> StepPanel:
        if widget_name not in self.panels:
            widget = self.config.widget(widget_name)
            if not isinstance(widget.spec, StepsWidget):
                raise SessionError(f"widget '{widget_name}' is not steppable")
            semantics = resolve_semantics(widget.spec.semantics, self.program)
            initial = widget.spec.init(self.program)
            self.panels[widget_name] = StepPanel(widget.spec, semantics, initial, initial)
        return self.panels[widget_name]

    def step(self, widget_name: str, choice: int, version: int | None = None) -> dict:
        with self.lock:
            self.last_access = time.monotonic()
            panel = self._panel(widget_name)
            if version is not None and version != panel.version:
                raise StaleStepError("stale step: the state advanced; refresh the successors")
            succs = sorted_successors(panel.semantics, panel.current)
            if not succs:
                raise SessionError("no successors: the state is terminal")
            if not 0 <= choice < len(succs):
                raise StaleStepError("stale successor index; refresh the successors")
            label, target = succs[choice]
            panel.history.append((label, choice, panel.current))
            panel.current = target
            panel.version += 1
            return panel.snapshot()

    def peek(self, widget_name: str) -> dict:
        """The current snapshot without mutating anything; lets clients
        resynchronise after a stale-step rejection."""
        with self.lock:
            self.last_access = time.monotonic()
            return self._panel(widget_name).snapshot()

    def undo(self, widget_name: str) -> dict:
        with self.lock:
            self.last_access = time.monotonic()
            panel = self._panel(widget_name)
            if panel.history:
                _, _, previous = panel.history.pop()
                panel.current = previous
                panel.version += 1
            return panel.snapshot()

    def reset(self, widget_name: str) -> dict:
        with self.lock:
            self.last_access = time.monotonic()
            panel = self._panel(widget_name)
            panel.history.clear()
            panel.current = panel.initial
            panel.version += 1
            return panel.snapshot()

    def replay(self, widget_name: str):
        """Re-apply the recorded choices from the initial state; the result
        must equal the current state (used by tests and clients that want
        to double-check the history)."""
        with self.lock:
            panel = self._panel(widget_name)
            state = panel.initial
            history = list(panel.history)
        for (label, choice, _) in history:
            succs = sorted_successors(panel.semantics, state)
            if not 0 <= choice < len(succs) or succs[choice][0] != label:
                raise SessionError("history does not replay")
            state = succs[choice][1]
        return state


class SessionStore:
    def __init__(self, registry: Registry):
        self._registry = registry
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, lang_id: str, program_text: str) -> Session:
        config = self._registry.get(lang_id)
        program = self._registry.parse(lang_id, program_text)
        session = Session(config, program_text, program)
        with self._lock:
            self._evict()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._evict()
            if session_id not in self._sessions:
                raise SessionError(f"unknown session '{session_id}'")
            return self._sessions[session_id]

    def _evict(self):
        deadline = time.monotonic() - IDLE_EVICTION_SECONDS
        for sid in [s for s, sess in self._sessions.items() if sess.last_access < deadline]:
            del self._sessions[sid]
