"""The language registry and on-demand widget evaluation.

A language is registered as a :class:`WorkbenchConfig`: a display name, a
parser, example programs, and an ordered list of named widgets. Widgets
run on demand only; nothing is evaluated when a program is merely parsed.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass

from ..core import ExploreLimits, SosSemantics, explore
from ..equivalence import (
    Bound,
    SilentSpec,
    compare_branching_bisim,
    compare_traces,
)
from ..render import lts_to_dot, lts_to_mermaid, verdict_to_view


class LimitError(Exception):
    """A requested limit exceeds the hard server caps."""


#: Hard caps on request-overridable limits.
MAX_STATES_CAP = 20000
MAX_DEPTH_CAP = 2000
MAX_TIMEOUT_CAP = 30000


@dataclass(frozen=True)
class Example:
    name: str
    program: str
    description: str


@dataclass(frozen=True)
class ViewWidget:
    projection: object  # program -> str
    kind: str = "text"  # "text" | "code" | "mermaid"
    code_language: str | None = None


@dataclass(frozen=True)
class StepsWidget:
    init: object  # program -> state
    semantics: object  # an SosSemantics, or program -> SosSemantics
    printer: object  # state -> str
    kind: str = "text"


@dataclass(frozen=True)
class LtsWidget:
    init: object
    semantics: object
    state_printer: object
    label_printer: object = str


@dataclass(frozen=True)
class BisimWidget:
    sem1: object
    sem2: object
    split1: object  # program -> initial state of system 1
    split2: object
    printer1: object = str
    printer2: object = str
    silent: SilentSpec | None = None


@dataclass(frozen=True)
class TraceWidget:
    sem1: object
    sem2: object
    split1: object
    split2: object
    silent: SilentSpec | None = None


@dataclass(frozen=True)
class CheckWidget:
    analysis: object  # program -> list of warning strings


@dataclass(frozen=True)
class Widget:
    name: str
    spec: object


def resolve_semantics(sem, program) -> SosSemantics:
    """Widget semantics slots take either a semantics object or a function
    of the parsed program (for compositions derived from the program)."""
    if isinstance(sem, SosSemantics):
        return sem
    return sem(program)


def widget_kind(widget: Widget) -> str:
    return {
        ViewWidget: "view",
        StepsWidget: "steps",
        LtsWidget: "lts",
        BisimWidget: "bisim",
        TraceWidget: "traces",
        CheckWidget: "check",
    }[type(widget.spec)]


@dataclass(frozen=True)
class WorkbenchConfig:
    id: str
    name: str
    language_name: str
    parser: object  # text -> program, raising ParseError
    examples: tuple = ()
    widgets: tuple = ()

    def __post_init__(self):
        example_names = [e.name for e in self.examples]
        if len(example_names) != len(set(example_names)):
            raise ValueError("example names must be unique")
        widget_names = [w.name for w in self.widgets]
        if len(widget_names) != len(set(widget_names)):
            raise ValueError("widget names must be unique")

    def widget(self, name: str) -> Widget:
        for w in self.widgets:
            if w.name == name:
                return w
        raise ValueError(f"unknown widget '{name}'")


@dataclass(frozen=True)
class WidgetResult:
    kind: str  # "text" | "code" | "mermaid" | "warnings" | "steps"
    body: object
    code_language: str | None = None
    limit_hit: bool = False
    data: dict | None = None


class Registry:
    """Holds the registered languages; immutable after startup in service use."""

    def __init__(self):
        self._languages: OrderedDict[str, WorkbenchConfig] = OrderedDict()
        self._parse_cache: OrderedDict = OrderedDict()

    def register(self, config: WorkbenchConfig) -> str:
        if config.id in self._languages:
            raise ValueError(f"language '{config.id}' is already registered")
        self._languages[config.id] = config
        return config.id

    def languages(self) -> list:
        return list(self._languages.values())

    def get(self, lang_id: str) -> WorkbenchConfig:
        if lang_id not in self._languages:
            raise ValueError(f"unknown language '{lang_id}'")
        return self._languages[lang_id]

    def parse(self, lang_id: str, text: str):
        key = (lang_id, text)
        if key in self._parse_cache:
            self._parse_cache.move_to_end(key)
            return self._parse_cache[key]
        program = self.get(lang_id).parser(text)
        self._parse_cache[key] = program
        if len(self._parse_cache) > 128:
            self._parse_cache.popitem(last=False)
        return program

    def run_widget(self, lang_id: str, widget_name: str, program_text: str,
                   params: dict | None = None) -> WidgetResult:
        """Parse (cached) and apply one widget; see :func:`limits_from_params`
        for the recognised limit overrides, and ``format`` for lts output."""
        params = params or {}
        config = self.get(lang_id)
        widget = config.widget(widget_name)
        program = self.parse(lang_id, program_text)
        limits = limits_from_params(params)
        spec = widget.spec

        if isinstance(spec, ViewWidget):
            body = spec.projection(program)
            return WidgetResult(spec.kind, body, spec.code_language)

        if isinstance(spec, CheckWidget):
            warnings = list(spec.analysis(program))
            return WidgetResult("warnings", warnings)

        if isinstance(spec, LtsWidget):
            semantics = resolve_semantics(spec.semantics, program)
            lts = explore(semantics, spec.init(program), limits)
            fmt = params.get("format", "mermaid")
            truncated = bool(lts.truncated)
            if fmt == "dot":
                body = lts_to_dot(lts, spec.state_printer, spec.label_printer)
                return WidgetResult("code", body, "dot", limit_hit=truncated)
            if fmt == "text":
                lines = [
                    f"{i}{'*' if i in lts.accepting else ''}"
                    f"{' (truncated)' if i in lts.truncated else ''}: "
                    f"{spec.state_printer(lts.states[i])}"
                    for i in range(len(lts.states))
                ]
                lines += [
                    f"{i} -{spec.label_printer(label)}-> {j}"
                    for (i, label, j) in lts.sorted_edges()
                ]
                return WidgetResult("text", "\n".join(lines), limit_hit=truncated)
            body = lts_to_mermaid(lts, spec.state_printer, spec.label_printer)
            return WidgetResult("mermaid", body.body, limit_hit=truncated)

        if isinstance(spec, StepsWidget):
            state = spec.init(program)
            snapshot = step_snapshot(spec, resolve_semantics(spec.semantics, program), state)
            return WidgetResult(spec.kind, spec.printer(state), data=snapshot)

        if isinstance(spec, BisimWidget):
            outcome = compare_branching_bisim(
                resolve_semantics(spec.sem1, program),
                resolve_semantics(spec.sem2, program),
                spec.split1(program), spec.split2(program),
                silent=spec.silent, limits=limits,
            )
            view = verdict_to_view(outcome, spec.printer1, spec.printer2)
            return WidgetResult(view.kind, view.body, limit_hit=isinstance(outcome, Bound))

        if isinstance(spec, TraceWidget):
            outcome = compare_traces(
                resolve_semantics(spec.sem1, program),
                resolve_semantics(spec.sem2, program),
                spec.split1(program), spec.split2(program),
                silent=spec.silent, limits=limits,
            )
            view = verdict_to_view(outcome)
            return WidgetResult(view.kind, view.body, limit_hit=isinstance(outcome, Bound))

        raise TypeError(f"unhandled widget spec: {spec!r}")


def limits_from_params(params: dict) -> ExploreLimits:
    """Exploration limits from request parameters, validated against the caps."""
    def read(key, default, cap):
        value = params.get(key, default)
        if not isinstance(value, int) or value <= 0:
            raise LimitError(f"{key} must be a positive integer")
        if value > cap:
            raise LimitError(f"{key} exceeds the server cap ({cap})")
        return value

    return ExploreLimits(
        max_states=read("max_states", 1000, MAX_STATES_CAP),
        max_depth=read("max_depth", 200, MAX_DEPTH_CAP),
        timeout_ms=read("timeout_ms", 5000, MAX_TIMEOUT_CAP),
    )


def sorted_successors(semantics: SosSemantics, state) -> list:
    return sorted(semantics.next(state), key=lambda m: (str(m[0]), str(m[1])))


def step_snapshot(spec: StepsWidget, semantics: SosSemantics, state,
                  version: int = 0, history=()) -> dict:
    """The step-widget payload: printed state, indexed successor labels, the
    acceptance flag, and the label history (so a client holds the whole
    session state and could replay it against a stateless engine)."""
    succs = sorted_successors(semantics, state)
    return {
        "state": spec.printer(state),
        "successors": [
            {"label": str(label), "index": i} for i, (label, _) in enumerate(succs)
        ],
        "accepting": semantics.accepting(state),
        "version": version,
        "history": [
            {"label": str(label), "choice": choice} for (label, choice) in history
        ],
    }
