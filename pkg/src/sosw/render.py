"""Views over terms, transition systems and verdicts: plain text, code, and
Mermaid diagrams (with DOT as a command-line alternative).

All emitters are deterministic: equal inputs produce byte-equal output.
Node text is escaped for Mermaid (`"` becomes ``#quot;``, newlines become
``<br/>``, backticks are stripped).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Lts
from .equivalence import (
    Bisimilar,
    Bound,
    NotBisimilar,
    TracesDiffer,
    TracesEqual,
)


@dataclass(frozen=True)
class View:
    """A rendered widget result: ``kind`` is "text", "code" or "mermaid"."""

    kind: str
    body: str
    code_language: str | None = None

    def __post_init__(self):
        if self.kind == "code" and not self.code_language:
            raise ValueError("code views need a language hint")


@dataclass(frozen=True)
class Tree:
    """A generic labelled tree; languages project their terms into this."""

    label: str
    children: tuple = ()


def _escape(text: str) -> str:
    return text.replace("`", "").replace('"', "#quot;").replace("\n", "<br/>")


def ast_to_mermaid(tree: Tree) -> View:
    """A top-down flowchart of a labelled tree; node ids follow pre-order,
    edges come in traversal order (parent before its subtree, children in order)."""
    nodes = []
    edges = []

    def walk(node: Tree) -> int:
        ident = len(nodes)
        nodes.append(f'  n{ident}["{_escape(node.label)}"]')
        for child in node.children:
            slot = len(edges)
            edges.append(None)
            child_id = walk(child)
            edges[slot] = f"  n{ident} --> n{child_id}"
        return ident

    walk(tree)
    lines = ["flowchart TD"] + nodes + edges
    return View("mermaid", "\n".join(lines))


def lts_to_mermaid(lts: Lts, state_printer=str, label_printer=str) -> View:
    """A left-to-right flowchart of an explored system.

    The initial state gets a marker edge from a hidden start node, accepting
    states use the double-border shape, truncated states end in ``...``, and
    a state printed as the empty string falls back to its bare index.
    """
    lines = ["flowchart LR", "  __start(( )) --> st0"]
    for i, state in enumerate(lts.states):
        text = state_printer(state)
        if text == "":
            text = str(i)
        if i in lts.truncated:
            text += " ..."
        text = _escape(text)
        if i in lts.accepting:
            lines.append(f'  st{i}((("{text}")))')
        else:
            lines.append(f'  st{i}["{text}"]')
    for (i, label, j) in lts.sorted_edges():
        lines.append(f'  st{i} -->|"{_escape(label_printer(label))}"| st{j}')
    return View("mermaid", "\n".join(lines))


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def ast_to_dot(tree: Tree) -> str:
    nodes = []
    edges = []

    def walk(node: Tree) -> int:
        ident = len(nodes)
        nodes.append(f'  n{ident} [label="{_dot_escape(node.label)}"];')
        for child in node.children:
            slot = len(edges)
            edges.append(None)
            child_id = walk(child)
            edges[slot] = f"  n{ident} -> n{child_id};"
        return ident

    walk(tree)
    return "\n".join(["digraph ast {"] + nodes + edges + ["}"])


def lts_to_dot(lts: Lts, state_printer=str, label_printer=str) -> str:
    lines = [
        "digraph lts {",
        "  rankdir=LR;",
        '  __start [shape=point, label=""];',
        "  __start -> st0;",
    ]
    for i, state in enumerate(lts.states):
        text = state_printer(state)
        if text == "":
            text = str(i)
        if i in lts.truncated:
            text += " ..."
        shape = "doublecircle" if i in lts.accepting else "box"
        lines.append(f'  st{i} [shape={shape}, label="{_dot_escape(text)}"];')
    for (i, label, j) in lts.sorted_edges():
        lines.append(f'  st{i} -> st{j} [label="{_dot_escape(label_printer(label))}"];')
    lines.append("}")
    return "\n".join(lines)


def verdict_to_view(outcome, printer1=str, printer2=str) -> View:
    """Render a comparison verdict as plain text.

    Bisimilar: one related pair per line, tab-separated. Not bisimilar: the
    distinguishing play, one move per line, right-side moves indented, and
    a final line naming the unmatched move or the acceptance mismatch.
    Bounds render as a single-line reason.
    """
    match outcome:
        case Bisimilar(relation):
            rows = sorted((printer1(s), printer2(t)) for (s, t) in relation)
            return View("text", "\n".join(f"{a}\t{b}" for (a, b) in rows))
        case NotBisimilar(play, reason):
            lines = []
            for move in play:
                if move.side == "left":
                    lines.append(f"left: {move.label}")
                else:
                    lines.append(f"  right: {move.label}")
            lines.append(reason)
            return View("text", "\n".join(lines))
        case Bound(reason, detail):
            if reason == "timeout":
                return View("text", f"timeout after {detail}ms")
            if reason == "states":
                return View("text", f"state bound reached ({detail} states)")
            if reason == "depth":
                return View("text", f"depth bound reached ({detail})")
            return View("text", f"bound reached: {reason}")
        case TracesEqual():
            return View("text", "trace-equivalent")
        case TracesDiffer(side, witness):
            shown = " ".join(str(label) for label in witness)
            return View("text", f"traces differ: {side} can do '{shown}' but the other cannot")
    raise TypeError(f"not a verdict: {outcome!r}")
