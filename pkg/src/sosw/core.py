"""Small-step semantics interface and bounded exploration of labelled transition systems.

A language plugs into the engine by subclassing :class:`SosSemantics` and
implementing ``next`` (the step relation). States and labels are opaque:
they must be hashable, support structural equality, and print via ``str``;
the printed forms fix a deterministic exploration order, so printers should
be injective on reachable states.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass


class EvalError(Exception):
    """A state could not be evaluated (unbound variable, bad widget input, ...)."""


class ParseError(Exception):
    """A program text was rejected, with a 1-based source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class SosSemantics:
    """A step relation plus an acceptance predicate.

    ``next`` must be pure and return a finite set of ``(label, state)``
    pairs with no duplicates. By default a state is accepting iff it has
    no successors; languages with a finer notion of legitimate termination
    override ``accepting``.
    """

    def next(self, state) -> set:
        raise NotImplementedError

    def accepting(self, state) -> bool:
        return not self.next(state)


class MappingSemantics(SosSemantics):
    """A finite semantics given explicitly as a dictionary.

    Useful for hand-built systems in tests and demos. ``accepting`` may be
    given as an explicit set of states; if omitted, the no-successor
    default applies.
    """

    def __init__(self, transitions: dict, accepting=None):
        self._transitions = {s: frozenset(moves) for s, moves in transitions.items()}
        self._accepting = None if accepting is None else frozenset(accepting)

    def next(self, state) -> set:
        return set(self._transitions.get(state, frozenset()))

    def accepting(self, state) -> bool:
        if self._accepting is None:
            return not self._transitions.get(state)
        return state in self._accepting


@dataclass(frozen=True)
class ExploreLimits:
    """Bounds on exploration; bounds produce truncation flags, never failures."""

    max_states: int = 1000
    max_depth: int = 200
    timeout_ms: int = 5000

    def __post_init__(self):
        for name in ("max_states", "max_depth", "timeout_ms"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class Lts:
    """A finite explored transition system.

    ``states`` are indexed in breadth-first discovery order, index 0 being
    the initial state. A state is flagged in ``truncated`` when some of its
    successors were not explored; for every non-truncated index ``i`` the
    edges out of ``i`` are exactly the step relation at ``states[i]``.
    ``stop_reason`` records which bound bit first ("states", "depth" or
    "timeout"), if any.
    """

    states: tuple
    edges: frozenset  # of (source index, label, target index)
    accepting: frozenset  # of state indices
    truncated: frozenset  # of state indices
    stop_reason: str | None = None

    def __post_init__(self):
        n = len(self.states)
        for (i, _, j) in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge endpoint out of range: ({i}, {j})")

    @property
    def initial(self) -> int:
        return 0

    def out_edges(self, i: int) -> list:
        """Outgoing (label, target) pairs of state ``i``, deterministically ordered."""
        out = [(lab, j) for (s, lab, j) in self.edges if s == i]
        out.sort(key=lambda e: (str(e[0]), e[1]))
        return out

    def sorted_edges(self) -> list:
        """All edges in (source, label text, target) lexicographic order."""
        return sorted(self.edges, key=lambda e: (e[0], str(e[1]), e[2]))


def explore(sem: SosSemantics, init, limits: ExploreLimits | None = None) -> Lts:
    """Breadth-first unfolding of ``sem`` from ``init`` within ``limits``.

    State identity is structural equality; revisits are shared. Successor
    order is fixed by (label text, target text), which makes the state
    numbering deterministic.
    """
    limits = limits or ExploreLimits()
    deadline = time.monotonic() + limits.timeout_ms / 1000.0

    states = [init]
    index = {init: 0}
    depth = [0]
    edges: set = set()
    accepting: set = set()
    truncated: set = set()
    stop_reason: str | None = None
    if sem.accepting(init):
        accepting.add(0)

    queue: deque[int] = deque([0])
    while queue:
        if time.monotonic() > deadline:
            stop_reason = stop_reason or "timeout"
            truncated.update(queue)
            break
        i = queue.popleft()
        succs = sorted(sem.next(states[i]), key=lambda m: (str(m[0]), str(m[1])))
        if depth[i] >= limits.max_depth:
            if succs:
                truncated.add(i)
                stop_reason = stop_reason or "depth"
            continue
        for (label, target) in succs:
            j = index.get(target)
            if j is None:
                if len(states) >= limits.max_states:
                    truncated.add(i)
                    stop_reason = stop_reason or "states"
                    continue
                j = len(states)
                states.append(target)
                index[target] = j
                depth.append(depth[i] + 1)
                if sem.accepting(target):
                    accepting.add(j)
                queue.append(j)
            edges.add((i, label, j))

    return Lts(
        states=tuple(states),
        edges=frozenset(edges),
        accepting=frozenset(accepting),
        truncated=frozenset(truncated),
        stop_reason=stop_reason,
    )


def traces(lts: Lts, max_len: int) -> frozenset:
    """All label sequences of length <= ``max_len`` along paths from the initial state.

    The empty trace is always included. Silent labels are kept verbatim;
    filtering is the equivalence module's concern.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    collected = {()}
    frontier = {(0, ())}
    for _ in range(max_len):
        nxt = set()
        for (i, trace) in frontier:
            for (label, j) in lts.out_edges(i):
                extended = trace + (label,)
                collected.add(extended)
                nxt.add((j, extended))
        if not nxt:
            break
        frontier = nxt
    return frozenset(collected)


def successors(sem: SosSemantics, state) -> set:
    """The step relation at ``state``; the single entry point interactive steppers use."""
    return set(sem.next(state))


def is_accepting(sem: SosSemantics, state) -> bool:
    return sem.accepting(state)
