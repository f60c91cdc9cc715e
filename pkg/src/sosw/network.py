"""Composition of local semantics into a network semantics.

A network state is a vector of local states plus an opaque memory value.
A step picks, for each participant independently, either one local move or
no move; the synchronisation policy prunes the combinations and threads
the memory; the relabelling policy names the surviving combinations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import SosSemantics

#: Returned by a sync policy to reject a candidate combination. A sentinel
#: rather than None, so that None stays usable as the unit memory.
FORBIDDEN = object()


@dataclass(frozen=True)
class NetworkState:
    """Local states of all participants plus the network memory."""

    locals: tuple
    memory: object = None

    def __str__(self):
        body = " | ".join(str(s) for s in self.locals)
        if self.memory is None:
            return f"({body})"
        return f"({body}) {self.memory}"


class NetworkSemantics(SosSemantics):
    """The composed semantics built by :func:`network_sos`."""

    def __init__(self, sync, relabel, local_sems):
        self._sync = sync
        self._relabel = relabel
        self._locals = tuple(local_sems)

    @property
    def participants(self) -> int:
        return len(self._locals)

    def next_detailed(self, state: NetworkState) -> list:
        """Permitted steps as (candidate label vector, global label, new state),
        in lexicographic candidate order by participant index."""
        if len(state.locals) != len(self._locals):
            raise ValueError("network state arity does not match the participant count")
        options = []
        for sem, local in zip(self._locals, state.locals):
            moves = sorted(sem.next(local), key=lambda m: (str(m[0]), str(m[1])))
            options.append([None] + moves)
        steps = []
        for candidate in itertools.product(*options):
            if all(entry is None for entry in candidate):
                continue
            labels = tuple(entry[0] if entry else None for entry in candidate)
            memory = self._sync(labels, state.memory)
            if memory is FORBIDDEN:
                continue
            new_locals = tuple(
                entry[1] if entry else old
                for entry, old in zip(candidate, state.locals)
            )
            steps.append((labels, self._relabel(labels), NetworkState(new_locals, memory)))
        return steps

    def next(self, state: NetworkState) -> set:
        return {(label, target) for (_, label, target) in self.next_detailed(state)}

    def accepting(self, state: NetworkState) -> bool:
        return all(sem.accepting(local) for sem, local in zip(self._locals, state.locals))


def network_sos(sync, relabel, local_sems) -> NetworkSemantics:
    """Build the composed semantics of ``local_sems`` under ``sync``/``relabel``.

    ``sync(labels, memory)`` receives the per-participant optional label
    vector and returns the new memory, or :data:`FORBIDDEN` to reject the
    combination. ``relabel(labels)`` must be total on permitted vectors.
    """
    local_sems = tuple(local_sems)
    if not local_sems:
        raise ValueError("a network needs at least one participant")
    return NetworkSemantics(sync, relabel, local_sems)


def interleaving_sync(labels, memory):
    """Permit exactly the single-participant moves; memory passes through."""
    if sum(1 for l in labels if l is not None) == 1:
        return memory
    return FORBIDDEN


def single_label_relabel(labels):
    """The unique non-absent label of an interleaving candidate."""
    for label in labels:
        if label is not None:
            return label
    raise ValueError("empty candidate vector")


@dataclass(frozen=True)
class FifoBuffers:
    """Immutable per-channel FIFO message buffers, usable as network memory.

    Channels are keyed by (sender, receiver); structural equality and
    hashing come from the canonical sorted tuple representation.
    """

    channels: tuple = field(default=())

    @classmethod
    def empty(cls) -> "FifoBuffers":
        return cls(())

    def _as_dict(self) -> dict:
        return {key: list(msgs) for key, msgs in self.channels}

    def push(self, key, message) -> "FifoBuffers":
        chans = self._as_dict()
        chans.setdefault(key, []).append(message)
        return FifoBuffers(tuple(sorted((k, tuple(v)) for k, v in chans.items())))

    def pop(self, key, message):
        """Buffers after removing ``message`` from the head of ``key``,
        or None when the head does not match."""
        chans = self._as_dict()
        queue = chans.get(key)
        if not queue or queue[0] != message:
            return None
        queue.pop(0)
        if not queue:
            del chans[key]
        return FifoBuffers(tuple(sorted((k, tuple(v)) for k, v in chans.items())))

    def __str__(self):
        if not self.channels:
            return "{}"
        parts = [
            f"{src}->{dst}:[{','.join(str(m) for m in msgs)}]"
            for ((src, dst), msgs) in self.channels
        ]
        return "{" + " ".join(parts) + "}"
