"""Global and local semantics for choreographies, their composition into a
network of agents, and the realisability check.

In the global semantics an interaction fires atomically; sequencing enables
the continuation once the prefix is terminable; parallel interleaves;
choice commits on the first move. A global state is accepting when it is
terminable. A local process is accepting only when it is literally
finished (``end``): an agent still offering a choice has not terminated.

Realisability composes the per-agent projections with a synchronous
handshake (a send and its matching receive fire together and are relabelled
to the corresponding global label) and searches for a branching
bisimulation against the global semantics, nothing silent. A buffered
variant, where sends and receives fire alone against FIFO channels, is
available for experimenting with asynchronous interpretations.
"""

from __future__ import annotations

from ..core import ExploreLimits, SosSemantics
from ..equivalence import SilentSpec, compare_branching_bisim
from ..network import FORBIDDEN, FifoBuffers, NetworkState, network_sos
from .syntax import (
    END, Choice, Choreo, End, GlobalLabel, Interaction, LocalLabel, LocalProc,
    Par, Recv, Send, Seq, agents, normalize, project, terminable,
)


def _moves(p, fire_leaf) -> set:
    """The step relation shared by the global and local semantics;
    ``fire_leaf`` turns a leaf into its label."""
    match p:
        case End():
            return set()
        case Interaction(_, _, _) | Send(_, _) | Recv(_, _):
            return {(fire_leaf(p), END)}
        case Seq(first, second):
            steps = {
                (label, normalize(Seq(target, second)))
                for (label, target) in _moves(first, fire_leaf)
            }
            if terminable(first):
                steps |= _moves(second, fire_leaf)
            return steps
        case Par(left, right):
            steps = {
                (label, normalize(Par(target, right)))
                for (label, target) in _moves(left, fire_leaf)
            }
            steps |= {
                (label, normalize(Par(left, target)))
                for (label, target) in _moves(right, fire_leaf)
            }
            return steps
        case Choice(left, right):
            return _moves(left, fire_leaf) | _moves(right, fire_leaf)
    raise TypeError(f"not a process: {p!r}")


def global_next(c: Choreo) -> set:
    return _moves(c, lambda leaf: GlobalLabel(leaf.source, leaf.target, leaf.message))


class GlobalSemantics(SosSemantics):
    def next(self, state: Choreo) -> set:
        return global_next(state)

    def accepting(self, state: Choreo) -> bool:
        return terminable(state)


GLOBAL = GlobalSemantics()


class LocalSemantics(SosSemantics):
    """The behaviour of one named agent over its local process."""

    def __init__(self, owner: str):
        self.owner = owner

    def _label(self, leaf) -> LocalLabel:
        if isinstance(leaf, Send):
            return LocalLabel("!", self.owner, leaf.target, leaf.message)
        return LocalLabel("?", leaf.source, self.owner, leaf.message)

    def next(self, state: LocalProc) -> set:
        return _moves(state, self._label)

    def accepting(self, state: LocalProc) -> bool:
        return state == END


def local_next(p: LocalProc, owner: str) -> set:
    return LocalSemantics(owner).next(p)


def handshake_sync(labels, memory):
    """Permit exactly one matching send/receive pair per step."""
    present = [label for label in labels if label is not None]
    if len(present) != 2:
        return FORBIDDEN
    first, second = present
    if {first.kind, second.kind} != {"!", "?"}:
        return FORBIDDEN
    if (first.source, first.target, first.message) != (second.source, second.target, second.message):
        return FORBIDDEN
    return memory


def handshake_relabel(labels) -> GlobalLabel:
    for label in labels:
        if label is not None and label.kind == "!":
            return GlobalLabel(label.source, label.target, label.message)
    raise ValueError("no send in a permitted handshake vector")


def buffered_sync(labels, memory: FifoBuffers):
    """Sends enqueue onto the (source, target) channel; receives consume a
    matching message from the channel head."""
    present = [label for label in labels if label is not None]
    if len(present) != 1:
        return FORBIDDEN
    (label,) = present
    channel = (label.source, label.target)
    if label.kind == "!":
        return memory.push(channel, label.message)
    popped = memory.pop(channel, label.message)
    return FORBIDDEN if popped is None else popped


def compose(c: Choreo, buffered: bool = False):
    """The network of the choreography's projections.

    Returns (semantics, initial network state). Synchronous handshake by
    default; ``buffered=True`` switches to FIFO-channel asynchrony, whose
    steps stay labelled with the local send/receive labels.
    """
    names = agents(c)
    if not names:
        names = ["_"]  # a degenerate choreography without interactions
    local_sems = [LocalSemantics(name) for name in names]
    locals0 = tuple(project(c, name) for name in names)
    if buffered:
        sem = network_sos(buffered_sync, lambda labels: _single(labels), local_sems)
        return sem, NetworkState(locals0, FifoBuffers.empty())
    sem = network_sos(handshake_sync, handshake_relabel, local_sems)
    return sem, NetworkState(locals0, None)


def _single(labels):
    for label in labels:
        if label is not None:
            return label
    raise ValueError("empty candidate vector")


def realisability(c: Choreo, limits: ExploreLimits | None = None):
    """Do the composed projections reproduce the global behaviour?

    Searches for a branching bisimulation (nothing silent) between the
    global semantics and the synchronous handshake composition.
    """
    composed_sem, initial = compose(c, buffered=False)
    return compare_branching_bisim(
        GLOBAL,
        composed_sem,
        normalize(c),
        initial,
        silent=SilentSpec.none(),
        limits=limits,
    )
