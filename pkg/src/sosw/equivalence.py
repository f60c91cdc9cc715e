"""Branching bisimulation and trace equivalence between two semantics.

Both comparisons first unfold the two systems within exploration limits.
If either unfolding is cut short, the verdict is :class:`Bound` rather than
a possibly wrong answer; verdicts on fully explored systems are exact.

Silent labels are configured through :class:`SilentSpec`. With the default
(nothing silent) branching bisimilarity coincides with strong bisimilarity,
and acceptance agreement degenerates to plain equality of the accepting
flags. Acceptance is part of the equivalence: related states must agree on
acceptance up to silent moves.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from .core import ExploreLimits, Lts, SosSemantics, explore


class SilentSpec:
    """Decides which labels are silent. Default: no label is silent."""

    def __init__(self, predicate=None):
        self._predicate = predicate

    def __call__(self, label) -> bool:
        return bool(self._predicate is not None and self._predicate(label))

    @classmethod
    def none(cls) -> "SilentSpec":
        return cls(None)

    @classmethod
    def labels(cls, *silent) -> "SilentSpec":
        silent_set = frozenset(silent)
        return cls(lambda label: label in silent_set)


@dataclass(frozen=True)
class PlayMove:
    """One move of a distinguishing play: which system moved, how, and to where."""

    side: str  # "left" | "right"
    label: object
    target: object  # the state reached by the move


@dataclass(frozen=True)
class Bisimilar:
    relation: frozenset  # of (left state, right state) pairs


@dataclass(frozen=True)
class NotBisimilar:
    play: tuple  # of PlayMove
    reason: str


@dataclass(frozen=True)
class Bound:
    reason: str  # "states" | "depth" | "timeout"
    detail: int | None = None


@dataclass(frozen=True)
class TracesEqual:
    pass


@dataclass(frozen=True)
class TracesDiffer:
    side: str  # which system owns the witness
    witness: tuple  # of labels; a trace the other system cannot extend to


def _bound_from(lts: Lts, limits: ExploreLimits) -> Bound:
    reason = lts.stop_reason or "states"
    detail = {
        "states": limits.max_states,
        "depth": limits.max_depth,
        "timeout": limits.timeout_ms,
    }[reason]
    return Bound(reason, detail)


def _remaining(limits: ExploreLimits, deadline: float) -> ExploreLimits:
    left_ms = max(1, int((deadline - time.monotonic()) * 1000))
    return ExploreLimits(limits.max_states, limits.max_depth, min(limits.timeout_ms, left_ms))


def _silent_closure(adj, n, silent):
    """Per state: silently reachable states (BFS order) and predecessor links for paths."""
    reach = []
    links = []
    for i in range(n):
        seen = {i: None}
        order = [i]
        queue = deque([i])
        while queue:
            u = queue.popleft()
            for (label, v) in adj[u]:
                if silent(label) and v not in seen:
                    seen[v] = (u, label)
                    order.append(v)
                    queue.append(v)
        reach.append(order)
        links.append(seen)
    return reach, links


def _silent_path(links, source, target):
    """The (label, state index) steps of the recorded silent path source => target."""
    steps = []
    node = target
    while node != source:
        prev, label = links[source][node]
        steps.append((label, node))
        node = prev
    steps.reverse()
    return steps


def compare_branching_bisim(
    sem1: SosSemantics,
    sem2: SosSemantics,
    init1,
    init2,
    silent: SilentSpec | None = None,
    limits: ExploreLimits | None = None,
):
    """Search for a branching bisimulation relating ``init1`` and ``init2``.

    Explores both systems, then refines the full relation on the explored
    state spaces to its greatest fixpoint. Returns :class:`Bisimilar` with
    the fixpoint relation, :class:`NotBisimilar` with a replayable
    distinguishing play, or :class:`Bound` when a limit prevented a verdict.
    """
    silent = silent or SilentSpec.none()
    limits = limits or ExploreLimits()
    deadline = time.monotonic() + limits.timeout_ms / 1000.0

    lts1 = explore(sem1, init1, limits)
    if lts1.truncated:
        return _bound_from(lts1, limits)
    lts2 = explore(sem2, init2, _remaining(limits, deadline))
    if lts2.truncated:
        return _bound_from(lts2, limits)

    n1, n2 = len(lts1.states), len(lts2.states)
    adj1 = [lts1.out_edges(i) for i in range(n1)]
    adj2 = [lts2.out_edges(j) for j in range(n2)]
    reach1, links1 = _silent_closure(adj1, n1, silent)
    reach2, links2 = _silent_closure(adj2, n2, silent)
    acc1, acc2 = lts1.accepting, lts2.accepting

    def violation(i, j, rel):
        # Left moves must be matched by the right, per the branching condition.
        for (a, i2) in adj1[i]:
            if silent(a) and (i2, j) in rel:
                continue
            if not any(
                (i, j1) in rel and b == a and (i2, j2) in rel
                for j1 in reach2[j]
                for (b, j2) in adj2[j1]
            ):
                return ("left", "move", a, i2)
        for (a, j2) in adj2[j]:
            if silent(a) and (i, j2) in rel:
                continue
            if not any(
                (i1, j) in rel and b == a and (i2, j2) in rel
                for i1 in reach1[i]
                for (b, i2) in adj1[i1]
            ):
                return ("right", "move", a, j2)
        # Acceptance must agree up to silent moves.
        if i in acc1 and not any(j1 in acc2 and (i, j1) in rel for j1 in reach2[j]):
            return ("left", "accept", None, None)
        if j in acc2 and not any(i1 in acc1 and (i1, j) in rel for i1 in reach1[i]):
            return ("right", "accept", None, None)
        return None

    rel = {(i, j) for i in range(n1) for j in range(n2)}
    removed_info: dict = {}
    removed_round: dict = {}
    round_no = 0
    while True:
        round_no += 1
        if time.monotonic() > deadline:
            return Bound("timeout", limits.timeout_ms)
        gone = []
        for pair in sorted(rel):
            found = violation(pair[0], pair[1], rel)
            if found is not None:
                gone.append((pair, found))
        if not gone:
            break
        for (pair, found) in gone:
            rel.discard(pair)
            removed_info[pair] = found
            removed_round[pair] = round_no
        if (0, 0) not in rel:
            play, reason = _build_play(
                lts1, lts2, adj1, adj2, reach1, reach2, links1, links2,
                acc1, acc2, silent, removed_info, removed_round,
            )
            return NotBisimilar(play, reason)

    relation = frozenset((lts1.states[i], lts2.states[j]) for (i, j) in rel)
    return Bisimilar(relation)


def _build_play(
    lts1, lts2, adj1, adj2, reach1, reach2, links1, links2,
    acc1, acc2, silent, removed_info, removed_round,
):
    """Derive a distinguishing play from the refinement step that removed (0, 0).

    The play follows pairs of strictly decreasing removal round, so it ends
    at a pair whose violating move has no answer at all in the raw systems.
    """
    moves = []
    pair = (0, 0)
    while True:
        side, kind, label, succ = removed_info[pair]
        my_round = removed_round[pair]
        i, j = pair
        if side == "left":
            att_states, def_states = lts1.states, lts2.states
            def_adj, def_reach, def_links, def_acc = adj2, reach2, links2, acc2
            att_pos, def_pos = i, j
            make_pair = lambda a, d: (a, d)
            defender = "right"
        else:
            att_states, def_states = lts2.states, lts1.states
            def_adj, def_reach, def_links, def_acc = adj1, reach1, links1, acc1
            att_pos, def_pos = j, i
            make_pair = lambda a, d: (d, a)
            defender = "left"

        def removed_earlier(p):
            return p in removed_round and removed_round[p] < my_round

        if kind == "accept":
            # Attacker is accepting; the defender cannot silently reach a
            # related accepting state. Follow the best broken detour, if any.
            options = [
                d1 for d1 in def_reach[def_pos]
                if d1 in def_acc and removed_earlier(make_pair(att_pos, d1))
            ]
            if not options:
                return tuple(moves), f"{defender} cannot match acceptance"
            best = max(
                options,
                key=lambda d1: (removed_round[make_pair(att_pos, d1)], -d1),
            )
            for (lab, node) in _silent_path(def_links, def_pos, best):
                moves.append(PlayMove(defender, lab, def_states[node]))
            pair = make_pair(att_pos, best)
            continue

        att_succ = succ
        responses = [
            (d1, d2)
            for d1 in def_reach[def_pos]
            for (b, d2) in def_adj[d1]
            if b == label
        ]
        if not responses:
            if silent(label) and removed_earlier(make_pair(att_succ, def_pos)):
                # A silent attacker move the defender may answer by standing still,
                # except the resulting pair was already refuted.
                moves.append(PlayMove(side, label, att_states[att_succ]))
                pair = make_pair(att_succ, def_pos)
                continue
            moves.append(PlayMove(side, label, att_states[att_succ]))
            return tuple(moves), f"{defender} cannot match '{label}'"

        scored = []
        for (d1, d2) in responses:
            mid = make_pair(att_pos, d1)
            end = make_pair(att_succ, d2)
            if removed_earlier(end):
                scored.append((1, removed_round[end], (d1, d2), "end"))
            elif removed_earlier(mid):
                scored.append((0, removed_round[mid], (d1, d2), "mid"))
        # Every response is broken somewhere, else the pair would not have
        # been removed; prefer full answers and late-removed continuations.
        best = max(
            scored,
            key=lambda s: (s[0], s[1], -s[2][0], -s[2][1]),
        )
        _, _, (d1, d2), where = best
        if where == "end":
            moves.append(PlayMove(side, label, att_states[att_succ]))
            for (lab, node) in _silent_path(def_links, def_pos, d1):
                moves.append(PlayMove(defender, lab, def_states[node]))
            moves.append(PlayMove(defender, label, def_states[d2]))
            pair = make_pair(att_succ, d2)
        else:
            for (lab, node) in _silent_path(def_links, def_pos, d1):
                moves.append(PlayMove(defender, lab, def_states[node]))
            pair = make_pair(att_pos, d1)


def compare_traces(
    sem1: SosSemantics,
    sem2: SosSemantics,
    init1,
    init2,
    silent: SilentSpec | None = None,
    limits: ExploreLimits | None = None,
):
    """Compare the visible trace sets of two systems.

    Works on the determinised explored systems, so the verdict is exact on
    fully explored finite systems; witnesses are shortest distinguishing
    visible traces.
    """
    silent = silent or SilentSpec.none()
    limits = limits or ExploreLimits()
    deadline = time.monotonic() + limits.timeout_ms / 1000.0

    lts1 = explore(sem1, init1, limits)
    if lts1.truncated:
        return _bound_from(lts1, limits)
    lts2 = explore(sem2, init2, _remaining(limits, deadline))
    if lts2.truncated:
        return _bound_from(lts2, limits)

    adj1 = [lts1.out_edges(i) for i in range(len(lts1.states))]
    adj2 = [lts2.out_edges(j) for j in range(len(lts2.states))]
    reach1, _ = _silent_closure(adj1, len(adj1), silent)
    reach2, _ = _silent_closure(adj2, len(adj2), silent)

    def close(adj, reach, subset):
        closed = set()
        for s in subset:
            closed.update(reach[s])
        return frozenset(closed)

    def visible_moves(adj, subset):
        moves: dict = {}
        for s in subset:
            for (a, t) in adj[s]:
                if not silent(a):
                    moves.setdefault(a, set()).add(t)
        return moves

    start = (close(adj1, reach1, {0}), close(adj2, reach2, {0}))
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        if time.monotonic() > deadline:
            return Bound("timeout", limits.timeout_ms)
        (set1, set2), prefix = queue.popleft()
        moves1 = visible_moves(adj1, set1)
        moves2 = visible_moves(adj2, set2)
        for label in sorted(set(moves1) | set(moves2), key=str):
            if label not in moves2:
                return TracesDiffer("left", prefix + (label,))
            if label not in moves1:
                return TracesDiffer("right", prefix + (label,))
            nxt = (close(adj1, reach1, moves1[label]), close(adj2, reach2, moves2[label]))
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, prefix + (label,)))
    return TracesEqual()


def verify_bisimulation(relation, lts1: Lts, lts2: Lts, silent: SilentSpec | None = None) -> bool:
    """Independently check that ``relation`` is a branching bisimulation
    between the two explored systems and relates their initial states.

    Both systems must be fully explored; a truncated input is an error, not
    a verdict.
    """
    silent = silent or SilentSpec.none()
    if lts1.truncated or lts2.truncated:
        raise ValueError("verify_bisimulation needs fully explored systems")

    index1 = {s: i for i, s in enumerate(lts1.states)}
    index2 = {s: i for i, s in enumerate(lts2.states)}
    pairs = set()
    for (s, t) in relation:
        if s not in index1 or t not in index2:
            raise ValueError("relation mentions a state outside the explored systems")
        pairs.add((index1[s], index2[t]))
    if (0, 0) not in pairs:
        return False

    adj1 = [lts1.out_edges(i) for i in range(len(lts1.states))]
    adj2 = [lts2.out_edges(j) for j in range(len(lts2.states))]

    def silent_reach(adj, start):
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for (label, v) in adj[u]:
                if silent(label) and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    reach1 = [silent_reach(adj1, i) for i in range(len(adj1))]
    reach2 = [silent_reach(adj2, j) for j in range(len(adj2))]

    def matched(a, source_pairs, target_pair_of):
        # source_pairs: candidate defender stop-overs; target_pair_of maps a
        # defender move target to the pair that must be related afterwards.
        for (stop, moves) in source_pairs:
            if not stop:
                continue
            for (b, t2) in moves:
                if b == a and target_pair_of(t2) in pairs:
                    return True
        return False

    for (i, j) in pairs:
        for (a, i2) in adj1[i]:
            if silent(a) and (i2, j) in pairs:
                continue
            candidates = [((i, j1) in pairs, adj2[j1]) for j1 in reach2[j]]
            if not matched(a, candidates, lambda j2, i2=i2: (i2, j2)):
                return False
        for (a, j2) in adj2[j]:
            if silent(a) and (i, j2) in pairs:
                continue
            candidates = [((i1, j) in pairs, adj1[i1]) for i1 in reach1[i]]
            if not matched(a, candidates, lambda i2, j2=j2: (i2, j2)):
                return False
        if i in lts1.accepting:
            if not any(j1 in lts2.accepting and (i, j1) in pairs for j1 in reach2[j]):
                return False
        if j in lts2.accepting:
            if not any(i1 in lts1.accepting and (i1, j) in pairs for i1 in reach1[i]):
                return False
    return True
