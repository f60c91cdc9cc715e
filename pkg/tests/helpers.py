"""Shared test helpers: random system generators and independent oracles."""

from __future__ import annotations

import itertools
import random

from sosw import MappingSemantics, verify_bisimulation
from sosw import lamcalc as L
from sosw import whilelang as W


# ---------------------------------------------------------------------------
# Random labelled transition systems (as explicit MappingSemantics).


def random_system_raw(rng: random.Random, max_states: int = 6, labels=("a", "b"),
                      allow_silent: bool = False):
    n = rng.randint(1, max_states)
    silent = "tau" if allow_silent and rng.random() < 0.5 else None
    alphabet = list(labels) + ([silent] if silent else [])
    transitions = {}
    for i in range(n):
        moves = set()
        for _ in range(rng.randint(0, 2)):
            moves.add((rng.choice(alphabet), f"s{rng.randrange(n)}"))
        transitions[f"s{i}"] = moves
    accepting = {f"s{i}" for i in range(n) if rng.random() < 0.4}
    return transitions, accepting, "s0", silent


def random_system(rng: random.Random, max_states: int = 6, labels=("a", "b"),
                  allow_silent: bool = False):
    """A random finite system over string states s0..sN; returns
    (semantics, initial state, silent label or None)."""
    transitions, accepting, initial, silent = random_system_raw(
        rng, max_states, labels, allow_silent
    )
    return MappingSemantics(transitions, accepting), initial, silent


def bisimilar_variant(rng: random.Random, transitions: dict, accepting: set, initial: str):
    """A renamed copy with one state duplicated and some edges redirected to
    the duplicate; bisimilar to the original by construction."""
    mapping = {s: f"r{i}" for i, s in enumerate(sorted(transitions))}
    renamed = {
        mapping[s]: {(label, mapping[t]) for (label, t) in moves}
        for s, moves in transitions.items()
    }
    renamed_accepting = {mapping[s] for s in accepting}
    victim = rng.choice(sorted(renamed))
    clone = victim + "c"
    renamed[clone] = set(renamed[victim])
    if victim in renamed_accepting:
        renamed_accepting.add(clone)
    for state in list(renamed):
        redirected = set()
        for (label, target) in renamed[state]:
            if target == victim and rng.random() < 0.5:
                redirected.add((label, clone))
            else:
                redirected.add((label, target))
        renamed[state] = redirected
    return MappingSemantics(renamed, renamed_accepting), mapping[initial]


def random_system_pair(rng: random.Random, max_states: int = 6, allow_silent: bool = False):
    """A pair of systems: independent, or bisimilar-by-construction about
    half the time, so comparison tests see both verdicts."""
    transitions, accepting, initial, silent = random_system_raw(
        rng, max_states, allow_silent=allow_silent
    )
    first = (MappingSemantics(transitions, accepting), initial)
    if rng.random() < 0.5:
        second = bisimilar_variant(rng, transitions, accepting, initial)
    else:
        second = random_system(rng, max_states, allow_silent=allow_silent)[:2]
    return first, second, silent


# ---------------------------------------------------------------------------
# Strong bisimilarity by naive partition refinement on the disjoint union.
# Independent of the refinement in sosw.equivalence: it works on blocks and
# ignores silent structure (callers use it only with nothing silent).


def strong_bisimilar_partition(lts1, lts2) -> bool:
    states = [("l", i) for i in range(len(lts1.states))] + [
        ("r", j) for j in range(len(lts2.states))
    ]

    def edges(node):
        side, idx = node
        lts = lts1 if side == "l" else lts2
        return [(str(label), (side, j)) for (label, j) in lts.out_edges(idx)]

    def is_acc(node):
        side, idx = node
        return idx in (lts1.accepting if side == "l" else lts2.accepting)

    block = {node: (is_acc(node),) for node in states}
    while True:
        signature = {
            node: (block[node], frozenset((lab, block[tgt]) for (lab, tgt) in edges(node)))
            for node in states
        }
        if all(
            (block[a] == block[b]) == (signature[a] == signature[b])
            for a in states
            for b in states
        ):
            break
        block = signature
    return block[("l", 0)] == block[("r", 0)]


# ---------------------------------------------------------------------------
# All-relations oracle: does any relation containing the initial pair verify?
# Pairs that disagree on acceptance or on outgoing label sets can never occur
# in a strong bisimulation, so the enumeration skips them.


def exists_bisimulation_bruteforce(lts1, lts2, silent=None) -> bool:
    n1, n2 = len(lts1.states), len(lts2.states)
    if silent is None:
        def labels_of(lts, i):
            return frozenset(str(label) for (label, _) in lts.out_edges(i))

        candidates = [
            (i, j)
            for i in range(n1)
            for j in range(n2)
            if (i in lts1.accepting) == (j in lts2.accepting)
            and labels_of(lts1, i) == labels_of(lts2, j)
        ]
    else:
        candidates = [(i, j) for i in range(n1) for j in range(n2)]
    if (0, 0) not in candidates:
        return False
    rest = [p for p in candidates if p != (0, 0)]
    for mask in range(2 ** len(rest)):
        pairs = {(0, 0)} | {rest[k] for k in range(len(rest)) if mask >> k & 1}
        relation = frozenset(
            (lts1.states[i], lts2.states[j]) for (i, j) in pairs
        )
        if verify_bisimulation(relation, lts1, lts2, silent):
            return True
    return False


# ---------------------------------------------------------------------------
# Brute-force product of local systems (for network isomorphism checks).


def product_lts_graph(local_ltss):
    """The asynchronous product of explored local systems, as
    (nodes, initial, accepting set, labelled edge set) over index tuples."""
    spaces = [range(len(lts.states)) for lts in local_ltss]
    nodes = list(itertools.product(*spaces))
    edges = set()
    for node in nodes:
        for k, lts in enumerate(local_ltss):
            for (label, j) in lts.out_edges(node[k]):
                target = node[:k] + (j,) + node[k + 1:]
                edges.add((node, str(label), target))
    accepting = {
        node
        for node in nodes
        if all(node[k] in lts.accepting for k, lts in enumerate(local_ltss))
    }
    initial = tuple(0 for _ in local_ltss)
    return nodes, initial, accepting, edges


def reachable_subgraph(nodes, initial, accepting, edges):
    seen = {initial}
    frontier = [initial]
    while frontier:
        node = frontier.pop()
        for (src, _, dst) in edges:
            if src == node and dst not in seen:
                seen.add(dst)
                frontier.append(dst)
    kept_edges = {(s, l, d) for (s, l, d) in edges if s in seen and d in seen}
    return sorted(seen), initial, {n for n in accepting if n in seen}, kept_edges


# ---------------------------------------------------------------------------
# Random lambda terms.


def random_term(rng: random.Random, depth: int, scope=()):
    pool = list(scope) or ["x", "y"]
    if depth <= 0:
        choice = rng.random()
        if choice < 0.5:
            return L.Val(rng.randint(0, 3))
        return L.Var(rng.choice(pool + ["a", "b"]))
    kind = rng.random()
    if kind < 0.2:
        return L.Val(rng.randint(0, 3))
    if kind < 0.35:
        return L.Var(rng.choice(pool + ["a", "b"]))
    if kind < 0.55:
        binder = rng.choice(["x", "y", "z"])
        return L.Lam(binder, random_term(rng, depth - 1, tuple(scope) + (binder,)))
    if kind < 0.75:
        return L.App(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope))
    if kind < 0.9:
        return L.Add(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope))
    return L.If0(
        random_term(rng, depth - 1, scope),
        random_term(rng, depth - 1, scope),
        random_term(rng, depth - 1, scope),
    )


def closed_terms(max_size: int, cap: int = 4000):
    """Closed terms enumerated by size (values 0..1, binders x,y), capped."""
    leaves = [L.Val(0), L.Val(1)]
    by_size = {1: list(leaves)}
    out = list(leaves)

    def terms_up_to(size):
        return [t for s in range(1, size + 1) for t in by_size.get(s, [])]

    for size in range(2, max_size + 1):
        bucket = []
        for left_size in range(1, size - 1):
            right_size = size - 1 - left_size
            for lhs in by_size.get(left_size, []):
                for rhs in by_size.get(right_size, []):
                    bucket.append(L.App(lhs, rhs))
                    bucket.append(L.Add(lhs, rhs))
        for body_size in [size - 1]:
            for binder in ("x", "y"):
                for body in _open_terms(body_size, (binder,)):
                    bucket.append(L.Lam(binder, body))
        by_size[size] = bucket[: max(0, cap - len(out))]
        out.extend(by_size[size])
        if len(out) >= cap:
            break
    return [t for t in out if not L.free_vars(t)]


def _open_terms(size, scope):
    if size <= 0:
        return []
    if size == 1:
        return [L.Val(0), L.Val(1)] + [L.Var(v) for v in scope]
    out = []
    for left_size in range(1, size - 1):
        right_size = size - 1 - left_size
        for lhs in _open_terms(left_size, scope):
            for rhs in _open_terms(right_size, scope):
                out.append(L.App(lhs, rhs))
                out.append(L.Add(lhs, rhs))
    return out


# ---------------------------------------------------------------------------
# Random while-language programs. Loop-free by construction, with an optional
# bounded-loop wrapper; generated stores bind the whole variable pool, so the
# only runtime failures are deliberate assertion failures.

VAR_POOL = ("w", "x", "y", "z")


def random_aexp(rng: random.Random, depth: int):
    # Literals are non-negative in the grammar; negatives arise via "0 - x".
    if depth <= 0 or rng.random() < 0.4:
        if rng.random() < 0.5:
            return W.Num(rng.randint(0, 5))
        return W.Var(rng.choice(VAR_POOL))
    op = rng.choice(["+", "-", "*"])
    return W.Bin(op, random_aexp(rng, depth - 1), random_aexp(rng, depth - 1))


def random_bexp(rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.4:
        roll = rng.random()
        if roll < 0.2:
            return W.Bool(rng.random() < 0.5)
        op = rng.choice(["=", "<=", "<"])
        return W.Cmp(op, random_aexp(rng, 1), random_aexp(rng, 1))
    roll = rng.random()
    if roll < 0.3:
        return W.Not(random_bexp(rng, depth - 1))
    ctor = W.And if roll < 0.65 else W.Or
    return ctor(random_bexp(rng, depth - 1), random_bexp(rng, depth - 1))


def random_loopfree_cmd(rng: random.Random, depth: int, allow_assert: bool = False):
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.2:
            return W.Skip()
        return W.Assign(rng.choice(VAR_POOL), random_aexp(rng, 2))
    roll = rng.random()
    if allow_assert and roll < 0.12:
        return W.Assert(random_bexp(rng, 1))
    if roll < 0.55:
        return W.Seq(
            random_loopfree_cmd(rng, depth - 1, allow_assert),
            random_loopfree_cmd(rng, depth - 1, allow_assert),
        )
    return W.If(
        random_bexp(rng, 2),
        random_loopfree_cmd(rng, depth - 1, allow_assert),
        random_loopfree_cmd(rng, depth - 1, allow_assert),
    )


def random_terminating_cmd(rng: random.Random):
    body = random_loopfree_cmd(rng, 3)
    if rng.random() < 0.4:
        # The counter lives outside VAR_POOL so loop bodies cannot clobber it.
        counter = "i"
        bound = rng.randint(1, 3)
        loop_body = W.Seq(
            random_loopfree_cmd(rng, 2),
            W.Assign(counter, W.Bin("+", W.Var(counter), W.Num(1))),
        )
        loop = W.Seq(
            W.Assign(counter, W.Num(0)),
            W.While(W.Cmp("<", W.Var(counter), W.Num(bound)), W.Bool(True), loop_body),
        )
        return W.Seq(body, loop)
    return body


def random_store(rng: random.Random) -> W.Store:
    return W.Store({name: rng.randint(-5, 5) for name in VAR_POOL})


def run_small_steps(cmd, store, max_steps: int = 100000):
    """Iterate the small-step semantics to a halted configuration."""
    cfg = W.WhileConfig(cmd, store)
    for _ in range(max_steps):
        steps = W.small_step(cfg)
        if not steps:
            return cfg
        ((_, cfg),) = steps
    raise AssertionError("program did not terminate within the step budget")
