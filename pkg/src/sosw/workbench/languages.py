"""The three built-in language configurations."""

from __future__ import annotations

from .. import choreo, lamcalc, whilelang
from ..core import EvalError
from ..render import ast_to_mermaid
from .registry import (
    BisimWidget,
    CheckWidget,
    Example,
    LtsWidget,
    Registry,
    StepsWidget,
    TraceWidget,
    ViewWidget,
    Widget,
    WorkbenchConfig,
)


def _lambda_split(which: int):
    def split(term):
        if not isinstance(term, lamcalc.App):
            raise EvalError("input must be an application 'A B' to compare 'A' and 'B'")
        return term.fn if which == 0 else term.arg

    return split


def lambda_config() -> WorkbenchConfig:
    pretty = lamcalc.pretty
    mermaid_of = lambda t: ast_to_mermaid(lamcalc.to_tree(t)).body
    return WorkbenchConfig(
        id="lambda",
        name="Animator of a simple lambda calculus language",
        language_name="Lambda calculus with addition",
        parser=lamcalc.parse_term,
        examples=(
            Example("succ", "(\\x -> x + 1) 2", "Adds 1 to number 2"),
            Example("strategies", "(\\x -> 1) (2 + 3)",
                    "Lazy and strict evaluation take different routes"),
            Example("compare", "((\\x -> x) (1 + 1)) ((\\x -> x + 1) 1)",
                    "For the bisimulation widget: both sides reduce to 2 the same way"),
            Example("if0", "if0 (\\x -> x) 0 then 1 else 2",
                    "A conditional whose guard still needs a step"),
            Example("grow", "(\\x -> x x x) (\\x -> x x x)",
                    "Grows forever: exploration truncates"),
        ),
        widgets=(
            Widget("View parsed data", ViewWidget(repr, "text")),
            Widget("View pretty data", ViewWidget(pretty, "code", "haskell")),
            Widget("Diagram of the structure", ViewWidget(mermaid_of, "mermaid")),
            Widget("Run semantics",
                   StepsWidget(lambda t: t, lamcalc.FULL, pretty, "text")),
            Widget("Run semantics (with diagrams)",
                   StepsWidget(lambda t: t, lamcalc.FULL, mermaid_of, "mermaid")),
            Widget("Build LTS", LtsWidget(lambda t: t, lamcalc.FULL, pretty)),
            Widget("Build LTS - Lazy Evaluation",
                   LtsWidget(lambda t: t, lamcalc.LAZY, pretty)),
            Widget("Build LTS - Strict Evaluation",
                   LtsWidget(lambda t: t, lamcalc.STRICT, pretty)),
            Widget("Find bisimulation: given 'A B', check if 'A ~ B'",
                   BisimWidget(lamcalc.FULL, lamcalc.FULL,
                               _lambda_split(0), _lambda_split(1), pretty, pretty)),
        ),
    )


def _while_init(cmd):
    return whilelang.WhileConfig(cmd, whilelang.Store())


def _while_big_step(cmd) -> str:
    result = whilelang.big_step(cmd, whilelang.Store(), fuel=10000)
    if isinstance(result, whilelang.Store):
        return f"final store: {result}"
    if isinstance(result, whilelang.NonTermination):
        return f"no result after {result.fuel} loop iterations"
    return str(result)


def _while_wp(cmd) -> str:
    result = whilelang.wp(cmd, whilelang.Bool(True))
    lines = [f"precondition: {whilelang.pretty(result.precondition)}"]
    lines += [f"obligation: {whilelang.pretty(ob)}" for ob in result.obligations]
    return "\n".join(lines)


def while_config() -> WorkbenchConfig:
    pretty = whilelang.pretty
    mermaid_of = lambda c: ast_to_mermaid(whilelang.to_tree(c)).body
    return WorkbenchConfig(
        id="while",
        name="Animator of a simple while-language",
        language_name="While language with contracts",
        parser=whilelang.parse_while,
        examples=(
            Example("swap", "x := 1; y := 2; t := x; x := y; y := t",
                    "Swap two variables via a temporary"),
            Example("countdown", "x := 3; while 0 < x inv 0 <= x do x := x - 1",
                    "A loop with an invariant annotation"),
            Example("checked-abs",
                    "x := 0 - 3; if x < 0 then y := 0 - x else y := x; assert 0 <= y",
                    "Absolute value with a contract"),
            Example("warns", "y := x",
                    "Triggers the read-before-assignment warning"),
            Example("loop-forever", "x := 0; while tt do x := x + 1",
                    "An infinite loop: exploration truncates"),
        ),
        widgets=(
            Widget("View parsed data", ViewWidget(repr, "text")),
            Widget("View pretty data", ViewWidget(pretty, "code", "python")),
            Widget("Diagram of the structure", ViewWidget(mermaid_of, "mermaid")),
            Widget("Run small-step semantics",
                   StepsWidget(_while_init, whilelang.SMALL_STEP, str, "text")),
            Widget("Build LTS", LtsWidget(_while_init, whilelang.SMALL_STEP, str)),
            Widget("Big-step result", ViewWidget(_while_big_step, "text")),
            Widget("Weakest precondition", ViewWidget(_while_wp, "text")),
            Widget("Check", CheckWidget(whilelang.check_cmd)),
        ),
    )


def _choreo_init(c):
    return choreo.normalize(c)


def _composed_sem(c):
    return choreo.compose(c)[0]


def _composed_init(c):
    return choreo.compose(c)[1]


def _projections_view(c) -> str:
    names = choreo.agents(c)
    if not names:
        return "(no agents)"
    return "\n".join(f"{name}: {choreo.pretty(choreo.project(c, name))}" for name in names)


def choreo_config() -> WorkbenchConfig:
    pretty = choreo.pretty
    mermaid_of = lambda c: ast_to_mermaid(choreo.to_tree(c)).body
    return WorkbenchConfig(
        id="choreo",
        name="Animator of a choreography language",
        language_name="Choreographies",
        parser=choreo.parse_choreo,
        examples=(
            Example("workers",
                    "ctr->wrk1:Work;ctr->wrk2:Work;(wrk1->ctr:Done||wrk2->ctr:Done)",
                    "A controller delegates work to two workers"),
            Example("handshake", "a->b:x", "A single interaction"),
            Example("unrealisable", "a->b:x + a->c:y",
                    "A choice only the sender learns about"),
        ),
        widgets=(
            Widget("View parsed data", ViewWidget(repr, "text")),
            Widget("View pretty data", ViewWidget(pretty, "code", "text")),
            Widget("Diagram of the structure", ViewWidget(mermaid_of, "mermaid")),
            Widget("Run global semantics",
                   StepsWidget(_choreo_init, choreo.GLOBAL, pretty, "text")),
            Widget("Global LTS", LtsWidget(_choreo_init, choreo.GLOBAL, pretty)),
            Widget("Projections", ViewWidget(_projections_view, "text")),
            Widget("Composed local semantics",
                   LtsWidget(_composed_init, _composed_sem, str)),
            Widget("Realisability via bisimulation",
                   BisimWidget(choreo.GLOBAL, _composed_sem,
                               _choreo_init, _composed_init, pretty, str)),
            Widget("Trace equivalence (global vs composed)",
                   TraceWidget(choreo.GLOBAL, _composed_sem,
                               _choreo_init, _composed_init)),
        ),
    )


def default_registry() -> Registry:
    registry = Registry()
    registry.register(while_config())
    registry.register(lambda_config())
    registry.register(choreo_config())
    return registry
