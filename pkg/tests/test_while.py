import random

import pytest

from sosw import EvalError, ParseError
from sosw import whilelang as W

from helpers import (
    random_bexp,
    random_loopfree_cmd,
    random_store,
    random_terminating_cmd,
    run_small_steps,
)


def parse(text):
    return W.parse_while(text)


class TestParser:
    def test_skip(self):
        assert parse("skip") == W.Skip()

    def test_sequence(self):
        assert parse("x := 2; x := x + 1") == W.Seq(
            W.Assign("x", W.Num(2)),
            W.Assign("x", W.Bin("+", W.Var("x"), W.Num(1))),
        )

    def test_while_without_invariant(self):
        assert parse("while x < 3 do x := x + 1") == W.While(
            W.Cmp("<", W.Var("x"), W.Num(3)),
            None,
            W.Assign("x", W.Bin("+", W.Var("x"), W.Num(1))),
        )

    def test_while_with_invariant(self):
        cmd = parse("while x < 3 inv 0 <= x do x := x + 1")
        assert cmd.invariant == W.Cmp("<=", W.Num(0), W.Var("x"))

    def test_precedence(self):
        assert parse("x := 1 + 2 * 3") == W.Assign(
            "x", W.Bin("+", W.Num(1), W.Bin("*", W.Num(2), W.Num(3)))
        )

    def test_blocks_and_parens(self):
        braces = parse("if tt then { x := 1; y := 2 } else skip")
        parens = parse("if tt then (x := 1; y := 2) else skip")
        assert braces == parens
        assert isinstance(braces.then, W.Seq)

    def test_boolean_layers(self):
        cond = parse("if not x = 1 and tt or ff then skip else skip").cond
        assert cond == W.Or(
            W.And(W.Not(W.Cmp("=", W.Var("x"), W.Num(1))), W.Bool(True)),
            W.Bool(False),
        )

    def test_parenthesised_comparison_operand(self):
        cond = parse("if (x + 1) < 2 then skip else skip").cond
        assert cond == W.Cmp("<", W.Bin("+", W.Var("x"), W.Num(1)), W.Num(2))

    def test_error_position(self):
        with pytest.raises(ParseError) as err:
            parse("x := ")
        assert (err.value.line, err.value.col) == (1, 6)

    def test_roundtrip_random_commands(self):
        rng = random.Random(47)
        for _ in range(300):
            cmd = random_terminating_cmd(rng)
            assert parse(W.pretty(cmd)) == cmd

    def test_pretty_is_bit_stable(self):
        for text in (
            "skip",
            "x := 2; x := x + 1",
            "while x < 3 do x := x + 1",
            "if ff then (skip; while ff do skip) else skip",
            "assert 0 <= y",
        ):
            assert W.pretty(parse(text)) == text


class TestSmallStep:
    def test_skip_is_terminal(self):
        assert W.small_step(W.WhileConfig(parse("skip"), W.Store())) == set()

    def test_assignment_steps_to_terminal(self):
        ((label, cfg),) = W.small_step(W.WhileConfig(parse("x := 2+1"), W.Store()))
        assert label == "asg[x:=3]"
        assert cfg == W.WhileConfig(None, W.Store({"x": 3}))

    def test_loop_unfolds_to_conditional(self):
        ((label, cfg),) = W.small_step(W.WhileConfig(parse("while ff do skip"), W.Store()))
        assert label == "while-unfold"
        assert W.pretty(cfg.cmd) == "if ff then (skip; while ff do skip) else skip"
        assert cfg.store == W.Store()

    def test_assert_labels(self):
        ((ok_label, ok_cfg),) = W.small_step(W.WhileConfig(parse("assert tt"), W.Store()))
        assert ok_label == "assert-ok" and not ok_cfg.failed
        ((bad_label, bad_cfg),) = W.small_step(W.WhileConfig(parse("assert ff"), W.Store()))
        assert bad_label == "assert-fail" and bad_cfg.failed
        assert W.small_step(bad_cfg) == set()
        assert not W.SMALL_STEP.accepting(bad_cfg)

    def test_determinism(self):
        rng = random.Random(53)
        for _ in range(200):
            cfg = W.WhileConfig(random_terminating_cmd(rng), random_store(rng))
            assert len(W.small_step(cfg)) <= 1

    def test_unbound_variable(self):
        with pytest.raises(EvalError):
            W.small_step(W.WhileConfig(parse("y := x"), W.Store()))


class TestBigStep:
    def test_skip(self):
        store = W.Store({"a": 1})
        assert W.big_step(parse("skip"), store) == store

    def test_two_assignments(self):
        assert W.big_step(parse("x := 2; x := x + 1"), W.Store()) == W.Store({"x": 3})

    def test_nontermination(self):
        assert W.big_step(parse("while tt do skip"), W.Store(), fuel=100) == W.NonTermination(100)

    def test_assert_failure_carries_evidence(self):
        result = W.big_step(parse("x := 1; assert x = 2"), W.Store())
        assert isinstance(result, W.AssertFailure)
        assert result.store == W.Store({"x": 1})
        assert W.pretty(result.cond) == "x = 2"

    def test_agreement_with_small_step(self):
        rng = random.Random(59)
        for _ in range(200):
            cmd = random_terminating_cmd(rng)
            store = random_store(rng)
            big = W.big_step(cmd, store, fuel=10000)
            final = run_small_steps(cmd, store)
            assert isinstance(big, W.Store)
            assert final.cmd is None or isinstance(final.cmd, W.Skip)
            assert final.store == big


class TestWp:
    def test_skip_is_identity(self):
        post = random_bexp(random.Random(61), 2)
        assert W.wp(parse("skip"), post) == W.WpResult(post, ())

    def test_assignment_substitutes(self):
        post = parse("assert x <= 5").cond
        result = W.wp(parse("x := x + 1"), post)
        assert W.pretty(result.precondition) == "x + 1 <= 5"

    def test_conditional_shape(self):
        result = W.wp(parse("if x < 0 then y := 0 - x else y := x"),
                      parse("assert 0 <= y").cond)
        assert W.pretty(result.precondition) == "(x < 0 => 0 <= 0 - x) and (not x < 0 => 0 <= x)"
        assert result.obligations == ()

    def test_annotated_loop_obligations(self):
        result = W.wp(parse("while 0 < x inv 0 <= x do x := x - 1"),
                      parse("assert x = 0").cond)
        assert W.pretty(result.precondition) == "0 <= x"
        assert [W.pretty(ob) for ob in result.obligations] == [
            "0 <= x and 0 < x => 0 <= x - 1",
            "0 <= x and not 0 < x => x = 0",
        ]

    def test_unannotated_loop_is_an_error(self):
        with pytest.raises(W.WpError):
            W.wp(parse("while tt do skip"), W.Bool(True))

    def test_only_listed_simplifications(self):
        assert W.wp(parse("assert tt"), parse("assert x = 1").cond).precondition == \
            parse("assert x = 1").cond
        kept = W.wp(parse("assert x = 1"), W.Bool(False)).precondition
        assert W.pretty(kept) == "x = 1 and ff"

    def test_evaluation_oracle(self):
        rng = random.Random(67)
        for _ in range(150):
            cmd = random_loopfree_cmd(rng, 3, allow_assert=True)
            post = random_bexp(rng, 2)
            store = random_store(rng)
            pre_holds = W.eval_bexp(W.wp(cmd, post).precondition, store)
            outcome = W.big_step(cmd, store)
            runs_and_post = isinstance(outcome, W.Store) and W.eval_bexp(post, outcome)
            assert pre_holds == runs_and_post


class TestCheck:
    def test_clean_program(self):
        assert W.check_cmd(parse("x := 1; y := x")) == []

    def test_read_before_assignment(self):
        assert W.check_cmd(parse("y := x")) == ["variable 'x' may be read before assignment"]

    def test_unannotated_loop_warning(self):
        assert W.check_cmd(parse("while tt do skip")) == ["loop without invariant annotation"]

    def test_branch_assignments_intersect(self):
        warnings = W.check_cmd(parse("if tt then x := 1 else skip; y := x"))
        assert warnings == ["variable 'x' may be read before assignment"]

    def test_both_branches_assign(self):
        assert W.check_cmd(parse("if tt then x := 1 else x := 2; y := x")) == []

    def test_loop_body_checked_once(self):
        warnings = W.check_cmd(parse("while tt inv tt do y := x"))
        assert warnings == ["variable 'x' may be read before assignment"]
