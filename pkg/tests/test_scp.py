"""Size-change conditions and loop selection."""

from conftest import annotated_groups
from totality.callgraph import (
    build_callgraph,
    call_of_term,
    transitive_closure,
)
from totality.scp import (
    check_condition1,
    check_condition2,
    check_loops,
    is_checked_loop,
)
from totality.terms import parse_term


def t(text):
    return parse_term(text)


def loop(text, fname="f"):
    return call_of_term(fname, t(text), {fname})


def closure_for(name, bound_b, bound_d, index=None):
    groups = annotated_groups(name)
    if index is None:
        index = len(groups) - 1
    analyzed, _ = groups[index]
    return transitive_closure(build_callgraph(analyzed.defs, bound_b, bound_d))


def find_loop(closure, text):
    target = t(text)
    for edge in closure.edges:
        if edge.term == target:
            return edge
    raise AssertionError("loop %s not in closure" % text)


class TestCondition1:
    def test_stream_loop_produces_at_zero(self):
        closure = closure_for("nats.ch", 1, 1)
        rho = find_loop(closure, "{Tail@0 = <{0:-1}> nats(Succ@1 <{1:inf}> x1)}")
        assert check_condition1(rho) == 0

    def test_odd_debt_above_blocks(self):
        closure = closure_for("bad_s.ch", 1, 1)
        rho11 = find_loop(closure, "{Head@0 = <{0:-1,1:-1}> bad_s()}")
        assert check_condition1(rho11) is None

    def test_empty_spine_gives_nothing(self):
        assert check_condition1(loop("f(x1)")) is None

    def test_infinity_is_not_negative(self):
        assert check_condition1(loop("{Tail@0 = <{0:inf}> f(x1)}")) is None

    def test_infinity_above_counts_nonnegative(self):
        call = loop("{Tail@0 = <{0:-1,2:inf}> f(x1)}")
        assert check_condition1(call) == 0

    def test_daimon_on_spine_defeats(self):
        assert check_condition1(loop("? f(<{1:-1}> x1)")) is None


class TestCondition2:
    def test_length_consumes_its_argument(self):
        closure = closure_for("length.ch", 1, 0)
        rho = find_loop(closure, "<{1:-1}> length(<{0:-1,1:-1}> x1)")
        index, branch, priority = check_condition2(rho)
        assert (index, priority) == (1, 1)
        assert check_condition1(rho) is None

    def test_no_arguments_no_witness(self):
        closure = closure_for("bad_s.ch", 1, 1)
        rho21 = find_loop(closure, "{Tail@0 = <{0:-1,1:-1}> bad_s()}")
        assert check_condition2(rho21) is None

    def test_sums_second_loop(self):
        closure = closure_for("sums.ch", 1, 1)
        for edge in closure.edges:
            witness = check_condition2(edge)
            if witness and not edge.spine:
                index, _, priority = witness
                assert (index, priority) == (2, 1)
                break
        else:
            raise AssertionError("no argument-consuming bare loop found")

    def test_branch_must_return_to_same_parameter(self):
        # argument 1 shrinks x2, argument 2 shrinks x1: no branch stacks
        call = loop("f(<{1:-1}> x2, <{1:-1}> x1)")
        assert check_condition2(call) is None

    def test_infinity_never_witnesses(self):
        call = loop("f(<{1:inf}> x1)")
        assert check_condition2(call) is None


class TestCheckedLoops:
    def test_stream_loop_checked(self):
        closure = closure_for("nats.ch", 1, 1)
        rho = find_loop(closure, "{Tail@0 = <{0:-1}> nats(Succ@1 <{1:inf}> x1)}")
        assert is_checked_loop(rho, 1, 1)

    def test_bad_s_loops_checked(self):
        closure = closure_for("bad_s.ch", 1, 1)
        rho11 = find_loop(closure, "{Head@0 = <{0:-1,1:-1}> bad_s()}")
        assert is_checked_loop(rho11, 1, 1)

    def test_incompatible_loop_skipped(self):
        closure = closure_for("c1c2.ch", 1, 1)
        (alpha,) = closure.edges
        assert not is_checked_loop(alpha, 1, 1)

    def test_check_loops_aggregates(self):
        outcome = check_loops(closure_for("bad_s.ch", 1, 1))
        assert not outcome.total
        texts = [str(f) for f in outcome.failures]
        assert any("<{0:-1,1:-1}>" in s for s in texts)

    def test_total_group(self):
        outcome = check_loops(closure_for("nats.ch", 1, 1))
        assert outcome.total and outcome.checked_loops >= 1
