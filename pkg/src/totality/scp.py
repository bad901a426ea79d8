"""Size-change verdicts for the loops of a closed call graph.

A self-loop only needs checking when its self-composition is compatible
with it (otherwise the loop cannot repeat forever).  A checked loop must
either produce output at some even priority that dominates everything the
loop does above it, or consume one of its own arguments at a dominating
odd priority.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .callgraph import Call, CallGraph, compose_calls
from .order import branch_weight, branches, sqcoh
from .terms import term_str


@dataclass
class LoopFailure:
    loop: Call
    explanation: str

    def __str__(self) -> str:
        return "loop %s %s" % (term_str(self.loop.term), self.explanation)


@dataclass
class GroupOutcome:
    total: bool
    failures: list = field(default_factory=list)
    checked_loops: int = 0


def _dominant(weight, parity: int):
    """Least priority of the given parity that is strictly negative while
    nothing above it is; None when there is none.  An infinite component is
    never negative and always counts as nonnegative."""
    support = sorted(set(weight.priorities()))
    for p in support:
        if p % 2 != parity:
            continue
        if not weight.get(p) < 0:
            continue
        if all(weight.get(q) >= 0 for q in support if q > p):
            return p
    return None


def check_condition1(call: Call):
    """Even priority at which the loop spine guarantees output, or None.

    A Daimon on the spine destroys any output guarantee.
    """
    spine = call.spine_branch()
    if spine is None:
        return None
    return _dominant(branch_weight(spine, dual=True), 0)


def check_condition2(call: Call):
    """(argument index, branch, odd priority) for a self-decreasing
    argument, or None.

    Only branches feeding an argument from the same parameter index count:
    those are the ones that stack up when the loop repeats.
    """
    for index, arg in enumerate(call.args, start=1):
        for br in branches(arg):
            if br.items[-1] != ("x", index):
                continue
            p = _dominant(branch_weight(br), 1)
            if p is not None:
                return index, br, p
    return None


def is_checked_loop(call: Call, bound_b: int, bound_d: int) -> bool:
    """A loop is checked when its self-composition is compatible with it;
    a loop whose self-composition errors out cannot repeat."""
    candidates = compose_calls(call, call, bound_b, bound_d)
    return any(sqcoh(call.term, c.term) for c in candidates)


def check_loops(closure: CallGraph) -> GroupOutcome:
    outcome = GroupOutcome(total=True)
    for loop in closure.loops():
        if not is_checked_loop(loop, closure.bound_b, closure.bound_d):
            continue
        outcome.checked_loops += 1
        if check_condition1(loop) is not None:
            continue
        if check_condition2(loop) is not None:
            continue
        outcome.total = False
        outcome.failures.append(LoopFailure(
            loop, "fails both size-change conditions"))
    return outcome
