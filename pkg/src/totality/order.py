"""Branch weights, the syntax-directed order on normal forms, and the
weak-coherence check used to select which loops must be analysed."""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    Approx,
    Constr,
    ConstrDual,
    Daimon,
    FunApp,
    InternalError,
    Param,
    Project,
    Record,
    Sum,
    Term,
    Unknown,
    Weight,
    ZEROW,
    approx,
    coef_leq,
    daimon,
    summands,
    weight,
    weight_add,
)

# branch items: ("c", name, p) constructor, ("r", name, p) record field,
# ("d", name, p) constructor-destructor, ("j", name, p) projection,
# ("w", Weight) approximation, ("x", i) parameter end, ("daimon",)


@dataclass(frozen=True)
class Branch:
    items: tuple


def branches(t: Term) -> list[Branch]:
    """All root-to-parameter paths of a call-free normal form.

    Paths that run into a Daimon or the unknown leaf carry no usable size
    information and are dropped.
    """
    out: list[Branch] = []
    _walk(t, (), out)
    return out


def _walk(t: Term, acc: tuple, out: list) -> None:
    if isinstance(t, Sum):
        for p in t.parts:
            _walk(p, acc, out)
        return
    if isinstance(t, Param):
        out.append(Branch(acc + (("x", t.index),)))
        return
    if isinstance(t, (Unknown, Daimon)):
        return
    if isinstance(t, Constr):
        _walk(t.arg, acc + (("c", t.name, t.priority),), out)
        return
    if isinstance(t, Record):
        for name, value in t.fields:
            _walk(value, acc + (("r", name, t.priority),), out)
        return
    if isinstance(t, ConstrDual):
        _walk(t.arg, acc + (("d", t.name, t.priority),), out)
        return
    if isinstance(t, Project):
        _walk(t.arg, acc + (("j", t.name, t.priority),), out)
        return
    if isinstance(t, Approx):
        _walk(t.arg, acc + (("w", t.wt),), out)
        return
    if isinstance(t, FunApp):
        raise InternalError("branches of a term containing a call")
    raise InternalError("unknown term node %r" % (t,))


def branch_weight(branch: Branch, dual: bool = False) -> Weight:
    """Net weight of a branch.

    Constructors and record fields count +1 at their priority, destructors
    and projections -1, stored approximations add their weight; with
    ``dual`` the structural signs flip (used on call spines, whose stored
    weights already follow the flipped convention).
    """
    sign = -1 if dual else 1
    total = ZEROW
    for item in branch.items:
        kind = item[0]
        if kind in ("c", "r"):
            total = weight_add(total, weight({item[2]: sign}))
        elif kind in ("d", "j"):
            total = weight_add(total, weight({item[2]: -sign}))
        elif kind == "w":
            total = weight_add(total, item[1])
    return total


# ---------------------------------------------------------------------------
# syntax-directed order on normal forms

_SLEQ_CACHE: dict = {}


def sleq(s: Term, t: Term) -> bool:
    """Decide s <= t for normal forms s, t."""
    key = (s, t)
    hit = _SLEQ_CACHE.get(key)
    if hit is not None:
        return hit
    result = _sleq(s, t)
    _SLEQ_CACHE[key] = result
    return result


def _sleq(s: Term, t: Term) -> bool:
    if s == t:
        return True
    # sums: every summand of t is bounded by some summand of s
    if isinstance(t, Sum):
        return all(sleq(s, tj) for tj in t.parts)
    if isinstance(s, Sum):
        if any(sleq(si, t) for si in s.parts):
            return True
        # a sum of Daimon-headed terms may be routed below t collectively
        if (s.parts and all(isinstance(si, Daimon) for si in s.parts)
                and not isinstance(t, Daimon)):
            return sleq(s, daimon(t))
        return False
    if isinstance(s, Param) or isinstance(s, Unknown):
        return False  # equality already handled
    if isinstance(s, FunApp):
        return (isinstance(t, FunApp) and s.fname == t.fname
                and len(s.args) == len(t.args)
                and all(sleq(a, b) for a, b in zip(s.args, t.args)))
    if isinstance(s, Constr):
        return (isinstance(t, Constr) and s.name == t.name
                and s.priority == t.priority and sleq(s.arg, t.arg))
    if isinstance(s, Record):
        return (isinstance(t, Record) and s.priority == t.priority
                and [n for n, _ in s.fields] == [n for n, _ in t.fields]
                and all(sleq(a, b)
                        for (_, a), (_, b) in zip(s.fields, t.fields)))
    if isinstance(s, ConstrDual):
        return (isinstance(t, ConstrDual) and s.name == t.name
                and s.priority == t.priority and sleq(s.arg, t.arg))
    if isinstance(s, Project):
        return (isinstance(t, Project) and s.name == t.name
                and s.priority == t.priority and sleq(s.arg, t.arg))
    if isinstance(s, Daimon):
        if isinstance(t, Daimon):
            # strip any destructor / call prefix from t's body
            return any(sleq(s.arg, tail) for tail in _strip_prefixes(t.arg))
        return sleq(s, daimon(t))
    if isinstance(s, Approx):
        if isinstance(t, Approx):
            for delta, tail in _dtor_splits(t.arg):
                lifted = approx(t.wt, _rewrap(delta, approx(ZEROW, tail)))
                if (isinstance(lifted, Approx) and lifted.arg == tail
                        and coef_leq(s.wt, lifted.wt) and sleq(s.arg, tail)):
                    return True
            return False
        if isinstance(t, Daimon):
            return False  # wrapping t in a zero weight makes no progress
        return sleq(s, approx(ZEROW, t))
    raise InternalError("unknown term node %r" % (s,))


def _strip_prefixes(t: Term):
    """All tails of t reachable by removing destructors and calls."""
    yield t
    if isinstance(t, (ConstrDual, Project)):
        yield from _strip_prefixes(t.arg)
    elif isinstance(t, FunApp):
        for a in t.args:
            yield from _strip_prefixes(a)


def _dtor_splits(t: Term):
    """Decompositions of t as destructor-prefix plus tail."""
    yield (), t
    if isinstance(t, (ConstrDual, Project)):
        for delta, tail in _dtor_splits(t.arg):
            yield (t,) + delta, tail


def _rewrap(delta, inner: Term) -> Term:
    from .terms import constr_dual, project

    out = inner
    for node in reversed(delta):
        if isinstance(node, ConstrDual):
            out = constr_dual(node.name, node.priority, out)
        else:
            out = project(node.name, node.priority, out)
    return out


# ---------------------------------------------------------------------------
# weak coherence

_SQCOH_CACHE: dict = {}


def sqcoh(u: Term, v: Term) -> bool:
    """Weak compatibility of two normal forms; loops whose self-composition
    is compatible with the loop must satisfy the size-change conditions."""
    key = (u, v)
    hit = _SQCOH_CACHE.get(key)
    if hit is not None:
        return hit
    result = _sqcoh(u, v)
    _SQCOH_CACHE[key] = result
    return result


def _sqcoh(u: Term, v: Term) -> bool:
    if isinstance(u, Sum) or isinstance(v, Sum):
        return any(sqcoh(a, b) for a in summands(u) for b in summands(v))
    if isinstance(u, Daimon) and isinstance(v, Daimon):
        # destructor and call prefixes strip on either side, as in the
        # corresponding rule of the order
        for tail in _strip_prefixes(u.arg):
            if sqcoh(tail, v.arg):
                return True
        for tail in _strip_prefixes(v.arg):
            if sqcoh(u.arg, tail):
                return True
        return False
    if isinstance(u, Approx) or isinstance(v, Approx) \
            or isinstance(u, Daimon) or isinstance(v, Daimon):
        du, dv = daimon(u), daimon(v)
        if (du, dv) == (u, v):
            return False
        return sqcoh(du, dv)
    if isinstance(u, Param):
        return isinstance(v, Param) and u.index == v.index
    if isinstance(u, Unknown):
        return isinstance(v, Unknown)
    if isinstance(u, Constr):
        return (isinstance(v, Constr) and u.name == v.name
                and u.priority == v.priority and sqcoh(u.arg, v.arg))
    if isinstance(u, ConstrDual):
        return (isinstance(v, ConstrDual) and u.name == v.name
                and u.priority == v.priority and sqcoh(u.arg, v.arg))
    if isinstance(u, Project):
        return (isinstance(v, Project) and u.name == v.name
                and u.priority == v.priority and sqcoh(u.arg, v.arg))
    if isinstance(u, FunApp):
        return (isinstance(v, FunApp) and u.fname == v.fname
                and len(u.args) == len(v.args)
                and all(sqcoh(a, b) for a, b in zip(u.args, v.args)))
    if isinstance(u, Record):
        return (isinstance(v, Record) and u.priority == v.priority
                and [n for n, _ in u.fields] == [n for n, _ in v.fields]
                and all(sqcoh(a, b)
                        for (_, a), (_, b) in zip(u.fields, v.fields)))
    raise InternalError("unknown term node %r" % (u,))
