"""Approximated operator terms and their canonical (normal) forms.

Every ``Term`` in this package is kept in canonical form at all times:
sums are flattened, deduplicated and sorted, term formers distribute over
sums (multilinearity, so a term containing an empty sum collapses to ZERO),
record fields are sorted by name, and all head reductions between
destructors, constructors, the Daimon and weight approximations have been
applied.  Construction therefore goes through the smart constructors
(`constr`, `record`, `project`, ... ) below; the raw dataclasses are only
instantiated by this module.

Weight absorption is direction sensitive: inside the part of a term that
sits *above* a function application (the output side of a recursive call)
constructors absorbed into a weight count -1 and destructors +1, while
everywhere else the usual signs apply (+1 for an absorbed constructor,
-1 for a destructor).  A negative entry on the output side therefore reads
"at least that many constructors are guaranteed to be produced", and a
negative entry on the argument side reads "at least that many constructors
have been consumed".
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

INF = float("inf")

ZInf = float  # int or INF; finite values are always ints


class InternalError(Exception):
    """A structural invariant of the analysis was violated."""


# ---------------------------------------------------------------------------
# weights

@dataclass(frozen=True)
class Weight:
    """Finite map from priority to Z-infinity; missing priorities are 0."""

    items: tuple[tuple[int, ZInf], ...] = ()

    def get(self, priority: int) -> ZInf:
        for p, v in self.items:
            if p == priority:
                return v
        return 0

    def priorities(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.items)

    def is_zero(self) -> bool:
        return not self.items

    def __str__(self) -> str:
        body = ",".join(
            "%d:%s" % (p, "inf" if v == INF else str(v)) for p, v in self.items
        )
        return "{%s}" % body


ZEROW = Weight()


def weight(entries=()) -> Weight:
    """Build a Weight from a mapping or iterable of (priority, value) pairs."""
    if isinstance(entries, Weight):
        return entries
    if hasattr(entries, "items"):
        entries = entries.items()
    kept = sorted((int(p), v) for p, v in entries if v != 0)
    seen = [p for p, _ in kept]
    if len(set(seen)) != len(seen):
        raise ValueError("duplicate priority in weight")
    return Weight(tuple(kept))


def weight_add(a: Weight, b: Weight) -> Weight:
    """Componentwise addition; INF is absorbing."""
    acc = {p: v for p, v in a.items}
    for p, v in b.items:
        acc[p] = acc.get(p, 0) + v
    return weight(acc)


def coef_leq(a: Weight, b: Weight) -> bool:
    """Order used when comparing approximations: pointwise >= on entries.

    The entry order is reversed on purpose: a weight with larger entries
    bounds fewer shapes, hence stands for a smaller (more precise) sum.
    """
    for p in set(a.priorities()) | set(b.priorities()):
        if not a.get(p) >= b.get(p):
            return False
    return True


def zi_leq(a: Weight, b: Weight) -> bool:
    """Pointwise natural order with v <= INF for every v."""
    for p in set(a.priorities()) | set(b.priorities()):
        if not a.get(p) <= b.get(p):
            return False
    return True


# ---------------------------------------------------------------------------
# terms

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Param(Term):
    """Parameter of the caller; 1-based index, printed x1, x2, ..."""

    index: int


@dataclass(frozen=True)
class Unknown(Term):
    """Opaque leaf used for calls of unknown 0-ary functions; printed `_`."""


@dataclass(frozen=True)
class Constr(Term):
    name: str
    priority: int
    arg: Term


@dataclass(frozen=True)
class Record(Term):
    fields: tuple[tuple[str, Term], ...]  # nonempty, sorted by field name
    priority: int


@dataclass(frozen=True)
class ConstrDual(Term):
    """Pattern-matching destructor C-: strips the constructor C."""

    name: str
    priority: int
    arg: Term


@dataclass(frozen=True)
class Project(Term):
    """Record projection .D"""

    name: str
    priority: int
    arg: Term


@dataclass(frozen=True)
class FunApp(Term):
    fname: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Daimon(Term):
    """Defined-but-unknown result; absorbs constructors below and
    destructors above."""

    arg: Term


@dataclass(frozen=True)
class Approx(Term):
    wt: Weight
    arg: Term


@dataclass(frozen=True)
class Sum(Term):
    parts: tuple[Term, ...]  # flat, deduplicated, sorted; () is Zero


ZERO = Sum(())

_TAGS = {
    Param: 0, Unknown: 1, Constr: 2, Record: 3, ConstrDual: 4,
    Project: 5, FunApp: 6, Daimon: 7, Approx: 8, Sum: 9,
}


def sort_key(t: Term):
    tag = _TAGS[type(t)]
    if isinstance(t, Param):
        return (tag, t.index)
    if isinstance(t, Unknown):
        return (tag,)
    if isinstance(t, (Constr, ConstrDual, Project)):
        return (tag, t.name, t.priority, sort_key(t.arg))
    if isinstance(t, Record):
        return (tag, t.priority, tuple((n, sort_key(v)) for n, v in t.fields))
    if isinstance(t, FunApp):
        return (tag, t.fname, tuple(sort_key(a) for a in t.args))
    if isinstance(t, Daimon):
        return (tag, sort_key(t.arg))
    if isinstance(t, Approx):
        return (tag, t.wt.items, sort_key(t.arg))
    return (tag, tuple(sort_key(p) for p in t.parts))


def summands(t: Term) -> tuple[Term, ...]:
    return t.parts if isinstance(t, Sum) else (t,)


@functools.lru_cache(maxsize=None)
def contains_funapp(t: Term) -> bool:
    if isinstance(t, FunApp):
        return True
    if isinstance(t, (Constr, ConstrDual, Project, Daimon, Approx)):
        return contains_funapp(t.arg)
    if isinstance(t, Record):
        return any(contains_funapp(v) for _, v in t.fields)
    if isinstance(t, Sum):
        return any(contains_funapp(p) for p in t.parts)
    return False


def fun_names(t: Term) -> set:
    if isinstance(t, FunApp):
        out = {t.fname}
        for a in t.args:
            out |= fun_names(a)
        return out
    if isinstance(t, (Constr, ConstrDual, Project, Daimon, Approx)):
        return fun_names(t.arg)
    if isinstance(t, Record):
        return set().union(set(), *(fun_names(v) for _, v in t.fields))
    if isinstance(t, Sum):
        return set().union(set(), *(fun_names(p) for p in t.parts))
    return set()


# ---------------------------------------------------------------------------
# smart constructors (the only way terms are built)

def sum_of(parts) -> Term:
    flat: list[Term] = []
    for p in parts:
        flat.extend(summands(p))
    unique = sorted(set(flat), key=sort_key)
    if len(unique) == 1:
        return unique[0]
    return Sum(tuple(unique))


def constr(name: str, priority: int, arg: Term) -> Term:
    if isinstance(arg, Sum):
        return sum_of(constr(name, priority, p) for p in arg.parts)
    return Constr(name, priority, arg)


def record(fields, priority: int) -> Term:
    items = sorted(fields, key=lambda f: f[0])
    if not items:
        raise InternalError("empty record term")
    names = [n for n, _ in items]
    if len(set(names)) != len(names):
        raise InternalError("duplicate record field")
    if any(isinstance(v, Sum) for _, v in items):
        choices = [[(n, s) for s in summands(v)] for n, v in items]
        return sum_of(record(combo, priority) for combo in itertools.product(*choices))
    return Record(tuple(items), priority)


def funapp(fname: str, args) -> Term:
    args = tuple(args)
    if any(isinstance(a, Sum) for a in args):
        choices = [summands(a) for a in args]
        return sum_of(funapp(fname, combo) for combo in itertools.product(*choices))
    return FunApp(fname, args)


def constr_dual(name: str, priority: int, arg: Term) -> Term:
    if isinstance(arg, Sum):
        return sum_of(constr_dual(name, priority, p) for p in arg.parts)
    if isinstance(arg, Constr):
        return arg.arg if arg.name == name else ZERO
    if isinstance(arg, Record):
        return ZERO
    if isinstance(arg, Daimon):
        return arg
    if isinstance(arg, Approx):
        delta = 1 if contains_funapp(arg.arg) else -1
        return approx(weight_add(arg.wt, weight({priority: delta})), arg.arg)
    return ConstrDual(name, priority, arg)


def project(name: str, priority: int, arg: Term) -> Term:
    if isinstance(arg, Sum):
        return sum_of(project(name, priority, p) for p in arg.parts)
    if isinstance(arg, Record):
        for fname, value in arg.fields:
            if fname == name:
                return value
        return ZERO
    if isinstance(arg, Constr):
        return ZERO
    if isinstance(arg, Daimon):
        return arg
    if isinstance(arg, Approx):
        delta = 1 if contains_funapp(arg.arg) else -1
        return approx(weight_add(arg.wt, weight({priority: delta})), arg.arg)
    return Project(name, priority, arg)


def daimon(arg: Term) -> Term:
    if isinstance(arg, Sum):
        return sum_of(daimon(p) for p in arg.parts)
    if isinstance(arg, Constr):
        return daimon(arg.arg)
    if isinstance(arg, Record):
        return sum_of(daimon(v) for _, v in arg.fields)
    if isinstance(arg, Daimon):
        return arg
    if isinstance(arg, Approx):
        return daimon(arg.arg)
    return Daimon(arg)


def approx(wt: Weight, arg: Term) -> Term:
    if isinstance(arg, Sum):
        return sum_of(approx(wt, p) for p in arg.parts)
    if isinstance(arg, Constr):
        delta = -1 if contains_funapp(arg.arg) else 1
        return approx(weight_add(wt, weight({arg.priority: delta})), arg.arg)
    if isinstance(arg, Record):
        if len(arg.fields) == 1 and contains_funapp(arg):
            (_, value), = arg.fields
            return approx(weight_add(wt, weight({arg.priority: -1})), value)
        return sum_of(daimon(v) for _, v in arg.fields)
    if isinstance(arg, Approx):
        return approx(weight_add(wt, arg.wt), arg.arg)
    if isinstance(arg, Daimon):
        return arg
    return Approx(wt, arg)


def rebuild(t: Term) -> Term:
    """Re-run the smart constructors over a raw term, yielding its
    canonical form."""
    if isinstance(t, (Param, Unknown)):
        return t
    if isinstance(t, Sum):
        return sum_of(rebuild(p) for p in t.parts)
    if isinstance(t, Constr):
        return constr(t.name, t.priority, rebuild(t.arg))
    if isinstance(t, Record):
        return record([(n, rebuild(v)) for n, v in t.fields], t.priority)
    if isinstance(t, ConstrDual):
        return constr_dual(t.name, t.priority, rebuild(t.arg))
    if isinstance(t, Project):
        return project(t.name, t.priority, rebuild(t.arg))
    if isinstance(t, FunApp):
        return funapp(t.fname, [rebuild(a) for a in t.args])
    if isinstance(t, Daimon):
        return daimon(rebuild(t.arg))
    if isinstance(t, Approx):
        return approx(t.wt, rebuild(t.arg))
    raise InternalError("unknown term node %r" % (t,))


def nf(t: Term) -> Term:
    """Normal form under the rightmost-first strategy.

    Canonical terms are already normal, so this simply rebuilds; it is the
    entry point for terms coming from the parser or constructed raw.
    """
    return rebuild(t)


def is_normal(t: Term, top: bool = True) -> bool:
    """Check the normal-form grammar: constructors / records above, then at
    most one Daimon or weight, then destructors down to a leaf or call."""
    if isinstance(t, Sum):
        if not top:
            return False
        ps = t.parts
        return (list(ps) == sorted(set(ps), key=sort_key)
                and all(is_normal(p, top=False) for p in ps))
    if isinstance(t, (Param, Unknown)):
        return True
    if isinstance(t, Constr):
        return is_normal(t.arg, top=False)
    if isinstance(t, Record):
        names = [n for n, _ in t.fields]
        return (len(t.fields) > 0 and names == sorted(names)
                and all(is_normal(v, top=False) for _, v in t.fields))
    if isinstance(t, FunApp):
        return all(is_normal(a, top=False) for a in t.args)
    if isinstance(t, (ConstrDual, Project)):
        return (isinstance(t.arg, (ConstrDual, Project, Param, Unknown, FunApp))
                and is_normal(t.arg, top=False))
    if isinstance(t, (Daimon, Approx)):
        return (isinstance(t.arg, (ConstrDual, Project, Param, Unknown, FunApp))
                and is_normal(t.arg, top=False))
    return False


# ---------------------------------------------------------------------------
# substitution and composition

def substitute(t: Term, bindings: dict) -> Term:
    """Simultaneous substitution of parameters; result is canonical."""
    if isinstance(t, Param):
        return bindings.get(t.index, t)
    if isinstance(t, Unknown):
        return t
    if isinstance(t, Sum):
        return sum_of(substitute(p, bindings) for p in t.parts)
    if isinstance(t, Constr):
        return constr(t.name, t.priority, substitute(t.arg, bindings))
    if isinstance(t, Record):
        return record([(n, substitute(v, bindings)) for n, v in t.fields], t.priority)
    if isinstance(t, ConstrDual):
        return constr_dual(t.name, t.priority, substitute(t.arg, bindings))
    if isinstance(t, Project):
        return project(t.name, t.priority, substitute(t.arg, bindings))
    if isinstance(t, FunApp):
        return funapp(t.fname, [substitute(a, bindings) for a in t.args])
    if isinstance(t, Daimon):
        return daimon(substitute(t.arg, bindings))
    if isinstance(t, Approx):
        return approx(t.wt, substitute(t.arg, bindings))
    raise InternalError("unknown term node %r" % (t,))


def compose(t1: Term, t2: Term, fname: str) -> Term:
    """Plug t2 in for every application of `fname` inside t1.

    An application fname(a1, ..., an) is replaced by t2 with its parameter
    xj substituted by (aj composed with t2); every other node commutes.
    """
    if isinstance(t1, (Param, Unknown)):
        return t1
    if isinstance(t1, Sum):
        return sum_of(compose(p, t2, fname) for p in t1.parts)
    if isinstance(t1, FunApp):
        if t1.fname == fname:
            bindings = {
                j + 1: compose(a, t2, fname) for j, a in enumerate(t1.args)
            }
            return substitute(t2, bindings)
        return funapp(t1.fname, [compose(a, t2, fname) for a in t1.args])
    if isinstance(t1, Constr):
        return constr(t1.name, t1.priority, compose(t1.arg, t2, fname))
    if isinstance(t1, Record):
        return record(
            [(n, compose(v, t2, fname)) for n, v in t1.fields], t1.priority
        )
    if isinstance(t1, ConstrDual):
        return constr_dual(t1.name, t1.priority, compose(t1.arg, t2, fname))
    if isinstance(t1, Project):
        return project(t1.name, t1.priority, compose(t1.arg, t2, fname))
    if isinstance(t1, Daimon):
        return daimon(compose(t1.arg, t2, fname))
    if isinstance(t1, Approx):
        return approx(t1.wt, compose(t1.arg, t2, fname))
    raise InternalError("unknown term node %r" % (t1,))


# ---------------------------------------------------------------------------
# textual notation
#
#   x1   C@1 t   {D@0 = t; E@0 = t}   C-@1 t   .D@0 t   f(t, t)
#   ? t  <{0:-1,1:inf}> t   t + t   0   _

def term_str(t: Term) -> str:
    if isinstance(t, Sum):
        if not t.parts:
            return "0"
        return " + ".join(term_str(p) for p in t.parts)
    if isinstance(t, Param):
        return "x%d" % t.index
    if isinstance(t, Unknown):
        return "_"
    if isinstance(t, Constr):
        return "%s@%d %s" % (t.name, t.priority, _sub_str(t.arg))
    if isinstance(t, ConstrDual):
        return "%s-@%d %s" % (t.name, t.priority, _sub_str(t.arg))
    if isinstance(t, Project):
        return ".%s@%d %s" % (t.name, t.priority, _sub_str(t.arg))
    if isinstance(t, Record):
        body = "; ".join(
            "%s@%d = %s" % (n, t.priority, term_str(v)) for n, v in t.fields
        )
        return "{%s}" % body
    if isinstance(t, FunApp):
        return "%s(%s)" % (t.fname, ", ".join(term_str(a) for a in t.args))
    if isinstance(t, Daimon):
        return "? %s" % _sub_str(t.arg)
    if isinstance(t, Approx):
        return "<%s> %s" % (t.wt, _sub_str(t.arg))
    raise InternalError("unknown term node %r" % (t,))


def _sub_str(t: Term) -> str:
    if isinstance(t, Sum) and len(summands(t)) != 1:
        return "(%s)" % term_str(t)
    return term_str(t)


class NotationError(ValueError):
    pass


class _TermParser:
    def __init__(self, text: str):
        self.toks = self._lex(text)
        self.pos = 0

    @staticmethod
    def _lex(text):
        toks, i = [], 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
                continue
            if c.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("int", text[i:j]))
                i = j
                continue
            if c.isalpha() or c == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                    j += 1
                toks.append(("name", text[i:j]))
                i = j
                continue
            if c in "@{}<>().,;=+?:-":
                toks.append((c, c))
                i += 1
                continue
            raise NotationError("unexpected character %r" % c)
        toks.append(("eof", ""))
        return toks

    def peek(self):
        return self.toks[self.pos][0]

    def next(self, kind=None):
        k, v = self.toks[self.pos]
        if kind is not None and k != kind:
            raise NotationError("expected %r, found %r" % (kind, v or k))
        self.pos += 1
        return v

    def parse(self) -> Term:
        t = self.parse_sum()
        if self.peek() != "eof":
            raise NotationError("trailing input")
        return t

    def parse_sum(self) -> Term:
        parts = [self.parse_item()]
        while self.peek() == "+":
            self.next()
            parts.append(self.parse_item())
        if len(parts) == 1:
            return parts[0]
        return sum_of(parts)

    def parse_item(self) -> Term:
        k = self.peek()
        if k == "(":
            self.next()
            t = self.parse_sum()
            self.next(")")
            return t
        if k == "?":
            self.next()
            return daimon(self.parse_item())
        if k == "<":
            self.next()
            wt = self.parse_weight()
            self.next(">")
            return approx(wt, self.parse_item())
        if k == ".":
            self.next()
            name = self.next("name")
            self.next("@")
            prio = int(self.next("int"))
            return project(name, prio, self.parse_item())
        if k == "{":
            return self.parse_record()
        if k == "int":
            v = self.next("int")
            if v == "0":
                return ZERO
            raise NotationError("unexpected number %s" % v)
        if k == "name":
            name = self.next("name")
            if name == "_":
                return Unknown()
            if name[0] == "x" and name[1:].isdigit():
                return Param(int(name[1:]))
            if self.peek() == "(":
                self.next()
                args = []
                if self.peek() != ")":
                    args.append(self.parse_sum())
                    while self.peek() == ",":
                        self.next()
                        args.append(self.parse_sum())
                self.next(")")
                return funapp(name, args)
            if self.peek() == "-":
                self.next()
                self.next("@")
                prio = int(self.next("int"))
                return constr_dual(name, prio, self.parse_item())
            self.next("@")
            prio = int(self.next("int"))
            return constr(name, prio, self.parse_item())
        raise NotationError("unexpected token %r" % k)

    def parse_record(self) -> Term:
        self.next("{")
        fields, prio = [], None
        while True:
            name = self.next("name")
            self.next("@")
            p = int(self.next("int"))
            if prio is None:
                prio = p
            elif p != prio:
                raise NotationError("record fields disagree on priority")
            self.next("=")
            fields.append((name, self.parse_sum()))
            if self.peek() == ";":
                self.next()
                continue
            break
        self.next("}")
        return record(fields, prio)

    def parse_weight(self) -> Weight:
        self.next("{")
        entries = {}
        if self.peek() != "}":
            while True:
                p = int(self.next("int"))
                self.next(":")
                neg = False
                if self.peek() == "-":
                    self.next()
                    neg = True
                if self.peek() == "name":
                    word = self.next("name")
                    if word != "inf":
                        raise NotationError("bad weight entry %r" % word)
                    v: ZInf = INF
                else:
                    v = int(self.next("int"))
                entries[p] = -v if neg else v
                if self.peek() == ",":
                    self.next()
                    continue
                break
        self.next("}")
        return weight(entries)


def parse_term(text: str) -> Term:
    return _TermParser(text).parse()
