"""Source language front end: lexing, parsing, desugaring, restriction
checks and a printer whose output parses back to the same tree.

The language has `data` / `codata` declarations, `val` definitions with
pattern clauses (chained into one recursive group with `and`), record
syntax `{ D = e; ... }`, postfix projection `e.D`, `'x` type variables and
`--` line comments.  Numerals and empty records are sugar and are removed
by `desugar`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class SourceError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self) -> str:
        if self.line:
            return "%d:%d: %s" % (self.line, self.col, self.message)
        return self.message


# ---------------------------------------------------------------------------
# types (shared with the checker)

@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TApp:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class TArrow:
    dom: "TypeExpr"
    cod: "TypeExpr"


TypeExpr = object


def type_str(t) -> str:
    if isinstance(t, TVar):
        return "'" + t.name
    if isinstance(t, TApp):
        if not t.args:
            return t.name
        return "%s(%s)" % (t.name, ", ".join(type_str(a) for a in t.args))
    if isinstance(t, TArrow):
        dom = type_str(t.dom)
        if isinstance(t.dom, TArrow):
            dom = "(%s)" % dom
        return "%s -> %s" % (dom, type_str(t.cod))
    raise TypeError("not a type: %r" % (t,))


def uncurry(t, n: int):
    """Split n argument types off the front of an arrow type."""
    args = []
    for _ in range(n):
        if not isinstance(t, TArrow):
            return None
        args.append(t.dom)
        t = t.cod
    return tuple(args), t


# ---------------------------------------------------------------------------
# surface AST

@dataclass
class TypeDecl:
    name: str
    params: tuple
    is_codata: bool
    items: tuple  # (item name, declared TypeExpr)
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass
class PVar:
    name: str


@dataclass
class PWild:
    pass


@dataclass
class PNum:
    value: int


@dataclass
class PConstr:
    name: str
    args: tuple  # as written; desugar normalises to exactly one


@dataclass
class PRecord:
    fields: tuple  # (field name, pattern)


@dataclass
class EVar:
    name: str


@dataclass
class ENum:
    value: int


@dataclass
class EConstr:
    name: str
    args: tuple


@dataclass
class ERecord:
    fields: tuple


@dataclass
class EProj:
    sub: object
    fname: str


@dataclass
class EApp:
    fname: str
    args: tuple


@dataclass
class Clause:
    fname: str
    patterns: tuple
    body: object
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass
class Definition:
    fname: str
    signature: object  # TypeExpr or None
    clauses: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    @property
    def arity(self) -> int:
        return len(self.clauses[0].patterns) if self.clauses else 0


@dataclass
class Group:
    """One `val ... and ...` block; members may be mutually recursive."""

    defs: tuple
    line: int = field(default=0, compare=False)
    bounds: object = field(default=None, compare=False)  # pragma override


@dataclass
class Program:
    decls: tuple
    groups: tuple

    def definitions(self):
        for g in self.groups:
            yield from g.defs


# ---------------------------------------------------------------------------
# lexer

_KEYWORDS = {"data", "codata", "where", "val", "and"}
_PRAGMA = re.compile(r"^\s*--\s*totality:\s*B\s*=\s*(\d+)\s*,\s*D\s*=\s*(\d+)\s*$")


@dataclass
class Token:
    kind: str
    value: str
    line: int
    col: int


def _lex(src: str):
    tokens = []
    line, col, i = 1, 1, 0
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if src.startswith("--", i):
            while i < n and src[i] != "\n":
                i += 1
            continue
        if src.startswith("->", i):
            tokens.append(Token("->", "->", line, col))
            i += 2
            col += 2
            continue
        if c == "'":
            j = i + 1
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            if j == i + 1:
                raise SourceError("dangling quote", line, col)
            tokens.append(Token("tyvar", src[i + 1:j], line, col))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(Token("int", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] in "_'"):
                j += 1
            word = src[i:j]
            if word == "_":
                tokens.append(Token("wild", word, line, col))
            elif word in _KEYWORDS:
                tokens.append(Token(word, word, line, col))
            else:
                tokens.append(Token("name", word, line, col))
            col += j - i
            i = j
            continue
        if c in ":|=(){};,.":
            tokens.append(Token(c, c, line, col))
            i += 1
            col += 1
            continue
        raise SourceError("unexpected character %r" % c, line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


def _pragmas(src: str) -> dict:
    out = {}
    for number, text in enumerate(src.splitlines(), start=1):
        m = _PRAGMA.match(text)
        if m:
            out[number] = (int(m.group(1)), int(m.group(2)))
    return out


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, src: str):
        self.tokens = _lex(src)
        self.pragmas = _pragmas(src)
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def take(self, kind: str) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            raise SourceError(
                "expected %s, found %r" % (kind, tok.value or tok.kind),
                tok.line, tok.col,
            )
        self.pos += 1
        return tok

    def at(self, kind: str) -> bool:
        return self.peek().kind == kind

    def program(self) -> Program:
        decls, groups = [], []
        while not self.at("eof"):
            if self.at("data") or self.at("codata"):
                decls.append(self.type_decl())
            elif self.at("val"):
                groups.append(self.group())
            else:
                tok = self.peek()
                raise SourceError(
                    "expected a declaration or definition, found %r"
                    % (tok.value or tok.kind), tok.line, tok.col,
                )
        return Program(tuple(decls), tuple(groups))

    def type_decl(self) -> TypeDecl:
        start = self.take(self.peek().kind)
        is_codata = start.kind == "codata"
        name = self.take("name").value
        params = []
        if self.at("("):
            self.take("(")
            params.append(self.take("tyvar").value)
            while self.at(","):
                self.take(",")
                params.append(self.take("tyvar").value)
            self.take(")")
        self.take("where")
        items = [self.decl_item()]
        while self.at("|"):
            self.take("|")
            items.append(self.decl_item())
        return TypeDecl(name, tuple(params), is_codata, tuple(items),
                        start.line, start.col)

    def decl_item(self):
        name = self.take("name").value
        self.take(":")
        return (name, self.type_expr())

    def type_expr(self):
        left = self.type_atom()
        if self.at("->"):
            self.take("->")
            return TArrow(left, self.type_expr())
        return left

    def type_atom(self):
        if self.at("tyvar"):
            return TVar(self.take("tyvar").value)
        if self.at("("):
            self.take("(")
            t = self.type_expr()
            self.take(")")
            return t
        name = self.take("name").value
        args = []
        if self.at("("):
            self.take("(")
            args.append(self.type_expr())
            while self.at(","):
                self.take(",")
                args.append(self.type_expr())
            self.take(")")
        return TApp(name, tuple(args))

    def group(self) -> Group:
        start = self.take("val")
        defs = [self.fundef()]
        while self.at("and"):
            self.take("and")
            defs.append(self.fundef())
        bounds = self.pragmas.get(start.line - 1)
        return Group(tuple(defs), start.line, bounds)

    def fundef(self) -> Definition:
        tok = self.take("name")
        fname = tok.value
        signature = None
        clauses = []
        if self.at(":"):
            self.take(":")
            signature = self.type_expr()
        else:
            clauses.append(self.clause_tail(fname, tok))
        while self.at("|"):
            bar = self.take("|")
            name_tok = self.take("name")
            if name_tok.value != fname:
                raise SourceError(
                    "clause for %r inside the definition of %r"
                    % (name_tok.value, fname), name_tok.line, name_tok.col,
                )
            clauses.append(self.clause_tail(fname, bar))
        return Definition(fname, signature, tuple(clauses), tok.line, tok.col)

    def clause_tail(self, fname: str, tok: Token) -> Clause:
        patterns = []
        while not self.at("="):
            patterns.append(self.pattern_atom())
        self.take("=")
        body = self.expr()
        return Clause(fname, tuple(patterns), body, tok.line, tok.col)

    # patterns ------------------------------------------------------------

    def pattern_atom(self):
        tok = self.peek()
        if tok.kind == "wild":
            self.take("wild")
            return PWild()
        if tok.kind == "int":
            self.take("int")
            return PNum(int(tok.value))
        if tok.kind == "{":
            return self.pattern_record()
        if tok.kind == "(":
            self.take("(")
            p = self.pattern()
            self.take(")")
            return p
        name = self.take("name").value
        if name[0].isupper():
            return PConstr(name, ())
        return PVar(name)

    def pattern(self):
        tok = self.peek()
        if tok.kind == "name" and tok.value[0].isupper():
            name = self.take("name").value
            if self.at("("):
                # either a parenthesised argument or (p1, p2) pair sugar
                self.take("(")
                first = self.pattern()
                if self.at(","):
                    args = [first]
                    while self.at(","):
                        self.take(",")
                        args.append(self.pattern())
                    self.take(")")
                    return PConstr(name, tuple(args))
                self.take(")")
                args = [first]
            else:
                args = []
            while self.peek().kind in ("name", "wild", "int", "{", "("):
                args.append(self.pattern_atom())
            return PConstr(name, tuple(args))
        return self.pattern_atom()

    def pattern_record(self):
        self.take("{")
        fields = []
        if not self.at("}"):
            while True:
                fname = self.take("name").value
                self.take("=")
                fields.append((fname, self.pattern()))
                if self.at(";"):
                    self.take(";")
                    continue
                break
        self.take("}")
        return PRecord(tuple(fields))

    # expressions ----------------------------------------------------------

    def expr(self):
        tok = self.peek()
        if tok.kind == "name" and tok.value[0].isupper():
            name = self.take("name").value
            args = self.constr_args()
            return self.postfix(EConstr(name, tuple(args)))
        head = self.expr_atom()
        args = []
        while self.peek().kind in ("name", "int", "{", "("):
            args.append(self.expr_atom())
        if args:
            if not isinstance(head, EVar):
                tok = self.peek()
                raise SourceError(
                    "only named functions can be applied", tok.line, tok.col
                )
            return self.postfix(EApp(head.name, tuple(args)))
        return head

    def constr_args(self):
        if self.at("("):
            self.take("(")
            first = self.expr()
            if self.at(","):
                args = [first]
                while self.at(","):
                    self.take(",")
                    args.append(self.expr())
                self.take(")")
                return args
            self.take(")")
            args = [self.postfix_of(first)]
        else:
            args = []
        while self.peek().kind in ("name", "int", "{", "("):
            args.append(self.expr_atom())
        return args

    def expr_atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take("int")
            return self.postfix(ENum(int(tok.value)))
        if tok.kind == "{":
            return self.postfix(self.expr_record())
        if tok.kind == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return self.postfix(e)
        name = self.take("name").value
        if name[0].isupper():
            return self.postfix(EConstr(name, ()))
        return self.postfix(EVar(name))

    def postfix(self, e):
        while self.at("."):
            self.take(".")
            e = EProj(e, self.take("name").value)
        return e

    def postfix_of(self, e):
        return self.postfix(e)

    def expr_record(self):
        self.take("{")
        fields = []
        if not self.at("}"):
            while True:
                fname = self.take("name").value
                self.take("=")
                fields.append((fname, self.expr()))
                if self.at(";"):
                    self.take(";")
                    continue
                break
        self.take("}")
        return ERecord(tuple(fields))


def parse_program(src: str) -> Program:
    return _Parser(src).program()


# ---------------------------------------------------------------------------
# desugaring

def _ctor_arities(decls) -> dict:
    out = {}
    for decl in decls:
        if decl.is_codata:
            continue
        for name, ty in decl.items:
            arity = 0
            t = ty
            while isinstance(t, TArrow):
                arity += 1
                t = t.cod
            out[name] = arity
    return out


def _has_nat(decls) -> bool:
    for decl in decls:
        if decl.name == "nat" and not decl.is_codata:
            names = {n for n, _ in decl.items}
            if {"Zero", "Succ"} <= names:
                return True
    return False


class _Fresh:
    def __init__(self, taken):
        self.taken = set(taken)
        self.counter = 0

    def name(self) -> str:
        while True:
            candidate = "_d%d" % self.counter
            self.counter += 1
            if candidate not in self.taken:
                self.taken.add(candidate)
                return candidate


def _pattern_vars(p, out):
    if isinstance(p, PVar):
        out.append(p.name)
    elif isinstance(p, PConstr):
        for sub in p.args:
            _pattern_vars(sub, out)
    elif isinstance(p, PRecord):
        for _, sub in p.fields:
            _pattern_vars(sub, out)


def desugar(program: Program) -> Program:
    """Expand numerals, normalise constructor arities and remove empty
    records from every clause."""
    arities = _ctor_arities(program.decls)
    nat_ok = _has_nat(program.decls)

    def num_pattern(n: int):
        p = PConstr("Zero", (PRecord(()),))
        for _ in range(n):
            p = PConstr("Succ", (p,))
        return p

    def num_expr(n: int):
        e = EConstr("Zero", (ERecord(()),))
        for _ in range(n):
            e = EConstr("Succ", (e,))
        return e

    def do_pattern(p, fresh, dummies):
        if isinstance(p, PWild):
            return PVar(fresh.name())
        if isinstance(p, PNum):
            if not nat_ok:
                return p  # flagged by validation
            return do_pattern(num_pattern(p.value), fresh, dummies)
        if isinstance(p, PVar):
            return p
        if isinstance(p, PConstr):
            args = [do_pattern(a, fresh, dummies) for a in p.args]
            arity = arities.get(p.name)
            if arity == 0 and not args:
                args = [PRecord(())]
            if len(args) == 2 and (arity == 2 or arity is None):
                args = [PRecord((("Fst", args[0]), ("Snd", args[1])))]
            if len(args) == 1 and isinstance(args[0], PRecord) \
                    and not args[0].fields:
                dummy = fresh.name()
                dummies.append(dummy)
                args = [PVar(dummy)]
            return PConstr(p.name, tuple(args))
        if isinstance(p, PRecord):
            if not p.fields:
                dummy = fresh.name()
                dummies.append(dummy)
                return PVar(dummy)
            return PRecord(tuple(
                (n, do_pattern(sub, fresh, dummies)) for n, sub in p.fields
            ))
        raise SourceError("unknown pattern %r" % (p,))

    def empty_record_expr(dummies, pvars):
        if dummies:
            return EVar(dummies[0])
        if pvars:
            return EApp("empty_record", (EVar(pvars[0]),))
        return EVar("empty_record")  # resolved as a 0-ary library call

    def do_expr(e, dummies, pvars):
        if isinstance(e, ENum):
            if not nat_ok:
                return e
            return do_expr(num_expr(e.value), dummies, pvars)
        if isinstance(e, EVar):
            return e
        if isinstance(e, EConstr):
            args = [do_expr(a, dummies, pvars) for a in e.args]
            arity = arities.get(e.name)
            if arity == 0 and not args:
                args = [ERecord(())]
            if len(args) == 2 and (arity == 2 or arity is None):
                args = [ERecord((("Fst", args[0]), ("Snd", args[1])))]
            if len(args) == 1 and isinstance(args[0], ERecord) \
                    and not args[0].fields:
                args = [empty_record_expr(dummies, pvars)]
            return EConstr(e.name, tuple(args))
        if isinstance(e, ERecord):
            if not e.fields:
                return empty_record_expr(dummies, pvars)
            return ERecord(tuple(
                (n, do_expr(sub, dummies, pvars)) for n, sub in e.fields
            ))
        if isinstance(e, EProj):
            return EProj(do_expr(e.sub, dummies, pvars), e.fname)
        if isinstance(e, EApp):
            return EApp(e.fname, tuple(do_expr(a, dummies, pvars) for a in e.args))
        raise SourceError("unknown expression %r" % (e,))

    def do_clause(cl: Clause) -> Clause:
        existing: list = []
        for p in cl.patterns:
            _pattern_vars(p, existing)
        fresh = _Fresh(existing)
        dummies: list = []
        patterns = tuple(do_pattern(p, fresh, dummies) for p in cl.patterns)
        pvars: list = []
        for p in patterns:
            _pattern_vars(p, pvars)
        body = do_expr(cl.body, dummies, pvars)
        return Clause(cl.fname, patterns, body, cl.line, cl.col)

    groups = tuple(
        Group(tuple(
            Definition(d.fname, d.signature,
                       tuple(do_clause(c) for c in d.clauses), d.line, d.col)
            for d in g.defs
        ), g.line, g.bounds)
        for g in program.groups
    )
    return Program(program.decls, groups)


# ---------------------------------------------------------------------------
# restriction checks

@dataclass
class Violation:
    message: str
    line: int = 0
    col: int = 0

    def __str__(self) -> str:
        return "%d:%d: %s" % (self.line, self.col, self.message)


def validate_restrictions(program: Program):
    """Check the desugared program; returns (violations, recursive_flags)."""
    violations: list[Violation] = []
    arities = _ctor_arities(program.decls)
    ctor_names: set = set()
    field_names: set = set()
    type_names: set = set()

    for decl in program.decls:
        if decl.name in type_names:
            violations.append(Violation(
                "duplicate type name %r" % decl.name, decl.line, decl.col))
        type_names.add(decl.name)
        if len(set(decl.params)) != len(decl.params):
            violations.append(Violation(
                "repeated type parameter in %r" % decl.name,
                decl.line, decl.col))
        for item, ty in decl.items:
            pool = field_names if decl.is_codata else ctor_names
            if item in ctor_names | field_names:
                violations.append(Violation(
                    "duplicate constructor or destructor name %r" % item,
                    decl.line, decl.col))
            pool.add(item)
            if not decl.is_codata and arities.get(item, 0) > 2:
                violations.append(Violation(
                    "constructor %r takes more than two arguments; "
                    "use an explicit record type" % item,
                    decl.line, decl.col))

    fn_arity: dict = {}
    recursive: dict = {}

    for group in program.groups:
        members = {d.fname for d in group.defs}
        for d in group.defs:
            if d.fname in fn_arity:
                violations.append(Violation(
                    "duplicate definition of %r" % d.fname, d.line, d.col))
            if not d.clauses:
                violations.append(Violation(
                    "definition of %r has no clauses" % d.fname, d.line, d.col))
                fn_arity[d.fname] = 0
                continue
            arity = len(d.clauses[0].patterns)
            fn_arity[d.fname] = arity
            for cl in d.clauses:
                if len(cl.patterns) != arity:
                    violations.append(Violation(
                        "clauses of %r disagree on the number of arguments"
                        % d.fname, cl.line, cl.col))
        calls_member = False
        for d in group.defs:
            for cl in d.clauses:
                seen: list = []
                for p in cl.patterns:
                    _check_pattern(p, seen, arities, cl, violations)
                dup = {v for v in seen if seen.count(v) > 1}
                for v in sorted(dup):
                    violations.append(Violation(
                        "variable %r bound more than once in a clause" % v,
                        cl.line, cl.col))
                calls_member |= _check_expr(
                    cl.body, set(seen), fn_arity, members, arities,
                    cl, violations)
        for d in group.defs:
            recursive[d.fname] = calls_member

    return violations, recursive


def _check_pattern(p, seen: list, arities, cl, violations) -> None:
    if isinstance(p, PVar):
        seen.append(p.name)
    elif isinstance(p, PNum):
        violations.append(Violation(
            "numeral pattern needs a `nat` declaration with Zero and Succ",
            cl.line, cl.col))
    elif isinstance(p, PConstr):
        if p.name not in arities:
            violations.append(Violation(
                "unknown constructor %r" % p.name, cl.line, cl.col))
        elif len(p.args) != 1:
            violations.append(Violation(
                "constructor %r applied to %d patterns (expects %d)"
                % (p.name, len(p.args), arities[p.name]), cl.line, cl.col))
        for sub in p.args:
            _check_pattern(sub, seen, arities, cl, violations)
    elif isinstance(p, PRecord):
        if not p.fields:
            violations.append(Violation(
                "empty record pattern survived desugaring", cl.line, cl.col))
        for _, sub in p.fields:
            _check_pattern(sub, seen, arities, cl, violations)


def _check_expr(e, bound: set, fn_arity, members, arities, cl, violations) -> bool:
    """Returns True when the expression mentions a group member."""
    if isinstance(e, ENum):
        violations.append(Violation(
            "numeral needs a `nat` declaration with Zero and Succ",
            cl.line, cl.col))
        return False
    if isinstance(e, EVar):
        if e.name in bound:
            return False
        if e.name in members or e.name in fn_arity or e.name == "empty_record":
            arity = fn_arity.get(e.name, 0)
            if e.name != "empty_record" and arity != 0:
                violations.append(Violation(
                    "function %r used with 0 arguments (expects %d)"
                    % (e.name, arity), cl.line, cl.col))
            return e.name in members
        violations.append(Violation(
            "unbound variable %r" % e.name, cl.line, cl.col))
        return False
    if isinstance(e, EConstr):
        if e.name not in arities:
            violations.append(Violation(
                "unknown constructor %r" % e.name, cl.line, cl.col))
        elif len(e.args) != 1:
            violations.append(Violation(
                "constructor %r applied to %d arguments (expects %d)"
                % (e.name, len(e.args), arities[e.name]), cl.line, cl.col))
        hit = False
        for a in e.args:
            hit |= _check_expr(a, bound, fn_arity, members, arities, cl,
                               violations)
        return hit
    if isinstance(e, ERecord):
        hit = False
        if not e.fields:
            violations.append(Violation(
                "empty record survived desugaring", cl.line, cl.col))
        for _, sub in e.fields:
            hit |= _check_expr(sub, bound, fn_arity, members, arities, cl,
                               violations)
        return hit
    if isinstance(e, EProj):
        return _check_expr(e.sub, bound, fn_arity, members, arities, cl,
                           violations)
    if isinstance(e, EApp):
        hit = e.fname in members
        if e.fname in bound:
            violations.append(Violation(
                "pattern variable %r cannot be applied" % e.fname,
                cl.line, cl.col))
        elif e.fname == "empty_record":
            if len(e.args) > 1:
                violations.append(Violation(
                    "empty_record takes at most one argument",
                    cl.line, cl.col))
        elif e.fname not in fn_arity:
            violations.append(Violation(
                "unknown function %r" % e.fname, cl.line, cl.col))
        elif fn_arity[e.fname] != len(e.args):
            violations.append(Violation(
                "function %r applied to %d arguments (expects %d)"
                % (e.fname, len(e.args), fn_arity[e.fname]),
                cl.line, cl.col))
        for a in e.args:
            hit |= _check_expr(a, bound, fn_arity, members, arities, cl,
                               violations)
        return hit
    raise SourceError("unknown expression %r" % (e,))


# ---------------------------------------------------------------------------
# printer (round-trips through parse_program on desugared programs)

def pattern_str(p, atom: bool = False) -> str:
    if isinstance(p, PVar):
        return p.name
    if isinstance(p, PWild):
        return "_"
    if isinstance(p, PNum):
        return str(p.value)
    if isinstance(p, PRecord):
        return "{%s}" % "; ".join(
            "%s = %s" % (n, pattern_str(sub)) for n, sub in p.fields)
    if isinstance(p, PConstr):
        if not p.args:
            return p.name
        body = "%s %s" % (p.name, " ".join(
            pattern_str(a, atom=True) for a in p.args))
        return "(%s)" % body if atom else body
    raise SourceError("unknown pattern %r" % (p,))


def expr_str(e, atom: bool = False) -> str:
    if isinstance(e, EVar):
        return e.name
    if isinstance(e, ENum):
        return str(e.value)
    if isinstance(e, ERecord):
        return "{ %s }" % "; ".join(
            "%s = %s" % (n, expr_str(sub)) for n, sub in e.fields)
    if isinstance(e, EProj):
        return "%s.%s" % (expr_str(e.sub, atom=True), e.fname)
    if isinstance(e, EConstr):
        if not e.args:
            return e.name
        body = "%s %s" % (e.name, " ".join(expr_str(a, atom=True)
                                           for a in e.args))
        return "(%s)" % body if atom else body
    if isinstance(e, EApp):
        if not e.args:
            return e.fname
        body = "%s %s" % (e.fname, " ".join(expr_str(a, atom=True)
                                            for a in e.args))
        return "(%s)" % body if atom else body
    raise SourceError("unknown expression %r" % (e,))


def pretty_print(program: Program) -> str:
    lines = []
    for decl in program.decls:
        head = "codata" if decl.is_codata else "data"
        params = "(%s)" % ", ".join("'" + p for p in decl.params) \
            if decl.params else ""
        lines.append("%s %s%s where" % (head, decl.name, params))
        for i, (name, ty) in enumerate(decl.items):
            sep = "    " if i == 0 else "  | "
            lines.append("%s%s : %s" % (sep, name, type_str(ty)))
        lines.append("")
    for group in program.groups:
        for i, d in enumerate(group.defs):
            head = "val" if i == 0 else "and"
            if d.signature is not None:
                lines.append("%s %s : %s" % (head, d.fname,
                                             type_str(d.signature)))
                rest = d.clauses
            else:
                first = d.clauses[0]
                lines.append("%s %s %s= %s" % (
                    head, d.fname,
                    "".join(pattern_str(p, atom=True) + " "
                            for p in first.patterns),
                    expr_str(first.body)))
                rest = d.clauses[1:]
            for cl in rest:
                lines.append("  | %s %s= %s" % (
                    cl.fname,
                    "".join(pattern_str(p, atom=True) + " "
                            for p in cl.patterns),
                    expr_str(cl.body)))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
