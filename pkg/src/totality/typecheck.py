"""Type reconstruction and priority assignment.

Each definition group is checked against the declared signatures (or a
fresh signature is inferred when none is given), every constructor, record
and projection occurrence is annotated with its instantiated type, and the
reachable type instances of the group are then given parity priorities:
odd for data, even for codata, with an instance placed strictly above
everything it dominates.  Dominance has two sources: being a proper
syntactic subexpression, and being one deconstruction step away (the
argument type of a constructor, the result type of a destructor) across a
cycle boundary of the deconstruction graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .surface import (
    Clause,
    Definition,
    EApp,
    EConstr,
    ENum,
    EProj,
    ERecord,
    EVar,
    PConstr,
    PRecord,
    PVar,
    SourceError,
    TApp,
    TArrow,
    TVar,
    TypeDecl,
    type_str,
    uncurry,
)


class TypeCheckError(SourceError):
    pass


class PriorityError(SourceError):
    pass


# ---------------------------------------------------------------------------
# annotated clause trees

@dataclass
class APVar:
    name: str


@dataclass
class APConstr:
    name: str
    arg: object
    instance: object = None  # result type instance
    prio: object = None


@dataclass
class APRecord:
    fields: tuple
    instance: object = None
    prio: object = None


@dataclass
class ABVar:
    name: str


@dataclass
class ABConstr:
    name: str
    arg: object
    instance: object = None
    prio: object = None


@dataclass
class ABRecord:
    fields: tuple
    instance: object = None
    prio: object = None


@dataclass
class ABProj:
    sub: object
    name: str
    instance: object = None
    prio: object = None


@dataclass
class ABCall:
    fname: str
    args: tuple


@dataclass
class AClause:
    patterns: tuple
    body: object


@dataclass
class ADef:
    fname: str
    arity: int
    arg_types: tuple
    result_type: object
    clauses: tuple
    line: int = 0
    col: int = 0


@dataclass
class AnalyzedGroup:
    defs: tuple
    priorities: dict  # canonical instance -> priority
    recursive: bool = False
    bounds: object = None


# ---------------------------------------------------------------------------
# declaration environment

@dataclass
class CtorInfo:
    decl: str
    params: tuple
    arg: object    # single internal argument type
    result: TApp


@dataclass
class DtorInfo:
    decl: str
    params: tuple
    owner: TApp
    result: object


class DeclEnv:
    def __init__(self, decls):
        self.decls: dict[str, TypeDecl] = {}
        self.ctors: dict[str, CtorInfo] = {}
        self.dtors: dict[str, DtorInfo] = {}
        self.fieldsets: dict[frozenset, str] = {}
        for decl in decls:
            self.decls[decl.name] = decl
        for decl in decls:
            self._register(decl)

    def _register(self, decl: TypeDecl) -> None:
        subject = TApp(decl.name, tuple(TVar(p) for p in decl.params))
        if decl.is_codata:
            names = []
            for name, ty in decl.items:
                if not isinstance(ty, TArrow):
                    raise TypeCheckError(
                        "destructor %r must have an arrow type" % name,
                        decl.line, decl.col)
                if ty.dom != subject:
                    raise TypeCheckError(
                        "destructor %r must take %s" % (name, type_str(subject)),
                        decl.line, decl.col)
                self.dtors[name] = DtorInfo(decl.name, decl.params, subject,
                                            ty.cod)
                names.append(name)
            self.fieldsets[frozenset(names)] = decl.name
            return
        for name, ty in decl.items:
            args = []
            t = ty
            while isinstance(t, TArrow):
                args.append(t.dom)
                t = t.cod
            if t != subject:
                raise TypeCheckError(
                    "constructor %r must build %s" % (name, type_str(subject)),
                    decl.line, decl.col)
            if len(args) == 0:
                internal = self._unit()
            elif len(args) == 1:
                internal = args[0]
            elif len(args) == 2:
                internal = self._pair(args[0], args[1])
            else:
                raise TypeCheckError(
                    "constructor %r takes too many arguments" % name,
                    decl.line, decl.col)
            self.ctors[name] = CtorInfo(decl.name, decl.params, internal,
                                        subject)

    def _unit(self) -> TApp:
        if "unit" not in self.decls:
            synthetic = TypeDecl("unit", (), True, ())
            self.decls["unit"] = synthetic
            self.fieldsets[frozenset()] = "unit"
        return TApp("unit", ())

    def _pair(self, a, b) -> TApp:
        if "pair" not in self.decls:
            if "Fst" in self.dtors or "Snd" in self.dtors:
                raise TypeCheckError(
                    "field names Fst/Snd are reserved for two-argument "
                    "constructors")
            subject = TApp("pair", (TVar("a"), TVar("b")))
            synthetic = TypeDecl(
                "pair", ("a", "b"), True,
                (("Fst", TArrow(subject, TVar("a"))),
                 ("Snd", TArrow(subject, TVar("b")))))
            self.decls["pair"] = synthetic
            self.dtors["Fst"] = DtorInfo("pair", ("a", "b"), subject, TVar("a"))
            self.dtors["Snd"] = DtorInfo("pair", ("a", "b"), subject, TVar("b"))
            self.fieldsets[frozenset(("Fst", "Snd"))] = "pair"
        return TApp("pair", (a, b))

    def deconstruction_targets(self, inst: TApp):
        """One deconstruction step: argument types of constructors and
        result types of destructors of the instance."""
        decl = self.decls.get(inst.name)
        if decl is None:
            return []
        mapping = dict(zip(decl.params, inst.args))
        out = []
        if decl.is_codata:
            for name, _ in decl.items:
                info = self.dtors[name]
                out.append(subst_type(info.result, mapping))
            if decl.name == "pair":
                out = [subst_type(TVar("a"), mapping),
                       subst_type(TVar("b"), mapping)]
        else:
            for name, _ in decl.items:
                info = self.ctors[name]
                out.append(subst_type(info.arg, mapping))
        return out

    def polarity(self, inst: TApp) -> int:
        decl = self.decls.get(inst.name)
        if decl is None:
            raise PriorityError("unknown type %r" % inst.name)
        return 0 if decl.is_codata else 1


def subst_type(t, mapping: dict):
    if isinstance(t, TVar):
        return mapping.get(t.name, t)
    if isinstance(t, TApp):
        return TApp(t.name, tuple(subst_type(a, mapping) for a in t.args))
    if isinstance(t, TArrow):
        return TArrow(subst_type(t.dom, mapping), subst_type(t.cod, mapping))
    raise TypeCheckError("bad type %r" % (t,))


def type_vars(t, out: list) -> None:
    if isinstance(t, TVar):
        if t.name not in out:
            out.append(t.name)
    elif isinstance(t, TApp):
        for a in t.args:
            type_vars(a, out)
    elif isinstance(t, TArrow):
        type_vars(t.dom, out)
        type_vars(t.cod, out)


# ---------------------------------------------------------------------------
# unification

class Unifier:
    """Mutable binding store for metavariables (names starting with '%')."""

    def __init__(self):
        self.bindings: dict[str, object] = {}
        self.counter = 0

    def fresh(self) -> TVar:
        self.counter += 1
        return TVar("%%t%d" % self.counter)

    def resolve(self, t):
        while isinstance(t, TVar) and t.name in self.bindings:
            t = self.bindings[t.name]
        return t

    def deep(self, t):
        t = self.resolve(t)
        if isinstance(t, TApp):
            return TApp(t.name, tuple(self.deep(a) for a in t.args))
        if isinstance(t, TArrow):
            return TArrow(self.deep(t.dom), self.deep(t.cod))
        return t

    def occurs(self, name: str, t) -> bool:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t.name == name
        if isinstance(t, TApp):
            return any(self.occurs(name, a) for a in t.args)
        if isinstance(t, TArrow):
            return self.occurs(name, t.dom) or self.occurs(name, t.cod)
        return False

    def unify(self, a, b, line=0, col=0) -> None:
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, TVar) and a.name.startswith("%"):
            if self.occurs(a.name, b):
                raise TypeCheckError(
                    "cannot build the infinite type %s = %s"
                    % (type_str(a), type_str(self.deep(b))), line, col)
            self.bindings[a.name] = b
            return
        if isinstance(b, TVar) and b.name.startswith("%"):
            self.unify(b, a, line, col)
            return
        if isinstance(a, TVar) or isinstance(b, TVar):
            raise TypeCheckError(
                "type mismatch: %s vs %s (polymorphic signature is more "
                "general)" % (type_str(self.deep(a)), type_str(self.deep(b))),
                line, col)
        if isinstance(a, TApp) and isinstance(b, TApp):
            if a.name != b.name or len(a.args) != len(b.args):
                raise TypeCheckError(
                    "type mismatch: %s vs %s"
                    % (type_str(self.deep(a)), type_str(self.deep(b))),
                    line, col)
            for x, y in zip(a.args, b.args):
                self.unify(x, y, line, col)
            return
        if isinstance(a, TArrow) and isinstance(b, TArrow):
            self.unify(a.dom, b.dom, line, col)
            self.unify(a.cod, b.cod, line, col)
            return
        raise TypeCheckError(
            "type mismatch: %s vs %s"
            % (type_str(self.deep(a)), type_str(self.deep(b))), line, col)


def unify(t1, t2) -> dict:
    """Most general unifier of two type expressions, as a binding map.

    All variables are treated as flexible here; occurs check enforced.
    """
    u = Unifier()
    mapping: dict[str, object] = {}

    def flex(t):
        if isinstance(t, TVar):
            if t.name not in mapping:
                mapping[t.name] = u.fresh()
            return mapping[t.name]
        if isinstance(t, TApp):
            return TApp(t.name, tuple(flex(a) for a in t.args))
        if isinstance(t, TArrow):
            return TArrow(flex(t.dom), flex(t.cod))
        raise TypeCheckError("bad type %r" % (t,))

    u.unify(flex(t1), flex(t2))
    back = {v.name: k for k, v in mapping.items()}

    def unflex(t):
        t = u.deep(t)
        if isinstance(t, TVar):
            return TVar(back.get(t.name, t.name))
        if isinstance(t, TApp):
            return TApp(t.name, tuple(unflex(a) for a in t.args))
        return TArrow(unflex(t.dom), unflex(t.cod))

    return {
        back[name]: unflex(bound)
        for name, bound in u.bindings.items() if name in back
    }


# ---------------------------------------------------------------------------
# checking definition groups

@dataclass
class Scheme:
    arg_types: tuple
    result: object
    quantified: tuple


def _instantiate(scheme: Scheme, u: Unifier):
    mapping = {name: u.fresh() for name in scheme.quantified}
    return ([subst_type(a, mapping) for a in scheme.arg_types],
            subst_type(scheme.result, mapping))


class GroupChecker:
    def __init__(self, env: DeclEnv, schemes: dict):
        self.env = env
        self.schemes = schemes  # earlier definitions
        self.u = Unifier()
        self.group_sigs: dict[str, tuple] = {}

    def check(self, defs) -> list:
        adefs = []
        for d in defs:
            arity = d.arity
            if d.signature is not None:
                split = uncurry(d.signature, arity)
                if split is None:
                    raise TypeCheckError(
                        "definition of %r takes %d arguments but its type "
                        "is %s" % (d.fname, arity, type_str(d.signature)),
                        d.line, d.col)
                self.group_sigs[d.fname] = split
            else:
                self.group_sigs[d.fname] = (
                    tuple(self.u.fresh() for _ in range(arity)),
                    self.u.fresh())
        for d in defs:
            adefs.append(self.check_def(d))
        return adefs

    def check_def(self, d: Definition) -> ADef:
        arg_types, result = self.group_sigs[d.fname]
        clauses = []
        for cl in d.clauses:
            var_env: dict[str, object] = {}
            pats = tuple(
                self.check_pattern(p, expected, var_env, cl)
                for p, expected in zip(cl.patterns, arg_types)
            )
            body = self.check_expr(cl.body, result, var_env, cl)
            clauses.append(AClause(pats, body))
        return ADef(d.fname, d.arity, tuple(arg_types), result,
                    tuple(clauses), d.line, d.col)

    def check_pattern(self, p, expected, var_env, cl):
        if isinstance(p, PVar):
            if p.name in var_env:
                raise TypeCheckError("duplicate variable %r" % p.name,
                                     cl.line, cl.col)
            var_env[p.name] = expected
            return APVar(p.name)
        if isinstance(p, PConstr):
            info = self.env.ctors.get(p.name)
            if info is None:
                raise TypeCheckError("unknown constructor %r" % p.name,
                                     cl.line, cl.col)
            mapping = {v: self.u.fresh() for v in info.params}
            result = subst_type(info.result, mapping)
            arg_ty = subst_type(info.arg, mapping)
            self.u.unify(expected, result, cl.line, cl.col)
            sub = self.check_pattern(p.args[0], arg_ty, var_env, cl)
            return APConstr(p.name, sub, instance=result)
        if isinstance(p, PRecord):
            names = frozenset(n for n, _ in p.fields)
            owner = self.env.fieldsets.get(names)
            if owner is None:
                raise TypeCheckError(
                    "no codata type has exactly the fields {%s}"
                    % ", ".join(sorted(names)), cl.line, cl.col)
            decl = self.env.decls[owner]
            mapping = {v: self.u.fresh() for v in decl.params}
            inst = TApp(owner, tuple(mapping[v] for v in decl.params))
            self.u.unify(expected, inst, cl.line, cl.col)
            fields = []
            for fname, sub in p.fields:
                info = self.env.dtors[fname]
                fields.append((fname, self.check_pattern(
                    sub, subst_type(info.result, mapping), var_env, cl)))
            return APRecord(tuple(fields), instance=inst)
        raise TypeCheckError("pattern not desugared: %r" % (p,),
                             cl.line, cl.col)

    def check_expr(self, e, expected, var_env, cl):
        if isinstance(e, EVar):
            if e.name in var_env:
                self.u.unify(expected, var_env[e.name], cl.line, cl.col)
                return ABVar(e.name)
            return self.check_call(e.name, (), expected, var_env, cl)
        if isinstance(e, EApp):
            return self.check_call(e.fname, e.args, expected, var_env, cl)
        if isinstance(e, EConstr):
            info = self.env.ctors.get(e.name)
            if info is None:
                raise TypeCheckError("unknown constructor %r" % e.name,
                                     cl.line, cl.col)
            mapping = {v: self.u.fresh() for v in info.params}
            result = subst_type(info.result, mapping)
            self.u.unify(expected, result, cl.line, cl.col)
            sub = self.check_expr(e.args[0], subst_type(info.arg, mapping),
                                  var_env, cl)
            return ABConstr(e.name, sub, instance=result)
        if isinstance(e, ERecord):
            names = frozenset(n for n, _ in e.fields)
            owner = self.env.fieldsets.get(names)
            if owner is None:
                raise TypeCheckError(
                    "no codata type has exactly the fields {%s}"
                    % ", ".join(sorted(names)), cl.line, cl.col)
            decl = self.env.decls[owner]
            mapping = {v: self.u.fresh() for v in decl.params}
            inst = TApp(owner, tuple(mapping[v] for v in decl.params))
            self.u.unify(expected, inst, cl.line, cl.col)
            fields = []
            for fname, sub in e.fields:
                info = self.env.dtors[fname]
                fields.append((fname, self.check_expr(
                    sub, subst_type(info.result, mapping), var_env, cl)))
            return ABRecord(tuple(fields), instance=inst)
        if isinstance(e, EProj):
            info = self.env.dtors.get(e.fname)
            if info is None:
                raise TypeCheckError("unknown field %r" % e.fname,
                                     cl.line, cl.col)
            mapping = {v: self.u.fresh() for v in info.params}
            inst = subst_type(info.owner, mapping)
            sub = self.check_expr(e.sub, inst, var_env, cl)
            self.u.unify(expected, subst_type(info.result, mapping),
                         cl.line, cl.col)
            return ABProj(sub, e.fname, instance=inst)
        if isinstance(e, ENum):
            raise TypeCheckError("numeral not desugared", cl.line, cl.col)
        raise TypeCheckError("unknown expression %r" % (e,), cl.line, cl.col)

    def check_call(self, fname, args, expected, var_env, cl):
        if fname in self.group_sigs:
            arg_types, result = self.group_sigs[fname]
            arg_types = list(arg_types)
        elif fname in self.schemes:
            arg_types, result = _instantiate(self.schemes[fname], self.u)
        elif fname == "empty_record":
            arg_types = [self.u.fresh() for _ in args]
            result = TApp("unit", ())
            self.env._unit()
        else:
            raise TypeCheckError("unknown function %r" % fname,
                                 cl.line, cl.col)
        if len(args) != len(arg_types):
            raise TypeCheckError(
                "function %r applied to %d arguments (expects %d)"
                % (fname, len(args), len(arg_types)), cl.line, cl.col)
        checked = tuple(
            self.check_expr(a, ty, var_env, cl)
            for a, ty in zip(args, arg_types)
        )
        self.u.unify(expected, result, cl.line, cl.col)
        return ABCall(fname, checked)


# ---------------------------------------------------------------------------
# instance resolution and priorities

def _canonical_names(used: list) -> dict:
    """Map leftover metavariables to unused short names."""
    out = {}
    pool = "abcdefghijklmnopqrstuvwxyz"
    idx = 0
    for name in used:
        if not name.startswith("%"):
            continue
        while True:
            candidate = pool[idx % 26] * (idx // 26 + 1)
            idx += 1
            if candidate not in used:
                break
        out[name] = candidate
    return out


def _resolve_instances(adefs, u: Unifier):
    order: list = []

    def note(t):
        seen: list = []
        type_vars(t, seen)
        for v in seen:
            if v not in order:
                order.append(v)
        return t

    def walk_any(node):
        if isinstance(node, (APConstr, ABConstr)):
            node.instance = note(u.deep(node.instance))
            walk_any(node.arg)
        elif isinstance(node, (APRecord, ABRecord)):
            node.instance = note(u.deep(node.instance))
            for _, sub in node.fields:
                walk_any(sub)
        elif isinstance(node, ABProj):
            node.instance = note(u.deep(node.instance))
            walk_any(node.sub)
        elif isinstance(node, ABCall):
            for sub in node.args:
                walk_any(sub)
        # variables carry no instance

    for adef in adefs:
        for cl in adef.clauses:
            for p in cl.patterns:
                walk_any(p)
            walk_any(cl.body)

    rename = _canonical_names(order)
    if not rename:
        return

    def apply(t):
        if isinstance(t, TVar):
            return TVar(rename.get(t.name, t.name))
        if isinstance(t, TApp):
            return TApp(t.name, tuple(apply(a) for a in t.args))
        return TArrow(apply(t.dom), apply(t.cod))

    def rewalk(node):
        if isinstance(node, (APConstr, ABConstr, APRecord, ABRecord, ABProj)):
            node.instance = apply(node.instance)
        if isinstance(node, (APConstr, ABConstr)):
            rewalk(node.arg)
        elif isinstance(node, (APRecord, ABRecord)):
            for _, sub in node.fields:
                rewalk(sub)
        elif isinstance(node, ABProj):
            rewalk(node.sub)
        elif isinstance(node, ABCall):
            for sub in node.args:
                rewalk(sub)

    for adef in adefs:
        for cl in adef.clauses:
            for p in cl.patterns:
                rewalk(p)
            rewalk(cl.body)


def _collect_instances(adefs) -> list:
    out: list = []

    def add(t):
        if isinstance(t, TApp) and t not in out:
            out.append(t)

    def walk(node):
        if isinstance(node, (APConstr, ABConstr)):
            add(node.instance)
            walk(node.arg)
        elif isinstance(node, (APRecord, ABRecord)):
            add(node.instance)
            for _, sub in node.fields:
                walk(sub)
        elif isinstance(node, ABProj):
            add(node.instance)
            walk(node.sub)
        elif isinstance(node, ABCall):
            for sub in node.args:
                walk(sub)

    for adef in adefs:
        for cl in adef.clauses:
            for p in cl.patterns:
                walk(p)
            walk(cl.body)
    return out


def _proper_subexprs(t, out: list) -> None:
    if isinstance(t, TApp):
        for a in t.args:
            if isinstance(a, TApp) and a not in out:
                out.append(a)
            _proper_subexprs(a, out)


def dominance(adefs, env: DeclEnv):
    """Reachable instances and, per instance, the set it must lie above.

    An instance dominates (must exceed) another when it is a proper
    subexpression of it, and when one deconstruction step of the other
    reaches it across a cycle boundary of the deconstruction graph.
    """
    instances = _collect_instances(adefs)

    # close under subexpressions and one-step deconstruction
    queue = list(instances)
    universe: list = list(instances)
    while queue:
        current = queue.pop(0)
        extra: list = []
        _proper_subexprs(current, extra)
        for target in env.deconstruction_targets(current):
            if isinstance(target, TApp):
                extra.append(target)
            elif isinstance(target, TArrow):
                raise PriorityError(
                    "higher-order constructor argument %s" % type_str(target))
        for t in extra:
            if t not in universe:
                universe.append(t)
                queue.append(t)

    edges = {
        t: [s for s in env.deconstruction_targets(t)
            if isinstance(s, TApp) and s in universe]
        for t in universe
    }
    scc = _scc_index(universe, edges)

    must_exceed: dict = {t: [] for t in universe}
    for t in universe:
        subs: list = []
        _proper_subexprs(t, subs)
        for s in subs:
            if s in universe and t not in must_exceed[s]:
                must_exceed[s].append(t)
        for s in edges[t]:
            if scc[s] != scc[t] and t not in must_exceed[s]:
                must_exceed[s].append(t)
    return universe, must_exceed


def assign_priorities(adefs, env: DeclEnv) -> dict:
    """Priorities for every type instance reachable from the group."""
    universe, must_exceed = dominance(adefs, env)

    # topological assignment, lowest priorities first
    values: dict = {}
    pending = list(universe)
    while pending:
        progressed = False
        for t in list(pending):
            if all(dep in values for dep in must_exceed[t]):
                floor = max((values[dep] for dep in must_exceed[t]),
                            default=-1)
                parity = env.polarity(t)
                value = floor + 1
                if value % 2 != parity:
                    value += 1
                values[t] = max(value, parity)
                pending.remove(t)
                progressed = True
        if not progressed:
            raise PriorityError(
                "priority assignment failed: cyclic dominance between %s"
                % ", ".join(sorted(type_str(t) for t in pending)))
    return values


def _scc_index(nodes, edges) -> dict:
    """Tarjan's algorithm, iterative."""
    index: dict = {}
    low: dict = {}
    on_stack: dict = {}
    stack: list = []
    result: dict = {}
    counter = [0]
    comp = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(edges[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, iter(edges[nxt])))
                    advanced = True
                    break
                if on_stack.get(nxt):
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                while True:
                    member = stack.pop()
                    on_stack[member] = False
                    result[member] = comp[0]
                    if member == node:
                        break
                comp[0] += 1
    return result


def annotate_priorities(adefs, priorities: dict) -> None:
    def walk(node):
        if isinstance(node, (APConstr, ABConstr, APRecord, ABRecord, ABProj)):
            if node.instance not in priorities:
                raise PriorityError(
                    "no priority for instance %s" % type_str(node.instance))
            node.prio = priorities[node.instance]
        if isinstance(node, (APConstr, ABConstr)):
            walk(node.arg)
        elif isinstance(node, (APRecord, ABRecord)):
            for _, sub in node.fields:
                walk(sub)
        elif isinstance(node, ABProj):
            walk(node.sub)
        elif isinstance(node, ABCall):
            for sub in node.args:
                walk(sub)

    for adef in adefs:
        for cl in adef.clauses:
            for p in cl.patterns:
                walk(p)
            walk(cl.body)


def annotate_group(env: DeclEnv, schemes: dict, defs,
                   recursive: bool, bounds=None) -> AnalyzedGroup:
    """Full typing pipeline for one group; extends `schemes` in place."""
    checker = GroupChecker(env, schemes)
    adefs = checker.check(defs)
    _resolve_instances(adefs, checker.u)
    for adef in adefs:
        arg_types = tuple(checker.u.deep(t) for t in adef.arg_types)
        result = checker.u.deep(adef.result_type)
        adef.arg_types = arg_types
        adef.result_type = result
    priorities = assign_priorities(adefs, env)
    annotate_priorities(adefs, priorities)
    for adef in adefs:
        quantified: list = []
        for t in adef.arg_types + (adef.result_type,):
            type_vars(t, quantified)
        schemes[adef.fname] = Scheme(adef.arg_types, adef.result_type,
                                     tuple(quantified))
    return AnalyzedGroup(tuple(adefs), priorities, recursive, bounds)
