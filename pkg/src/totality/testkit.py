"""Generators and brute-force oracles for the property suite.

The order oracle enumerates a tiny universe of raw terms (including
reducible ones), seeds it with the generating inequalities of the term
order, closes under single-step rewriting, contextuality and
transitivity, and answers comparisons by graph reachability.  It is used
only to cross-check the syntax-directed `sleq` on normal-form pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .callgraph import Call, call_of_term
from .order import sleq
from .terms import (
    INF,
    Approx,
    Constr,
    ConstrDual,
    Daimon,
    FunApp,
    Param,
    Project,
    Record,
    Sum,
    Term,
    Weight,
    ZERO,
    ZEROW,
    approx,
    coef_leq,
    constr,
    constr_dual,
    contains_funapp,
    daimon,
    funapp,
    is_normal,
    nf,
    project,
    record,
    sort_key,
    sum_of,
    weight,
    weight_add,
)

# ---------------------------------------------------------------------------
# term universe and order oracle


@dataclass
class UniverseConfig:
    """Signature of the oracle universe.

    The universe is call-free: the syntax-directed order checks a stripped
    tail of a call against an unreduced body, which no closure of the
    plain generating rules reproduces exactly, so the rules involving
    function names are covered by direct tests instead.
    """

    max_nodes: int = 4
    constructors: tuple = ("A", "B")
    ctor_priority: int = 1
    fieldname: str = "D"
    field_priority: int = 0
    weights: tuple = (ZEROW, Weight(((0, -1),)), Weight(((1, 1),)))


def _child(t: Term):
    if isinstance(t, (Constr, ConstrDual, Project, Daimon, Approx)):
        return t.arg
    if isinstance(t, Record):
        return t.fields[0][1]
    if isinstance(t, FunApp) and len(t.args) == 1:
        return t.args[0]
    return None


def _with_child(t: Term, new: Term) -> Term:
    if isinstance(t, Constr):
        return Constr(t.name, t.priority, new)
    if isinstance(t, ConstrDual):
        return ConstrDual(t.name, t.priority, new)
    if isinstance(t, Project):
        return Project(t.name, t.priority, new)
    if isinstance(t, Daimon):
        return Daimon(new)
    if isinstance(t, Approx):
        return Approx(t.wt, new)
    if isinstance(t, Record):
        return Record(((t.fields[0][0], new),), t.priority)
    if isinstance(t, FunApp):
        return FunApp(t.fname, (new,))
    raise ValueError("no child")


class OrderOracle:
    """Decides the generated term order inside a finite universe."""

    def __init__(self, config: UniverseConfig = None):
        self.config = config or UniverseConfig()
        self.terms: list[Term] = []
        self.ids: dict[Term, int] = {}
        self._build_universe()
        self._build_reachability()

    # -- universe ----------------------------------------------------------

    def _kinds(self):
        cfg = self.config
        kinds = []
        for c in cfg.constructors:
            kinds.append(lambda u, c=c: Constr(c, cfg.ctor_priority, u))
            kinds.append(lambda u, c=c: ConstrDual(c, cfg.ctor_priority, u))
        kinds.append(lambda u: Record(((cfg.fieldname, u),),
                                      cfg.field_priority))
        kinds.append(lambda u: Project(cfg.fieldname, cfg.field_priority, u))
        kinds.append(lambda u: Daimon(u))
        for w in cfg.weights:
            kinds.append(lambda u, w=w: Approx(w, u))
        return kinds

    def _build_universe(self) -> None:
        kinds = self._kinds()
        layer: list[Term] = [Param(1), ZERO]
        universe: list[Term] = list(layer)
        for _ in range(self.config.max_nodes - 1):
            layer = [k(u) for u in layer for k in kinds]
            universe.extend(layer)
        self.base = set(universe)
        # close under rewriting so derivation chains between base terms
        # stay inside the universe
        seen = set(universe)
        queue = list(universe)
        while queue:
            t = queue.pop()
            for r, _ in self._all_rewrites(t):
                if r not in seen:
                    seen.add(r)
                    universe.append(r)
                    queue.append(r)
        self.terms = universe
        self.ids = {t: i for i, t in enumerate(universe)}

    # -- generating relation -----------------------------------------------

    def _local(self, t: Term):
        """Head rewrites of t: (result, 'eq' | 'down' | 'up')."""
        out = []
        cfg = self.config
        child = _child(t)
        if child == ZERO and child is not None:
            out.append((ZERO, "eq"))
            return out
        if isinstance(t, ConstrDual):
            u = t.arg
            if isinstance(u, Constr):
                out.append((u.arg if u.name == t.name else ZERO, "eq"))
            elif isinstance(u, Record):
                out.append((ZERO, "eq"))
            elif isinstance(u, Daimon):
                out.append((u, "eq"))
            elif isinstance(u, Approx):
                delta = 1 if contains_funapp(u.arg) else -1
                out.append((Approx(weight_add(u.wt, weight({t.priority: delta})),
                                   u.arg), "eq"))
        elif isinstance(t, Project):
            u = t.arg
            if isinstance(u, Record):
                hit = [v for n, v in u.fields if n == t.name]
                out.append((hit[0], "down") if hit else (ZERO, "eq"))
            elif isinstance(u, Constr):
                out.append((ZERO, "eq"))
            elif isinstance(u, Daimon):
                out.append((u, "eq"))
            elif isinstance(u, Approx):
                delta = 1 if contains_funapp(u.arg) else -1
                out.append((Approx(weight_add(u.wt, weight({t.priority: delta})),
                                   u.arg), "down"))
        elif isinstance(t, Daimon):
            u = t.arg
            if isinstance(u, Constr):
                out.append((Daimon(u.arg), "eq"))
            elif isinstance(u, Record):
                for _, v in u.fields:
                    out.append((Daimon(v), "down"))
            elif isinstance(u, Daimon):
                out.append((u, "eq"))
            elif isinstance(u, Approx):
                out.append((Daimon(u.arg), "down"))
            out.append((u, "up"))
        elif isinstance(t, Approx):
            u = t.arg
            if isinstance(u, Constr):
                delta = -1 if contains_funapp(u.arg) else 1
                out.append((Approx(weight_add(t.wt, weight({u.priority: delta})),
                                   u.arg), "eq"))
            elif isinstance(u, Record):
                if len(u.fields) == 1 and contains_funapp(u):
                    out.append((Approx(
                        weight_add(t.wt, weight({u.priority: -1})),
                        u.fields[0][1]), "eq"))
                else:
                    for _, v in u.fields:
                        out.append((Daimon(v), "down"))
            elif isinstance(u, Daimon):
                out.append((Daimon(Approx(t.wt, u.arg)), "down"))
            elif isinstance(u, Approx):
                out.append((Approx(weight_add(t.wt, u.wt), u.arg), "down"))
            if t.wt == ZEROW:
                out.append((u, "up"))
        return out

    def _all_rewrites(self, t: Term):
        out = list(self._local(t))
        child = _child(t)
        if child is not None:
            for r, direction in self._all_rewrites(child):
                out.append((_with_child(t, r), direction))
        return out

    def _weight_swaps(self, t: Term, pool):
        """Positional weight weakenings of t (t <= each result)."""
        out = []
        if isinstance(t, Approx):
            for w in pool:
                if w != t.wt and coef_leq(t.wt, w):
                    out.append(Approx(w, t.arg))
        child = _child(t)
        if child is not None:
            for r in self._weight_swaps(child, pool):
                out.append(_with_child(t, r))
        return out

    def _build_reachability(self) -> None:
        # every single-step relation is enumerated at every position, so
        # contextual and transitive closure reduce to graph reachability
        n = len(self.terms)
        succs: list[set] = [set() for _ in range(n)]
        zero = self.ids[ZERO]

        def edge(a: int, b: int) -> None:
            if a != b:
                succs[a].add(b)

        pool = sorted(
            {t.wt for t in self.terms if isinstance(t, Approx)},
            key=lambda w: w.items,
        )
        for t, i in self.ids.items():
            edge(i, zero)  # the error term is the top element
            for r, direction in self._all_rewrites(t):
                j = self.ids.get(r)
                if j is None:
                    continue
                if direction in ("eq", "down"):
                    edge(j, i)
                if direction in ("eq", "up"):
                    edge(i, j)
            for r in self._weight_swaps(t, pool):
                j = self.ids.get(r)
                if j is not None:
                    edge(i, j)
        self._reach = _reachability(n, succs)
        self._zero = zero

    def leq(self, s: Term, t: Term) -> bool:
        try:
            i, j = self.ids[s], self.ids[t]
        except KeyError:
            raise OracleOverflow("term outside the oracle universe")
        return i == j or bool(self._reach[i] >> j & 1)

    def normal_terms(self, max_nodes: int) -> list:
        """Base-universe normal forms; the query set of the cross-check."""
        out = [t for t in self.base
               if _size(t) <= max_nodes and is_normal(t) and nf(t) == t]
        out.sort(key=sort_key)
        return out


class OracleOverflow(Exception):
    pass


def _size(t: Term) -> int:
    child = _child(t)
    if child is None:
        return 1
    return 1 + _size(child)


def _reachability(n: int, succs):
    """Transitive reflexive reachability as bitmasks, by condensation."""
    index = [0] * n
    low = [0] * n
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    comp = [-1] * n
    order: list[int] = []
    counter = [1]
    stack: list[int] = []
    for root in range(n):
        if state[root]:
            continue
        work = [(root, iter(succs[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        state[root] = 1
        stack.append(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if not state[nxt]:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    state[nxt] = 1
                    stack.append(nxt)
                    work.append((nxt, iter(succs[nxt])))
                    advanced = True
                    break
                if state[nxt] == 1:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                members = []
                while True:
                    m = stack.pop()
                    state[m] = 2
                    members.append(m)
                    if m == node:
                        break
                cid = len(order)
                for m in members:
                    comp[m] = cid
                order.append(members)
        # Tarjan emits components in reverse topological order
    comp_reach = [0] * len(order)
    for cid, members in enumerate(order):
        mask = 0
        for m in members:
            mask |= 1 << m
            for nxt in succs[m]:
                if comp[nxt] != cid:
                    mask |= comp_reach[comp[nxt]]
        comp_reach[cid] = mask
    return [comp_reach[comp[i]] for i in range(n)]


def leq_oracle(s: Term, t: Term, oracle: OrderOracle) -> bool:
    return oracle.leq(s, t)


# ---------------------------------------------------------------------------
# random term generation

@dataclass
class GenConfig:
    n_params: int = 1
    fname: str = "f"
    arity: int = 1
    allow_funapp: bool = True
    allow_sum: bool = True
    priorities: tuple = (0, 1)
    weight_values: tuple = (-2, -1, 1, 2, INF)


def _gen_weight(rng: random.Random, cfg: GenConfig) -> Weight:
    entries = {}
    for p in cfg.priorities:
        if rng.random() < 0.6:
            entries[p] = rng.choice(cfg.weight_values)
    return weight(entries)


def gen_term(size: int, seed=None, rng: random.Random = None,
             cfg: GenConfig = None) -> Term:
    """Random canonical term with at most `size` nodes before reduction."""
    rng = rng or random.Random(seed)
    cfg = cfg or GenConfig()

    def go(budget: int) -> Term:
        if budget <= 1:
            if cfg.allow_sum and rng.random() < 0.05:
                return ZERO
            return Param(rng.randint(1, cfg.n_params))
        roll = rng.random()
        if roll < 0.18:
            return constr(rng.choice(("A", "B")), 1, go(budget - 1))
        if roll < 0.30:
            return constr_dual(rng.choice(("A", "B")), 1, go(budget - 1))
        if roll < 0.42:
            if rng.random() < 0.35 and budget >= 3:
                half = (budget - 1) // 2
                return record(
                    [("D", go(half)), ("E", go(budget - 1 - half))], 0)
            return record([("D", go(budget - 1))], 0)
        if roll < 0.52:
            return project(rng.choice(("D", "E")), 0, go(budget - 1))
        if roll < 0.62:
            return daimon(go(budget - 1))
        if roll < 0.74:
            return approx(_gen_weight(rng, cfg), go(budget - 1))
        if roll < 0.86 and cfg.allow_funapp:
            share = max(1, (budget - 1) // max(cfg.arity, 1))
            return funapp(cfg.fname, [go(share) for _ in range(cfg.arity)])
        if cfg.allow_sum:
            half = max(1, (budget - 1) // 2)
            return sum_of([go(half), go(budget - 1 - half if budget > 2 else 1)])
        return Param(rng.randint(1, cfg.n_params))

    return go(size)


def gen_call(rng: random.Random, fname: str = "f", arity: int = 1,
             max_tries: int = 50) -> Call:
    """Random self-call in normal form."""
    argcfg = GenConfig(n_params=arity, allow_funapp=False, allow_sum=False)
    for _ in range(max_tries):
        args = [gen_term(rng.randint(1, 4), rng=rng, cfg=argcfg)
                for _ in range(arity)]
        if any(a == ZERO for a in args):
            continue
        t: Term = funapp(fname, args)
        for _ in range(rng.randint(0, 2)):
            t = constr_dual(rng.choice(("A", "B")), 1, t)
        kind = rng.random()
        if kind < 0.3:
            t = approx(_gen_weight(rng, argcfg), t)
        elif kind < 0.45:
            t = daimon(t)
        for _ in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                t = constr(rng.choice(("A", "B")), 1, t)
            else:
                t = record([("D", t)], 0)
        if isinstance(t, Sum) or t == ZERO:
            continue
        try:
            return call_of_term(fname, t, {fname})
        except Exception:
            continue
    raise RuntimeError("could not generate a call")


# ---------------------------------------------------------------------------
# property suite

def run_property_suite(seed: int = 20240917, quick: bool = False) -> dict:
    """Execute the randomized property checks; returns a report mapping
    property name -> (runs, failures, first counterexample)."""
    from .collapse import collapse_depth, collapse_weights
    from .terms import compose

    rng = random.Random(seed)
    report: dict[str, tuple] = {}

    def run(name: str, count: int, check) -> None:
        failures = 0
        first = None
        for i in range(count):
            ok, repro = check(i)
            if not ok:
                failures += 1
                if first is None:
                    first = repro
        report[name] = (count, failures, first)

    n_assoc = 200 if quick else 1000

    def assoc(i):
        # composition is used call-after-call, where the callee occurrence
        # is always replaced by a term that again contains the callee
        ts = [gen_call(rng).term for _ in range(3)]
        left = compose(ts[0], compose(ts[1], ts[2], "f"), "f")
        right = compose(compose(ts[0], ts[1], "f"), ts[2], "f")
        return left == right, ts

    run("compose_associative", n_assoc, assoc)

    n_nf = 2000 if quick else 10000

    def nf_shape(i):
        t = gen_term(rng.randint(1, 8), rng=rng)
        return is_normal(t), t

    run("nf_shape_grammar", n_nf, nf_shape)

    n_cc = 200 if quick else 1000

    def collapse_below(i):
        b = rng.randint(1, 2)
        d = rng.randint(0, 2)
        alpha = gen_call(rng)
        beta = gen_call(rng)
        raw = compose(alpha.term, beta.term, "f")
        for s in (raw.parts if isinstance(raw, Sum) else (raw,)):
            collapsed = collapse_weights(b, collapse_depth(d, s))
            if not sleq(collapsed, s):
                return False, (b, d, alpha.term, beta.term, s)
        return True, None

    run("collapse_below_composition", n_cc, collapse_below)

    n_idem = 100 if quick else 500

    def collapse_idempotent(i):
        b = rng.randint(1, 3)
        d = rng.randint(0, 3)
        t = gen_call(rng).term
        cd = collapse_depth(d, t)
        if collapse_depth(d, cd) != cd:
            return False, ("depth", d, t)
        cb = collapse_weights(b, t)
        if collapse_weights(b, cb) != cb:
            return False, ("weights", b, t)
        return True, None

    run("collapse_idempotent", n_idem, collapse_idempotent)

    n_refl = 200 if quick else 1000

    def sleq_reflexive(i):
        t = gen_term(rng.randint(1, 6), rng=rng)
        return sleq(t, t), t

    run("sleq_reflexive", n_refl, sleq_reflexive)

    n_trans = 100 if quick else 400

    def sleq_transitive(i):
        ts = [gen_term(rng.randint(1, 5), rng=rng) for _ in range(3)]
        a, b, c = ts
        if sleq(a, b) and sleq(b, c) and not sleq(a, c):
            return False, ts
        return True, None

    run("sleq_transitive", n_trans, sleq_transitive)

    def coherent_upper_bound(i):
        t = gen_term(rng.randint(2, 6), rng=rng)
        u = gen_term(rng.randint(1, 5), rng=rng)
        v = gen_term(rng.randint(1, 5), rng=rng)
        if t == ZERO:
            return True, None
        from .order import sqcoh
        if sleq(u, t) and sleq(v, t) and not sqcoh(u, v):
            return False, (u, v, t)
        return True, None

    run("joint_bound_implies_coherent", n_trans, coherent_upper_bound)

    return report
