"""End-to-end analysis: parse, desugar, validate, type, build and close
the call graph, and apply the size-change check per definition group."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import scp
from .callgraph import build_callgraph, transitive_closure
from .surface import (
    Program,
    SourceError,
    desugar,
    parse_program,
    type_str,
    validate_restrictions,
)
from .terms import InternalError
from .typecheck import (
    ABCall,
    ABConstr,
    ABProj,
    ABRecord,
    DeclEnv,
    annotate_group,
)

TOTAL = "total"
UNKNOWN = "unknown"
ERROR = "error"


@dataclass
class Config:
    bound_b: int = 2
    bound_d: int = 2
    subsumption: bool = False
    dump_priorities: bool = False
    dump_callgraph: bool = False
    dump_closure: bool = False
    json: bool = False


@dataclass
class Verdict:
    fname: str
    result: str
    bounds: tuple
    reasons: list = field(default_factory=list)
    depends_on_unknown: list = field(default_factory=list)


@dataclass
class GroupReport:
    names: tuple
    bounds: tuple
    priorities: dict = field(default_factory=dict)
    callgraph: tuple = ()
    closure: tuple = ()
    stats: dict = field(default_factory=dict)


@dataclass
class Report:
    verdicts: list = field(default_factory=list)
    groups: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    def exit_code(self) -> int:
        if self.errors or any(v.result == ERROR for v in self.verdicts):
            return 2
        if any(v.result == UNKNOWN for v in self.verdicts):
            return 1
        return 0


def _called_names(adef) -> list:
    out: list = []

    def walk(node) -> None:
        if isinstance(node, ABCall):
            if node.fname not in out:
                out.append(node.fname)
            for a in node.args:
                walk(a)
        elif isinstance(node, (ABConstr,)):
            walk(node.arg)
        elif isinstance(node, ABRecord):
            for _, sub in node.fields:
                walk(sub)
        elif isinstance(node, ABProj):
            walk(node.sub)

    for cl in adef.clauses:
        walk(cl.body)
    return out


def analyze_program(program: Program, config: Config) -> Report:
    report = Report()
    desugared = desugar(program)
    violations, recursive = validate_restrictions(desugared)
    if violations:
        report.errors = [str(v) for v in violations]
        return report

    try:
        env = DeclEnv(desugared.decls)
    except SourceError as err:
        report.errors = [str(err)]
        return report

    schemes: dict = {}
    results: dict = {}

    for group in desugared.groups:
        bounds = group.bounds or (config.bound_b, config.bound_d)
        names = tuple(d.fname for d in group.defs)
        greport = GroupReport(names, bounds)
        report.groups.append(greport)
        try:
            analyzed = annotate_group(
                env, schemes, group.defs,
                recursive=any(recursive.get(n) for n in names),
                bounds=bounds)
            greport.priorities = {
                type_str(inst): prio
                for inst, prio in analyzed.priorities.items()
            }
            graph = build_callgraph(analyzed.defs, *bounds)
            greport.callgraph = graph.edges
            closure = transitive_closure(graph, subsumption=config.subsumption)
            greport.closure = closure.edges
            greport.stats = closure.stats
            outcome = scp.check_loops(closure)
        except SourceError as err:
            for d in group.defs:
                verdict = Verdict(d.fname, ERROR, bounds, [str(err)])
                results[d.fname] = verdict
                report.verdicts.append(verdict)
            continue
        except (InternalError, RecursionError) as err:
            for d in group.defs:
                verdict = Verdict(d.fname, ERROR, bounds,
                                  ["internal error: %s" % err])
                results[d.fname] = verdict
                report.verdicts.append(verdict)
            continue

        reasons = sorted(str(f) for f in outcome.failures)
        for adef in analyzed.defs:
            result = TOTAL if outcome.total else UNKNOWN
            verdict = Verdict(adef.fname, result, bounds, list(reasons))
            verdict.depends_on_unknown = sorted(
                name for name in _called_names(adef)
                if name not in names
                and results.get(name) is not None
                and results[name].result == UNKNOWN
            )
            results[adef.fname] = verdict
            report.verdicts.append(verdict)

    return report


def analyze_source(src: str, config: Config = None) -> Report:
    config = config or Config()
    try:
        program = parse_program(src)
    except SourceError as err:
        report = Report()
        report.errors = [str(err)]
        return report
    return analyze_program(program, config)
