import pathlib

import pytest

from totality.checker import Config, analyze_source
from totality.surface import desugar, parse_program, validate_restrictions
from totality.typecheck import DeclEnv, annotate_group

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def corpus_source(name: str) -> str:
    return (CORPUS / name).read_text()


def analyze_corpus(name: str, bound_b: int, bound_d: int, **kw):
    return analyze_source(
        corpus_source(name),
        Config(bound_b=bound_b, bound_d=bound_d, **kw),
    )


def annotated_groups(name: str):
    """Typed and priority-annotated groups of a corpus file."""
    program = desugar(parse_program(corpus_source(name)))
    violations, recursive = validate_restrictions(program)
    assert not violations, violations
    env = DeclEnv(program.decls)
    schemes: dict = {}
    out = []
    for group in program.groups:
        names = [d.fname for d in group.defs]
        out.append((annotate_group(
            env, schemes, group.defs,
            recursive=any(recursive[n] for n in names)), env))
    return out


@pytest.fixture(scope="session")
def oracle():
    from totality.testkit import OrderOracle

    return OrderOracle()


@pytest.fixture(scope="session")
def small_oracle():
    from totality.testkit import OrderOracle, UniverseConfig

    return OrderOracle(UniverseConfig(constructors=("A",)))
