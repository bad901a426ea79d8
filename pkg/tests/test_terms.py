"""Weights, normalization, substitution, composition and the notation."""

import pytest

from totality.terms import (
    INF,
    Param,
    Sum,
    ZERO,
    approx,
    coef_leq,
    compose,
    constr,
    constr_dual,
    daimon,
    funapp,
    is_normal,
    nf,
    parse_term,
    project,
    record,
    substitute,
    sum_of,
    term_str,
    weight,
    weight_add,
)


def t(text):
    return parse_term(text)


class TestWeights:
    def test_add_disjoint(self):
        assert weight_add(weight({0: -1}), weight({1: -1})) == weight({0: -1, 1: -1})

    def test_add_absorbs_infinity(self):
        assert weight_add(weight({1: 1}), weight({1: INF})) == weight({1: INF})

    def test_zero_neutral(self):
        assert weight_add(weight({}), weight({0: 5})) == weight({0: 5})

    def test_coef_order_reversed(self):
        assert coef_leq(weight({1: INF}), weight({1: 1}))
        assert coef_leq(weight({0: -1}), weight({0: -2}))
        assert not coef_leq(weight({0: -2}), weight({0: -1}))

    def test_coef_reflexive(self):
        w = weight({0: -2, 1: INF})
        assert coef_leq(w, w)


class TestNormalForm:
    def test_destructor_cancels_constructor(self):
        assert t("C-@1 C@1 x1") == t("x1")

    def test_projection_sees_errors_in_other_fields(self):
        # the E field reduces to 0, erasing the whole record first
        term = t(".D@0 {D@0 = x1; E@0 = C-@1 B@1 x1}")
        assert term == ZERO

    def test_projection_of_clean_record(self):
        assert t(".D@0 {D@0 = x1; E@0 = x1}") == t("x1")

    def test_daimon_absorbs_constructor(self):
        assert t("? C@1 x1") == t("? x1")

    def test_weight_absorbs_constructor(self):
        assert t("<{}> Succ@1 x1") == approx(weight({1: 1}), Param(1))

    def test_dual_absorption_above_call(self):
        term = t("{Tail@0 = <{}> {Tail@0 = f(x1)}}")
        assert term == t("{Tail@0 = <{0:-1}> f(x1)}")

    def test_argument_side_keeps_standard_sign(self):
        assert t("<{}> Succ@1 f(x1)") == t("<{1:-1}> f(x1)")
        assert t("<{}> Succ@1 x1") == t("<{1:1}> x1")

    def test_record_with_zero_field_is_zero(self):
        assert record([("D", ZERO), ("E", Param(1))], 0) == ZERO

    def test_lossy_record_under_weight(self):
        term = approx(weight({}), record([("D", Param(1)), ("E", Param(2))], 0))
        assert term == sum_of([daimon(Param(1)), daimon(Param(2))])

    def test_weight_merge(self):
        assert t("<{0:1}> <{0:-1,1:2}> x1") == t("<{1:2}> x1")

    def test_daimon_swallows_weight(self):
        assert t("? <{0:5}> x1") == t("? x1")
        assert t("<{0:5}> ? x1") == t("? x1")

    def test_clash_gives_zero(self):
        assert t("C-@1 B@1 x1") == ZERO
        assert t(".D@0 C@1 x1") == ZERO
        assert t("C-@1 {D@0 = x1}") == ZERO

    def test_normal_forms_pass_grammar(self):
        for text in ("x1", "C@1 ? .D@0 x1", "<{0:-1}> C-@1 f(x1, ? x1)",
                     "{D@0 = x1; E@0 = <{1:inf}> x1}", "0",
                     "A@1 x1 + ? x1"):
            assert is_normal(t(text)), text


class TestSubstitute:
    def test_parameter(self):
        assert substitute(Param(1), {1: t("C@1 x1")}) == t("C@1 x1")

    def test_stacking(self):
        out = substitute(t("Succ@1 x1"), {1: t("Succ@1 x1")})
        assert out == t("Succ@1 Succ@1 x1")

    def test_sum_binding_distributes(self):
        out = substitute(t("f(x1)"), {1: sum_of([t("A@1 x1"), t("B@1 x1")])})
        assert out == sum_of([t("f(A@1 x1)"), t("f(B@1 x1)")])


class TestCompose:
    def test_stream_self_composition(self):
        sigma = t("{Tail@0 = nats(Succ@1 x1)}")
        assert compose(sigma, sigma, "nats") == \
            t("{Tail@0 = {Tail@0 = nats(Succ@1 Succ@1 x1)}}")

    def test_identity_left_factor(self):
        u = t("{Tail@0 = f(Succ@1 x1)}")
        assert compose(t("f(x1)"), u, "f") == u

    def test_nested_calls_multiply(self):
        target = sum_of([t("g(x1)"), t("h(x1)")])
        out = compose(t("f(f(x1))"), target, "f")
        assert out == sum_of([
            t("g(g(x1))"), t("g(h(x1))"), t("h(g(x1))"), t("h(h(x1))")])


class TestNotation:
    CASES = [
        "x1", "0", "_", "? x1", "<{0:-1,1:inf}> x1", "C@1 x1",
        "C-@1 .D@0 x1", "{D@0 = x1; E@0 = C@1 x1}", "f()",
        "f(x1, x2)", "A@1 x1 + ? .D@0 x1", "bad_s()",
        "{Tail@0 = <{0:-1}> nats(Succ@1 <{1:inf}> x1)}",
    ]

    @pytest.mark.parametrize("text", CASES)
    def test_round_trip(self, text):
        term = parse_term(text)
        assert parse_term(term_str(term)) == term

    def test_round_trip_random(self):
        from totality.testkit import gen_term

        import random
        rng = random.Random(7)
        for _ in range(300):
            term = gen_term(rng.randint(1, 8), rng=rng)
            assert parse_term(term_str(term)) == term

    def test_nf_is_identity_on_parsed_terms(self):
        for text in self.CASES:
            term = parse_term(text)
            assert nf(term) == term
