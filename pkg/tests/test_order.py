"""Branches, branch weights, the syntax-directed order and weak coherence."""

import random

from totality.order import Branch, branch_weight, branches, sleq, sqcoh
from totality.terms import INF, ZERO, daimon, parse_term, weight
from totality.testkit import gen_term


def t(text):
    return parse_term(text)


class TestBranches:
    def test_record_opens_one_branch_per_field(self):
        out = branches(t("{Fst@0 = x1; Snd@0 = C-@1 x1}"))
        assert out == [
            Branch((("r", "Fst", 0), ("x", 1))),
            Branch((("r", "Snd", 0), ("d", "C", 1), ("x", 1))),
        ]

    def test_parameter_is_its_own_branch(self):
        assert branches(t("x1")) == [Branch((("x", 1),))]

    def test_daimon_paths_are_dropped(self):
        assert branches(t("? x1")) == []
        assert branches(t("{D@0 = ? x1; E@0 = x2}")) == \
            [Branch((("r", "E", 0), ("x", 2)))]


class TestBranchWeight:
    def test_standard_signs(self):
        br = Branch((("j", "Snd", 0), ("d", "Cons", 1), ("x", 1)))
        assert branch_weight(br) == weight({0: -1, 1: -1})

    def test_stored_weight_contributes(self):
        br = Branch((("w", weight({1: -1})), ("x", 1)))
        assert branch_weight(br) == weight({1: -1})

    def test_dual_signs_for_spines(self):
        br = Branch((("r", "Tail", 0), ("w", weight({0: -1}))))
        assert branch_weight(br, dual=True) == weight({0: -2})


class TestSleq:
    def test_reflexive(self):
        for text in ("x1", "C@1 x1", "? .D@0 x1", "<{0:-1}> x1",
                     "f(x1) + A@1 x1", "0"):
            term = t(text)
            assert sleq(term, term)

    def test_everything_below_zero(self):
        assert sleq(t("C@1 x1"), ZERO)
        assert not sleq(ZERO, t("C@1 x1"))

    def test_daimon_below_call(self):
        assert sleq(t("? x1"), t("f(x1)"))

    def test_no_rule_for_growing(self):
        assert not sleq(t("x1"), t("C@1 x1"))

    def test_weight_comparison(self):
        assert sleq(t("<{1:inf}> x1"), t("<{1:1}> x1"))
        assert not sleq(t("<{1:1}> x1"), t("<{1:inf}> x1"))

    def test_weight_against_destructor_tail(self):
        assert sleq(t("<{0:-1}> x1"), t(".D@0 x1"))
        assert sleq(t("<{0:-3}> x1"), t("<{0:-2}> .D@0 x1"))

    def test_daimon_prefix_stripping(self):
        assert sleq(t("? x1"), t("? .D@0 C-@1 x1"))
        assert sleq(t("? .D@0 x1"), t("? f(.D@0 x1)"))

    def test_sum_rule(self):
        small = t("? x1 + ? x2")
        assert sleq(small, t("? x1"))
        assert not sleq(t("? x1"), small)

    def test_collective_daimon_sum_below_record(self):
        pieces = t("? x1 + ? x2")
        target = t("{D@0 = x1; E@0 = x2}")
        assert sleq(pieces, target)

    def test_transitive_sample(self):
        rng = random.Random(99)
        for _ in range(300):
            a = gen_term(rng.randint(1, 5), rng=rng)
            b = gen_term(rng.randint(1, 5), rng=rng)
            c = gen_term(rng.randint(1, 5), rng=rng)
            if sleq(a, b) and sleq(b, c):
                assert sleq(a, c), (a, b, c)


class TestSqcoh:
    def test_structural_reflexive(self):
        for text in ("x1", "C@1 .D@0 x1", "{D@0 = x1; E@0 = C@1 x1}"):
            term = t(text)
            assert sqcoh(term, term)

    def test_daimon_destructor_stripping(self):
        assert sqcoh(t("? .Tail@0 x1"), t("? x1"))

    def test_constructor_clash_incoherent(self):
        assert not sqcoh(t("C@1 x1"), t("B@1 x1"))

    def test_weight_routes_through_daimon(self):
        assert sqcoh(t("<{0:-1}> x1"), t("<{0:-7}> x1"))
        assert sqcoh(t("C@1 x1"), t("<{1:-1}> x1"))

    def test_joint_upper_bound_implies_coherence(self):
        rng = random.Random(5)
        for _ in range(400):
            target = gen_term(rng.randint(2, 6), rng=rng)
            if target == ZERO:
                continue
            u = gen_term(rng.randint(1, 5), rng=rng)
            v = gen_term(rng.randint(1, 5), rng=rng)
            if sleq(u, target) and sleq(v, target):
                assert sqcoh(u, v), (u, v, target)


class TestOracleAgreement:
    def test_hand_checked_bottom_facts(self, oracle):
        x = t("x1")
        assert oracle.leq(t("? x1"), t("A@1 x1"))
        assert oracle.leq(t("? x1"), t("{D@0 = x1}"))
        assert oracle.leq(t("A@1 x1"), ZERO)
        assert not oracle.leq(t("A@1 x1"), x)

    def test_agreement_on_normal_pairs(self, oracle):
        lhs = oracle.normal_terms(4)
        rhs = oracle.normal_terms(3)
        for s in lhs:
            for u in rhs:
                assert sleq(s, u) == oracle.leq(s, u), (s, u)
