#include <gtest/gtest.h>

#include <set>

#include "golden.hpp"
#include "hqca/hqca.hpp"

using namespace hqca;

namespace {

CircuitProgram worked() { return {3, 2, {{Gate::W, Gate::S}, {Gate::S, Gate::W}}}; }

ChainState start(Tier t, std::uint64_t seed = 0) {
    auto w = seed ? DenseState::random(3, seed) : DenseState::basis("100");
    return build_initial({worked(), t, w, 3, 3});
}

} // namespace

TEST(RuleSet, SizesGrowWithTier) {
    EXPECT_EQ(rule_set(Tier::I).size(), 9u);
    EXPECT_EQ(rule_set(Tier::II).size(), 17u);
    EXPECT_EQ(rule_set(Tier::III).size(), 25u);
    EXPECT_EQ(rule_set(Tier::IV).size(), 60u);
}

TEST(RuleSet, LabelsAreUniqueAndNested) {
    for (Tier t : {Tier::I, Tier::II, Tier::III, Tier::IV}) {
        auto labels = rule_set(t).labels();
        std::set<std::string> uniq(labels.begin(), labels.end());
        EXPECT_EQ(uniq.size(), labels.size());
    }
    for (const auto& l : rule_set(Tier::I).labels()) EXPECT_TRUE(rule_set(Tier::IV).find(l)) << l;
    EXPECT_FALSE(rule_set(Tier::III).find("22"));
}

TEST(RuleSet, VersionedRulesDifferBetweenTiers) {
    const Rule* a = rule_set(Tier::II).find("13a");
    const Rule* b = rule_set(Tier::III).find("13a");
    ASSERT_TRUE(a && b);
    EXPECT_NE(dump_rule(*a), dump_rule(*b));
    EXPECT_NE(dump_rule(*rule_set(Tier::III).find("21")), dump_rule(*rule_set(Tier::IV).find("21")));
}

TEST(RuleSet, OnlyGateRulesTouchData) {
    for (const auto& r : rule_set(Tier::IV).rules())
        if (r.gate) {
            EXPECT_TRUE(r.label == "5a") << r.label;
        }
}

TEST(RuleSet, WithoutDropsAndRejectsUnknown) {
    auto t = rule_set(Tier::III).without({"16"});
    EXPECT_EQ(t.size(), 24u);
    EXPECT_FALSE(t.find("16"));
    EXPECT_THROW(rule_set(Tier::III).without({"99"}), Error);
}

TEST(Dump, ShowsBothColumnsAndGate) {
    auto text = dump_rule(*rule_set(Tier::I).find("5a"));
    EXPECT_NE(text.find("5a"), std::string::npos);
    EXPECT_NE(text.find("gate:A"), std::string::npos);
    auto all = dump_rules(rule_set(Tier::II));
    EXPECT_EQ(std::count(all.begin(), all.end(), '\n'), 17);
}

TEST(Matching, WorkedExampleStartHasOneForwardNoReverse) {
    auto s = start(Tier::I);
    auto fwd = applicable(s, Direction::Forward);
    ASSERT_EQ(fwd.size(), 1u);
    EXPECT_EQ(fwd.front().label(), "1");
    EXPECT_EQ(fwd.front().site, 1u);
    EXPECT_TRUE(applicable(s, Direction::Reverse).empty());
}

// Every forward step is undone by exactly one reverse match.
TEST(Matching, ReverseUndoesForwardAlongTrajectories) {
    for (Tier t : {Tier::I, Tier::II, Tier::III, Tier::IV}) {
        ChainState s = start(t, 17);
        const auto& table = rule_set(t);
        for (int step = 0; step < 700; ++step) {
            auto fwd = applicable(table, s, Direction::Forward);
            if (fwd.empty()) break;
            ASSERT_EQ(fwd.size(), 1u) << tier_name(t) << " step " << step;
            ChainState next = apply(s, fwd.front());
            auto rev = applicable(table, next, Direction::Reverse);
            ASSERT_EQ(rev.size(), 1u) << tier_name(t) << " step " << step;
            ChainState back = apply(next, rev.front());
            EXPECT_TRUE(same_state(back, s)) << tier_name(t) << " step " << step;
            s = next;
        }
    }
}

TEST(Apply, StaleMatchIsRejected) {
    auto s = start(Tier::I);
    auto m = applicable(s, Direction::Forward).front();
    auto next = apply(s, m);
    EXPECT_THROW(apply(next, m), StaleMatch);
}

TEST(Apply, GateRuleRotatesTheWorkRegister) {
    auto tr = run(start(Tier::I, 3), StepBudget{12});
    const auto& s = tr.states[9];
    auto m = applicable(s, Direction::Forward).front();
    EXPECT_EQ(m.label(), "5a");
    EXPECT_EQ(s.work.amps, tr.states[0].work.amps);
    auto s12 = tr.states[12];
    EXPECT_LT(fidelity(s12.work.amps, s.work.amps), 1 - 1e-6);
}

TEST(ClassicalGates, ActOnBasisPairs) {
    EXPECT_EQ(classical_gate_action(Gate::S, 1, 0), (std::pair<int, int>{0, 1}));
    EXPECT_EQ(classical_gate_action(Gate::I, 1, 0), (std::pair<int, int>{1, 0}));
    EXPECT_EQ(classical_gate_action(Gate::W, 0, 1), (std::pair<int, int>{0, 1}));
    EXPECT_FALSE(classical_gate_action(Gate::W, 1, 0));
}

TEST(ClassicalGates, AbortOrPromoteWhenSuperpositionWouldLeaveTheWindow) {
    // W with control 1 on a classical pair outside the work window.
    ChainState s;
    s.tier = Tier::I;
    s.config = parse_snapshot("P: W gat\nD: 1 0\n");
    s.work.amps = {1.0};
    auto ms = applicable(s, Direction::Forward);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_THROW(apply(s, ms.front()), ConstructionViolation);
    auto promoted = apply(s, ms.front(), GateMode::Promote);
    EXPECT_EQ(promoted.work.support.size(), 2u);
    EXPECT_NEAR(promoted.work.norm(), 1.0, 1e-12);
}
