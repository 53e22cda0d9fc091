#include <gtest/gtest.h>

#include "hqca/hqca.hpp"

using namespace hqca;

namespace {

CircuitProgram worked() { return {3, 2, {{Gate::W, Gate::S}, {Gate::S, Gate::W}}}; }

BuildSpec spec(Tier t, std::uint64_t seed = 0) {
    return {worked(), t, seed ? DenseState::random(3, seed) : DenseState::basis("100"), 3, 3};
}

} // namespace

TEST(Report, LineFormat) {
    VerificationReport r;
    r.add("alpha", true, "x=1", "exact");
    r.add("beta", false, "x=2", "1e-10").counterexample = "P: →\n";
    EXPECT_EQ(r.lines(), "CHECK alpha PASS x=1 exact\nCHECK beta FAIL x=2 1e-10\n");
    EXPECT_FALSE(r.ok());
    EXPECT_NE(r.text().find("| P: →"), std::string::npos);
    EXPECT_FALSE(VerificationReport{}.ok());
}

TEST(WorkOracle, TierOneScheduleIncludingTheFirstRound) {
    auto s = spec(Tier::I, 9);
    auto tr = run(build_initial(s), StepBudget{});
    auto sched = oscillation_schedule(tr, s.circuit, s.work);
    sched.push_back({12, apply_rounds(s.work, s.circuit, 1), "first round"});
    sched.push_back({85, apply_circuit_power(s.work, s.circuit, 1), "U"});
    EXPECT_TRUE(check_work_oracle(tr, sched).ok());
}

TEST(WorkOracle, TierTwoPeriods) {
    auto s = spec(Tier::II, 4);
    const auto T = predicted_T_II(3, 2);
    auto tr = run(build_initial(s), StepBudget{8 * T});
    EXPECT_TRUE(check_work_oracle(tr, period_schedule(s.circuit, s.work, T, 8)).ok());
}

TEST(WorkOracle, FailsOnWrongExpectation) {
    auto s = spec(Tier::I, 9);
    auto tr = run(build_initial(s), StepBudget{});
    auto rep = check_work_oracle(tr, {{93, s.work, "unchanged"}});
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.checks.front().counterexample.empty());
}

TEST(ClockPowers, HoldsOnATierThreePrefix) {
    auto s = spec(Tier::III, 5);
    auto tr = run(build_initial(s), StepBudget{1000});
    auto rep = check_clock_powers(tr, s.circuit, s.work);
    EXPECT_TRUE(rep.ok()) << rep.text();
    EXPECT_NE(rep.checks.front().detail.find("k up to 5"), std::string::npos) << rep.text();
}

TEST(ClockPowers, CorruptedClockBitIsCaught) {
    auto s = spec(Tier::III, 5);
    auto tr = run(build_initial(s), StepBudget{1000});
    for (auto& st : tr.states)
        if (st.config.at(st.config.length()).cp == Ptr::C) {
            auto& bit = st.config.sites[st.config.length() - 2].c;
            bit = bit == Bit::One ? Bit::Zero : Bit::One;
            break;
        }
    auto rep = check_clock_powers(tr, s.circuit, s.work);
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.checks.front().counterexample.empty());
}

TEST(Clock, SweepAndSaturation) {
    auto rep = check_clock_counter(4, ~0ull);
    EXPECT_TRUE(rep.ok()) << rep.text();
    EXPECT_EQ(rep.checks.size(), 2u);
}

TEST(Clock, SixBecomesSevenInOneStep) {
    auto tr = run(clock_chain(4, 6), StepBudget{1});
    EXPECT_EQ(tr.steps.front().label(), "15");
    EXPECT_EQ(clock_value(tr.final_state), 7u);
}

TEST(Clock, DroppingACarryRuleFails) {
    SuiteOptions o;
    o.drop_rules = {"16"};
    EXPECT_FALSE(check_clock_counter(4, ~0ull, o).ok());
    o.drop_rules = {"17"};
    EXPECT_FALSE(check_clock_counter(3, ~0ull, o).ok());
}

TEST(Comparator, ExhaustiveSmallSweep) {
    auto rep = check_comparator(3);
    EXPECT_TRUE(rep.ok()) << rep.text();
}

TEST(Comparator, SpotVerdicts) {
    const auto& table = rule_set(Tier::IV);
    EXPECT_EQ(run_comparator(comparator_chain(4, 5, target_row(5, 5, 1)), table).verdict, Verdict::Match);
    EXPECT_EQ(run_comparator(comparator_chain(4, 5, target_row(5, 3, 1)), table).verdict, Verdict::Mismatch);
    // Bullet directly over a compared clock bit.
    EXPECT_EQ(run_comparator(comparator_chain(4, 8, target_row(5, 1, 3)), table).verdict, Verdict::Mismatch);
}

TEST(Comparator, DroppingTheMatchRuleFails) {
    SuiteOptions o;
    o.drop_rules = {"30"};
    EXPECT_FALSE(check_comparator(3, o).ok());
}

TEST(Backends, AgreeOnSmallRuns) {
    EXPECT_TRUE(cross_check_backends(spec(Tier::I, 3), 93).ok());
    EXPECT_TRUE(cross_check_backends(spec(Tier::II, 3), 2 * predicted_T_II(3, 2)).ok());
    for (int n = 2; n <= 3; ++n)
        for (int k = 1; k <= 2; ++k) {
            CircuitProgram c{n, k, {}};
            for (int r = 0; r < k; ++r) c.rounds.push_back(std::vector<Gate>(n - 1, r % 2 ? Gate::S : Gate::W));
            BuildSpec b{c, Tier::I, DenseState::random(n, n * k), 0, 3};
            auto rep = cross_check_backends(b, predicted_T_I(n, k));
            EXPECT_TRUE(rep.ok()) << rep.text();
        }
}

TEST(Suites, NegativeControlDropsRuleSixteen) {
    SuiteOptions o;
    o.drop_rules = {"16"};
    o.budget = 3000;
    auto rep = run_suite(spec(Tier::III), "uog", o);
    EXPECT_FALSE(rep.ok());
    EXPECT_THROW(run_suite(spec(Tier::III), "bogus", o), Error);
    o.drop_rules = {"nope"};
    EXPECT_THROW(run_suite(spec(Tier::III), "uog", o), Error);
}

TEST(ReverseTail, ConstructionFourStartIsShortOfTheEnd) {
    auto s0 = build_initial(spec(Tier::IV));
    auto tail = reverse_tail(s0, rule_set(Tier::IV), 1000);
    EXPECT_LE(tail.size(), 3 * s0.config.length());
    if (!tail.empty()) {
        EXPECT_TRUE(applicable(rule_set(Tier::IV), tail.back(), Direction::Reverse).empty());
    }
    auto s1 = build_initial(spec(Tier::I));
    EXPECT_TRUE(reverse_tail(s1, rule_set(Tier::I), 10).empty());
}

TEST(Measurement, ReadsTheStateAtTheSampledPosition) {
    auto s = spec(Tier::I);
    auto tr = run(build_initial(s), StepBudget{});
    WalkLine line(tr.states.size());
    auto m0 = simulate_measurement(line, tr.states, 0.0, 1);
    EXPECT_EQ(m0.m, 0u);
    EXPECT_EQ(m0.state.config, tr.states[0].config);
    EXPECT_THROW(simulate_measurement(WalkLine(5), tr.states, 1.0, 1), Error);
}
