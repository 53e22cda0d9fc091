#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "golden.hpp"
#include "hqca/hqca.hpp"
#include "oracles.hpp"

using namespace hqca;

namespace {

CircuitProgram worked() { return {3, 2, {{Gate::W, Gate::S}, {Gate::S, Gate::W}}}; }

CircuitProgram random_circuit(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CircuitProgram c{n, k, {}};
    for (int r = 0; r < k; ++r) {
        c.rounds.emplace_back();
        for (int m = 0; m < n - 1; ++m) c.rounds.back().push_back(static_cast<Gate>(rng() % 3));
    }
    return c;
}

std::string work_free(const ChainState& s) { return snapshot(s); }

} // namespace

TEST(Trajectory, WorkedExampleHitsEveryPublishedFrame) {
    auto c = worked();
    auto w = DenseState::random(3, 42);
    auto tr = run(build_initial({c, Tier::I, w, 0, 3}), StepBudget{});
    ASSERT_EQ(tr.status, RunStatus::DeadEnd);
    ASSERT_EQ(tr.length, 93u);
    auto u = oracle::circuit_unitary(c);
    auto first = oracle::embed(Gate::W, 1, 3) * (oracle::embed(Gate::S, 2, 3) * w.amps);
    for (const auto& f : golden::worked_example()) {
        const auto& s = tr.states[f.t];
        EXPECT_EQ(work_free(s), f.rows) << "t=" << f.t;
        const auto& want = f.rounds == 0 ? w.amps : f.rounds == 1 ? first : u * w.amps;
        EXPECT_GT(oracle::fidelity(s.work.amps, want), 1 - 1e-10) << "t=" << f.t;
    }
}

TEST(Trajectory, RuleSequenceOfTheFirstOscillation) {
    auto tr = run(build_initial({worked(), Tier::I, DenseState::basis("000"), 0, 3}), StepBudget{17});
    std::string seq;
    for (const auto& m : tr.steps) seq += m.label() + " ";
    EXPECT_EQ(seq, "1 2 2 2 2 2 2 3 4a 5a 5a 5a 5a 5a 5a 5a 6a ");
}

TEST(Trajectory, StepCountsMatchClosedForm) {
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k <= 3; ++k) {
            auto c = random_circuit(n, k, 31 * n + k);
            auto tr = run(build_initial({c, Tier::I, DenseState::random(n, n + k), 0, 3}), StepBudget{});
            EXPECT_EQ(tr.status, RunStatus::DeadEnd);
            EXPECT_EQ(tr.length, oracle::t_one(n, k)) << n << "," << k;
            EXPECT_EQ(tr.length, predicted_T_I(n, k));
            const auto& ends = tr.marker("oscillation_end");
            ASSERT_FALSE(ends.empty());
            const auto osc = 2 * k * (n + 1) + 1;
            EXPECT_EQ(ends.front(), std::uint64_t(osc));
            for (std::size_t i = 1; i < ends.size(); ++i) EXPECT_EQ(ends[i] - ends[i - 1], std::uint64_t(osc));
        }
}

TEST(Trajectory, TierTwoRepeatsWithPeriod) {
    auto c = worked();
    auto w = DenseState::random(3, 8);
    auto s0 = build_initial({c, Tier::II, w, 0, 3});
    const auto T = predicted_T_II(3, 2);
    EXPECT_EQ(T, 188u);
    auto tr = run(s0, StepBudget{3 * T});
    EXPECT_EQ(tr.status, RunStatus::Limit);
    auto u = oracle::circuit_unitary(c);
    for (std::uint64_t x = 1; x <= 3; ++x) {
        EXPECT_EQ(tr.states[x * T].config, s0.config);
        EXPECT_GT(oracle::fidelity(tr.states[x * T].work.amps, oracle::power_apply(u, w.amps, x)), 1 - 1e-10);
    }
    for (std::uint64_t t = 1; t < T; ++t) EXPECT_FALSE(tr.states[t].config == s0.config) << t;
    EXPECT_EQ(tr.marker("reset").size(), 6u);
}

TEST(Trajectory, TierThreePrologueWalksTheClockPointer) {
    auto tr = run(build_initial({worked(), Tier::III, DenseState::basis("100"), 0, 3}), StepBudget{15});
    std::string seq;
    for (const auto& m : tr.steps) seq += m.label() + " ";
    std::string want;
    for (int i = 0; i < 13; ++i) want += "19 ";
    EXPECT_EQ(seq, want + "20 21 ");
    EXPECT_EQ(tr.marker("clock_done").front(), 14u);
    EXPECT_EQ(tr.marker("application_start").front(), 15u);
    EXPECT_EQ(clock_value(tr.states[14]), 0u);
}

TEST(Run, StopsOnClockValue) {
    StepBudget b{1'000'000, StepBudget::Stop::ClockEquals, 2};
    auto tr = run(build_initial({worked(), Tier::III, DenseState::basis("100"), 0, 3}), b);
    EXPECT_EQ(tr.status, RunStatus::Clock);
    EXPECT_EQ(clock_value(tr.final_state), 2u);
}

TEST(Run, ObserverCanStop) {
    RunOptions ro;
    ro.observer = [](std::uint64_t t, const ChainState&, const Match&) { return t < 5; };
    auto tr = run(build_initial({worked(), Tier::I, DenseState::basis("100"), 0, 3}), StepBudget{}, ro);
    EXPECT_EQ(tr.status, RunStatus::Stopped);
    EXPECT_EQ(tr.length, 5u);
}

TEST(Run, AmbiguityAborts) {
    // Two active symbols give two forward matches.
    ChainState s;
    s.tier = Tier::I;
    s.config = parse_snapshot("P: → S • → S •\nD: 0 0 0 0 0 0\n");
    s.work.amps = {1.0};
    EXPECT_THROW(run(s, StepBudget{10}), Ambiguous);
}

TEST(Trace, IsDeterministicAndParsable) {
    auto s0 = build_initial({worked(), Tier::IV, DenseState::basis("100"), 3, 3});
    std::string out[2];
    for (auto& o : out) {
        std::ostringstream os;
        RunOptions ro;
        ro.trace = &os;
        ro.trace_snapshot_every = 100;
        ro.keep_states = false;
        run(s0, StepBudget{400}, ro);
        o = os.str();
    }
    EXPECT_EQ(out[0], out[1]);
    std::istringstream is(out[0]);
    std::string line;
    int steps = 0, snaps = 0;
    while (std::getline(is, line)) {
        if (line.rfind("#snapshot", 0) == 0) ++snaps;
        if (!line.empty() && std::isdigit(static_cast<unsigned char>(line[0]))) {
            ++steps;
            EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 5) << line;
        }
    }
    EXPECT_EQ(steps, 400);
    EXPECT_GE(snaps, 4);
}

TEST(Uog, CleanOnEveryConstruction) {
    for (Tier t : {Tier::I, Tier::II, Tier::III, Tier::IV}) {
        auto s0 = build_initial({worked(), t, DenseState::random(3, 2), 3, 3});
        RunOptions ro;
        ro.check_uog = t >= Tier::III;
        auto tr = run(s0, StepBudget{t == Tier::II ? 400u : 5000u}, ro);
        UogOptions uo;
        if (t == Tier::II) uo.period = predicted_T_II(3, 2);
        auto rep = verify_uog(tr, uo);
        EXPECT_TRUE(rep.clean()) << tier_name(t) << ": " << (rep.clean() ? "" : rep.violations.front());
    }
}

TEST(Uog, DetectsRevisitedConfig) {
    // Tier II without the period allowance revisits its start config.
    auto tr = run(build_initial({worked(), Tier::II, DenseState::basis("100"), 0, 3}), StepBudget{200});
    EXPECT_FALSE(verify_uog(tr).clean());
}

TEST(RestrictedHamiltonian, IsThePathAdjacency) {
    for (Tier t : {Tier::I, Tier::II}) {
        CircuitProgram c = t == Tier::I ? CircuitProgram{2, 1, {{Gate::W}}} : worked();
        auto tr = run(build_initial({c, t, DenseState::random(c.n, 4), 0, 3}), StepBudget{t == Tier::I ? 1000u : 150u});
        auto h = restricted_hamiltonian(tr);
        EXPECT_TRUE(h.leaks.empty());
        for (std::size_t r = 0; r < h.n; ++r)
            for (std::size_t col = 0; col < h.n; ++col) {
                double want = (r + 1 == col || col + 1 == r) ? 1.0 : 0.0;
                EXPECT_NEAR(h.at(r, col), want, 1e-12) << r << "," << col;
            }
        EXPECT_LT(h.prefactor, 0);
    }
}
