#include <gtest/gtest.h>

#include "hqca/hqca.hpp"
#include "oracles.hpp"

using namespace hqca;

namespace {

CircuitProgram worked() { return {3, 2, {{Gate::W, Gate::S}, {Gate::S, Gate::W}}}; }

std::string program_text(const CircuitProgram& c) {
    std::string s;
    for (Prog p : program_string(c)) s += std::string(s.empty() ? "" : " ") + std::string(prog_glyph(p));
    return s;
}

CircuitProgram random_circuit(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CircuitProgram c{n, k, {}};
    for (int r = 0; r < k; ++r) {
        c.rounds.emplace_back();
        for (int m = 0; m < n - 1; ++m) c.rounds.back().push_back(static_cast<Gate>(rng() % 3));
    }
    return c;
}

} // namespace

TEST(Gates, AreUnitaryAndMatchHandWrittenMatrices) {
    for (Gate g : {Gate::W, Gate::S, Gate::I}) {
        Mat4 m = gate_matrix(g), a = adjoint(m);
        auto ref = oracle::gate(g);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                EXPECT_NEAR(std::abs(m[4 * r + c] - ref(r, c)), 0.0, 1e-15);
                cplx s = 0;
                for (int k = 0; k < 4; ++k) s += a[4 * r + k] * m[4 * k + c];
                EXPECT_NEAR(std::abs(s - cplx(r == c)), 0.0, 1e-14);
            }
    }
}

TEST(Gates, ActTriviallyOnZeroZero) {
    for (Gate g : {Gate::W, Gate::S, Gate::I}) {
        std::vector<cplx> v{1, 0, 0, 0};
        apply_pair(v, 2, 0, gate_matrix(g));
        EXPECT_NEAR(std::abs(v[0] - 1.0), 0.0, 1e-15);
    }
}

TEST(ProgramString, MatchesTheWorkedExampleRow) { EXPECT_EQ(program_text(worked()), "S W I I W S I"); }

TEST(ProgramString, SmallCases) {
    EXPECT_EQ(program_text({2, 1, {{Gate::I}}}), "I I");
    EXPECT_EQ(program_text({2, 2, {{Gate::S}, {Gate::S}}}), "S I I S I");
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k <= 4; ++k) EXPECT_EQ(program_string(random_circuit(n, k, 7)).size(), std::size_t(k * (n + 1) - 1));
}

TEST(DenseSimulation, MatchesKroneckerProductForWorkedExample) {
    auto c = worked();
    auto u = oracle::circuit_unitary(c);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto w = DenseState::random(3, seed);
        auto got = apply_circuit_power(w, c, 1);
        auto want = u * w.amps;
        for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(std::abs(got.amps[i] - want[i]), 0.0, 1e-12);
    }
}

TEST(DenseSimulation, RandomCircuitsAndPowers) {
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k <= 3; ++k) {
            auto c = random_circuit(n, k, 100 * n + k);
            auto u = oracle::circuit_unitary(c);
            auto w = DenseState::random(n, n * k);
            auto got = apply_circuit_power(w, c, 3);
            auto want = oracle::power_apply(u, w.amps, 3);
            EXPECT_GT(oracle::fidelity(got.amps, want), 1 - 1e-12);
        }
}

TEST(DenseSimulation, FirstRoundIsWAfterS) {
    // Operator-product order: the second gate of a round acts first.
    auto c = worked();
    auto w = DenseState::random(3, 11);
    auto want = oracle::embed(Gate::W, 1, 3) * (oracle::embed(Gate::S, 2, 3) * w.amps);
    auto got = apply_rounds(w, c, 1);
    EXPECT_GT(oracle::fidelity(got.amps, want), 1 - 1e-12);
    DenseState prefix = w;
    apply_gate_prefix(prefix, c, 2);
    EXPECT_GT(fidelity(prefix.amps, got.amps), 1 - 1e-12);
}

TEST(DenseState, RandomIsNormalizedAndSeeded) {
    auto a = DenseState::random(4, 3), b = DenseState::random(4, 3), c = DenseState::random(4, 4);
    double n = 0;
    for (auto v : a.amps) n += std::norm(v);
    EXPECT_NEAR(n, 1.0, 1e-12);
    EXPECT_EQ(a.amps, b.amps);
    EXPECT_NE(a.amps, c.amps);
    EXPECT_THROW(DenseState::basis("10x"), Error);
}

TEST(CircuitText, ParsesKeysAndRounds) {
    auto ct = parse_circuit_text("n=3\nk=2\n# comment\nround 2: S W\nround 1: W S\nwork=101\n");
    EXPECT_EQ(ct.circuit.n, 3);
    EXPECT_EQ(ct.circuit.rounds[0], (std::vector<Gate>{Gate::W, Gate::S}));
    EXPECT_EQ(ct.circuit.rounds[1], (std::vector<Gate>{Gate::S, Gate::W}));
    EXPECT_EQ(*ct.work, "101");
}

TEST(CircuitText, ErrorsNameTheLine) {
    struct Case {
        const char* text;
        int line;
    };
    for (auto [text, line] : std::vector<Case>{
             {"n=3\nk=3\nround 1: W S\nround 2: S W\nround 3: W\n", 5},
             {"n=3\nk=1\nround 1: W X\n", 3},
             {"n=3\nk=1\nround 2: W S\n", 3},
             {"n=3\nk=1\nround 1: W S\nround 1: W S\n", 4},
             {"n=3\nk=1\nbogus line\n", 3},
             {"n=3\nk=1\nround 1: W S\ncolour=blue\n", 4},
             {"n=1\nk=1\n", 1},
             {"n=3\nk=1\nround 1: W S\nwork=10a\n", 4},
         }) {
        try {
            parse_circuit_text(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), line) << text << " -> " << e.what();
        }
    }
}

TEST(CircuitText, MissingRoundIsAnError) { EXPECT_THROW(parse_circuit_text("n=3\nk=2\nround 1: W S\n"), ParseError); }
