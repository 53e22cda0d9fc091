#include <gtest/gtest.h>

#include "golden.hpp"
#include "hqca/hqca.hpp"

using namespace hqca;

TEST(Symbols, AlphabetSizesPerTier) {
    EXPECT_EQ(prog_alphabet(Tier::I).size(), 10u);
    EXPECT_EQ(prog_alphabet(Tier::II).size(), 16u);
    EXPECT_EQ(prog_alphabet(Tier::III).size(), 17u);
    EXPECT_EQ(prog_alphabet(Tier::IV).size(), 28u);
    EXPECT_EQ(ptr_alphabet(Tier::III).size(), 5u);
    EXPECT_EQ(ptr_alphabet(Tier::IV).size(), 10u);
}

TEST(Symbols, GlyphsRoundTrip) {
    for (Prog p : prog_alphabet(Tier::IV)) {
        auto back = parse_prog(prog_glyph(p));
        ASSERT_TRUE(back) << prog_glyph(p);
        EXPECT_EQ(*back, p);
    }
    for (Ptr p : ptr_alphabet(Tier::IV)) EXPECT_EQ(parse_ptr(ptr_glyph(p)), p);
    for (Bit b : {Bit::Zero, Bit::One, Bit::Bullet, Bit::Quantum}) EXPECT_EQ(parse_bit(bit_glyph(b)), b);
    EXPECT_FALSE(parse_prog("Q"));
}

TEST(Symbols, GateFamilies) {
    for (Family f : {Family::Plain, Family::Right, Family::Left, Family::RightX, Family::LeftX})
        for (Gate g : {Gate::W, Gate::S, Gate::I}) {
            Prog p = prog_of(f, g);
            EXPECT_EQ(family_of(p), f);
            EXPECT_EQ(gate_of(p), g);
        }
    EXPECT_FALSE(family_of(Prog::Turn));
}

TEST(DimensionAudit, TierOneAgreesWithStatedTwenty) {
    auto a = alphabet_dimension(Tier::I);
    EXPECT_EQ(a.total, 20);
    EXPECT_TRUE(a.matches_claim());
}

TEST(DimensionAudit, LargerTiersFlagTheirDiscrepancy) {
    auto three = alphabet_dimension(Tier::III);
    EXPECT_EQ(three.total, 17 * 2 * 3 * 5);
    ASSERT_TRUE(three.claimed);
    EXPECT_EQ(*three.claimed, 480);
    EXPECT_FALSE(three.matches_claim());
    EXPECT_FALSE(three.warnings.empty());
    auto four = alphabet_dimension(Tier::IV);
    EXPECT_EQ(four.total, 28 * 2 * 3 * 10 * 3 * 3);
    EXPECT_EQ(*four.claimed, 14580);
    EXPECT_FALSE(four.warnings.empty());
}

TEST(Snapshot, ParseInvertsPrint) {
    for (const auto* text : {&golden::start_tier2, &golden::start_tier3, &golden::start_tier4}) {
        auto c = parse_snapshot(*text);
        EXPECT_EQ(snapshot(c), *text);
    }
}

TEST(Snapshot, ParseErrorsCarryLine) {
    try {
        parse_snapshot("P: → S\nD: 1 0 0\n");
        FAIL() << "ragged rows accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
    }
    EXPECT_THROW(parse_snapshot("Q: 1 0\n"), ParseError);
    EXPECT_THROW(parse_snapshot("P: → banana\n"), ParseError);
}

TEST(Validate, StartStatesHaveOneActiveSymbol) {
    CircuitProgram c{3, 2, {{Gate::W, Gate::S}, {Gate::S, Gate::W}}};
    for (Tier t : {Tier::I, Tier::II, Tier::III, Tier::IV}) {
        auto s = build_initial({c, t, DenseState::basis("100"), 3, 3});
        auto v = validate_config(s);
        EXPECT_TRUE(v.ok()) << tier_name(t) << ": " << (v.ok() ? "" : v.violations.front());
        EXPECT_EQ(count_active(s.config), 1);
    }
}

TEST(Validate, ActiveSiteErrors) {
    auto c = parse_snapshot("P: • • •\nD: 0 0 0\n");
    EXPECT_THROW(active_site(c), ConfigError);
    auto two = parse_snapshot("P: → • →\nD: 0 0 0\n");
    EXPECT_EQ(count_active(two), 2);
    EXPECT_THROW(active_site(two), ConfigError);
    auto one = parse_snapshot("P: • gat •\nD: 0 0 0\n");
    EXPECT_EQ(active_site(one).site, 2u);
}

TEST(Digest, DistinguishesConfigsAndIgnoresWork) {
    auto a = parse_snapshot("P: → S W I\nD: 1 ? ? 1\n");
    auto b = parse_snapshot("P: • → W I\nD: 1 ? ? 1\n");
    EXPECT_NE(config_digest(a), config_digest(b));
    EXPECT_EQ(config_digest(a), config_digest(parse_snapshot(snapshot(a))));
    EXPECT_EQ(digest_hex(0x1234).size(), 16u);
}

TEST(WorkState, FidelityIgnoresGlobalPhase) {
    std::vector<cplx> a{1.0, 0.0}, b{cplx(0, 1), 0.0}, c{0.0, 1.0};
    EXPECT_NEAR(fidelity(a, b), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(a, c), 0.0, 1e-15);
}
