#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqca/chain.hpp"
#include "hqca/circuit.hpp"
#include "hqca/error.hpp"
#include "hqca/symbols.hpp"

namespace hqca {

inline std::size_t chain_length(Tier t, int n, int k) {
    if (n < 2 || k < 1) throw Error("need n >= 2 and k >= 1");
    std::size_t core = static_cast<std::size_t>(2 * k - 1) * (n + 1);
    return core + (t == Tier::I ? 2 : 4);
}

struct SiteRange {
    std::size_t first;
    std::size_t last;

    std::size_t size() const { return last - first + 1; }
    bool contains(std::size_t s) const { return s >= first && s <= last; }
};

inline SiteRange work_window(Tier t, int n, int k) {
    if (n < 2 || k < 1) throw Error("need n >= 2 and k >= 1");
    std::size_t first = static_cast<std::size_t>(k - 1) * (n + 1) + 2 + (t == Tier::I ? 0 : 1);
    return {first, first + n - 1};
}

struct BuildSpec {
    CircuitProgram circuit;
    Tier tier = Tier::I;
    DenseState work;
    std::uint64_t target_x = 0;  // tier IV only
    int bullet_offset = 3;       // tier IV only
};

inline int bit_length(std::uint64_t x) {
    int b = 0;
    while (x) {
        ++b;
        x >>= 1;
    }
    return b;
}

// Target row: x right-aligned, zeros between x and a single •, and • in
// every site further left. The • sits bullet_offset sites left of x's
// leading 1.
inline std::vector<Bit> target_row(std::size_t L, std::uint64_t x, int bullet_offset) {
    if (x == 0) throw Error("target must be at least 1");
    if (bullet_offset < 1) throw Error("bullet_offset must be at least 1");
    int b = bit_length(x);
    if (static_cast<std::size_t>(b + bullet_offset) > L)
        throw Error("target " + std::to_string(x) + " with bullet_offset " + std::to_string(bullet_offset) +
                    " needs " + std::to_string(b + bullet_offset) + " sites, chain has " + std::to_string(L));
    std::vector<Bit> row(L, Bit::Zero);
    for (int i = 0; i < b; ++i) row[L - 1 - i] = bit_of((x >> i) & 1);
    std::size_t bullet = L - b - bullet_offset;  // 0-based
    for (std::size_t i = 0; i <= bullet; ++i) row[i] = Bit::Bullet;
    return row;
}

inline ChainState build_initial(const BuildSpec& spec) {
    const auto& c = spec.circuit;
    c.check();
    if (spec.work.n != c.n || spec.work.amps.size() != (std::size_t{1} << c.n))
        throw Error("work state has " + std::to_string(spec.work.n) + " qubits, circuit needs " + std::to_string(c.n));
    const Tier tier = spec.tier;
    const std::size_t L = chain_length(tier, c.n, c.k);
    const auto prog = program_string(c);
    const auto window = work_window(tier, c.n, c.k);

    ChainState st;
    st.tier = tier;
    st.config.regs = RegisterSet::of_tier(tier);
    st.config.sites.assign(L, Site{});
    auto& s = st.config.sites;

    // Data row of the bare chain, then flanked by one 0 on each side above tier I.
    std::vector<Bit> data;
    for (int r = 0; r < c.k - 1; ++r) {
        data.push_back(Bit::One);
        data.insert(data.end(), c.n, Bit::Zero);
    }
    data.push_back(Bit::One);
    data.insert(data.end(), c.n, Bit::Quantum);
    data.push_back(Bit::One);
    for (int r = 0; r < c.k - 1; ++r) {
        data.insert(data.end(), c.n, Bit::Zero);
        data.push_back(Bit::One);
    }
    data.push_back(Bit::Zero);
    if (tier != Tier::I) {
        data.insert(data.begin(), Bit::Zero);
        data.push_back(Bit::Zero);
    }
    for (std::size_t i = 0; i < L; ++i) s[i].d = data[i];

    switch (tier) {
    case Tier::I:
        s[0].p = Prog::Right;
        for (std::size_t i = 0; i < prog.size(); ++i) s[1 + i].p = prog[i];
        break;
    case Tier::II:
        s[0].p = Prog::Turn;
        s[1].p = Prog::Right;
        for (std::size_t i = 0; i < prog.size(); ++i) s[2 + i].p = prog[i];
        s[L - 1].p = Prog::Turn;
        break;
    case Tier::III:
    case Tier::IV: {
        s[0].p = Prog::Turn;
        std::size_t start = L - 2 - prog.size();
        for (std::size_t i = 0; i < prog.size(); ++i) s[start + i].p = prog[i];
        s[L - 2].p = tier == Tier::III ? Prog::Turn : Prog::Left;
        s[L - 1].p = Prog::Turn;
        break;
    }
    }

    if (tier == Tier::III) {
        s[1].c = Bit::Zero;
        for (std::size_t i = 2; i < L; ++i) s[i].c = Bit::One;
        s[1].cp = Ptr::R;
    }
    if (tier == Tier::IV) {
        for (std::size_t i = 1; i < L; ++i) s[i].c = Bit::Zero;
        s[L - 1].cp = Ptr::X;
        auto t = target_row(L, spec.target_x, spec.bullet_offset);
        for (std::size_t i = 0; i < L; ++i) s[i].t = t[i];
        s[1].c2 = Bit::Zero;
        for (std::size_t i = 2; i < L; ++i) s[i].c2 = Bit::One;
    }

    for (std::size_t j = window.first; j <= window.last; ++j) st.work.support.push_back(j);
    st.work.amps = spec.work.amps;
    return st;
}

// Everything an instance file can carry.
struct Instance {
    BuildSpec spec;
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> snapshot_every;
    std::optional<std::uint64_t> seed;
    std::optional<double> tau_star;
    std::optional<double> tau;
    std::optional<std::uint64_t> samples;
};

inline Instance parse_instance(const std::string& text) {
    auto ct = parse_circuit_text(text, true);
    Instance inst;
    inst.spec.circuit = ct.circuit;
    if (!ct.work) throw ParseError(0, "missing work=");
    inst.spec.work = DenseState::basis(*ct.work);
    bool have_target = false;
    auto nonneg = [](const KeyLine& kl) {
        long long v = parse_int(kl.value, kl.line, kl.key);
        if (v < 0) throw ParseError(kl.line, kl.key + " must be nonnegative");
        return static_cast<std::uint64_t>(v);
    };
    auto real = [](const KeyLine& kl) {
        try {
            std::size_t used = 0;
            double v = std::stod(kl.value, &used);
            if (used != kl.value.size()) throw std::invalid_argument(kl.value);
            return v;
        } catch (const std::exception&) {
            throw ParseError(kl.line, kl.key + " expects a number, got '" + kl.value + "'");
        }
    };
    for (const auto& kl : ct.extra) {
        if (kl.key == "construction") {
            auto t = parse_tier(kl.value);
            if (!t) throw ParseError(kl.line, "construction must be I, II, III or IV");
            inst.spec.tier = *t;
        } else if (kl.key == "target") {
            inst.spec.target_x = nonneg(kl);
            have_target = true;
        } else if (kl.key == "bullet_offset") {
            inst.spec.bullet_offset = static_cast<int>(nonneg(kl));
        } else if (kl.key == "budget") {
            inst.budget = nonneg(kl);
        } else if (kl.key == "snapshot_every") {
            inst.snapshot_every = nonneg(kl);
        } else if (kl.key == "seed") {
            inst.seed = nonneg(kl);
        } else if (kl.key == "tau_star") {
            inst.tau_star = real(kl);
        } else if (kl.key == "tau") {
            inst.tau = real(kl);
        } else if (kl.key == "samples") {
            inst.samples = nonneg(kl);
        } else {
            throw ParseError(kl.line, "unknown key '" + kl.key + "'");
        }
    }
    if (inst.spec.tier == Tier::IV && !have_target) throw ParseError(0, "construction IV needs target=");
    return inst;
}

} // namespace hqca
