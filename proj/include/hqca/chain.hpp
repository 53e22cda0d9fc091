#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hqca/error.hpp"
#include "hqca/symbols.hpp"

namespace hqca {

using cplx = std::complex<double>;

struct RegisterSet {
    std::uint8_t mask = 0;

    bool has(Register r) const { return mask & (1u << static_cast<int>(r)); }
    void add(Register r) { mask |= static_cast<std::uint8_t>(1u << static_cast<int>(r)); }
    bool operator==(const RegisterSet&) const = default;

    static RegisterSet of_tier(Tier t) {
        RegisterSet s;
        s.add(Register::P);
        s.add(Register::D);
        if (t >= Tier::III) {
            s.add(Register::C);
            s.add(Register::CP);
        }
        if (t == Tier::IV) {
            s.add(Register::T);
            s.add(Register::C2);
        }
        return s;
    }
};

// Registers a tier does not use keep their default values so that configs
// compare and hash identically regardless of how they were produced.
struct Site {
    Prog p = Prog::Bullet;
    Bit d = Bit::Zero;
    Bit c = Bit::Bullet;
    Ptr cp = Ptr::Bullet;
    Bit t = Bit::Bullet;
    Bit c2 = Bit::Bullet;

    bool operator==(const Site&) const = default;
};

struct ChainConfig {
    RegisterSet regs;
    std::vector<Site> sites;

    std::size_t length() const { return sites.size(); }
    // Sites are numbered from 1, as in the construction tables.
    Site& at(std::size_t site) { return sites.at(site - 1); }
    const Site& at(std::size_t site) const { return sites.at(site - 1); }
    bool operator==(const ChainConfig&) const = default;
};

// Amplitudes over the data qubits at `support` (ascending sites, leftmost
// site is the most significant bit).
struct WorkState {
    std::vector<std::size_t> support;
    std::vector<cplx> amps;

    double norm() const {
        double s = 0;
        for (auto a : amps) s += std::norm(a);
        return std::sqrt(s);
    }
};

struct ChainState {
    ChainConfig config;
    WorkState work;
    Tier tier = Tier::I;
};

inline std::uint64_t config_digest(const ChainConfig& c) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint8_t b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    mix(c.regs.mask);
    for (const auto& s : c.sites) {
        mix(static_cast<std::uint8_t>(s.p));
        mix(static_cast<std::uint8_t>(s.d));
        mix(static_cast<std::uint8_t>(s.c));
        mix(static_cast<std::uint8_t>(s.cp));
        mix(static_cast<std::uint8_t>(s.t));
        mix(static_cast<std::uint8_t>(s.c2));
    }
    // Finalizer so nearby configs spread over the full 64 bits.
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
}

inline std::string digest_hex(std::uint64_t d) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
    return buf;
}

inline cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Max elementwise distance after removing the best global phase.
inline double phase_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) return INFINITY;
    cplx ov = inner(b, a);
    cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1);
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - ph * b[i]));
    return m;
}

inline double fidelity(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    return std::norm(inner(a, b));
}

inline bool same_state(const ChainState& a, const ChainState& b, double tol = 1e-12) {
    return a.tier == b.tier && a.config == b.config && a.work.support == b.work.support &&
           phase_distance(a.work.amps, b.work.amps) <= tol;
}

struct ValidationReport {
    std::vector<std::string> violations;
    int active_count = 0;

    bool ok() const { return violations.empty(); }
};

inline int count_active(const ChainConfig& c) {
    int n = 0;
    bool cp = c.regs.has(Register::CP);
    for (const auto& s : c.sites) {
        n += prog_active(s.p);
        if (cp) n += ptr_active(s.cp);
    }
    return n;
}

inline ValidationReport validate_config(const ChainState& st) {
    ValidationReport r;
    const auto& c = st.config;
    auto fail = [&r](std::string s) { r.violations.push_back(std::move(s)); };
    auto expected = RegisterSet::of_tier(st.tier);
    for (Register reg : all_registers) {
        if (c.regs.has(reg) && !expected.has(reg))
            fail("register " + std::string(register_name(reg)) + " not used at tier " +
                 std::string(tier_name(st.tier)));
        if (!c.regs.has(reg) && expected.has(reg))
            fail("register " + std::string(register_name(reg)) + " missing at tier " +
                 std::string(tier_name(st.tier)));
    }
    if (c.length() < 2) fail("chain shorter than two sites");
    auto classical = [](Bit b) { return b == Bit::Zero || b == Bit::One || b == Bit::Bullet; };
    for (std::size_t i = 1; i <= c.length(); ++i) {
        const auto& s = c.at(i);
        std::string at = " at site " + std::to_string(i);
        if (prog_tier(s.p) > st.tier) fail("program symbol " + std::string(prog_glyph(s.p)) + " outside tier alphabet" + at);
        if (s.d == Bit::Bullet) fail("bullet in data register" + at);
        if (c.regs.has(Register::C) && !classical(s.c)) fail("bad clock symbol" + at);
        if (c.regs.has(Register::CP) && ptr_tier(s.cp) > st.tier) fail("pointer symbol outside tier alphabet" + at);
        if (c.regs.has(Register::T) && !classical(s.t)) fail("bad target symbol" + at);
        if (c.regs.has(Register::C2) && !classical(s.c2)) fail("bad second-clock symbol" + at);
    }
    r.active_count = count_active(c);
    if (r.active_count != 1) fail("active count " + std::to_string(r.active_count));

    const auto& w = st.work;
    if (!std::is_sorted(w.support.begin(), w.support.end()) ||
        std::adjacent_find(w.support.begin(), w.support.end()) != w.support.end())
        fail("quantum support not strictly ascending");
    for (std::size_t i = 1; i <= c.length(); ++i) {
        bool in = std::binary_search(w.support.begin(), w.support.end(), i);
        if (in != (c.at(i).d == Bit::Quantum))
            fail("quantum marker and support disagree at site " + std::to_string(i));
    }
    for (auto s : w.support)
        if (s < 1 || s > c.length()) fail("support site " + std::to_string(s) + " outside chain");
    if (w.support.size() < 63 && w.amps.size() != (std::size_t{1} << w.support.size()))
        fail("work amplitude count does not match support");
    else if (std::abs(w.norm() - 1.0) > 1e-12)
        fail("work state norm off by " + std::to_string(std::abs(w.norm() - 1.0)));
    return r;
}

struct ActiveSymbol {
    std::size_t site;
    Register reg;
    std::string glyph;
};

inline ActiveSymbol active_site(const ChainConfig& c) {
    std::vector<ActiveSymbol> found;
    bool cp = c.regs.has(Register::CP);
    for (std::size_t i = 1; i <= c.length(); ++i) {
        const auto& s = c.at(i);
        if (prog_active(s.p)) found.push_back({i, Register::P, std::string(prog_glyph(s.p))});
        if (cp && ptr_active(s.cp)) found.push_back({i, Register::CP, std::string(ptr_glyph(s.cp))});
    }
    if (found.empty()) throw ConfigError("no active symbol");
    if (found.size() > 1) throw ConfigError("multiple active symbols (" + std::to_string(found.size()) + ")");
    return found.front();
}

inline ActiveSymbol active_site(const ChainState& st) { return active_site(st.config); }

inline std::string snapshot(const ChainConfig& c) {
    std::ostringstream os;
    auto row = [&](Register reg, auto&& glyph) {
        if (!c.regs.has(reg)) return;
        os << register_name(reg) << ':';
        for (const auto& s : c.sites) os << ' ' << glyph(s);
        os << '\n';
    };
    row(Register::P, [](const Site& s) { return prog_glyph(s.p); });
    row(Register::D, [](const Site& s) { return bit_glyph(s.d); });
    row(Register::C, [](const Site& s) { return bit_glyph(s.c); });
    row(Register::CP, [](const Site& s) { return ptr_glyph(s.cp); });
    row(Register::T, [](const Site& s) { return bit_glyph(s.t); });
    row(Register::C2, [](const Site& s) { return bit_glyph(s.c2); });
    return os.str();
}

inline std::string snapshot(const ChainState& st) { return snapshot(st.config); }

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

// Inverse of snapshot(); rows may come in any order, unknown rows are errors.
inline ChainConfig parse_snapshot(const std::string& text) {
    ChainConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        std::string head = tok.front();
        if (head.empty() || head.back() != ':') throw ParseError(lineno, "expected register prefix");
        head.pop_back();
        std::optional<Register> reg;
        for (Register r : all_registers)
            if (register_name(r) == head) reg = r;
        if (!reg) throw ParseError(lineno, "unknown register '" + head + "'");
        std::size_t n = tok.size() - 1;
        if (c.sites.empty()) c.sites.resize(n);
        if (c.sites.size() != n) throw ParseError(lineno, "row length differs from earlier rows");
        c.regs.add(*reg);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& g = tok[i + 1];
            auto bad = [&] { return ParseError(lineno, "bad symbol '" + g + "' at site " + std::to_string(i + 1)); };
            auto& s = c.sites[i];
            if (*reg == Register::P) {
                auto p = parse_prog(g);
                if (!p) throw bad();
                s.p = *p;
            } else if (*reg == Register::CP) {
                auto p = parse_ptr(g);
                if (!p) throw bad();
                s.cp = *p;
            } else {
                auto b = parse_bit(g);
                if (!b) throw bad();
                (*reg == Register::D ? s.d : *reg == Register::C ? s.c : *reg == Register::T ? s.t : s.c2) = *b;
            }
        }
    }
    return c;
}

} // namespace hqca
