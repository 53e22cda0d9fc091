#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hqca/error.hpp"

namespace hqca {

enum class Tier : std::uint8_t { I = 1, II = 2, III = 3, IV = 4 };

inline std::string_view tier_name(Tier t) {
    switch (t) {
    case Tier::I: return "I";
    case Tier::II: return "II";
    case Tier::III: return "III";
    case Tier::IV: return "IV";
    }
    return "?";
}

inline std::optional<Tier> parse_tier(std::string_view s) {
    if (s == "I" || s == "1") return Tier::I;
    if (s == "II" || s == "2") return Tier::II;
    if (s == "III" || s == "3") return Tier::III;
    if (s == "IV" || s == "4") return Tier::IV;
    return std::nullopt;
}

enum class Gate : std::uint8_t { W, S, I };

inline char gate_char(Gate g) { return g == Gate::W ? 'W' : g == Gate::S ? 'S' : 'I'; }

inline std::optional<Gate> parse_gate(std::string_view s) {
    if (s == "W") return Gate::W;
    if (s == "S") return Gate::S;
    if (s == "I") return Gate::I;
    return std::nullopt;
}

enum class Register : std::uint8_t { P, D, C, CP, T, C2 };

inline constexpr std::array<Register, 6> all_registers{Register::P, Register::D, Register::C,
                                                       Register::CP, Register::T, Register::C2};

inline std::string_view register_name(Register r) {
    static constexpr std::array<std::string_view, 6> names{"P", "D", "C", "CP", "T", "C2"};
    return names[static_cast<int>(r)];
}

// Program register. The first thirteen symbols stand alone; the rest come in
// gate families of three (W, S, I), see prog_of().
enum class Prog : std::uint8_t {
    Bullet, Right, Gat, Mov, Turn, Tri, Left, Down,
    RightX, MovX, TriX, LeftX, DownX,
    W, S, I,
    RightW, RightS, RightI,
    LeftW, LeftS, LeftI,
    RightWx, RightSx, RightIx,
    LeftWx, LeftSx, LeftIx,
};

inline constexpr int prog_count = 28;

// Gate-carrying symbol families: plain gate, marked for rightward travel,
// marked for leftward travel, and the two × copies of the marked forms.
enum class Family : std::uint8_t { Plain, Right, Left, RightX, LeftX };

inline constexpr int family_base = static_cast<int>(Prog::W);

inline Prog prog_of(Family f, Gate g) {
    return static_cast<Prog>(family_base + 3 * static_cast<int>(f) + static_cast<int>(g));
}

inline std::optional<Family> family_of(Prog p) {
    int v = static_cast<int>(p);
    if (v < family_base) return std::nullopt;
    return static_cast<Family>((v - family_base) / 3);
}

inline std::optional<Gate> gate_of(Prog p) {
    int v = static_cast<int>(p);
    if (v < family_base) return std::nullopt;
    return static_cast<Gate>((v - family_base) % 3);
}

inline std::string_view prog_glyph(Prog p) {
    static constexpr std::array<std::string_view, prog_count> glyphs{
        "•", "→", "gat", "mov", "turn", "▷", "←", "⇓",
        "→×", "mov×", "▷×", "←×", "⇓×",
        "W", "S", "I",
        "→W", "→S", "→I",
        "←W", "←S", "←I",
        "→W×", "→S×", "→I×",
        "←W×", "←S×", "←I×"};
    return glyphs[static_cast<int>(p)];
}

inline Tier prog_tier(Prog p) {
    if (auto f = family_of(p)) {
        switch (*f) {
        case Family::Plain:
        case Family::Right: return Tier::I;
        case Family::Left: return Tier::II;
        default: return Tier::IV;
        }
    }
    switch (p) {
    case Prog::Bullet:
    case Prog::Right:
    case Prog::Gat:
    case Prog::Mov: return Tier::I;
    case Prog::Turn:
    case Prog::Tri:
    case Prog::Left: return Tier::II;
    case Prog::Down: return Tier::III;
    default: return Tier::IV;
    }
}

inline bool prog_right_moving(Prog p) {
    if (auto f = family_of(p)) return *f == Family::Right || *f == Family::RightX;
    return p == Prog::Right || p == Prog::Gat || p == Prog::Mov || p == Prog::RightX ||
           p == Prog::MovX;
}

inline bool prog_left_moving(Prog p) {
    if (auto f = family_of(p)) return *f == Family::Left || *f == Family::LeftX;
    return p == Prog::Left || p == Prog::Tri || p == Prog::LeftX || p == Prog::TriX;
}

inline bool prog_active(Prog p) {
    return prog_right_moving(p) || prog_left_moving(p) || p == Prog::Down || p == Prog::DownX;
}

// Data, clock, target and second-clock cells share one value type. Quantum
// only ever appears in the data register.
enum class Bit : std::uint8_t { Zero, One, Bullet, Quantum };

inline std::string_view bit_glyph(Bit b) {
    static constexpr std::array<std::string_view, 4> glyphs{"0", "1", "•", "?"};
    return glyphs[static_cast<int>(b)];
}

inline Bit bit_of(int v) { return v ? Bit::One : Bit::Zero; }

enum class Ptr : std::uint8_t { Bullet, X, L, R, C, LeftC, CX, Rx, Cx, Lx };

inline constexpr int ptr_count = 10;

inline std::string_view ptr_glyph(Ptr p) {
    static constexpr std::array<std::string_view, ptr_count> glyphs{
        "•", "X", "L", "R", "C", "←C", "CX", "R×", "C×", "L×"};
    return glyphs[static_cast<int>(p)];
}

inline Tier ptr_tier(Ptr p) { return static_cast<int>(p) <= static_cast<int>(Ptr::C) ? Tier::III : Tier::IV; }

inline bool ptr_active(Ptr p) { return p != Ptr::Bullet && p != Ptr::X; }

inline std::vector<Prog> prog_alphabet(Tier t) {
    std::vector<Prog> out;
    for (int v = 0; v < prog_count; ++v)
        if (prog_tier(static_cast<Prog>(v)) <= t) out.push_back(static_cast<Prog>(v));
    return out;
}

inline std::vector<Ptr> ptr_alphabet(Tier t) {
    std::vector<Ptr> out;
    if (t < Tier::III) return out;
    for (int v = 0; v < ptr_count; ++v)
        if (ptr_tier(static_cast<Ptr>(v)) <= t) out.push_back(static_cast<Ptr>(v));
    return out;
}

inline std::optional<Prog> parse_prog(std::string_view s) {
    for (int v = 0; v < prog_count; ++v)
        if (prog_glyph(static_cast<Prog>(v)) == s) return static_cast<Prog>(v);
    if (s == "." ) return Prog::Bullet;
    if (s == "gate") return Prog::Gat;
    return std::nullopt;
}

inline std::optional<Ptr> parse_ptr(std::string_view s) {
    for (int v = 0; v < ptr_count; ++v)
        if (ptr_glyph(static_cast<Ptr>(v)) == s) return static_cast<Ptr>(v);
    if (s == ".") return Ptr::Bullet;
    return std::nullopt;
}

inline std::optional<Bit> parse_bit(std::string_view s) {
    if (s == "0") return Bit::Zero;
    if (s == "1") return Bit::One;
    if (s == "•" || s == ".") return Bit::Bullet;
    if (s == "?") return Bit::Quantum;
    return std::nullopt;
}

struct RegisterSize {
    Register reg;
    int size;
};

struct DimensionAudit {
    Tier tier;
    std::vector<RegisterSize> registers;
    long long total = 0;
    std::optional<long long> claimed;
    std::vector<std::string> warnings;

    bool matches_claim() const { return claimed && *claimed == total; }
};

// Enumerated per-register alphabet sizes against the dimension stated for
// each tier in the construction's text. Tier II has no stated figure.
inline DimensionAudit alphabet_dimension(Tier t) {
    DimensionAudit a{t, {}, 1, std::nullopt, {}};
    a.registers.push_back({Register::P, static_cast<int>(prog_alphabet(t).size())});
    a.registers.push_back({Register::D, 2});
    if (t >= Tier::III) {
        a.registers.push_back({Register::C, 3});
        a.registers.push_back({Register::CP, static_cast<int>(ptr_alphabet(t).size())});
    }
    if (t == Tier::IV) {
        a.registers.push_back({Register::T, 3});
        a.registers.push_back({Register::C2, 3});
    }
    for (const auto& r : a.registers) a.total *= r.size;
    switch (t) {
    case Tier::I: a.claimed = 20; break;
    case Tier::III: a.claimed = 480; break;
    case Tier::IV: a.claimed = 14580; break;
    default: break;
    }
    if (a.claimed && *a.claimed != a.total)
        a.warnings.push_back("enumerated total " + std::to_string(a.total) +
                             " differs from stated " + std::to_string(*a.claimed));
    if (t >= Tier::III)
        a.warnings.push_back("clock register taken as 3-dimensional {•,0,1}; X never occurs in clock cells");
    return a;
}

} // namespace hqca
