#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hqca/chain.hpp"
#include "hqca/circuit.hpp"
#include "hqca/error.hpp"
#include "hqca/symbols.hpp"

namespace hqca {

enum class GateVar : std::uint8_t { A, B };

struct ProgCell {
    enum class Kind : std::uint8_t { Any, Is, Not, Fam } kind = Kind::Any;
    Prog sym = Prog::Bullet;
    Family fam = Family::Plain;
    GateVar var = GateVar::A;

    bool operator==(const ProgCell&) const = default;
};

// Bit-valued cells. Var binds the rule's single bit variable a (strict 0/1);
// VarPad accepts a, or • when a = 0; NegPad accepts not-a, or • when a = 1.
// Together these read • in the target register as a leading zero.
struct BitCell {
    enum class Kind : std::uint8_t { Any, Is, NotBullet, Var, VarPad, NegPad } kind = Kind::Any;
    Bit value = Bit::Zero;

    bool operator==(const BitCell&) const = default;
};

struct PtrCell {
    enum class Kind : std::uint8_t { Any, Is } kind = Kind::Any;
    Ptr sym = Ptr::Bullet;

    bool operator==(const PtrCell&) const = default;
};

struct Column {
    ProgCell p;
    BitCell d, c, t, c2;
    PtrCell cp;

    bool operator==(const Column&) const = default;
};

struct Side {
    std::array<Column, 2> col;
};

struct Rule {
    std::string label;
    Tier tier = Tier::I;   // first tier using this rule
    Tier until = Tier::IV; // last tier using it (redefined rules stop early)
    Side lhs, rhs;
    bool gate = false;     // apply the gate bound to A to the data pair
};

enum class Direction : std::uint8_t { Forward, Reverse };

struct Bindings {
    std::int8_t gate[2] = {-1, -1};
    std::int8_t a = -1;

    bool operator==(const Bindings& o) const {
        return gate[0] == o.gate[0] && gate[1] == o.gate[1] && a == o.a;
    }
};

struct Match {
    const Rule* rule = nullptr;
    std::size_t site = 0;  // left site of the window, 1-based
    Direction dir = Direction::Forward;
    Bindings bind;

    const std::string& label() const { return rule->label; }
};

inline std::string describe(const Match& m) {
    return m.label() + (m.dir == Direction::Reverse ? "'" : "") + "@" + std::to_string(m.site);
}

namespace detail {

inline std::uint32_t prog_mask(const ProgCell& c) {
    constexpr std::uint32_t all = (1u << prog_count) - 1;
    switch (c.kind) {
    case ProgCell::Kind::Any: return all;
    case ProgCell::Kind::Is: return 1u << static_cast<int>(c.sym);
    case ProgCell::Kind::Not: return all & ~(1u << static_cast<int>(c.sym));
    case ProgCell::Kind::Fam: return 7u << static_cast<int>(prog_of(c.fam, Gate::W));
    }
    return all;
}

inline std::uint8_t bit_mask(const BitCell& c) {
    switch (c.kind) {
    case BitCell::Kind::Any: return 0xF;
    case BitCell::Kind::Is: return static_cast<std::uint8_t>(1u << static_cast<int>(c.value));
    case BitCell::Kind::NotBullet: return 0xB;
    case BitCell::Kind::Var: return 0x3;
    case BitCell::Kind::VarPad:
    case BitCell::Kind::NegPad: return 0x7;
    }
    return 0xF;
}

inline std::uint16_t ptr_mask(const PtrCell& c) {
    return c.kind == PtrCell::Kind::Any ? 0x3FF : static_cast<std::uint16_t>(1u << static_cast<int>(c.sym));
}

struct ColumnMask {
    std::uint32_t p;
    std::uint16_t cp;
    std::uint8_t d, c, t, c2;
};

inline ColumnMask column_mask(const Column& col) {
    return {prog_mask(col.p), ptr_mask(col.cp), bit_mask(col.d), bit_mask(col.c), bit_mask(col.t), bit_mask(col.c2)};
}

inline bool bit_relation(const BitCell& cell, Bit v, int a) {
    switch (cell.kind) {
    case BitCell::Kind::VarPad: return v == bit_of(a) || (v == Bit::Bullet && a == 0);
    case BitCell::Kind::NegPad: return v == bit_of(!a) || (v == Bit::Bullet && a == 1);
    default: return true;
    }
}

} // namespace detail

// A rule table with per-rule prefilter masks. Tables are immutable once
// built; Match::rule points into them.
class RuleTable {
public:
    RuleTable() = default;
    explicit RuleTable(std::vector<Rule> rules) : rules_(std::move(rules)) { prepare(); }

    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (const auto& r : rules_) out.push_back(r.label);
        return out;
    }

    const Rule* find(const std::string& label) const {
        for (const auto& r : rules_)
            if (r.label == label) return &r;
        return nullptr;
    }

    // Copy with the named rules removed (mutation testing).
    RuleTable without(const std::vector<std::string>& drop) const {
        for (const auto& d : drop)
            if (!find(d)) throw Error("no rule labelled '" + d + "'");
        std::vector<Rule> kept;
        for (const auto& r : rules_)
            if (std::find(drop.begin(), drop.end(), r.label) == drop.end()) kept.push_back(r);
        return RuleTable(std::move(kept));
    }

    struct Prepared {
        std::array<detail::ColumnMask, 2> mask[2];  // [side][column]
        RegisterSet needs;
    };

    const Prepared& prepared(std::size_t i) const { return prep_[i]; }

private:
    std::vector<Rule> rules_;
    std::vector<Prepared> prep_;

    static void need(RegisterSet& s, Register r, bool used) {
        if (used) s.add(r);
    }

    void prepare() {
        prep_.clear();
        for (const auto& r : rules_) {
            validate(r);
            Prepared p;
            for (int side = 0; side < 2; ++side) {
                const Side& sd = side == 0 ? r.lhs : r.rhs;
                for (int c = 0; c < 2; ++c) {
                    const Column& col = sd.col[c];
                    p.mask[side][c] = detail::column_mask(col);
                    need(p.needs, Register::P, col.p.kind != ProgCell::Kind::Any);
                    need(p.needs, Register::D, col.d.kind != BitCell::Kind::Any || r.gate);
                    need(p.needs, Register::C, col.c.kind != BitCell::Kind::Any);
                    need(p.needs, Register::CP, col.cp.kind != PtrCell::Kind::Any);
                    need(p.needs, Register::T, col.t.kind != BitCell::Kind::Any);
                    need(p.needs, Register::C2, col.c2.kind != BitCell::Kind::Any);
                }
            }
            prep_.push_back(p);
        }
    }

    // Every cell that changes must be a definite symbol on both sides, and
    // every variable must be bound by the side it is read from.
    static void validate(const Rule& r) {
        auto fail = [&](const std::string& why) { throw Error("rule " + r.label + ": " + why); };
        for (int side = 0; side < 2; ++side) {
            const Side& s = side == 0 ? r.lhs : r.rhs;
            bool binds_a = false, uses_a = false;
            bool binds_g[2] = {false, false};
            for (const auto& col : s.col) {
                if (col.p.kind == ProgCell::Kind::Fam) binds_g[static_cast<int>(col.p.var)] = true;
                for (const BitCell* b : {&col.d, &col.c, &col.t, &col.c2}) {
                    binds_a |= b->kind == BitCell::Kind::Var;
                    uses_a |= b->kind == BitCell::Kind::VarPad || b->kind == BitCell::Kind::NegPad;
                }
            }
            if (uses_a && !binds_a) fail("bit relation without a binding cell");
            if (r.gate && !binds_g[0]) fail("gate effect without gate variable A");
            const Side& other = side == 0 ? r.rhs : r.lhs;
            for (int c = 0; c < 2; ++c) {
                const Column &x = s.col[c], &y = other.col[c];
                if (x.p != y.p) {
                    if (x.p.kind != ProgCell::Kind::Is && x.p.kind != ProgCell::Kind::Fam) fail("changing P cell is not definite");
                    if (x.p.kind == ProgCell::Kind::Fam) {
                        bool bound = false;
                        for (const auto& oc : other.col)
                            bound |= oc.p.kind == ProgCell::Kind::Fam && oc.p.var == x.p.var;
                        if (!bound) fail("gate variable written but not bound");
                    }
                }
                if (x.cp != y.cp && x.cp.kind != PtrCell::Kind::Is) fail("changing CP cell is not definite");
                for (auto [bx, by] : {std::pair{&x.d, &y.d}, {&x.c, &y.c}, {&x.t, &y.t}, {&x.c2, &y.c2}})
                    if (*bx != *by && bx->kind != BitCell::Kind::Is) fail("changing bit cell is not definite");
            }
        }
    }
};

// What the matcher needs from a chain: classical registers, plus the data
// register read through the backend (the dense backend derives it).
struct HybridView {
    const ChainState& s;
    const ChainConfig& config() const { return s.config; }
    Bit data(std::size_t site) const { return s.config.at(site).d; }
};

namespace detail {

inline bool prog_cell_ok(const ProgCell& cell, Prog v, Bindings& b) {
    switch (cell.kind) {
    case ProgCell::Kind::Any: return true;
    case ProgCell::Kind::Is: return v == cell.sym;
    case ProgCell::Kind::Not: return v != cell.sym;
    case ProgCell::Kind::Fam: {
        if (family_of(v) != cell.fam) return false;
        auto g = static_cast<std::int8_t>(*gate_of(v));
        auto& slot = b.gate[static_cast<int>(cell.var)];
        if (slot < 0) slot = g;
        return slot == g;
    }
    }
    return false;
}

inline bool bit_cell_first(const BitCell& cell, Bit v, Bindings& b) {
    switch (cell.kind) {
    case BitCell::Kind::Any: return true;
    case BitCell::Kind::Is: return v == cell.value;
    case BitCell::Kind::NotBullet: return v != Bit::Bullet;
    case BitCell::Kind::Var: {
        if (v != Bit::Zero && v != Bit::One) return false;
        std::int8_t x = v == Bit::One;
        if (b.a < 0) b.a = x;
        return b.a == x;
    }
    default: return true;  // relations are checked once a is bound
    }
}

inline bool mask_ok(const ColumnMask& m, const Site& s, Bit d) {
    return (m.p >> static_cast<int>(s.p) & 1) && (m.cp >> static_cast<int>(s.cp) & 1) &&
           (m.c >> static_cast<int>(s.c) & 1) && (m.t >> static_cast<int>(s.t) & 1) &&
           (m.c2 >> static_cast<int>(s.c2) & 1) && (m.d >> static_cast<int>(d) & 1);
}

template <class View>
bool match_side(const Side& side, const std::array<ColumnMask, 2>& mask, const View& v, std::size_t i, Bindings& b) {
    const auto& cfg = v.config();
    const Site* site[2] = {&cfg.at(i), &cfg.at(i + 1)};
    // Data is read only for cells that test it; the dense backend pays per read.
    Bit d[2];
    for (int c = 0; c < 2; ++c) {
        d[c] = side.col[c].d.kind == BitCell::Kind::Any ? Bit::Zero : Bit::Quantum;
        const auto& m = mask[c];
        const Site& s = *site[c];
        if (!((m.p >> static_cast<int>(s.p) & 1) && (m.cp >> static_cast<int>(s.cp) & 1) &&
              (m.c >> static_cast<int>(s.c) & 1) && (m.t >> static_cast<int>(s.t) & 1) &&
              (m.c2 >> static_cast<int>(s.c2) & 1)))
            return false;
    }
    for (int c = 0; c < 2; ++c) {
        if (side.col[c].d.kind == BitCell::Kind::Any) continue;
        d[c] = v.data(i + c);
        if (!(mask[c].d >> static_cast<int>(d[c]) & 1)) return false;
    }
    b = Bindings{};
    for (int c = 0; c < 2; ++c) {
        const Column& col = side.col[c];
        const Site& s = *site[c];
        if (!prog_cell_ok(col.p, s.p, b)) return false;
        if (col.cp.kind == PtrCell::Kind::Is && s.cp != col.cp.sym) return false;
        if (!bit_cell_first(col.d, d[c], b) || !bit_cell_first(col.c, s.c, b) ||
            !bit_cell_first(col.t, s.t, b) || !bit_cell_first(col.c2, s.c2, b))
            return false;
    }
    if (b.a >= 0) {
        for (int c = 0; c < 2; ++c) {
            const Column& col = side.col[c];
            const Site& s = *site[c];
            if (!bit_relation(col.d, d[c], b.a) || !bit_relation(col.c, s.c, b.a) ||
                !bit_relation(col.t, s.t, b.a) || !bit_relation(col.c2, s.c2, b.a))
                return false;
        }
    }
    return true;
}

inline void write_side(const Side& from, const Side& to, ChainConfig& cfg, std::size_t i, const Bindings& b) {
    for (int c = 0; c < 2; ++c) {
        const Column &x = from.col[c], &y = to.col[c];
        Site& s = cfg.at(i + c);
        if (x.p != y.p)
            s.p = y.p.kind == ProgCell::Kind::Is ? y.p.sym
                                                 : prog_of(y.p.fam, static_cast<Gate>(b.gate[static_cast<int>(y.p.var)]));
        if (x.cp != y.cp) s.cp = y.cp.sym;
        if (x.c != y.c) s.c = y.c.value;
        if (x.t != y.t) s.t = y.t.value;
        if (x.c2 != y.c2) s.c2 = y.c2.value;
        if (x.d != y.d) s.d = y.d.value;
    }
}

} // namespace detail

template <class View>
std::vector<Match> applicable(const RuleTable& table, const View& v, Direction dir) {
    std::vector<Match> out;
    const auto& cfg = v.config();
    const std::size_t L = cfg.length();
    const int side = dir == Direction::Forward ? 0 : 1;
    std::vector<std::size_t> usable;
    for (std::size_t r = 0; r < table.size(); ++r)
        if ((table.prepared(r).needs.mask & ~cfg.regs.mask) == 0) usable.push_back(r);
    for (std::size_t i = 1; i + 1 <= L; ++i) {
        for (std::size_t r : usable) {
            const Rule& rule = table.rules()[r];
            const Side& s = side == 0 ? rule.lhs : rule.rhs;
            Bindings b;
            if (detail::match_side(s, table.prepared(r).mask[side], v, i, b)) out.push_back({&rule, i, dir, b});
        }
    }
    return out;
}

inline std::vector<Match> applicable(const RuleTable& table, const ChainState& s, Direction dir) {
    return applicable(table, HybridView{s}, dir);
}

// Result of a gate on two classical bits, or nullopt when the output would
// be a superposition.
inline std::optional<std::pair<int, int>> classical_gate_action(Gate g, int left, int right) {
    switch (g) {
    case Gate::I: return std::pair{left, right};
    case Gate::S: return std::pair{right, left};
    case Gate::W:
        if (left == 0) return std::pair{left, right};
        return std::nullopt;
    }
    return std::nullopt;
}

enum class GateMode : std::uint8_t { Abort, Promote };

// Moves a classical data site into the quantum support.
inline void promote_site(ChainState& st, std::size_t site) {
    auto& w = st.work;
    Bit b = st.config.at(site).d;
    if (b == Bit::Quantum) return;
    auto pos = static_cast<std::size_t>(std::lower_bound(w.support.begin(), w.support.end(), site) - w.support.begin());
    const std::size_t n = w.support.size();
    std::vector<cplx> out(std::size_t{1} << (n + 1), 0.0);
    const std::size_t below = n - pos;  // qubits less significant than the new one
    for (std::size_t idx = 0; idx < w.amps.size(); ++idx) {
        std::size_t lowbits = idx & ((std::size_t{1} << below) - 1);
        std::size_t high = idx >> below;
        std::size_t nidx = (((high << 1) | (b == Bit::One)) << below) | lowbits;
        out[nidx] = w.amps[idx];
    }
    w.amps = std::move(out);
    w.support.insert(w.support.begin() + static_cast<std::ptrdiff_t>(pos), site);
    st.config.at(site).d = Bit::Quantum;
}

inline void apply_data_gate(ChainState& st, std::size_t i, Gate g, bool adjoint_gate, GateMode mode) {
    if (g == Gate::I) return;
    Bit l = st.config.at(i).d, r = st.config.at(i + 1).d;
    auto classical = [](Bit b) { return b == Bit::Zero || b == Bit::One; };
    if (classical(l) && classical(r)) {
        if (auto out = classical_gate_action(g, l == Bit::One, r == Bit::One)) {
            st.config.at(i).d = bit_of(out->first);
            st.config.at(i + 1).d = bit_of(out->second);
            return;
        }
    }
    if (!(l == Bit::Quantum && r == Bit::Quantum)) {
        if (mode == GateMode::Abort)
            throw ConstructionViolation(std::string("gate ") + gate_char(g) + " on data sites " + std::to_string(i) + "," +
                                        std::to_string(i + 1) + " (" + std::string(bit_glyph(l)) + "," +
                                        std::string(bit_glyph(r)) + ") leaves the classical subspace");
        promote_site(st, i);
        promote_site(st, i + 1);
    }
    auto& w = st.work;
    auto q = static_cast<std::size_t>(std::lower_bound(w.support.begin(), w.support.end(), i) - w.support.begin());
    Mat4 m = gate_matrix(g);
    apply_pair(w.amps, w.support.size(), q, adjoint_gate ? adjoint(m) : m);
}

inline ChainState apply(const ChainState& s, const Match& m, GateMode mode = GateMode::Abort) {
    const Rule& r = *m.rule;
    const bool fwd = m.dir == Direction::Forward;
    const Side& from = fwd ? r.lhs : r.rhs;
    const Side& to = fwd ? r.rhs : r.lhs;
    if (m.site < 1 || m.site + 1 > s.config.length()) throw StaleMatch("match " + describe(m) + " outside chain");
    Bindings b;
    if (!detail::match_side(from, {detail::column_mask(from.col[0]), detail::column_mask(from.col[1])}, HybridView{s},
                            m.site, b) ||
        !(b == m.bind))
        throw StaleMatch("match " + describe(m) + " no longer holds");
    ChainState out = s;
    detail::write_side(from, to, out.config, m.site, b);
    if (r.gate) apply_data_gate(out, m.site, static_cast<Gate>(b.gate[0]), !fwd, mode);
    return out;
}

namespace detail {

struct RuleDef {
    Rule r;
    bool on_rhs = false;

    RuleDef(std::string label, Tier tier, Tier until = Tier::IV) {
        r.label = std::move(label);
        r.tier = tier;
        r.until = until;
    }
    Side& cur() { return on_rhs ? r.rhs : r.lhs; }
    RuleDef& P(ProgCell a, ProgCell b) { cur().col[0].p = a; cur().col[1].p = b; return *this; }
    RuleDef& D(BitCell a, BitCell b) { cur().col[0].d = a; cur().col[1].d = b; return *this; }
    RuleDef& C(BitCell a, BitCell b) { cur().col[0].c = a; cur().col[1].c = b; return *this; }
    RuleDef& CP(PtrCell a, PtrCell b) { cur().col[0].cp = a; cur().col[1].cp = b; return *this; }
    RuleDef& T(BitCell a, BitCell b) { cur().col[0].t = a; cur().col[1].t = b; return *this; }
    RuleDef& C2(BitCell a, BitCell b) { cur().col[0].c2 = a; cur().col[1].c2 = b; return *this; }
    RuleDef& to() { on_rhs = true; r.rhs = r.lhs; return *this; }
    RuleDef& gate() { r.gate = true; return *this; }
};

inline ProgCell any_p() { return {}; }
inline ProgCell is(Prog p) { return {ProgCell::Kind::Is, p}; }
inline ProgCell is_not(Prog p) { return {ProgCell::Kind::Not, p}; }
inline ProgCell fam(Family f, GateVar v) { return {ProgCell::Kind::Fam, Prog::Bullet, f, v}; }
inline BitCell any_b() { return {}; }
inline BitCell bit(int v) { return {BitCell::Kind::Is, bit_of(v)}; }
inline BitCell bul() { return {BitCell::Kind::Is, Bit::Bullet}; }
inline BitCell not_bul() { return {BitCell::Kind::NotBullet}; }
inline BitCell var() { return {BitCell::Kind::Var}; }
inline BitCell var_pad() { return {BitCell::Kind::VarPad}; }
inline BitCell neg_pad() { return {BitCell::Kind::NegPad}; }
inline PtrCell any_ptr() { return {}; }
inline PtrCell ptr(Ptr p) { return {PtrCell::Kind::Is, p}; }

inline std::vector<Rule> rule_library() {
    using enum Prog;
    const auto A = GateVar::A, B = GateVar::B;
    const auto Pl = Family::Plain, Rt = Family::Right, Lt = Family::Left, RX = Family::RightX, LX = Family::LeftX;
    const auto bp = ptr(Ptr::Bullet);
    std::vector<RuleDef> d;
    auto add = [&d](RuleDef r) { d.push_back(std::move(r)); };

    // Rightward sweep carrying the program one site right.
    add(RuleDef("1", Tier::I).P(is(Right), fam(Pl, A)).to().P(is(Bullet), fam(Rt, A)));
    add(RuleDef("2", Tier::I).P(fam(Rt, A), fam(Pl, B)).to().P(fam(Pl, A), fam(Rt, B)));
    add(RuleDef("3", Tier::I).P(fam(Rt, A), is(Bullet)).to().P(fam(Pl, A), is(Right)));
    add(RuleDef("4a", Tier::I).P(is(Right), is(Bullet)).D(bit(1), any_b()).to().P(is(Gat), is(Bullet)));
    add(RuleDef("4b", Tier::I).P(is(Right), is(Bullet)).D(bit(0), any_b()).to().P(is(Mov), is(Bullet)));
    add(RuleDef("5a", Tier::I).P(fam(Pl, A), is(Gat)).to().P(is(Gat), fam(Pl, A)).gate());
    add(RuleDef("5b", Tier::I).P(fam(Pl, A), is(Mov)).to().P(is(Mov), fam(Pl, A)));
    add(RuleDef("6a", Tier::I).P(is(Bullet), is(Gat)).D(bit(1), any_b()).to().P(is(Bullet), is(Right)));
    add(RuleDef("6b", Tier::I).P(is(Bullet), is(Mov)).D(bit(0), any_b()).to().P(is(Bullet), is(Right)));

    // Reset sweep: walk left over the program, then shift it left by one.
    add(RuleDef("7", Tier::II).P(fam(Pl, A), is(Left)).to().P(fam(Lt, A), is(Bullet)));
    add(RuleDef("8", Tier::II).P(fam(Pl, B), fam(Lt, A)).to().P(fam(Lt, B), fam(Pl, A)));
    add(RuleDef("9", Tier::II).P(is(Bullet), fam(Lt, A)).to().P(is(Left), fam(Pl, A)));
    add(RuleDef("10", Tier::II).P(is(Bullet), is(Left)).to().P(is(Bullet), is(Tri)));
    add(RuleDef("11", Tier::II).P(is(Tri), fam(Pl, A)).to().P(fam(Pl, A), is(Tri)));
    add(RuleDef("12", Tier::II).P(is(Tri), is(Bullet)).to().P(is(Left), is(Bullet)));
    add(RuleDef("13a", Tier::II, Tier::II).P(is(Right), is(Turn)).to().P(is(Left), is(Turn)));
    add(RuleDef("13b", Tier::II).P(is(Turn), is(Left)).to().P(is(Turn), is(Right)));

    // Binary clock: L walks left over trailing ones, R clears them on the
    // way back, C marks a finished increment.
    add(RuleDef("13a", Tier::III).P(is(Right), is(Turn)).to().P(is(Turn), is(Down)));
    add(RuleDef("14", Tier::III).P(is(Turn), is(Down)).CP(bp, ptr(Ptr::X)).to().P(is(Turn), is(Turn)).CP(bp, ptr(Ptr::L)));
    add(RuleDef("15", Tier::III).P(is(Turn), is(Turn)).C(any_b(), bit(0)).CP(bp, ptr(Ptr::L))
            .to().C(any_b(), bit(1)).CP(bp, ptr(Ptr::C)));
    add(RuleDef("16", Tier::III).P(is(Turn), is(Turn)).C(bit(0), bit(1)).CP(bp, ptr(Ptr::L))
            .to().C(bit(1), bit(0)).CP(bp, ptr(Ptr::C)));
    add(RuleDef("17", Tier::III).C(bit(1), bit(1)).CP(bp, ptr(Ptr::L)).to().CP(ptr(Ptr::L), bp));
    add(RuleDef("18", Tier::III).P(is_not(Turn), any_p()).C(bit(0), bit(1)).CP(bp, ptr(Ptr::L))
            .to().C(bit(1), bit(0)).CP(bp, ptr(Ptr::R)));
    add(RuleDef("19", Tier::III).P(is_not(Turn), any_p()).C(bit(0), bit(1)).CP(ptr(Ptr::R), bp)
            .to().C(bit(0), bit(0)).CP(bp, ptr(Ptr::R)));
    add(RuleDef("20", Tier::III).P(is(Turn), is(Turn)).C(bit(0), bit(1)).CP(ptr(Ptr::R), bp)
            .to().C(bit(0), bit(0)).CP(bp, ptr(Ptr::C)));
    add(RuleDef("21", Tier::III, Tier::III).P(is(Turn), is(Turn)).CP(bp, ptr(Ptr::C))
            .to().P(is(Left), is(Turn)).CP(bp, ptr(Ptr::X)));

    // Comparator: ←C walks left while clock and target agree; CX reports a
    // mismatch back to the right end, R× a full match.
    add(RuleDef("21", Tier::IV).P(is(Turn), is(Turn)).CP(bp, ptr(Ptr::CX))
            .to().P(is(Left), is(Turn)).CP(bp, ptr(Ptr::X)));
    add(RuleDef("22", Tier::IV).P(is(Turn), is(Turn)).CP(bp, ptr(Ptr::Cx))
            .to().P(is(LeftX), is(Turn)).CP(bp, ptr(Ptr::X)));
    const auto lc = ptr(Ptr::LeftC);
    add(RuleDef("23a", Tier::IV).P(is(Turn), is(Turn)).C(not_bul(), var()).T(not_bul(), var()).CP(bp, ptr(Ptr::C))
            .to().CP(lc, bp));
    add(RuleDef("23b", Tier::IV).P(is(Turn), is(Turn)).C(not_bul(), var()).T(bul(), var()).CP(bp, ptr(Ptr::C))
            .to().CP(lc, bp));
    add(RuleDef("23c", Tier::IV).P(is(Turn), is(Turn)).C(bul(), var()).T(not_bul(), var()).CP(bp, ptr(Ptr::C))
            .to().CP(lc, bp));
    add(RuleDef("24a", Tier::IV).P(is_not(Turn), any_p()).C(not_bul(), var()).T(not_bul(), var()).CP(bp, lc)
            .to().CP(lc, bp));
    add(RuleDef("24b", Tier::IV).P(is_not(Turn), any_p()).C(not_bul(), var()).T(bul(), var()).CP(bp, lc)
            .to().CP(lc, bp));
    add(RuleDef("24c", Tier::IV).P(is_not(Turn), any_p()).C(bul(), var()).T(not_bul(), var()).CP(bp, lc)
            .to().CP(lc, bp));
    add(RuleDef("25", Tier::IV).P(is(Turn), is(Turn)).C(any_b(), var()).T(any_b(), neg_pad()).CP(bp, ptr(Ptr::C))
            .to().CP(bp, ptr(Ptr::CX)));
    add(RuleDef("26", Tier::IV).P(is_not(Turn), any_p()).C(any_b(), var()).T(any_b(), neg_pad()).CP(bp, lc)
            .to().CP(bp, ptr(Ptr::CX)));
    add(RuleDef("26b", Tier::IV).C(bul(), var()).T(any_b(), neg_pad()).CP(bp, lc).to().CP(bp, ptr(Ptr::CX)));
    add(RuleDef("27", Tier::IV).C(any_b(), var()).T(any_b(), var_pad()).CP(ptr(Ptr::CX), bp)
            .to().CP(bp, ptr(Ptr::CX)));
    add(RuleDef("28", Tier::IV).C(bul(), var()).T(bul(), var_pad()).CP(bp, lc).to().CP(lc, bp));
    add(RuleDef("29", Tier::IV).P(is_not(Turn), any_p()).C(any_b(), bit(0)).T(bul(), bul()).CP(bp, lc)
            .to().CP(lc, bp));
    add(RuleDef("30", Tier::IV).P(is(Turn), any_p()).CP(lc, bp).C2(bul(), bit(0)).to().CP(bp, ptr(Ptr::Rx)));

    // ×-mode copies of the sweeps: same motion, no gates, no data guards.
    add(RuleDef("31", Tier::IV).P(is(RightX), fam(Pl, A)).to().P(is(Bullet), fam(RX, A)));
    add(RuleDef("32", Tier::IV).P(fam(RX, A), fam(Pl, B)).to().P(fam(Pl, A), fam(RX, B)));
    add(RuleDef("33", Tier::IV).P(fam(RX, A), is(Bullet)).to().P(fam(Pl, A), is(RightX)));
    add(RuleDef("34", Tier::IV).P(is(RightX), is(Bullet)).to().P(is(MovX), is(Bullet)));
    add(RuleDef("35", Tier::IV).P(fam(Pl, A), is(MovX)).to().P(is(MovX), fam(Pl, A)));
    add(RuleDef("36", Tier::IV).P(is(Bullet), is(MovX)).to().P(is(Bullet), is(RightX)));
    add(RuleDef("37", Tier::IV).P(fam(Pl, A), is(LeftX)).to().P(fam(LX, A), is(Bullet)));
    add(RuleDef("38", Tier::IV).P(fam(Pl, B), fam(LX, A)).to().P(fam(LX, B), fam(Pl, A)));
    add(RuleDef("39", Tier::IV).P(is(Bullet), fam(LX, A)).to().P(is(LeftX), fam(Pl, A)));
    add(RuleDef("40", Tier::IV).P(is(Bullet), is(LeftX)).to().P(is(Bullet), is(TriX)));
    add(RuleDef("41", Tier::IV).P(is(TriX), fam(Pl, A)).to().P(fam(Pl, A), is(TriX)));
    add(RuleDef("42", Tier::IV).P(is(TriX), is(Bullet)).to().P(is(LeftX), is(Bullet)));
    add(RuleDef("43a", Tier::IV).P(is(RightX), is(Turn)).to().P(is(Turn), is(DownX)));
    add(RuleDef("43b", Tier::IV).P(is(Turn), is(LeftX)).to().P(is(Turn), is(RightX)));

    // Second clock, counted in ×-mode.
    const auto bx = ptr(Ptr::Lx), rx = ptr(Ptr::Rx), cx = ptr(Ptr::Cx);
    add(RuleDef("44", Tier::IV).P(is(Turn), is(DownX)).CP(bp, ptr(Ptr::X)).to().P(is(Turn), is(Turn)).CP(bp, bx));
    add(RuleDef("45", Tier::IV).P(is(Turn), is(Turn)).CP(bp, bx).C2(any_b(), bit(0)).to().CP(bp, cx).C2(any_b(), bit(1)));
    add(RuleDef("46", Tier::IV).P(is(Turn), is(Turn)).CP(bp, bx).C2(bit(0), bit(1)).to().CP(bp, cx).C2(bit(1), bit(0)));
    add(RuleDef("47", Tier::IV).CP(bp, bx).C2(bit(1), bit(1)).to().CP(bx, bp));
    add(RuleDef("48", Tier::IV).P(is_not(Turn), any_p()).CP(bp, bx).C2(bit(0), bit(1)).to().CP(bp, rx).C2(bit(1), bit(0)));
    add(RuleDef("49", Tier::IV).P(is_not(Turn), any_p()).CP(rx, bp).C2(bit(0), bit(1)).to().CP(bp, rx).C2(bit(0), bit(0)));
    add(RuleDef("50", Tier::IV).P(is(Turn), is(Turn)).CP(rx, bp).C2(bit(0), bit(1)).to().CP(bp, cx).C2(bit(0), bit(0)));

    std::vector<Rule> out;
    for (auto& r : d) out.push_back(std::move(r.r));
    return out;
}

} // namespace detail

inline const RuleTable& rule_set(Tier t) {
    static const std::array<std::unique_ptr<RuleTable>, 4> tables = [] {
        std::array<std::unique_ptr<RuleTable>, 4> out;
        auto lib = detail::rule_library();
        for (int i = 0; i < 4; ++i) {
            Tier tier = static_cast<Tier>(i + 1);
            std::vector<Rule> rules;
            for (const auto& r : lib)
                if (r.tier <= tier && tier <= r.until) rules.push_back(r);
            out[i] = std::make_unique<RuleTable>(std::move(rules));
        }
        return out;
    }();
    return *tables[static_cast<int>(t) - 1];
}

inline std::vector<Match> applicable(const ChainState& s, Direction dir) {
    return applicable(rule_set(s.tier), s, dir);
}

namespace detail {

inline std::string cell_text(const ProgCell& c) {
    static const char* var_name[2] = {"A", "B"};
    switch (c.kind) {
    case ProgCell::Kind::Any: return "-";
    case ProgCell::Kind::Is: return std::string(prog_glyph(c.sym));
    case ProgCell::Kind::Not: return "¬" + std::string(prog_glyph(c.sym));
    case ProgCell::Kind::Fam: {
        std::string v = var_name[static_cast<int>(c.var)];
        switch (c.fam) {
        case Family::Plain: return v;
        case Family::Right: return "→" + v;
        case Family::Left: return "←" + v;
        case Family::RightX: return "→" + v + "×";
        case Family::LeftX: return "←" + v + "×";
        }
    }
    }
    return "?";
}

inline std::string cell_text(const BitCell& c) {
    switch (c.kind) {
    case BitCell::Kind::Any: return "-";
    case BitCell::Kind::Is: return std::string(bit_glyph(c.value));
    case BitCell::Kind::NotBullet: return "¬•";
    case BitCell::Kind::Var: return "a";
    case BitCell::Kind::VarPad: return "a|•";
    case BitCell::Kind::NegPad: return "ā|•";
    }
    return "?";
}

inline std::string cell_text(const PtrCell& c) {
    return c.kind == PtrCell::Kind::Any ? "-" : std::string(ptr_glyph(c.sym));
}

inline std::string column_text(const Column& col, const std::array<bool, 6>& used) {
    std::string s;
    auto add = [&](Register r, const std::string& v) {
        if (!used[static_cast<int>(r)]) return;
        if (!s.empty()) s += ' ';
        s += std::string(register_name(r)) + "=" + v;
    };
    add(Register::P, cell_text(col.p));
    add(Register::D, cell_text(col.d));
    add(Register::C, cell_text(col.c));
    add(Register::CP, cell_text(col.cp));
    add(Register::T, cell_text(col.t));
    add(Register::C2, cell_text(col.c2));
    return s;
}

} // namespace detail

// One line per rule: label, first tier, left/right cells of the pattern,
// then the cells the rewrite changes.
inline std::string dump_rule(const Rule& r) {
    std::array<bool, 6> used{};
    for (const Side* s : {&r.lhs, &r.rhs})
        for (const auto& c : s->col) {
            used[0] |= c.p.kind != ProgCell::Kind::Any;
            used[1] |= c.d.kind != BitCell::Kind::Any;
            used[2] |= c.c.kind != BitCell::Kind::Any;
            used[3] |= c.cp.kind != PtrCell::Kind::Any;
            used[4] |= c.t.kind != BitCell::Kind::Any;
            used[5] |= c.c2.kind != BitCell::Kind::Any;
        }
    std::string out = r.label + " " + std::string(tier_name(r.tier)) + " | " +
                      detail::column_text(r.lhs.col[0], used) + " / " + detail::column_text(r.lhs.col[1], used) + " => ";
    for (int c = 0; c < 2; ++c) {
        std::array<bool, 6> changed{};
        const Column &x = r.lhs.col[c], &y = r.rhs.col[c];
        changed[0] = x.p != y.p;
        changed[1] = x.d != y.d;
        changed[2] = x.c != y.c;
        changed[3] = x.cp != y.cp;
        changed[4] = x.t != y.t;
        changed[5] = x.c2 != y.c2;
        std::string t = detail::column_text(y, changed);
        out += (t.empty() ? "-" : t) + (c == 0 ? " / " : "");
    }
    if (r.gate) out += " gate:A";
    return out;
}

inline std::string dump_rules(const RuleTable& t) {
    std::string out;
    for (const auto& r : t.rules()) out += dump_rule(r) + "\n";
    return out;
}

} // namespace hqca
