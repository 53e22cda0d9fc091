#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "hqca/chain.hpp"
#include "hqca/circuit.hpp"
#include "hqca/rules.hpp"

namespace hqca {

// Reference backend: the whole data register as one 2^L vector. The D cells
// of `config` are ignored; data symbols are derived from the vector.
struct DenseChainState {
    ChainConfig config;
    std::vector<cplx> data;
    Tier tier = Tier::I;
};

inline constexpr std::size_t dense_max_sites = 20;

inline std::vector<cplx> expand_data(const ChainState& s) {
    const std::size_t L = s.config.length();
    if (L > dense_max_sites) throw Error("dense backend limited to " + std::to_string(dense_max_sites) + " sites");
    std::size_t base = 0;
    for (std::size_t i = 1; i <= L; ++i)
        if (s.config.at(i).d == Bit::One) base |= std::size_t{1} << (L - i);
    std::vector<cplx> v(std::size_t{1} << L, 0.0);
    const auto& sup = s.work.support;
    for (std::size_t idx = 0; idx < s.work.amps.size(); ++idx) {
        std::size_t full = base;
        for (std::size_t q = 0; q < sup.size(); ++q)
            if (idx >> (sup.size() - 1 - q) & 1) full |= std::size_t{1} << (L - sup[q]);
        v[full] = s.work.amps[idx];
    }
    return v;
}

inline DenseChainState to_dense(const ChainState& s) {
    DenseChainState d{s.config, expand_data(s), s.tier};
    for (auto& site : d.config.sites) site.d = Bit::Zero;
    return d;
}

// Classical value of one data site, or Quantum when both values carry weight.
inline Bit dense_data_symbol(const DenseChainState& s, std::size_t site) {
    const std::size_t L = s.config.length();
    const std::size_t mask = std::size_t{1} << (L - site);
    double w[2] = {0, 0};
    for (std::size_t idx = 0; idx < s.data.size(); ++idx) w[(idx & mask) != 0] += std::norm(s.data[idx]);
    if (w[1] <= 1e-24) return Bit::Zero;
    if (w[0] <= 1e-24) return Bit::One;
    return Bit::Quantum;
}

struct DenseView {
    const DenseChainState& s;
    mutable std::vector<std::optional<Bit>> cache = std::vector<std::optional<Bit>>(s.config.length() + 1);

    const ChainConfig& config() const { return s.config; }
    Bit data(std::size_t site) const {
        auto& c = cache[site];
        if (!c) c = dense_data_symbol(s, site);
        return *c;
    }
};

inline DenseChainState apply(const DenseChainState& s, const Match& m) {
    const Rule& r = *m.rule;
    const bool fwd = m.dir == Direction::Forward;
    const Side& from = fwd ? r.lhs : r.rhs;
    const Side& to = fwd ? r.rhs : r.lhs;
    Bindings b;
    if (!detail::match_side(from, {detail::column_mask(from.col[0]), detail::column_mask(from.col[1])}, DenseView{s},
                            m.site, b) ||
        !(b == m.bind))
        throw StaleMatch("match " + describe(m) + " no longer holds");
    DenseChainState out = s;
    detail::write_side(from, to, out.config, m.site, b);
    for (auto& site : out.config.sites) site.d = Bit::Zero;
    if (r.gate) {
        Mat4 g = gate_matrix(static_cast<Gate>(b.gate[0]));
        apply_pair(out.data, out.config.length(), m.site - 1, fwd ? g : adjoint(g));
    }
    return out;
}

// Config equality ignoring the data row, which the two backends store
// differently.
inline bool same_classical_registers(const ChainConfig& a, const ChainConfig& b) {
    if (a.regs != b.regs || a.length() != b.length()) return false;
    for (std::size_t i = 0; i < a.length(); ++i) {
        Site x = a.sites[i], y = b.sites[i];
        x.d = y.d = Bit::Zero;
        if (!(x == y)) return false;
    }
    return true;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) return INFINITY;
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace hqca
