#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hqca/chain.hpp"
#include "hqca/error.hpp"
#include "hqca/symbols.hpp"

namespace hqca {

// Row-major 4x4 in the basis |left right>, index 2*left + right.
using Mat4 = std::array<cplx, 16>;

inline Mat4 gate_matrix(Gate g) {
    Mat4 m{};
    switch (g) {
    case Gate::I:
        for (int i = 0; i < 4; ++i) m[5 * i] = 1;
        break;
    case Gate::S:
        m[0] = m[15] = 1;
        m[1 * 4 + 2] = m[2 * 4 + 1] = 1;
        break;
    case Gate::W: {
        // Left qubit controls exp(-i pi/4 Y) on the right qubit.
        const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
        m[0] = m[5] = 1;
        m[10] = c;
        m[11] = -s;
        m[14] = s;
        m[15] = c;
        break;
    }
    }
    return m;
}

inline Mat4 adjoint(const Mat4& m) {
    Mat4 a{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[4 * r + c] = std::conj(m[4 * c + r]);
    return a;
}

// Applies m to qubits (q, q+1) of an n-qubit vector; qubit 0 is the most
// significant bit.
inline void apply_pair(std::vector<cplx>& v, std::size_t n, std::size_t q, const Mat4& m) {
    const std::size_t hi = std::size_t{1} << (n - 1 - q);
    const std::size_t lo = hi >> 1;
    for (std::size_t base = 0; base < v.size(); ++base) {
        if (base & (hi | lo)) continue;
        std::array<std::size_t, 4> idx{base, base | lo, base | hi, base | hi | lo};
        std::array<cplx, 4> in{v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            cplx s = 0;
            for (int c = 0; c < 4; ++c) s += m[4 * r + c] * in[c];
            v[idx[r]] = s;
        }
    }
}

struct CircuitProgram {
    int n = 0;
    int k = 0;
    std::vector<std::vector<Gate>> rounds;  // rounds[k-1][m-1] acts on qubits m, m+1

    void check() const {
        if (n < 2) throw Error("circuit needs at least 2 qubits");
        if (k < 1) throw Error("circuit needs at least 1 round");
        if (static_cast<int>(rounds.size()) != k)
            throw Error("expected " + std::to_string(k) + " rounds, got " + std::to_string(rounds.size()));
        for (std::size_t r = 0; r < rounds.size(); ++r)
            if (static_cast<int>(rounds[r].size()) != n - 1)
                throw Error("round " + std::to_string(r + 1) + " needs " + std::to_string(n - 1) + " gates");
    }
};

// Last round first, rounds separated by "I I", one trailing I.
inline std::vector<Prog> program_string(const CircuitProgram& c) {
    c.check();
    std::vector<Prog> out;
    for (int r = c.k; r >= 1; --r) {
        for (Gate g : c.rounds[r - 1]) out.push_back(prog_of(Family::Plain, g));
        out.push_back(Prog::I);
        if (r > 1) out.push_back(Prog::I);
    }
    return out;
}

struct DenseState {
    int n = 0;
    std::vector<cplx> amps;

    static DenseState basis(const std::string& bits) {
        DenseState s;
        s.n = static_cast<int>(bits.size());
        s.amps.assign(std::size_t{1} << s.n, 0.0);
        std::size_t idx = 0;
        for (char b : bits) {
            if (b != '0' && b != '1') throw Error("work bits must be 0/1, got '" + bits + "'");
            idx = 2 * idx + (b == '1');
        }
        s.amps[idx] = 1;
        return s;
    }

    // Haar-like random state from normalized complex Gaussians.
    static DenseState random(int n, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g;
        DenseState s;
        s.n = n;
        s.amps.resize(std::size_t{1} << n);
        double norm = 0;
        for (auto& a : s.amps) {
            a = cplx(g(rng), g(rng));
            norm += std::norm(a);
        }
        for (auto& a : s.amps) a /= std::sqrt(norm);
        return s;
    }
};

// Applies the first `count` gates of one pass of the program (rounds in
// order, right to left within a round).
inline void apply_gate_prefix(DenseState& s, const CircuitProgram& c, std::size_t count) {
    std::size_t done = 0;
    for (int r = 0; r < c.k && done < count; ++r)
        for (int m = c.n - 2; m >= 0 && done < count; --m, ++done)
            apply_pair(s.amps, s.n, m, gate_matrix(c.rounds[r][m]));
}

inline DenseState apply_rounds(DenseState s, const CircuitProgram& c, int rounds) {
    apply_gate_prefix(s, c, static_cast<std::size_t>(rounds) * (c.n - 1));
    return s;
}

inline DenseState apply_circuit_power(DenseState s, const CircuitProgram& c, std::uint64_t x) {
    c.check();
    if (s.n != c.n || s.amps.size() != (std::size_t{1} << c.n))
        throw Error("state has " + std::to_string(s.n) + " qubits, circuit " + std::to_string(c.n));
    for (std::uint64_t i = 0; i < x; ++i) apply_gate_prefix(s, c, static_cast<std::size_t>(c.k) * (c.n - 1));
    return s;
}

struct KeyLine {
    int line;
    std::string key;
    std::string value;
};

struct CircuitText {
    CircuitProgram circuit;
    std::optional<std::string> work;
    std::vector<KeyLine> extra;  // key=value lines not owned by the circuit grammar
};

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline long long parse_int(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(line, key + " expects an integer, got '" + v + "'");
    }
}

// Lines: n=<N>, k=<K>, round <k>: <gates>, work=<bits>; '#' starts a comment.
inline CircuitText parse_circuit_text(const std::string& text, bool allow_extra = false) {
    CircuitText out;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    std::vector<std::pair<int, std::vector<Gate>>> rounds;
    std::vector<int> round_lines;
    int n_line = 0, k_line = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.rfind("round", 0) == 0) {
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError(lineno, "round line needs ':'");
            int idx = static_cast<int>(parse_int(trim(line.substr(5, colon - 5)), lineno, "round"));
            std::vector<Gate> gates;
            for (const auto& g : split_ws(line.substr(colon + 1))) {
                auto gg = parse_gate(g);
                if (!gg) throw ParseError(lineno, "unknown gate '" + g + "' (expected W, S or I)");
                gates.push_back(*gg);
            }
            rounds.push_back({idx, gates});
            round_lines.push_back(lineno);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key=value or round line");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "n") {
            out.circuit.n = static_cast<int>(parse_int(value, lineno, key));
            n_line = lineno;
        } else if (key == "k") {
            out.circuit.k = static_cast<int>(parse_int(value, lineno, key));
            k_line = lineno;
        } else if (key == "work") {
            out.work = value;
            for (char b : value)
                if (b != '0' && b != '1') throw ParseError(lineno, "work bits must be 0/1");
        } else if (allow_extra) {
            out.extra.push_back({lineno, key, value});
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }
    auto& c = out.circuit;
    if (!n_line) throw ParseError(lineno, "missing n=");
    if (!k_line) throw ParseError(lineno, "missing k=");
    if (c.n < 2) throw ParseError(n_line, "n must be at least 2");
    if (c.k < 1) throw ParseError(k_line, "k must be at least 1");
    c.rounds.assign(c.k, {});
    std::vector<bool> seen(c.k, false);
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        auto [idx, gates] = rounds[i];
        int ln = round_lines[i];
        if (idx < 1 || idx > c.k) throw ParseError(ln, "round index " + std::to_string(idx) + " outside 1.." + std::to_string(c.k));
        if (seen[idx - 1]) throw ParseError(ln, "round " + std::to_string(idx) + " given twice");
        if (static_cast<int>(gates.size()) != c.n - 1)
            throw ParseError(ln, "round " + std::to_string(idx) + " needs " + std::to_string(c.n - 1) + " gates, got " +
                                     std::to_string(gates.size()));
        seen[idx - 1] = true;
        c.rounds[idx - 1] = gates;
    }
    for (int r = 0; r < c.k; ++r)
        if (!seen[r]) throw ParseError(lineno, "round " + std::to_string(r + 1) + " missing");
    if (out.work && static_cast<int>(out.work->size()) != c.n)
        throw ParseError(lineno, "work has " + std::to_string(out.work->size()) + " bits, n=" + std::to_string(c.n));
    return out;
}

} // namespace hqca
