#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hqca/chain.hpp"
#include "hqca/error.hpp"
#include "hqca/rules.hpp"

namespace hqca {

class DeadEnd : public Error {
public:
    using Error::Error;
};

class Ambiguous : public Error {
public:
    Ambiguous(const std::string& what, std::vector<Match> m) : Error(what), matches(std::move(m)) {}
    std::vector<Match> matches;
};

inline std::string describe(const std::vector<Match>& ms) {
    std::string s;
    for (const auto& m : ms) s += (s.empty() ? "" : " ") + describe(m);
    return s;
}

inline std::pair<ChainState, Match> step_forward(const RuleTable& table, const ChainState& s,
                                                 GateMode mode = GateMode::Abort) {
    auto ms = applicable(table, s, Direction::Forward);
    if (ms.empty()) throw DeadEnd("no forward rule applies");
    if (ms.size() > 1) throw Ambiguous(std::to_string(ms.size()) + " forward rules apply: " + describe(ms), ms);
    return {apply(s, ms.front(), mode), ms.front()};
}

inline std::pair<ChainState, Match> step_forward(const ChainState& s) { return step_forward(rule_set(s.tier), s); }

inline std::uint64_t predicted_T_I(std::uint64_t n, std::uint64_t k) {
    return 2 * n * n * k * k - 2 * n * n * k + 4 * n * k * k - n + 2 * k * k + 2 * k;
}

inline std::uint64_t predicted_oscillation(std::uint64_t n, std::uint64_t k) { return 2 * k * (n + 1) + 1; }

inline std::uint64_t predicted_T_II(std::uint64_t n, std::uint64_t k) { return 2 * predicted_T_I(n, k) + 2; }

// Reads sites 2..L of a clock-like row as binary, most significant first.
// Needs site 1 to hold • and every other site a bit.
inline std::optional<std::uint64_t> read_binary_row(const ChainConfig& c, Bit Site::*field) {
    if (c.length() < 2 || c.length() - 1 > 64) return std::nullopt;
    if (c.sites[0].*field != Bit::Bullet) return std::nullopt;
    std::uint64_t v = 0;
    for (std::size_t i = 1; i < c.length(); ++i) {
        Bit b = c.sites[i].*field;
        if (b != Bit::Zero && b != Bit::One) return std::nullopt;
        v = (v << 1) | (b == Bit::One);
    }
    return v;
}

inline std::optional<std::uint64_t> clock_value(const ChainConfig& c) {
    if (!c.regs.has(Register::C)) return std::nullopt;
    return read_binary_row(c, &Site::c);
}

inline std::optional<std::uint64_t> clock_value(const ChainState& s) { return clock_value(s.config); }

inline std::optional<std::uint64_t> clock2_value(const ChainState& s) {
    if (!s.config.regs.has(Register::C2)) return std::nullopt;
    return read_binary_row(s.config, &Site::c2);
}

struct StepBudget {
    enum class Stop : std::uint8_t { DeadEnd, ClockEquals, StepLimit };
    std::uint64_t max_steps = std::numeric_limits<std::uint64_t>::max();
    Stop stop_on = Stop::DeadEnd;
    std::uint64_t clock_target = 0;
};

enum class RunStatus : std::uint8_t { DeadEnd, Limit, Clock, Stopped };

inline std::string_view status_name(RunStatus s) {
    switch (s) {
    case RunStatus::DeadEnd: return "dead_end";
    case RunStatus::Limit: return "limit";
    case RunStatus::Clock: return "clock";
    case RunStatus::Stopped: return "stopped";
    }
    return "?";
}

// Called after each step with the new step index, the new state and the
// rule that produced it. Returning false stops the run.
using StepObserver = std::function<bool(std::uint64_t, const ChainState&, const Match&)>;

struct RunOptions {
    const RuleTable* table = nullptr;  // defaults to rule_set(tier)
    GateMode gate_mode = GateMode::Abort;
    bool keep_states = true;
    bool keep_steps = true;
    bool check_uog = false;        // reverse uniqueness, support and digests on the fly
    std::uint64_t snapshot_every = 0;
    std::ostream* trace = nullptr;
    std::uint64_t trace_snapshot_every = 0;
    StepObserver observer;
};

struct Trajectory {
    Tier tier = Tier::I;
    ChainState initial;
    ChainState final_state;
    std::uint64_t length = 0;  // steps taken; states are ψ_0 … ψ_length
    RunStatus status = RunStatus::DeadEnd;
    std::vector<ChainState> states;
    std::vector<Match> steps;
    std::map<std::string, std::vector<std::uint64_t>> markers;
    std::vector<std::pair<std::uint64_t, ChainState>> snapshots;

    // Filled when RunOptions::check_uog is set.
    std::vector<std::uint64_t> digests;
    std::vector<std::string> uog_violations;
    bool uog_checked = false;

    const std::vector<std::uint64_t>& marker(const std::string& name) const {
        static const std::vector<std::uint64_t> none;
        auto it = markers.find(name);
        return it == markers.end() ? none : it->second;
    }
};

// Event names derived from rule labels.
inline std::vector<std::string_view> events_for(const std::string& label) {
    static const std::map<std::string, std::vector<std::string_view>> table{
        {"4a", {"turning_point", "gate_sweep"}},
        {"4b", {"turning_point"}},
        {"6a", {"oscillation_end"}},
        {"6b", {"oscillation_end"}},
        {"13a", {"reset"}},
        {"13b", {"reset"}},
        {"14", {"clock_start"}},
        {"15", {"clock_done"}},
        {"16", {"clock_done"}},
        {"20", {"clock_done"}},
        {"21", {"application_start"}},
        {"22", {"application_start_x"}},
        {"25", {"comparator_mismatch"}},
        {"26", {"comparator_mismatch"}},
        {"26b", {"comparator_mismatch"}},
        {"30", {"comparator_match"}},
        {"34", {"turning_point"}},
        {"43a", {"reset"}},
        {"43b", {"reset"}},
        {"44", {"clock2_start"}},
        {"45", {"clock2_done"}},
        {"46", {"clock2_done"}},
        {"50", {"clock2_done"}},
    };
    auto it = table.find(label);
    return it == table.end() ? std::vector<std::string_view>{} : it->second;
}

inline std::string trace_line(std::uint64_t step, const Match& m, const ChainState& s) {
    std::string active = "-";
    try {
        auto a = active_site(s);
        active = std::string(register_name(a.reg)) + ":" + a.glyph;
    } catch (const ConfigError&) {
    }
    auto clk = clock_value(s);
    return std::to_string(step) + "\t" + m.label() + "\t" + std::to_string(m.site) + "\t" + active + "\t" +
           (clk ? std::to_string(*clk) : std::string("-")) + "\t" + digest_hex(config_digest(s.config));
}

inline Trajectory run(const ChainState& start, const StepBudget& budget, const RunOptions& opt = {}) {
    if (budget.max_steps == 0) throw Error("step budget must be positive");
    const RuleTable& table = opt.table ? *opt.table : rule_set(start.tier);
    Trajectory tr;
    tr.tier = start.tier;
    tr.initial = start;
    tr.uog_checked = opt.check_uog;
    if (opt.keep_states) tr.states.push_back(start);
    if (opt.check_uog) tr.digests.push_back(config_digest(start.config));
    if (opt.snapshot_every) tr.snapshots.push_back({0, start});
    if (opt.trace && opt.trace_snapshot_every) *opt.trace << "#snapshot 0\n" << snapshot(start);

    ChainState cur = start;
    const auto support = start.work.support;
    tr.status = RunStatus::Limit;
    if (budget.stop_on == StepBudget::Stop::ClockEquals && clock_value(cur) == budget.clock_target) {
        tr.status = RunStatus::Clock;
        tr.final_state = cur;
        return tr;
    }
    std::uint64_t t = 0;
    while (t < budget.max_steps) {
        auto fwd = applicable(table, cur, Direction::Forward);
        if (fwd.empty()) {
            tr.status = RunStatus::DeadEnd;
            break;
        }
        if (fwd.size() > 1)
            throw Ambiguous("step " + std::to_string(t) + ": " + std::to_string(fwd.size()) +
                                " forward rules apply: " + describe(fwd) + "\n" + snapshot(cur),
                            fwd);
        const Match m = fwd.front();
        cur = apply(cur, m, opt.gate_mode);
        ++t;
        for (auto ev : events_for(m.label())) tr.markers[std::string(ev)].push_back(t);
        tr.markers["rule:" + m.label()].push_back(t);
        if (opt.keep_steps) tr.steps.push_back(m);
        if (opt.keep_states) tr.states.push_back(cur);
        if (opt.check_uog) {
            tr.digests.push_back(config_digest(cur.config));
            auto rev = applicable(table, cur, Direction::Reverse);
            if (rev.size() != 1)
                tr.uog_violations.push_back("step " + std::to_string(t) + ": " + std::to_string(rev.size()) +
                                            " reverse matches " + describe(rev));
            if (cur.work.support != support)
                tr.uog_violations.push_back("step " + std::to_string(t) + ": quantum support changed");
        }
        if (opt.snapshot_every && t % opt.snapshot_every == 0) tr.snapshots.push_back({t, cur});
        if (opt.trace) {
            *opt.trace << trace_line(t, m, cur) << '\n';
            if (opt.trace_snapshot_every && t % opt.trace_snapshot_every == 0)
                *opt.trace << "#snapshot " << t << '\n' << snapshot(cur);
        }
        if (opt.observer && !opt.observer(t, cur, m)) {
            tr.status = RunStatus::Stopped;
            break;
        }
        if (budget.stop_on == StepBudget::Stop::ClockEquals && clock_value(cur) == budget.clock_target) {
            tr.status = RunStatus::Clock;
            break;
        }
    }
    if (tr.status == RunStatus::Limit && applicable(table, cur, Direction::Forward).empty())
        tr.status = RunStatus::DeadEnd;
    tr.length = t;
    tr.final_state = std::move(cur);
    return tr;
}

struct UogReport {
    std::vector<std::string> violations;
    std::uint64_t states_checked = 0;
    bool final_dead_end = false;

    bool clean() const { return violations.empty(); }
};

struct UogOptions {
    const RuleTable* table = nullptr;
    // Tier II configs recur with this period; distinctness is then required
    // within each period and recurrence is checked instead.
    std::optional<std::uint64_t> period;
    // The tier IV start state has a short reverse tail, so its reverse match
    // is not required to be empty.
    bool initial_may_reverse = true;
};

namespace detail {

struct ConfigHash {
    std::size_t operator()(const ChainConfig& c) const { return config_digest(c); }
};

} // namespace detail

inline UogReport verify_uog(const Trajectory& tr, const UogOptions& opt = {}) {
    UogReport rep;
    const RuleTable& table = opt.table ? *opt.table : rule_set(tr.tier);
    auto fail = [&rep](std::string s) {
        if (rep.violations.size() < 50) rep.violations.push_back(std::move(s));
    };

    if (tr.states.empty()) {
        // Long run: rely on the on-the-fly checks plus digest distinctness.
        if (!tr.uog_checked) {
            fail("trajectory kept neither states nor on-the-fly checks");
            return rep;
        }
        for (const auto& v : tr.uog_violations) fail(v);
        if (opt.period) fail("periodic mode needs stored states");
        auto d = tr.digests;
        std::sort(d.begin(), d.end());
        if (auto it = std::adjacent_find(d.begin(), d.end()); it != d.end())
            fail("repeated config digest " + digest_hex(*it));
        rep.states_checked = tr.digests.size();
        rep.final_dead_end = applicable(table, tr.final_state, Direction::Forward).empty();
        auto fwd0 = applicable(table, tr.initial, Direction::Forward);
        if (tr.length > 0 && fwd0.size() != 1) fail("initial state has " + std::to_string(fwd0.size()) + " forward matches");
        return rep;
    }

    const auto& st = tr.states;
    const std::size_t n = st.size();
    rep.states_checked = n;
    std::unordered_map<ChainConfig, std::size_t, detail::ConfigHash> seen;
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t key = opt.period ? t % *opt.period : t;
        if (opt.period && t >= *opt.period) {
            if (!(st[t].config == st[key].config))
                fail("config at " + std::to_string(t) + " differs from config at " + std::to_string(key));
        } else {
            auto [it, fresh] = seen.emplace(st[t].config, t);
            if (!fresh) fail("config at " + std::to_string(t) + " repeats config at " + std::to_string(it->second));
        }
        auto fwd = applicable(table, st[t], Direction::Forward);
        if (t + 1 < n) {
            if (fwd.size() != 1)
                fail("state " + std::to_string(t) + ": " + std::to_string(fwd.size()) + " forward matches " + describe(fwd));
        } else {
            rep.final_dead_end = fwd.empty();
        }
        auto rev = applicable(table, st[t], Direction::Reverse);
        if (t > 0 && rev.size() != 1)
            fail("state " + std::to_string(t) + ": " + std::to_string(rev.size()) + " reverse matches " + describe(rev));
        if (t == 0 && !opt.initial_may_reverse && !rev.empty())
            fail("initial state has " + std::to_string(rev.size()) + " reverse matches");
        if (st[t].work.support != st[0].work.support)
            fail("state " + std::to_string(t) + ": quantum support differs from the initial work window");
    }
    return rep;
}

struct RestrictedHamiltonian {
    std::size_t n = 0;
    std::vector<double> m;        // row-major, entries of Σ_k (P_k + P_k†)
    double prefactor = 0;         // overall −1/(rules·L) scale, kept separate
    std::uint64_t exits = 0;      // rule images outside the trajectory
    std::vector<std::string> leaks;

    double at(std::size_t r, std::size_t c) const { return m[r * n + c]; }
};

inline RestrictedHamiltonian restricted_hamiltonian(const Trajectory& tr, const RuleTable* table_opt = nullptr) {
    if (tr.states.empty()) throw Error("restricted Hamiltonian needs stored states");
    const RuleTable& table = table_opt ? *table_opt : rule_set(tr.tier);
    RestrictedHamiltonian h;
    const auto& st = tr.states;
    h.n = st.size();
    h.m.assign(h.n * h.n, 0.0);
    h.prefactor = -1.0 / (static_cast<double>(table.size()) * static_cast<double>(st.front().config.length()));
    std::unordered_map<ChainConfig, std::size_t, detail::ConfigHash> index;
    for (std::size_t t = 0; t < h.n; ++t) index.emplace(st[t].config, t);
    for (std::size_t t = 0; t < h.n; ++t) {
        for (Direction dir : {Direction::Forward, Direction::Reverse}) {
            for (const auto& m : applicable(table, st[t], dir)) {
                ChainState img = apply(st[t], m);
                auto it = index.find(img.config);
                if (it == index.end()) {
                    ++h.exits;
                    continue;
                }
                const std::size_t s = it->second;
                // Same config with a different work state (the tier II wrap)
                // is a state outside the trajectory.
                if (!same_state(st[s], img, 1e-9)) {
                    ++h.exits;
                    continue;
                }
                cplx amp = inner(st[s].work.amps, img.work.amps);
                if (std::abs(amp.imag()) > 1e-12)
                    h.leaks.push_back("complex entry at (" + std::to_string(s) + "," + std::to_string(t) + ")");
                h.m[s * h.n + t] += amp.real();
                bool adjacent = s + 1 == t || t + 1 == s;
                if (!adjacent && std::abs(amp) > 0)
                    h.leaks.push_back("off-path entry at (" + std::to_string(s) + "," + std::to_string(t) + ") from rule " +
                                      describe(m));
            }
        }
    }
    return h;
}

} // namespace hqca
