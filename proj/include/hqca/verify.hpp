#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hqca/builder.hpp"
#include "hqca/chain.hpp"
#include "hqca/circuit.hpp"
#include "hqca/dense_backend.hpp"
#include "hqca/evolution.hpp"
#include "hqca/rules.hpp"
#include "hqca/walk.hpp"

namespace hqca {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string measured;
    std::string tolerance;
    std::string detail;
    std::string counterexample;  // snapshot of the offending state, if any
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }

    CheckResult& add(std::string name, bool pass, std::string measured, std::string tolerance, std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(measured), std::move(tolerance), std::move(detail), {}});
        return checks.back();
    }

    void merge(const VerificationReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

    std::string lines() const {
        std::string s;
        for (const auto& c : checks)
            s += "CHECK " + c.name + " " + (c.pass ? "PASS" : "FAIL") + " " + c.measured + " " + c.tolerance + "\n";
        return s;
    }

    std::string text() const {
        std::string s;
        for (const auto& c : checks) {
            s += "CHECK " + c.name + " " + (c.pass ? "PASS" : "FAIL") + " " + c.measured + " " + c.tolerance + "\n";
            if (!c.detail.empty()) s += "  " + c.detail + "\n";
            if (!c.pass && !c.counterexample.empty()) {
                std::istringstream is(c.counterexample);
                for (std::string line; std::getline(is, line);) s += "  | " + line + "\n";
            }
        }
        return s;
    }
};

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct WorkCheckpoint {
    std::uint64_t step;
    DenseState expected;
    std::string label;
};

inline VerificationReport check_work_oracle(const Trajectory& tr, const std::vector<WorkCheckpoint>& schedule,
                                            const std::string& name = "work_oracle") {
    VerificationReport rep;
    double worst = 1.0;
    std::string where;
    for (const auto& cp : schedule) {
        if (cp.step >= tr.states.size()) {
            auto& c = rep.add(name, false, "missing", "1-1e-10", "checkpoint " + cp.label + " beyond trajectory");
            c.counterexample = snapshot(tr.final_state);
            return rep;
        }
        double f = fidelity(tr.states[cp.step].work.amps, cp.expected.amps);
        if (f < worst) {
            worst = f;
            where = cp.label + " at t=" + std::to_string(cp.step);
        }
    }
    auto& c = rep.add(name, !schedule.empty() && worst >= 1 - 1e-10, "min_fidelity=" + fmt_double(worst), "1-1e-10",
                      std::to_string(schedule.size()) + " checkpoints" + (where.empty() ? "" : ", worst " + where));
    if (!c.pass && !where.empty()) c.counterexample = where;
    return rep;
}

// Work state after every completed oscillation: one round more after each
// gate-applying sweep.
inline std::vector<WorkCheckpoint> oscillation_schedule(const Trajectory& tr, const CircuitProgram& c,
                                                        const DenseState& w) {
    std::vector<WorkCheckpoint> out{{0, w, "start"}};
    const auto& ends = tr.marker("oscillation_end");
    const auto& sweeps = tr.marker("gate_sweep");
    for (auto s : ends) {
        auto rounds = std::count_if(sweeps.begin(), sweeps.end(), [s](std::uint64_t g) { return g < s; });
        int r = static_cast<int>(rounds % c.k);
        std::uint64_t powers = static_cast<std::uint64_t>(rounds) / c.k;
        auto e = apply_rounds(apply_circuit_power(w, c, powers), c, r);
        out.push_back({s, e, "oscillation end"});
    }
    return out;
}

inline std::vector<WorkCheckpoint> period_schedule(const CircuitProgram& c, const DenseState& w, std::uint64_t period,
                                                   std::uint64_t x_max) {
    std::vector<WorkCheckpoint> out;
    DenseState cur = w;
    for (std::uint64_t x = 0; x <= x_max; ++x) {
        out.push_back({x * period, cur, "x=" + std::to_string(x)});
        cur = apply_circuit_power(cur, c, 1);
    }
    return out;
}

// Checks work = U^k w whenever the pointer reports a finished increment (C)
// and the clock reads k.
class ClockPowerChecker {
public:
    ClockPowerChecker(CircuitProgram c, DenseState w) : c_(std::move(c)), powers_{std::move(w)} {}

    void observe(std::uint64_t step, const ChainState& s) {
        const auto& cfg = s.config;
        std::size_t site = 0;
        for (std::size_t i = 1; i <= cfg.length(); ++i)
            if (cfg.at(i).cp == Ptr::C) site = i;
        if (!site) return;
        auto k = clock_value(s);
        if (!k) {
            fail(step, s, "clock unreadable");
            return;
        }
        while (powers_.size() <= *k) powers_.push_back(apply_circuit_power(powers_.back(), c_, 1));
        double f = fidelity(s.work.amps, powers_[*k].amps);
        checked.push_back({step, *k});
        if (site != cfg.length()) fail(step, s, "pointer C at site " + std::to_string(site));
        if (f < worst) worst = f;
        if (f < 1 - 1e-10) fail(step, s, "fidelity " + fmt_double(f) + " at k=" + std::to_string(*k));
    }

    VerificationReport report(const std::string& name = "clock_powers") const {
        VerificationReport rep;
        std::uint64_t kmax = 0;
        for (auto [t, k] : checked) kmax = std::max(kmax, k);
        auto& c = rep.add(name, failure.empty() && !checked.empty(), "min_fidelity=" + fmt_double(worst), "1-1e-10",
                          std::to_string(checked.size()) + " states checked, k up to " + std::to_string(kmax) +
                              (failure.empty() ? "" : "; " + failure));
        c.counterexample = counterexample;
        return rep;
    }

    std::vector<std::pair<std::uint64_t, std::uint64_t>> checked;  // (step, k)
    double worst = 1.0;
    std::string failure;
    std::string counterexample;

private:
    void fail(std::uint64_t step, const ChainState& s, const std::string& why) {
        if (!failure.empty()) return;
        failure = "step " + std::to_string(step) + ": " + why;
        counterexample = snapshot(s);
    }

    CircuitProgram c_;
    std::vector<DenseState> powers_;
};

inline VerificationReport check_clock_powers(const Trajectory& tr, const CircuitProgram& c, const DenseState& w) {
    ClockPowerChecker chk(c, w);
    for (std::size_t t = 0; t < tr.states.size(); ++t) chk.observe(t, tr.states[t]);
    return chk.report();
}

// Bare clock chain: turn sentinels, an empty program, clock bits `value`
// and the pointer L at the right end (start of an increment).
inline ChainState clock_chain(std::size_t l_bits, std::uint64_t value, Tier tier = Tier::III) {
    const std::size_t L = l_bits + 1;
    ChainState s;
    s.tier = tier;
    s.config.regs = RegisterSet::of_tier(tier);
    s.config.sites.assign(L, Site{});
    auto& st = s.config.sites;
    st[0].p = Prog::Turn;
    st[L - 2].p = Prog::Turn;
    st[L - 1].p = Prog::Turn;
    for (std::size_t i = 1; i < L; ++i) st[i].c = bit_of((value >> (L - 1 - i)) & 1);
    st[L - 1].cp = Ptr::L;
    if (tier == Tier::IV)
        for (std::size_t i = 1; i < L; ++i) st[i].c2 = i == 1 ? Bit::Zero : Bit::One;
    s.work.amps = {1.0};
    return s;
}

struct SuiteOptions {
    std::vector<std::string> drop_rules;
    std::uint64_t budget = 0;  // 0 picks a per-suite default
    std::size_t l_bits = 4;
};

// Dropped labels apply to whichever tiers carry them; a label no tier
// knows is an input error.
inline RuleTable table_for(Tier t, const SuiteOptions& opt) {
    std::vector<std::string> here;
    for (const auto& d : opt.drop_rules) {
        if (rule_set(t).find(d)) {
            here.push_back(d);
            continue;
        }
        bool known = false;
        for (Tier u : {Tier::I, Tier::II, Tier::III, Tier::IV}) known |= rule_set(u).find(d) != nullptr;
        if (!known) throw Error("no rule labelled '" + d + "'");
    }
    return rule_set(t).without(here);
}

inline VerificationReport check_clock_counter(std::size_t l_bits, std::uint64_t sweep_limit, const SuiteOptions& opt = {}) {
    VerificationReport rep;
    const std::string name = "clock_counter_L" + std::to_string(l_bits);
    const RuleTable table = table_for(Tier::III, opt);
    const std::uint64_t top = l_bits >= 63 ? ~0ull : (1ull << l_bits) - 1;
    const std::uint64_t last = std::min(top, sweep_limit);
    ChainState cur = clock_chain(l_bits, 0);
    const std::size_t L = l_bits + 1;
    std::uint64_t increments = 0, steps = 0;
    try {
        for (std::uint64_t v = 0; v <= last; ++v) {
            if (clock_value(cur) != v) {
                auto& c = rep.add(name, false, "value=" + std::to_string(clock_value(cur).value_or(~0ull)), "exact",
                                  "expected " + std::to_string(v));
                c.counterexample = snapshot(cur);
                return rep;
            }
            RunOptions ro;
            ro.table = &table;
            ro.observer = [](std::uint64_t, const ChainState&, const Match& m) {
                return events_for(m.label()).empty() || events_for(m.label()).front() != "clock_done";
            };
            auto tr = run(cur, StepBudget{4 * L}, ro);
            steps += tr.length;
            auto uog = verify_uog(tr, UogOptions{&table, std::nullopt, true});
            if (!uog.clean()) {
                auto& c = rep.add(name, false, "uog", "clean", uog.violations.front());
                c.counterexample = snapshot(cur);
                return rep;
            }
            if (v == top) {
                // Saturation: L walks to the left end and stops.
                bool parked = tr.status == RunStatus::DeadEnd && tr.final_state.config.at(2).cp == Ptr::L &&
                              tr.marker("rule:17").size() == l_bits - 1 && tr.length == l_bits - 1;
                auto& c = rep.add(name + "_saturation", parked, "rule17=" + std::to_string(tr.marker("rule:17").size()),
                                  std::to_string(l_bits - 1), "all-ones input, status " + std::string(status_name(tr.status)));
                if (!parked) c.counterexample = snapshot(tr.final_state);
                break;
            }
            const auto expect = v + 1;
            if (tr.status != RunStatus::Stopped || clock_value(tr.final_state) != expect ||
                tr.final_state.config.at(L).cp != Ptr::C) {
                auto& c = rep.add(name, false, "value=" + std::to_string(clock_value(tr.final_state).value_or(~0ull)),
                                  "exact", "increment of " + std::to_string(v) + " ended with status " +
                                               std::string(status_name(tr.status)));
                c.counterexample = snapshot(tr.final_state);
                return rep;
            }
            // Even values finish in one step through the rule-15 path.
            if (v % 2 == 0 && !(tr.length == 1 && tr.marker("rule:15").size() == 1)) {
                auto& c = rep.add(name, false, "path", "rule 15", "even value " + std::to_string(v) + " took " +
                                                                     std::to_string(tr.length) + " steps");
                c.counterexample = snapshot(cur);
                return rep;
            }
            ++increments;
            cur = tr.final_state;
            cur.config.at(L).cp = Ptr::L;
        }
    } catch (const Error& e) {
        auto& c = rep.add(name, false, "error", "exact", e.what());
        c.counterexample = snapshot(cur);
        return rep;
    }
    rep.add(name, true, "increments=" + std::to_string(increments), "exact",
            "values 0.." + std::to_string(last) + ", " + std::to_string(steps) + " steps");
    return rep;
}

enum class Verdict : std::uint8_t { Mismatch, Match, None };

struct ComparatorRun {
    Verdict verdict = Verdict::None;
    std::uint64_t steps = 0;
    bool uog_clean = false;
    std::string note;
};

// Bare comparator chain: clock k, target row t, pointer C at the right end.
inline ChainState comparator_chain(std::size_t l_bits, std::uint64_t k, const std::vector<Bit>& target) {
    ChainState s = clock_chain(l_bits, k, Tier::IV);
    const std::size_t L = l_bits + 1;
    s.config.at(L).cp = Ptr::C;
    for (std::size_t i = 0; i < L; ++i) s.config.sites[i].t = target[i];
    return s;
}

inline ComparatorRun run_comparator(const ChainState& start, const RuleTable& table) {
    ComparatorRun out;
    RunOptions ro;
    ro.table = &table;
    ro.observer = [](std::uint64_t, const ChainState&, const Match& m) { return m.label() != "21" && m.label() != "22"; };
    auto tr = run(start, StepBudget{16 * start.config.length()}, ro);
    out.steps = tr.length;
    out.uog_clean = verify_uog(tr, UogOptions{&table, std::nullopt, true}).clean();
    const auto n_mis = tr.marker("comparator_mismatch").size(), n_match = tr.marker("comparator_match").size();
    if (tr.status == RunStatus::Stopped && !tr.steps.empty()) {
        const auto& last = tr.steps.back().label();
        if (last == "21" && n_mis == 1 && n_match == 0) out.verdict = Verdict::Mismatch;
        if (last == "22" && n_match == 1 && n_mis == 0) out.verdict = Verdict::Match;
    }
    if (out.verdict == Verdict::None) out.note = "ended " + std::string(status_name(tr.status)) + "\n" + snapshot(tr.final_state);
    return out;
}

inline VerificationReport check_comparator(std::size_t l_bits, const SuiteOptions& opt = {}) {
    VerificationReport rep;
    const std::string name = "comparator_L" + std::to_string(l_bits);
    const RuleTable table = table_for(Tier::IV, opt);
    const std::size_t L = l_bits + 1;
    const std::uint64_t top = 1ull << l_bits;
    std::uint64_t runs = 0, matches = 0;
    try {
        for (std::uint64_t x = 0; x < top; ++x) {
            // Every legal • placement for x, plus x = 0 as a plain zero row.
            std::vector<std::vector<Bit>> rows;
            if (x == 0) {
                rows.emplace_back(L, Bit::Zero);
                rows.back()[0] = Bit::Bullet;
            } else {
                for (int off = 1; static_cast<std::size_t>(bit_length(x) + off) <= L; ++off) rows.push_back(target_row(L, x, off));
            }
            for (const auto& row : rows)
                for (std::uint64_t k = 0; k < top; ++k) {
                    auto r = run_comparator(comparator_chain(l_bits, k, row), table);
                    ++runs;
                    Verdict want = k == x ? Verdict::Match : Verdict::Mismatch;
                    if (r.verdict != want || !r.uog_clean) {
                        ChainState s = comparator_chain(l_bits, k, row);
                        auto& c = rep.add(name, false, "k=" + std::to_string(k) + ",x=" + std::to_string(x), "exact",
                                          std::string(r.uog_clean ? "wrong verdict" : "not UOG") + " " + r.note);
                        c.counterexample = snapshot(s);
                        return rep;
                    }
                    matches += want == Verdict::Match;
                }
        }
    } catch (const Error& e) {
        rep.add(name, false, "error", "exact", e.what());
        return rep;
    }
    rep.add(name, true, "runs=" + std::to_string(runs), "exact",
            std::to_string(matches) + " equal pairs gave R×, the rest CX");
    return rep;
}

inline VerificationReport cross_check_backends(const BuildSpec& spec, std::uint64_t steps, const SuiteOptions& opt = {},
                                               const std::string& name = "backends") {
    VerificationReport rep;
    const RuleTable table = table_for(spec.tier, opt);
    ChainState h = build_initial(spec);
    if (h.config.length() > 16) {
        rep.add(name, false, "L=" + std::to_string(h.config.length()), "L<=16", "chain too long for the dense backend");
        return rep;
    }
    DenseChainState d = to_dense(h);
    double worst = 0;
    std::uint64_t t = 0;
    try {
        for (; t < steps; ++t) {
            auto mh = applicable(table, h, Direction::Forward);
            auto md = applicable(table, DenseView{d}, Direction::Forward);
            bool same = mh.size() == md.size();
            for (std::size_t i = 0; same && i < mh.size(); ++i)
                same = mh[i].rule == md[i].rule && mh[i].site == md[i].site && mh[i].bind == md[i].bind;
            if (!same) {
                auto& c = rep.add(name, false, "step=" + std::to_string(t), "identical",
                                  "matches differ: hybrid " + describe(mh) + " dense " + describe(md));
                c.counterexample = snapshot(h);
                return rep;
            }
            if (mh.size() != 1) break;
            h = apply(h, mh.front());
            d = apply(d, md.front());
            double diff = max_abs_diff(expand_data(h), d.data);
            worst = std::max(worst, diff);
            if (!same_classical_registers(h.config, d.config) || diff > 1e-10) {
                auto& c = rep.add(name, false, "max_diff=" + fmt_double(diff), "1e-10",
                                  "divergence after step " + std::to_string(t + 1));
                c.counterexample = snapshot(h);
                return rep;
            }
        }
    } catch (const Error& e) {
        auto& c = rep.add(name, false, "error", "1e-10", e.what());
        c.counterexample = snapshot(h);
        return rep;
    }
    rep.add(name, true, "max_diff=" + fmt_double(worst), "1e-10", std::to_string(t) + " steps compared");
    return rep;
}

struct MeasuredState {
    std::size_t m = 0;
    double tau = 0;
    ChainState state;
    std::optional<std::uint64_t> clock;
    std::optional<std::uint64_t> clock2;
};

// One simulated clock readout: sample a position of the walk over the
// trajectory states and return the state found there.
inline MeasuredState simulate_measurement(const WalkLine& line, const std::vector<ChainState>& positions, double tau,
                                          std::uint64_t seed, std::uint64_t trial = 0, std::size_t start = 0) {
    if (positions.size() != line.size())
        throw Error("walk has " + std::to_string(line.size()) + " positions, trajectory " + std::to_string(positions.size()));
    auto o = sample_position(line, tau, seed, trial, start);
    const auto& s = positions[o.m];
    return {o.m, o.tau, s, clock_value(s), clock2_value(s)};
}

// States reached by stepping backwards from `s` until no reverse rule
// applies, nearest first.
inline std::vector<ChainState> reverse_tail(const ChainState& s, const RuleTable& table, std::size_t limit) {
    std::vector<ChainState> out;
    ChainState cur = s;
    while (out.size() < limit) {
        auto rev = applicable(table, cur, Direction::Reverse);
        if (rev.empty()) break;
        if (rev.size() > 1) throw Ambiguous("reverse tail branches: " + describe(rev), rev);
        cur = apply(cur, rev.front());
        out.push_back(cur);
    }
    return out;
}

inline std::uint64_t default_budget(const BuildSpec& spec) {
    const auto n = static_cast<std::uint64_t>(spec.circuit.n), k = static_cast<std::uint64_t>(spec.circuit.k);
    switch (spec.tier) {
    case Tier::I: return predicted_T_I(n, k) + 1;
    case Tier::II: return 2 * predicted_T_II(n, k);
    default: return 100000;
    }
}

inline VerificationReport suite_uog(const BuildSpec& spec, const SuiteOptions& opt) {
    VerificationReport rep;
    const RuleTable table = table_for(spec.tier, opt);
    const std::uint64_t budget = opt.budget ? opt.budget : default_budget(spec);
    ChainState s0 = build_initial(spec);
    const bool small = spec.tier <= Tier::II;
    RunOptions ro;
    ro.table = &table;
    ro.keep_states = small;
    ro.keep_steps = small;
    ro.check_uog = !small;
    try {
        auto tr = run(s0, StepBudget{budget}, ro);
        UogOptions uo{&table, std::nullopt, true};
        if (spec.tier == Tier::II) uo.period = predicted_T_II(spec.circuit.n, spec.circuit.k);
        auto u = verify_uog(tr, uo);
        // A dead end is only legal where the construction ends: after T_I
        // steps at tier I, never at tier II, at a saturated clock above.
        std::string premature;
        if (tr.status == RunStatus::DeadEnd) {
            const auto& fin = tr.final_state;
            const std::size_t L = fin.config.length();
            bool saturated = false;
            if (spec.tier == Tier::III) saturated = clock_value(fin) == (1ull << (L - 1)) - 1;
            if (spec.tier == Tier::IV) saturated = clock2_value(fin) == (1ull << (L - 1)) - 1;
            if (spec.tier == Tier::I && tr.length != predicted_T_I(spec.circuit.n, spec.circuit.k))
                premature = "dead end at step " + std::to_string(tr.length);
            if (spec.tier == Tier::II || (spec.tier >= Tier::III && !saturated))
                premature = "dead end at step " + std::to_string(tr.length);
            if (!premature.empty()) u.violations.push_back(premature);
        }
        auto& c = rep.add("uog", u.clean(), "violations=" + std::to_string(u.violations.size()), "0",
                          std::to_string(u.states_checked) + " states, status " + std::string(status_name(tr.status)) +
                              (u.clean() ? "" : "; " + u.violations.front()));
        if (!u.clean()) c.counterexample = snapshot(tr.final_state);
    } catch (const Ambiguous& e) {
        rep.add("uog", false, "ambiguous", "0", e.what());
    } catch (const Error& e) {
        rep.add("uog", false, "error", "0", e.what());
    }
    return rep;
}

inline VerificationReport suite_oracle(const BuildSpec& spec, const SuiteOptions& opt) {
    VerificationReport rep;
    const RuleTable table = table_for(spec.tier, opt);
    ChainState s0 = build_initial(spec);
    const auto& c = spec.circuit;
    try {
        if (spec.tier <= Tier::II) {
            const std::uint64_t budget = opt.budget ? opt.budget : default_budget(spec);
            RunOptions ro;
            ro.table = &table;
            auto tr = run(s0, StepBudget{budget}, ro);
            if (spec.tier == Tier::I) {
                rep.merge(check_work_oracle(tr, oscillation_schedule(tr, c, spec.work)));
                bool dead = tr.status == RunStatus::DeadEnd;
                auto T = predicted_T_I(c.n, c.k);
                rep.add("step_count", dead && tr.length == T, "steps=" + std::to_string(tr.length), std::to_string(T));
            } else {
                const auto period = predicted_T_II(c.n, c.k);
                rep.merge(check_work_oracle(tr, period_schedule(c, spec.work, period, tr.length / period)));
            }
        } else {
            const std::uint64_t budget = opt.budget ? opt.budget : default_budget(spec);
            ClockPowerChecker chk(c, spec.work);
            std::optional<std::uint64_t> frozen_at;
            std::uint64_t work_hash = 0, clock_hash = 0;
            bool freeze_ok = true;
            auto hash_work = [](const ChainState& s) {
                std::uint64_t h = 1469598103934665603ull;
                for (auto a : s.work.amps)
                    for (double v : {a.real(), a.imag()}) {
                        std::uint64_t bits;
                        std::memcpy(&bits, &v, sizeof bits);
                        h = (h ^ bits) * 1099511628211ull;
                    }
                return h;
            };
            RunOptions ro;
            ro.table = &table;
            ro.keep_states = false;
            ro.keep_steps = false;
            ro.observer = [&](std::uint64_t t, const ChainState& s, const Match& m) {
                if (!frozen_at) chk.observe(t, s);
                if (m.label() == "30") {
                    frozen_at = t;
                    work_hash = hash_work(s);
                    clock_hash = clock_value(s).value_or(~0ull);
                } else if (frozen_at && (hash_work(s) != work_hash || clock_value(s).value_or(~0ull) != clock_hash)) {
                    freeze_ok = false;
                }
                return true;
            };
            chk.observe(0, s0);
            auto tr = run(s0, StepBudget{budget}, ro);
            rep.merge(chk.report());
            if (spec.tier == Tier::IV) {
                auto n = tr.marker("comparator_match").size();
                bool pass = n <= 1 && freeze_ok;
                rep.add("freeze", pass, "matches=" + std::to_string(n) + (frozen_at ? ",at=" + std::to_string(*frozen_at) : ""),
                        "data,clock constant", frozen_at ? "checked " + std::to_string(tr.length - *frozen_at) + " steps after R×"
                                                         : "no R× within budget");
            }
        }
    } catch (const Error& e) {
        rep.add("oracle", false, "error", "1-1e-10", e.what());
    }
    return rep;
}

inline VerificationReport run_suite(const BuildSpec& spec, const std::string& suite, const SuiteOptions& opt = {}) {
    VerificationReport rep;
    bool any = false;
    auto want = [&](const char* s) {
        bool w = suite == s || suite == "all";
        any |= w;
        return w;
    };
    if (want("uog")) rep.merge(suite_uog(spec, opt));
    if (want("oracle")) rep.merge(suite_oracle(spec, opt));
    if (want("clock")) rep.merge(check_clock_counter(opt.l_bits, ~0ull, opt));
    if (want("comparator")) rep.merge(check_comparator(opt.l_bits, opt));
    if (want("backends")) {
        std::uint64_t steps = opt.budget ? opt.budget : default_budget(spec);
        if (spec.tier >= Tier::III) steps = std::min<std::uint64_t>(steps, 2000);
        rep.merge(cross_check_backends(spec, steps, opt));
    }
    if (!any) throw Error("unknown suite '" + suite + "' (uog, oracle, clock, comparator, backends, all)");
    return rep;
}

} // namespace hqca
