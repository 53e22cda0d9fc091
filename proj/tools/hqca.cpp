// Command-line driver: compile, run, trace, walk, verify, rules.
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hqca/hqca.hpp"

namespace fs = std::filesystem;
using namespace hqca;

namespace {

constexpr int kOk = 0, kFailed = 1, kInput = 2;

struct InputError : Error {
    using Error::Error;
};

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read instance file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_instance(ss.str());
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

fs::path out_dir() {
    const char* env = std::getenv("HQCA_OUT_DIR");
    fs::path p = env && *env ? fs::path(env) : fs::current_path();
    fs::create_directories(p);
    return p;
}

// Relative output names land in the output directory.
fs::path out_path(const std::string& name) {
    fs::path p(name);
    return p.is_absolute() ? p : out_dir() / p;
}

std::string clock_text(const ChainState& s) {
    if (s.tier < Tier::III) return "-";
    auto k = clock_value(s);
    return k ? std::to_string(*k) : "?";
}

ChainState initial_state(const Instance& inst) {
    ChainState s = build_initial(inst.spec);
    auto v = validate_config(s);
    if (!v.ok()) throw InputError("invalid start state: " + v.violations.front());
    return s;
}

int cmd_compile(const std::string& path) {
    auto inst = load_instance(path);
    auto s = initial_state(inst);
    std::cout << "construction " << tier_name(inst.spec.tier) << " n=" << inst.spec.circuit.n
              << " k=" << inst.spec.circuit.k << " L=" << s.config.length() << "\n";
    std::cout << snapshot(s) << "\n";
    auto a = alphabet_dimension(inst.spec.tier);
    std::cout << "dimension";
    for (const auto& r : a.registers) std::cout << " " << register_name(r.reg) << "=" << r.size;
    std::cout << " total=" << a.total;
    if (a.claimed) std::cout << " stated=" << *a.claimed << (a.matches_claim() ? " (agrees)" : " (DIFFERS)");
    std::cout << "\n";
    for (const auto& w : a.warnings) std::cout << "warning: " << w << "\n";
    return kOk;
}

struct RunArgs {
    std::string instance;
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> snapshot_every;
    std::string trace;
    std::vector<std::string> drop;
};

int cmd_run(const RunArgs& a) {
    auto inst = load_instance(a.instance);
    auto s0 = initial_state(inst);
    const auto budget = a.budget ? *a.budget : inst.budget.value_or(default_budget(inst.spec));
    const auto snap = a.snapshot_every ? *a.snapshot_every : inst.snapshot_every.value_or(0);
    const RuleTable table = rule_set(inst.spec.tier).without(a.drop);

    std::ofstream trace;
    std::string trace_name = a.trace;
    if (trace_name.empty() && std::getenv("HQCA_OUT_DIR"))
        trace_name = fs::path(a.instance).stem().string() + ".trace";
    if (!trace_name.empty()) {
        auto p = out_path(trace_name);
        trace.open(p);
        if (!trace) throw InputError("cannot write trace '" + p.string() + "'");
    }
    RunOptions ro;
    ro.table = &table;
    ro.keep_states = false;
    ro.keep_steps = false;
    ro.trace = trace.is_open() ? &trace : nullptr;
    ro.trace_snapshot_every = snap;
    Trajectory tr;
    try {
        tr = run(s0, StepBudget{budget}, ro);
    } catch (const Ambiguous& e) {
        std::cerr << "ambiguous: " << e.what() << "\n";
        return kFailed;
    } catch (const ConstructionViolation& e) {
        std::cerr << "construction violation: " << e.what() << "\n";
        return kFailed;
    }
    std::cout << "steps=" << tr.length << " status=" << status_name(tr.status) << " clock=" << clock_text(tr.final_state)
              << "\n";
    if (tr.final_state.config == s0.config) std::cout << "config equals start config\n";
    for (const char* ev : {"comparator_match", "comparator_mismatch", "clock_done", "application_start",
                           "oscillation_end", "reset"}) {
        const auto& m = tr.marker(ev);
        if (m.empty()) continue;
        std::cout << "marker " << ev << " count=" << m.size() << " first=" << m.front() << "\n";
    }
    for (auto t : tr.marker("comparator_match")) std::cout << "R× at step " << t << "\n";
    return kOk;
}

int cmd_trace(const std::string& path, const std::vector<std::uint64_t>& at, std::optional<std::uint64_t> budget) {
    auto inst = load_instance(path);
    auto s0 = initial_state(inst);
    std::uint64_t last = 0;
    for (auto t : at) last = std::max(last, t);
    std::vector<std::uint64_t> want(at);
    std::sort(want.begin(), want.end());
    auto print = [](std::uint64_t t, const ChainState& s) {
        std::cout << "t=" << t << " clock=" << clock_text(s) << "\n" << snapshot(s) << "\n\n";
    };
    std::size_t next = 0;
    while (next < want.size() && want[next] == 0) print(0, s0), ++next;
    RunOptions ro;
    ro.keep_states = false;
    ro.keep_steps = false;
    ro.observer = [&](std::uint64_t t, const ChainState& s, const Match& m) {
        while (next < want.size() && want[next] == t) {
            std::cout << "rule " << describe(m) << "\n";
            print(t, s);
            ++next;
        }
        return next < want.size();
    };
    auto tr = run(s0, StepBudget{budget.value_or(last)}, ro);
    if (next < want.size())
        std::cout << "run ended at t=" << tr.length << " (" << status_name(tr.status) << ") before t=" << want[next] << "\n";
    return kOk;
}

struct WalkArgs {
    std::string instance;
    std::optional<std::size_t> line;
    std::optional<double> tau, tau_star;
    std::optional<std::uint64_t> samples, seed, budget;
    double fraction = 0.5;
    std::uint64_t trials = 1000;
    std::string out;
};

int cmd_walk(const WalkArgs& a) {
    std::optional<Instance> inst;
    if (!a.instance.empty()) inst = load_instance(a.instance);
    if (!a.line && !inst) throw InputError("walk needs an instance file or --line");
    const double tau = a.tau ? *a.tau : inst ? inst->tau.value_or(0.0) : 0.0;
    const std::uint64_t samples = a.samples ? *a.samples : inst ? inst->samples.value_or(10000) : 10000;
    const std::uint64_t seed = a.seed ? *a.seed : inst ? inst->seed.value_or(1) : 1;
    if (samples == 0) throw InputError("--samples must be at least 1");
    if (tau < 0) throw InputError("--tau must be nonnegative");
    if (a.fraction < 0 || a.fraction > 1) throw InputError("--fraction must lie in [0, 1]");

    // Positions of the walk: the instance trajectory, preceded at tier IV by
    // the reverse tail of the start state so the line starts at a true end.
    std::vector<ChainState> positions;
    std::size_t start = 0;
    std::optional<std::uint64_t> first_match;
    if (inst && !a.line) {
        auto s0 = initial_state(*inst);
        const auto& table = rule_set(inst->spec.tier);
        auto tail = reverse_tail(s0, table, 4 * s0.config.length());
        for (auto it = tail.rbegin(); it != tail.rend(); ++it) positions.push_back(*it);
        start = positions.size();
        const auto budget = a.budget ? *a.budget : inst->budget.value_or(default_budget(inst->spec));
        RunOptions ro;
        ro.keep_steps = false;
        auto tr = run(s0, StepBudget{budget}, ro);
        positions.insert(positions.end(), tr.states.begin(), tr.states.end());
        if (!tr.marker("comparator_match").empty()) first_match = start + tr.marker("comparator_match").front();
        std::cout << "trajectory steps=" << tr.length << " status=" << status_name(tr.status)
                  << " reverse_tail=" << tail.size() << "\n";
    }
    const std::size_t l = a.line ? *a.line : positions.size();
    if (l < 1) throw InputError("--line must be at least 1");
    const double tau_star = a.tau_star ? *a.tau_star : inst ? inst->tau_star.value_or(100.0 * l) : 100.0 * l;
    if (tau_star < 0) throw InputError("--tau-star must be nonnegative");

    WalkLine line(l);
    auto p_tau = probabilities(line.evolve(tau, start));
    auto avg = time_averaged_distribution(line, tau_star, samples, seed, start);
    auto limit = l >= 2 ? (start ? limiting_distribution(line, start) : limiting_distribution(line)) : std::vector<double>{1.0};
    auto succ = success_probability(line, a.fraction, tau_star, samples, seed ^ 0x9e3779b97f4a7c15ull, start);

    std::cout << std::setprecision(8);
    std::cout << "l=" << l << " start=" << start << " tau=" << tau << " tau_star=" << tau_star << " samples=" << samples
              << " seed=" << seed << "\n";
    std::cout << "tv_time_average_vs_limit=" << total_variation(avg.p, limit) << "\n";
    std::cout << "p_star=" << succ.p_star << " stderr=" << succ.stderr_ << " fraction=" << a.fraction
              << " deficit=" << succ.deficit << "\n";
    if (l <= 16) {
        std::cout << "m p_tau p_avg pi\n";
        for (std::size_t m = 0; m < l; ++m)
            std::cout << m << " " << p_tau[m] << " " << avg.p[m] << " " << limit[m] << "\n";
    }
    if (!a.out.empty() || std::getenv("HQCA_OUT_DIR")) {
        auto base = a.out.empty() ? std::string("walk") : a.out;
        for (auto [suffix, dist] : {std::pair{".p_tau", &p_tau}, {".p_avg", &avg.p}, {".pi", &limit}}) {
            std::ofstream f(out_path(base + suffix));
            f << std::setprecision(12);
            write_distribution(f, *dist);
        }
    }

    // Clock readouts at uniformly random times, counted against the target.
    if (inst && !a.line && inst->spec.tier == Tier::IV) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < a.trials; ++i) {
            double t = tau_star * counter_uniform(seed + 1, i);
            auto ms = simulate_measurement(line, positions, t, seed + 2, i, start);
            hits += ms.clock == inst->spec.target_x && first_match && ms.m >= *first_match;
        }
        double expect = 0;
        if (first_match)
            for (std::size_t m = *first_match; m < l; ++m) expect += avg.p[m];
        double frozen = first_match ? static_cast<double>(l - *first_match) / static_cast<double>(l) : 0.0;
        std::cout << "readout target=" << inst->spec.target_x << " trials=" << a.trials
                  << " hit_rate=" << static_cast<double>(hits) / static_cast<double>(a.trials)
                  << " expected=" << expect << " frozen_fraction=" << frozen << "\n";
    }
    return kOk;
}

struct VerifyArgs {
    std::string instance;
    std::string suite = "all";
    std::vector<std::string> drop;
    std::size_t l_bits = 4;
    std::optional<std::uint64_t> budget;
};

int cmd_verify(const VerifyArgs& a) {
    SuiteOptions opt;
    opt.drop_rules = a.drop;
    opt.l_bits = a.l_bits;
    const bool standalone = a.suite == "clock" || a.suite == "comparator";
    BuildSpec spec;
    if (!a.instance.empty()) {
        auto inst = load_instance(a.instance);
        initial_state(inst);
        spec = inst.spec;
        opt.budget = a.budget ? *a.budget : inst.budget.value_or(0);
    } else if (!standalone) {
        throw InputError("suite '" + a.suite + "' needs an instance file");
    }
    if (a.l_bits < 2 || a.l_bits > 20) throw InputError("--l-bits must lie in 2..20");
    VerificationReport rep;
    try {
        rep = run_suite(spec, a.suite, opt);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
    std::cout << rep.text();
    std::cout << (rep.ok() ? "PASS" : "FAIL") << " " << a.suite << "\n";
    return rep.ok() ? kOk : kFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian QCA simulator and verifier"};
    app.require_subcommand(1);

    std::string compile_path;
    auto* compile = app.add_subcommand("compile", "Print the start state and the dimension audit");
    compile->add_option("instance", compile_path, "Instance file")->required();

    RunArgs ra;
    auto* runc = app.add_subcommand("run", "Evolve and stream a trace");
    runc->add_option("instance", ra.instance, "Instance file")->required();
    runc->add_option("--budget", ra.budget, "Maximum number of steps");
    runc->add_option("--snapshot-every", ra.snapshot_every, "Full snapshot interval inside the trace");
    runc->add_option("--trace", ra.trace, "Trace file (relative names go to HQCA_OUT_DIR)");
    runc->add_option("--drop-rule", ra.drop, "Remove a rule label from the table");

    std::string trace_path;
    std::vector<std::uint64_t> trace_at;
    std::optional<std::uint64_t> trace_budget;
    auto* tracec = app.add_subcommand("trace", "Print snapshots at chosen steps");
    tracec->add_option("instance", trace_path, "Instance file")->required();
    tracec->add_option("--at", trace_at, "Steps to print")->required()->delimiter(',');
    tracec->add_option("--budget", trace_budget, "Maximum number of steps");

    WalkArgs wa;
    auto* walk = app.add_subcommand("walk", "Quantum walk distributions and success estimate");
    walk->add_option("instance", wa.instance, "Instance file");
    walk->add_option("--line", wa.line, "Walk on a bare line of this length");
    walk->add_option("--tau", wa.tau, "Evolution time for p_tau");
    walk->add_option("--tau-star", wa.tau_star, "Upper end of the uniform time window");
    walk->add_option("--samples", wa.samples, "Time samples for the average");
    walk->add_option("--seed", wa.seed, "Random seed");
    walk->add_option("--fraction", wa.fraction, "Far-end fraction F for p*");
    walk->add_option("--trials", wa.trials, "Simulated clock readouts (construction IV)");
    walk->add_option("--budget", wa.budget, "Trajectory step budget");
    walk->add_option("--out", wa.out, "Base name for distribution files");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("instance", va.instance, "Instance file");
    verify->add_option("--suite", va.suite, "uog | oracle | clock | comparator | backends | all");
    verify->add_option("--drop-rule", va.drop, "Remove a rule label from the table");
    verify->add_option("--l-bits", va.l_bits, "Clock width for the clock and comparator suites");
    verify->add_option("--budget", va.budget, "Step budget for trajectory suites");

    std::string rules_tier = "IV";
    auto* rules = app.add_subcommand("rules", "Dump the rule table of a construction");
    rules->add_option("--construction", rules_tier, "I, II, III or IV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInput;
    }

    try {
        if (*compile) return cmd_compile(compile_path);
        if (*runc) return cmd_run(ra);
        if (*tracec) return cmd_trace(trace_path, trace_at, trace_budget);
        if (*walk) return cmd_walk(wa);
        if (*verify) return cmd_verify(va);
        if (*rules) {
            auto t = parse_tier(rules_tier);
            if (!t) throw InputError("construction must be I, II, III or IV");
            std::cout << dump_rules(rule_set(*t));
            return kOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kOk;
}
