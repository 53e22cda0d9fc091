#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <ostream>
#include <vector>

#include "hqca/chain.hpp"
#include "hqca/error.hpp"

namespace hqca {

// Counter-based uniform in [0, 1): the value for (seed, i) does not depend
// on how many values were drawn before, so sweeps can be split freely.
inline double counter_uniform(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed * 0xd1342543de82ef95ull + (i + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

enum class EvolveMethod : std::uint8_t { Auto, Direct, SineTransform };

// Path graph with H = -(shift + shift^dagger), diagonalized in closed form.
class WalkLine {
public:
    explicit WalkLine(std::size_t l) : l_(l) {
        if (l < 1) throw Error("walk line needs at least one position");
        const std::size_t period = 2 * (l + 1);
        sin_.resize(period);
        for (std::size_t j = 0; j < period; ++j) sin_[j] = std::sin(M_PI * static_cast<double>(j) / static_cast<double>(l + 1));
        norm_ = std::sqrt(2.0 / static_cast<double>(l + 1));
        lambda_.resize(l + 1);
        for (std::size_t k = 1; k <= l; ++k) lambda_[k] = -2.0 * std::cos(M_PI * static_cast<double>(k) / static_cast<double>(l + 1));
    }

    std::size_t size() const { return l_; }
    double eigenvalue(std::size_t k) const { return lambda_.at(k); }
    // k = 1..l, position m = 0..l-1.
    double eigenvector(std::size_t k, std::size_t m) const { return norm_ * sin_[(k * (m + 1)) % sin_.size()]; }

    std::vector<cplx> evolve(double tau, std::size_t start = 0, EvolveMethod how = EvolveMethod::Auto) const {
        if (tau < 0) throw Error("evolution time must be nonnegative");
        if (start >= l_) throw Error("start position outside the line");
        if (how == EvolveMethod::Auto) how = l_ > 64 ? EvolveMethod::SineTransform : EvolveMethod::Direct;
        std::vector<cplx> coef(l_);
        for (std::size_t k = 1; k <= l_; ++k)
            coef[k - 1] = eigenvector(k, start) * std::exp(cplx(0, -lambda_[k] * tau));
        if (how == EvolveMethod::Direct) {
            std::vector<cplx> out(l_, 0.0);
            for (std::size_t m = 0; m < l_; ++m) {
                cplx s = 0;
                for (std::size_t k = 1; k <= l_; ++k) s += coef[k - 1] * eigenvector(k, m);
                out[m] = s;
            }
            return out;
        }
        return sine_transform(coef);
    }

private:
    struct PlanDeleter {
        void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
    };
    struct BufferDeleter {
        void operator()(double* p) const { fftw_free(p); }
    };
    using Buffer = std::unique_ptr<double, BufferDeleter>;

    static Buffer buffer(std::size_t n) { return Buffer(fftw_alloc_real(n)); }

    // out_m = norm * sum_k coef_k sin(pi k (m+1)/(l+1)); FFTW's RODFT00 is
    // this sum with an extra factor of two.
    std::vector<cplx> sine_transform(const std::vector<cplx>& coef) const {
        const int n = static_cast<int>(l_);
        if (!plan_) {
            auto in = buffer(l_), out = buffer(l_);
            plan_ = std::shared_ptr<fftw_plan_s>(fftw_plan_r2r_1d(n, in.get(), out.get(), FFTW_RODFT00, FFTW_ESTIMATE),
                                                 PlanDeleter{});
        }
        auto in = buffer(l_), re = buffer(l_), im = buffer(l_);
        for (std::size_t k = 0; k < l_; ++k) in.get()[k] = coef[k].real();
        fftw_execute_r2r(plan_.get(), in.get(), re.get());
        for (std::size_t k = 0; k < l_; ++k) in.get()[k] = coef[k].imag();
        fftw_execute_r2r(plan_.get(), in.get(), im.get());
        std::vector<cplx> psi(l_);
        for (std::size_t m = 0; m < l_; ++m) psi[m] = 0.5 * norm_ * cplx(re.get()[m], im.get()[m]);
        return psi;
    }

    std::size_t l_;
    double norm_;
    std::vector<double> sin_;
    std::vector<double> lambda_;
    mutable std::shared_ptr<fftw_plan_s> plan_;
};

inline std::vector<cplx> evolve(const WalkLine& line, double tau, std::size_t start = 0) {
    return line.evolve(tau, start);
}

inline std::vector<double> probabilities(const std::vector<cplx>& amps) {
    std::vector<double> p(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) p[i] = std::norm(amps[i]);
    return p;
}

// Long-time limit for a walk started at an end of the line.
inline std::vector<double> limiting_distribution(const WalkLine& line) {
    const std::size_t l = line.size();
    if (l == 1) return {1.0};
    std::vector<double> p(l);
    for (std::size_t m = 0; m < l; ++m)
        p[m] = (2.0 + (m == 0) + (m == l - 1)) / (2.0 * static_cast<double>(l + 1));
    return p;
}

// Long-time limit from an arbitrary start: sum_k v_k(start)^2 v_k(m)^2.
inline std::vector<double> limiting_distribution(const WalkLine& line, std::size_t start) {
    std::vector<double> p(line.size(), 0.0);
    for (std::size_t k = 1; k <= line.size(); ++k) {
        double a = line.eigenvector(k, start);
        for (std::size_t m = 0; m < line.size(); ++m) p[m] += a * a * line.eigenvector(k, m) * line.eigenvector(k, m);
    }
    return p;
}

struct TimeAverage {
    std::vector<double> p;
    std::vector<double> stderr_;  // per-position standard error of the mean
    std::uint64_t samples = 0;
};

// Monte Carlo average of p_tau over tau uniform in [0, tau_star].
inline TimeAverage time_averaged_distribution(const WalkLine& line, double tau_star, std::uint64_t samples,
                                              std::uint64_t seed, std::size_t start = 0) {
    if (samples < 1) throw Error("need at least one sample");
    if (tau_star < 0) throw Error("tau_star must be nonnegative");
    const std::size_t l = line.size();
    std::vector<double> sum(l, 0.0), sq(l, 0.0);
    for (std::uint64_t j = 0; j < samples; ++j) {
        auto p = probabilities(line.evolve(tau_star * counter_uniform(seed, j), start));
        for (std::size_t m = 0; m < l; ++m) {
            sum[m] += p[m];
            sq[m] += p[m] * p[m];
        }
    }
    TimeAverage out;
    out.samples = samples;
    out.p.resize(l);
    out.stderr_.resize(l);
    const double n = static_cast<double>(samples);
    for (std::size_t m = 0; m < l; ++m) {
        out.p[m] = sum[m] / n;
        double var = samples > 1 ? std::max(0.0, (sq[m] - n * out.p[m] * out.p[m]) / (n - 1)) : 0.0;
        out.stderr_[m] = std::sqrt(var / n);
    }
    return out;
}

// Exact average over [0, tau_star] from the eigen-expansion; cubic in l.
inline std::vector<double> time_average_exact(const WalkLine& line, double tau_star, std::size_t start = 0) {
    const std::size_t l = line.size();
    std::vector<double> p(l, 0.0);
    std::vector<double> sinc((l + 1) * (l + 1), 1.0);
    for (std::size_t k = 1; k <= l; ++k)
        for (std::size_t q = 1; q <= l; ++q) {
            double x = (line.eigenvalue(k) - line.eigenvalue(q)) * tau_star;
            sinc[k * (l + 1) + q] = k == q || x == 0 ? 1.0 : std::sin(x) / x;
        }
    std::vector<double> a(l + 1);
    for (std::size_t m = 0; m < l; ++m) {
        for (std::size_t k = 1; k <= l; ++k) a[k] = line.eigenvector(k, start) * line.eigenvector(k, m);
        double s = 0;
        for (std::size_t k = 1; k <= l; ++k)
            for (std::size_t q = 1; q <= l; ++q) s += a[k] * a[q] * sinc[k * (l + 1) + q];
        p[m] = s;
    }
    return p;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

// Mass on positions m > (1 - F) l, the far end of the line.
inline double far_end_mass(const std::vector<double>& p, double fraction) {
    const double cut = (1.0 - fraction) * static_cast<double>(p.size());
    double s = 0;
    for (std::size_t m = 0; m < p.size(); ++m)
        if (static_cast<double>(m) > cut) s += p[m];
    return s;
}

struct SuccessEstimate {
    double p_star = 0;
    double stderr_ = 0;
    double deficit = 0;  // F - p*
};

inline SuccessEstimate success_probability(const WalkLine& line, double fraction, double tau_star,
                                           std::uint64_t samples, std::uint64_t seed, std::size_t start = 0) {
    if (fraction < 0 || fraction > 1) throw Error("fraction must lie in [0, 1]");
    if (samples < 1) throw Error("need at least one sample");
    const double cut = (1.0 - fraction) * static_cast<double>(line.size());
    double sum = 0, sq = 0;
    for (std::uint64_t j = 0; j < samples; ++j) {
        auto amps = line.evolve(tau_star * counter_uniform(seed, j), start);
        double s = 0;
        for (std::size_t m = 0; m < amps.size(); ++m)
            if (static_cast<double>(m) > cut) s += std::norm(amps[m]);
        sum += s;
        sq += s * s;
    }
    const double n = static_cast<double>(samples);
    SuccessEstimate e;
    e.p_star = sum / n;
    e.stderr_ = samples > 1 ? std::sqrt(std::max(0.0, (sq - n * e.p_star * e.p_star) / (n - 1)) / n) : 0.0;
    e.deficit = fraction - e.p_star;
    return e;
}

struct SweepRow {
    std::size_t l;
    double tau_star;
    double fraction;
    double tv;          // Monte Carlo average against the limit
    double tv_exact;    // exact time average against the limit
    double tv_noise;    // expected TV of the estimator from sampling alone
    SuccessEstimate success;
};

struct EnvelopeFit {
    std::vector<SweepRow> rows;
    double c = 0;              // tv ≈ c · l/τ*
    double c_residual = 0;     // max relative residual of that fit
    double c1 = 0, c2 = 0;     // F − p* ≈ c1 · l/τ* + c2/l
    double bound_slack = 0;    // min over rows of p* − (F − c1 l/τ* − c2/l), in standard errors
};

// Least squares for y ≈ c1 x + c2 z with both constants kept nonnegative.
inline std::pair<double, double> fit_two_nonneg(const std::vector<double>& x, const std::vector<double>& z,
                                                const std::vector<double>& y) {
    double xx = 0, xz = 0, zz = 0, xy = 0, zy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        xx += x[i] * x[i];
        xz += x[i] * z[i];
        zz += z[i] * z[i];
        xy += x[i] * y[i];
        zy += z[i] * y[i];
    }
    double det = xx * zz - xz * xz;
    if (std::abs(det) > 1e-300) {
        double c1 = (xy * zz - zy * xz) / det, c2 = (zy * xx - xy * xz) / det;
        if (c1 >= 0 && c2 >= 0) return {c1, c2};
    }
    double only_x = xx > 0 ? std::max(0.0, xy / xx) : 0.0, only_z = zz > 0 ? std::max(0.0, zy / zz) : 0.0;
    auto sse = [&](double a, double b) {
        double s = 0;
        for (std::size_t i = 0; i < y.size(); ++i) s += std::pow(y[i] - a * x[i] - b * z[i], 2);
        return s;
    };
    return sse(only_x, 0) <= sse(0, only_z) ? std::pair{only_x, 0.0} : std::pair{0.0, only_z};
}

inline EnvelopeFit envelope_sweep(const std::vector<std::size_t>& ls, double tau_factor, double fraction,
                                  std::uint64_t samples, std::uint64_t seed) {
    EnvelopeFit fit;
    for (std::size_t l : ls) {
        WalkLine line(l);
        const double tau_star = tau_factor * static_cast<double>(l);
        auto avg = time_averaged_distribution(line, tau_star, samples, seed + l);
        auto limit = limiting_distribution(line);
        SweepRow row{l, tau_star, fraction, total_variation(avg.p, limit),
                     total_variation(time_average_exact(line, tau_star), limit), 0.0, {}};
        double noise = 0;
        for (double se : avg.stderr_) noise += se;
        row.tv_noise = noise * std::sqrt(2.0 / M_PI) / 2.0;
        row.success = success_probability(line, fraction, tau_star, samples, seed + 7919 * l);
        fit.rows.push_back(row);
    }
    double num = 0, den = 0;
    for (const auto& r : fit.rows) {
        double x = static_cast<double>(r.l) / r.tau_star;
        num += x * r.tv;
        den += x * x;
    }
    fit.c = num / den;
    for (const auto& r : fit.rows) {
        double pred = fit.c * static_cast<double>(r.l) / r.tau_star;
        fit.c_residual = std::max(fit.c_residual, std::abs(r.tv - pred) / r.tv);
    }
    std::vector<double> x, z, y;
    for (const auto& r : fit.rows) {
        x.push_back(static_cast<double>(r.l) / r.tau_star);
        z.push_back(1.0 / static_cast<double>(r.l));
        y.push_back(r.success.deficit);
    }
    std::tie(fit.c1, fit.c2) = fit_two_nonneg(x, z, y);
    fit.bound_slack = INFINITY;
    for (std::size_t i = 0; i < fit.rows.size(); ++i) {
        const auto& r = fit.rows[i];
        double bound = r.fraction - fit.c1 * x[i] - fit.c2 * z[i];
        double se = std::max(r.success.stderr_, 1e-15);
        fit.bound_slack = std::min(fit.bound_slack, (r.success.p_star - bound) / se);
    }
    return fit;
}

inline void write_distribution(std::ostream& os, const std::vector<double>& p) {
    for (std::size_t m = 0; m < p.size(); ++m) os << m << ' ' << p[m] << '\n';
}

struct MeasurementOutcome {
    std::size_t m = 0;
    double tau = 0;
};

// Samples a position from |evolve(tau)|^2. Trial i of a seed always draws
// the same uniform, whatever else was sampled before.
inline MeasurementOutcome sample_position(const WalkLine& line, double tau, std::uint64_t seed, std::uint64_t trial,
                                          std::size_t start = 0) {
    auto p = probabilities(line.evolve(tau, start));
    double u = counter_uniform(seed, 2 * trial + 1), acc = 0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        acc += p[m];
        if (u < acc) return {m, tau};
    }
    return {p.size() - 1, tau};
}

} // namespace hqca
