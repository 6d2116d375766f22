#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "subfbm/model_params.hpp"
#include "subfbm/rng.hpp"
#include "subfbm/special_functions.hpp"

namespace subfbm {

/// Strictly increasing, nonnegative sample times (years).
struct TimeGrid {
    std::vector<double> times;

    void validate() const {
        if (times.empty())
            throw std::invalid_argument("TimeGrid: must not be empty");
        double prev = -1.0;
        for (double t : times) {
            if (!(t >= 0.0))
                throw std::invalid_argument("TimeGrid: times must be >= 0");
            if (!(t > prev))
                throw std::invalid_argument("TimeGrid: times must be strictly increasing");
            prev = t;
        }
    }

    static TimeGrid uniform(double t_end, std::size_t n_points) {
        if (!(t_end > 0.0) || n_points < 1)
            throw std::invalid_argument("TimeGrid::uniform: need t_end > 0 and n_points >= 1");
        TimeGrid g;
        g.times.reserve(n_points + 1);
        for (std::size_t i = 0; i <= n_points; ++i)
            g.times.push_back(t_end * static_cast<double>(i) / static_cast<double>(n_points));
        return g;
    }
};

/// A sampled path: values[i] belongs to grid.times[i].
struct TimeSeriesPath {
    TimeGrid grid;
    std::vector<double> values;
};

/// Controls the operational-time walk used to invert the stable subordinator.
struct SubordinatorConfig {
    double alpha;                  // stable index, in (1/2, 1)
    double operational_time_step;  // delta_tau of the internal walk
    std::size_t max_steps = 50'000'000;

    void validate() const {
        if (!(alpha > 0.5) || !(alpha < 1.0))
            throw std::invalid_argument("SubordinatorConfig: alpha must lie in (1/2, 1)");
        if (!(operational_time_step > 0.0))
            throw std::invalid_argument("SubordinatorConfig: operational_time_step must be > 0");
        if (max_steps == 0)
            throw std::invalid_argument("SubordinatorConfig: max_steps must be > 0");
    }

    /// Default walk step: fine enough that one stable increment rarely jumps
    /// across the smallest grid spacing.
    static double default_step(double alpha, const TimeGrid& grid) {
        grid.validate();
        double min_spacing = grid.times.front() > 0.0 ? grid.times.front()
                                                      : std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < grid.times.size(); ++i)
            min_spacing = std::min(min_spacing, grid.times[i] - grid.times[i - 1]);
        if (!std::isfinite(min_spacing)) return 1e-4;  // grid == {0}
        return std::pow(min_spacing, 1.0 / alpha) / 100.0;
    }
};

/// One increment of the alpha-stable subordinator over operational time dtau,
/// normalized so that E exp(-eta * Q) = exp(-dtau * eta^alpha).
/// Kanter representation: exact, one uniform and one exponential per draw.
class StableIncrementSampler {
public:
    StableIncrementSampler(double alpha, double dtau) : alpha_(alpha), dtau_(dtau) {
        if (!(alpha > 0.0) || !(alpha < 1.0))
            throw std::domain_error("StableIncrementSampler: alpha must lie in (0, 1)");
        if (!(dtau > 0.0))
            throw std::domain_error("StableIncrementSampler: dtau must be > 0");
        scale_ = std::pow(dtau, 1.0 / alpha);
        ratio_ = (1.0 - alpha) / alpha;
        inv_alpha_ = 1.0 / alpha;
    }

    double draw(RngStream& rng) const {
        constexpr double pi = 3.14159265358979323846264338327950288;
        const double u = rng.uniform();
        const double e = rng.exponential();
        const double s1 = std::sin(alpha_ * pi * u);
        const double s2 = std::sin((1.0 - alpha_) * pi * u);
        const double s3 = std::sin(pi * u);
        return scale_ * s1 *
               std::exp(ratio_ * (std::log(s2) - std::log(e)) - inv_alpha_ * std::log(s3));
    }

private:
    double alpha_, dtau_, scale_, ratio_, inv_alpha_;
};

inline double sample_stable_increment(double alpha, double dtau, RngStream& rng) {
    return StableIncrementSampler(alpha, dtau).draw(rng);
}

/// Inverse subordinator T_alpha sampled at each grid time: walk the stable
/// trajectory on the internal step and record first passage,
/// T_alpha(t) = step * min{ n : Q(n * step) > t }. Nondecreasing by
/// construction, with flat periods where the walk jumps over several grid
/// times at once. T_alpha(0) = 0 exactly.
inline TimeSeriesPath simulate_inverse_subordinator(const SubordinatorConfig& cfg,
                                                    const TimeGrid& grid, RngStream& rng) {
    cfg.validate();
    grid.validate();
    StableIncrementSampler sampler(cfg.alpha, cfg.operational_time_step);

    TimeSeriesPath path;
    path.grid = grid;
    path.values.reserve(grid.times.size());

    double q = 0.0;
    std::size_t n = 0;
    for (double target : grid.times) {
        if (target == 0.0) {
            path.values.push_back(0.0);
            continue;
        }
        while (q <= target) {
            if (++n > cfg.max_steps)
                throw std::runtime_error(
                    "simulate_inverse_subordinator: internal walk exceeded max_steps; "
                    "increase operational_time_step or max_steps");
            q += sampler.draw(rng);
        }
        path.values.push_back(static_cast<double>(n) * cfg.operational_time_step);
    }
    return path;
}

/// E[T_alpha(t)^m] = t^(m alpha) m! / Gamma(m alpha + 1).
inline double moment_T_alpha(double alpha, double t, int m) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("moment_T_alpha: alpha must lie in (0, 1]");
    if (!(t > 0.0)) throw std::domain_error("moment_T_alpha: t must be > 0");
    if (m < 1) throw std::domain_error("moment_T_alpha: m must be >= 1");
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    return std::pow(t, m * alpha) * fact / gamma_fn(m * alpha + 1.0);
}

enum class DeltaTMode { exact, linearized };

/// E[T_alpha(t+dt) - T_alpha(t)]; the linearized form is the first-order
/// expansion t^(alpha-1) dt / Gamma(alpha) of the exact increment.
inline double expected_delta_T(double alpha, double t, double dt, DeltaTMode mode) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("expected_delta_T: alpha must lie in (0, 1]");
    if (!(t > 0.0)) throw std::domain_error("expected_delta_T: t must be > 0");
    if (!(dt > 0.0)) throw std::domain_error("expected_delta_T: dt must be > 0");
    if (mode == DeltaTMode::exact)
        return (std::pow(t + dt, alpha) - std::pow(t, alpha)) / gamma_fn(1.0 + alpha);
    return std::pow(t, alpha - 1.0) * dt / gamma_fn(alpha);
}

/// First-order approximation of E[(dW)^2] over [t, t+dt]:
/// (t^(alpha-1)/Gamma(alpha))^(2H) dt^(2H). The exact identity is
/// E[(dW)^2] = E[(dT)^(2H)]; the two differ by a Jensen gap that the
/// Monte Carlo suite measures.
inline double expected_sq_increment_W(double alpha, double H, double t, double dt) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("expected_sq_increment_W: alpha must lie in (0, 1]");
    if (!(H >= 0.5) || H >= 1.0)
        throw std::domain_error("expected_sq_increment_W: H must lie in [1/2, 1)");
    if (!(t > 0.0)) throw std::domain_error("expected_sq_increment_W: t must be > 0");
    if (!(dt > 0.0)) throw std::domain_error("expected_sq_increment_W: dt must be > 0");
    const double a = std::pow(t, alpha - 1.0) / gamma_fn(alpha);
    return std::pow(a, 2.0 * H) * std::pow(dt, 2.0 * H);
}

/// Fractional Brownian motion on an arbitrary nondecreasing time vector via
/// exact covariance factorization. Duplicate times (flat clock periods) are
/// deduplicated before the Cholesky and values replicated afterwards; time 0
/// maps to value 0. Construction factors once, sample() reuses the factor.
class FbmSampler {
public:
    static constexpr std::size_t kMaxPoints = 4096;

    FbmSampler(double H, std::vector<double> times) : hurst_(H), times_(std::move(times)) {
        if (!(H >= 0.5) || H >= 1.0)
            throw std::invalid_argument("FbmSampler: H must lie in [1/2, 1)");
        double prev = 0.0;
        for (double t : times_) {
            if (!(t >= 0.0))
                throw std::invalid_argument("FbmSampler: times must be >= 0");
            if (t < prev)
                throw std::invalid_argument("FbmSampler: times must be nondecreasing");
            prev = t;
        }
        // unique positive times; map each input index to its unique slot
        index_.resize(times_.size(), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < times_.size(); ++i) {
            if (times_[i] == 0.0) continue;
            if (unique_.empty() || times_[i] != unique_.back()) unique_.push_back(times_[i]);
            index_[i] = unique_.size() - 1;
        }
        const std::size_t n = unique_.size();
        if (n > kMaxPoints)
            throw std::runtime_error("FbmSampler: more than 4096 distinct times");
        if (n == 0) return;

        std::vector<double> cov(n * n);
        const double two_h = 2.0 * H;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double c = 0.5 * (std::pow(unique_[i], two_h) + std::pow(unique_[j], two_h) -
                                        std::pow(unique_[i] - unique_[j], two_h));
                cov[i * n + j] = c;
                cov[j * n + i] = c;
            }
        if (!cholesky(cov, n, 0.0) && !cholesky(cov, n, 1e-12))
            throw std::runtime_error("FbmSampler: covariance factorization failed");
    }

    std::vector<double> sample(RngStream& rng) const {
        const std::size_t n = unique_.size();
        std::vector<double> z(n);
        for (auto& v : z) v = rng.normal();
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j <= i; ++j) acc += chol_[i * n + j] * z[j];
            w[i] = acc;
        }
        std::vector<double> out(times_.size(), 0.0);
        for (std::size_t i = 0; i < times_.size(); ++i)
            if (index_[i] != static_cast<std::size_t>(-1)) out[i] = w[index_[i]];
        return out;
    }

private:
    bool cholesky(std::vector<double> a, std::size_t n, double jitter) {
        for (std::size_t i = 0; i < n; ++i) a[i * n + i] += jitter;
        for (std::size_t j = 0; j < n; ++j) {
            double d = a[j * n + j];
            for (std::size_t s = 0; s < j; ++s) d -= a[j * n + s] * a[j * n + s];
            if (!(d > 0.0)) return false;
            const double root = std::sqrt(d);
            a[j * n + j] = root;
            for (std::size_t i = j + 1; i < n; ++i) {
                double v = a[i * n + j];
                for (std::size_t s = 0; s < j; ++s) v -= a[i * n + s] * a[j * n + s];
                a[i * n + j] = v / root;
            }
        }
        chol_ = std::move(a);
        return true;
    }

    double hurst_;
    std::vector<double> times_;
    std::vector<double> unique_;
    std::vector<std::size_t> index_;
    std::vector<double> chol_;
};

/// One FBM draw at the given times (duplicates allowed, 0 maps to 0).
inline std::vector<double> simulate_fbm_at_times(double H, const std::vector<double>& times,
                                                 RngStream& rng) {
    return FbmSampler(H, times).sample(rng);
}

namespace stream_label {
// fixed child-stream labels so the subordinator and the FBM driver are
// independent by construction
inline constexpr std::uint64_t subordinator = 1;
inline constexpr std::uint64_t fbm = 2;
}  // namespace stream_label

/// Subdiffusive FBM W(t) = B_H(T_alpha(t)): inverse-subordinator clock fed
/// into the FBM sampler, with independent child streams for the two sources.
inline TimeSeriesPath simulate_subdiffusive_fbm(const SubordinatorConfig& cfg, double H,
                                                const TimeGrid& grid, RngStream& rng) {
    auto rng_clock = rng.child(stream_label::subordinator);
    auto rng_noise = rng.child(stream_label::fbm);
    TimeSeriesPath clock = simulate_inverse_subordinator(cfg, grid, rng_clock);
    TimeSeriesPath path;
    path.grid = grid;
    path.values = simulate_fbm_at_times(H, clock.values, rng_noise);
    return path;
}

/// Spot exchange-rate path S(t) = S0 exp((r_d - r_f) T_alpha(t) + sigma W(t))
/// with one shared clock realization across both terms. alpha = 1 runs the
/// identity clock (plain FBM model). A positive operational_time_step
/// overrides the default walk resolution.
inline TimeSeriesPath simulate_exchange_rate(const ModelParams& params, double S0,
                                             const TimeGrid& grid, RngStream& rng,
                                             double operational_time_step = 0.0) {
    params.validate();
    grid.validate();
    if (!(S0 > 0.0))
        throw std::invalid_argument("simulate_exchange_rate: S0 must be > 0");

    std::vector<double> clock;
    if (params.alpha == 1.0) {
        clock = grid.times;
        (void)rng.child(stream_label::subordinator);  // keep label layout uniform
    } else {
        SubordinatorConfig cfg{params.alpha,
                               operational_time_step > 0.0
                                   ? operational_time_step
                                   : SubordinatorConfig::default_step(params.alpha, grid)};
        auto rng_clock = rng.child(stream_label::subordinator);
        clock = simulate_inverse_subordinator(cfg, grid, rng_clock).values;
    }
    auto rng_noise = rng.child(stream_label::fbm);
    std::vector<double> noise = simulate_fbm_at_times(params.H, clock, rng_noise);

    TimeSeriesPath path;
    path.grid = grid;
    path.values.resize(grid.times.size());
    const double drift = params.r_d - params.r_f;
    for (std::size_t i = 0; i < grid.times.size(); ++i)
        path.values[i] = S0 * std::exp(drift * clock[i] + params.sigma * noise[i]);
    return path;
}

}  // namespace subfbm
