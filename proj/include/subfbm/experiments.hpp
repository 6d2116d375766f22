#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfbm/hedging_analysis.hpp"
#include "subfbm/mc_hedging.hpp"
#include "subfbm/pricing.hpp"
#include "subfbm/stochastic.hpp"

namespace subfbm {

/// Paired exchange-rate paths on a shared grid and seed: the identity-clock
/// model next to the subdiffusive one, for side-by-side comparison.
struct PathsResult {
    TimeSeriesPath fbm_model;
    TimeSeriesPath subfbm_model;
};

inline PathsResult sample_rate_paths(const ModelParams& params, double S0, const TimeGrid& grid,
                                     const RngStream& rng, double operational_time_step = 0.0) {
    ModelParams base = params;
    base.alpha = 1.0;
    PathsResult r;
    {
        RngStream stream = rng;
        r.fbm_model = simulate_exchange_rate(base, S0, grid, stream, operational_time_step);
    }
    {
        RngStream stream = rng;
        r.subfbm_model = simulate_exchange_rate(params, S0, grid, stream, operational_time_step);
    }
    return r;
}

/// One-dimensional price sweep; every other input stays fixed.
struct SweepSpec {
    std::string variable;  // one of H, alpha, k, dt, K, T
    double from;
    double to;
    int steps;  // number of points, >= 1

    void validate() const {
        static const char* allowed[] = {"H", "alpha", "k", "dt", "K", "T"};
        bool ok = false;
        for (const char* v : allowed) ok = ok || variable == v;
        if (!ok)
            throw std::invalid_argument("SweepSpec: variable must be one of H, alpha, k, dt, K, T");
        if (steps < 1) throw std::invalid_argument("SweepSpec: steps must be >= 1");
        if (!(to >= from)) throw std::invalid_argument("SweepSpec: need to >= from");
    }
};

struct SweepRow {
    double value;
    PriceQuote quote;
};

inline std::vector<SweepRow> sweep_prices(const OptionContract& contract,
                                          const ModelParams& params, const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        const double v = spec.steps == 1
                             ? spec.from
                             : spec.from + (spec.to - spec.from) * i / (spec.steps - 1.0);
        OptionContract c = contract;
        ModelParams p = params;
        if (spec.variable == "H") p.H = v;
        else if (spec.variable == "alpha") p.alpha = v;
        else if (spec.variable == "k") p.k = v;
        else if (spec.variable == "dt") p.dt = v;
        else if (spec.variable == "K") c.strike = v;
        else c.T = v;
        rows.push_back(SweepRow{v, price(c, p)});
    }
    return rows;
}

/// Tensor grid over maturity and strike comparing the constant-volatility
/// baseline with the plain-FBM and subdiffusive effective volatilities.
struct CompareSpec {
    double T_min, T_max;
    int T_steps;
    double K_min, K_max;
    int K_steps;

    void validate() const {
        if (T_steps < 1 || K_steps < 1)
            throw std::invalid_argument("CompareSpec: steps must be >= 1");
        if (!(T_max >= T_min) || !(K_max >= K_min))
            throw std::invalid_argument("CompareSpec: need max >= min");
    }
};

struct CompareRow {
    double T;
    double K;
    double gk;
    double fbm;
    double subfbm;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    /// fraction of grid points where |subfbm - gk| <= |fbm - gk|
    double closer_fraction;
};

inline CompareResult compare_models(const OptionContract& base, const ModelParams& params,
                                    const CompareSpec& spec) {
    spec.validate();
    params.validate();
    CompareResult result;
    result.rows.reserve(static_cast<std::size_t>(spec.T_steps) * spec.K_steps);
    std::size_t closer = 0;
    const double fbm_vol = fbm_tc_volatility(params.sigma, params.H, params.k, params.dt);
    for (int i = 0; i < spec.T_steps; ++i) {
        const double T = spec.T_steps == 1
                             ? spec.T_min
                             : spec.T_min + (spec.T_max - spec.T_min) * i / (spec.T_steps - 1.0);
        for (int j = 0; j < spec.K_steps; ++j) {
            const double K = spec.K_steps == 1
                                 ? spec.K_min
                                 : spec.K_min + (spec.K_max - spec.K_min) * j / (spec.K_steps - 1.0);
            OptionContract c = base;
            c.T = T;
            c.strike = K;
            CompareRow row;
            row.T = T;
            row.K = K;
            row.gk = gk_price(c, params.sigma, params.r_d, params.r_f).price;
            row.fbm = price(c, params, fbm_vol).price;
            row.subfbm = price(c, params).price;
            if (std::abs(row.subfbm - row.gk) <= std::abs(row.fbm - row.gk)) ++closer;
            result.rows.push_back(row);
        }
    }
    result.closer_fraction = static_cast<double>(closer) / static_cast<double>(result.rows.size());
    return result;
}

}  // namespace subfbm
