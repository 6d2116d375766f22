#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "subfbm/greeks.hpp"
#include "subfbm/pricing.hpp"
#include "subfbm/stochastic.hpp"

namespace subfbm {

/// Replicating portfolio at a rebalance time: stock_units = dC/dS and
/// portfolio_value = stock_units * spot + bond_value = C.
struct HedgePortfolio {
    double stock_units;
    double bond_value;
    double portfolio_value;
};

inline HedgePortfolio replicating_portfolio(const OptionContract& contract,
                                            const ModelParams& params) {
    const double c = price(contract, params).price;
    const double delta = greeks(contract, params).delta;
    return HedgePortfolio{delta, c - delta * contract.spot, c};
}

/// One-step spot increment given realized clock and noise increments.
/// `exact` is S (e^((r_d - r_f) dT + sigma dW) - 1); `second_order` keeps the
/// drift, the noise, and the squared-noise term only.
struct AssetIncrement {
    double exact;
    double second_order;
};

inline AssetIncrement asset_increment(double spot, const ModelParams& params, double dT,
                                      double dW) {
    if (!(spot > 0.0))
        throw std::domain_error("asset_increment: spot must be > 0");
    const double carry = params.r_d - params.r_f;
    const double x = carry * dT + params.sigma * dW;
    return AssetIncrement{spot * std::expm1(x),
                          spot * (carry * dT + params.sigma * dW +
                                  0.5 * params.sigma * params.sigma * dW * dW)};
}

/// Residual of the pricing PDE at (t, S): r_d C - (r_d - r_f) S dC/dS
/// - dC/dt|fixed vol - 1/2 sigma_hat^2 S^2 d2C/dS2. Identically zero for the
/// closed form, so this checks that the hedging cancellation holds when the
/// squared-noise and cost moments are replaced by their first-order
/// approximations.
inline double pde_residual(const OptionContract& contract, const ModelParams& params) {
    const PriceQuote q = price(contract, params);
    const GreeksReport g = greeks(contract, params);
    const double theta_fixed_vol =
        g.theta - g.vega * sigma_hat_time_derivative(params, contract.t);
    return params.r_d * q.price - (params.r_d - params.r_f) * contract.spot * g.delta -
           theta_fixed_vol -
           0.5 * q.sigma_hat * q.sigma_hat * contract.spot * contract.spot * g.gamma;
}

/// Aggregates of the one-step hedge discrepancy dPi - dC.
///   mean_discrepancy       sample mean over paths
///   std_error              standard error of that mean
///   mean_transaction_cost  sample mean of (k/2) |dU| S_{t+dt}
///   residual_bound         moment-approximation error bound: the discrepancy
///                          the first-order moment identities leave behind,
///                          evaluated with the sampled clock moments
///   mean_dT_pow_2H/H       sampled E[dT^2H], E[dT^H] backing the bound
struct HedgeStepReport {
    std::int64_t n_paths;
    double mean_discrepancy;
    double std_error;
    double mean_transaction_cost;
    double residual_bound;
    double mean_dT_pow_2H;
    double mean_dT_pow_H;
};

/// Single rebalancing step of the delta hedge, repeated over n_paths draws of
/// (dT, dW): the portfolio is formed at t with the effective volatility
/// frozen at sigma_hat(t), the option is repriced exactly at t + dt, and the
/// rehedging cost (k/2) |dU| S_{t+dt} is charged with dU recomputed from the
/// bumped delta. Paths use one child stream each, so results are independent
/// of traversal order.
inline HedgeStepReport hedge_step_experiment(const OptionContract& contract,
                                             const ModelParams& params, std::int64_t n_paths,
                                             RngStream& rng,
                                             double operational_time_step = 0.0) {
    contract.validate();
    params.validate();
    if (n_paths < 10'000)
        throw std::invalid_argument("hedge_step_experiment: n_paths must be >= 10000");
    if (!(contract.t + params.dt < contract.T))
        throw std::invalid_argument("hedge_step_experiment: need t + dt < T");
    if (contract.kind != OptionKind::call)
        throw std::invalid_argument("hedge_step_experiment: call contracts only");

    const double s0 = contract.spot;
    const double t0 = contract.t;
    const double dt = params.dt;
    const double sigma_hat = modified_volatility(params, t0);
    const PriceQuote q0 = price(contract, params, sigma_hat);
    const GreeksReport g0 = greeks(contract, params);
    const HedgePortfolio book{g0.delta, q0.price - g0.delta * s0, q0.price};

    const double tau1 = contract.T - t0 - dt;
    const double df_f1 = std::exp(-params.r_f * tau1);
    const double df_d1 = std::exp(-params.r_d * tau1);
    const double carry = params.r_d - params.r_f;
    const double vol_sqrt_tau1 = sigma_hat * std::sqrt(tau1);

    // frozen-volatility reprice and delta at (t + dt, s)
    auto reprice = [&](double s, double& delta_out) {
        const double d1 = (std::log(s / contract.strike) + carry * tau1 +
                           0.5 * sigma_hat * sigma_hat * tau1) /
                          vol_sqrt_tau1;
        const double d2 = d1 - vol_sqrt_tau1;
        delta_out = df_f1 * std_normal_cdf(d1);
        return s * df_f1 * std_normal_cdf(d1) - contract.strike * df_d1 * std_normal_cdf(d2);
    };

    SubordinatorConfig cfg{};
    TimeGrid step_grid{{t0, t0 + dt}};
    if (params.alpha < 1.0) {
        cfg.alpha = params.alpha;
        cfg.operational_time_step = operational_time_step > 0.0
                                        ? operational_time_step
                                        : SubordinatorConfig::default_step(params.alpha, step_grid);
    }

    // Welford accumulation of the discrepancy; plain means for the rest.
    double mean_d = 0.0, m2_d = 0.0;
    double sum_tc = 0.0, sum_p2h = 0.0, sum_ph = 0.0;
    for (std::int64_t i = 0; i < n_paths; ++i) {
        RngStream path_rng = rng.child(static_cast<std::uint64_t>(i));
        double dT, dW;
        if (params.alpha == 1.0) {
            dT = dt;
            auto noise_rng = path_rng.child(stream_label::fbm);
            auto w = simulate_fbm_at_times(params.H, step_grid.times, noise_rng);
            dW = w[1] - w[0];
        } else {
            auto clock_rng = path_rng.child(stream_label::subordinator);
            auto noise_rng = path_rng.child(stream_label::fbm);
            auto clock = simulate_inverse_subordinator(cfg, step_grid, clock_rng);
            dT = clock.values[1] - clock.values[0];
            auto w = simulate_fbm_at_times(params.H, clock.values, noise_rng);
            dW = w[1] - w[0];
        }

        const double ds = asset_increment(s0, params, dT, dW).exact;
        const double s1 = s0 + ds;
        double delta1;
        const double c1 = reprice(s1, delta1);
        const double tc = 0.5 * params.k * std::abs(delta1 - book.stock_units) * s1;
        const double d_portfolio = book.stock_units * (ds + params.r_f * s0 * dt) +
                                   params.r_d * book.bond_value * dt - tc;
        const double d_option = c1 - q0.price;
        const double d = d_portfolio - d_option;

        const double delta_mean = d - mean_d;
        mean_d += delta_mean / static_cast<double>(i + 1);
        m2_d += delta_mean * (d - mean_d);
        sum_tc += tc;
        sum_p2h += std::pow(dT, 2.0 * params.H);
        sum_ph += std::pow(dT, params.H);
    }

    const double n = static_cast<double>(n_paths);
    HedgeStepReport r;
    r.n_paths = n_paths;
    r.mean_discrepancy = mean_d;
    r.std_error = std::sqrt(m2_d / (n - 1.0) / n);
    r.mean_transaction_cost = sum_tc / n;
    r.mean_dT_pow_2H = sum_p2h / n;
    r.mean_dT_pow_H = sum_ph / n;

    const double e_dT = expected_delta_T(params.alpha, t0, dt, DeltaTMode::exact);
    const double s2g = s0 * s0 * g0.gamma;
    r.residual_bound =
        std::abs(0.5 * params.sigma * params.sigma * s2g *
                 (r.mean_dT_pow_2H - std::pow(e_dT, 2.0 * params.H))) +
        std::abs(0.5 * params.k * kSqrt2OverPi * params.sigma * s2g *
                 (r.mean_dT_pow_H - std::pow(e_dT, params.H)));
    return r;
}

}  // namespace subfbm
