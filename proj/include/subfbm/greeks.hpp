#pragma once

#include <cmath>
#include <stdexcept>

#include "subfbm/pricing.hpp"

namespace subfbm {

/// Call-price sensitivities. theta is the calendar-time derivative at fixed
/// maturity and includes the drift of the effective volatility through the
/// valuation time (zero in the alpha = 1 case).
struct GreeksReport {
    double delta;         // dC/dS
    double dual_delta;    // dC/dK
    double rho_domestic;  // dC/dr_d
    double rho_foreign;   // dC/dr_f
    double theta;         // dC/dt
    double gamma;         // d2C/dS2
    double vega;          // dC/dsigma_hat
};

inline GreeksReport greeks(const OptionContract& contract, const ModelParams& params) {
    contract.validate();
    params.validate();
    if (contract.kind != OptionKind::call)
        throw std::invalid_argument("greeks: call contracts only");

    const PriceQuote q = price(contract, params);
    const double tau = contract.T - contract.t;
    const double sqrt_tau = std::sqrt(tau);
    const double df_foreign = std::exp(-params.r_f * tau);
    const double df_domestic = std::exp(-params.r_d * tau);
    const double nd1 = std_normal_cdf(q.d1);
    const double nd2 = std_normal_cdf(q.d2);
    const double pdf_d1 = std_normal_pdf(q.d1);

    GreeksReport g;
    g.delta = df_foreign * nd1;
    g.dual_delta = -df_domestic * nd2;
    g.rho_domestic = contract.strike * tau * df_domestic * nd2;
    g.rho_foreign = -contract.spot * tau * df_foreign * nd1;
    g.gamma = df_foreign * pdf_d1 / (contract.spot * q.sigma_hat * sqrt_tau);
    g.vega = contract.spot * df_foreign * sqrt_tau * pdf_d1;

    const double theta_fixed_vol = contract.spot * params.r_f * df_foreign * nd1 -
                                   contract.strike * params.r_d * df_domestic * nd2 -
                                   contract.spot * df_foreign * pdf_d1 * q.sigma_hat /
                                       (2.0 * sqrt_tau);
    g.theta = theta_fixed_vol + g.vega * sigma_hat_time_derivative(params, contract.t);
    return g;
}

/// Central-difference bump sizes; zero fields fall back to the defaults
/// (1e-5 x max(1, |coordinate|) for first-order bumps, 1.5e-4 x max(1, spot)
/// for the curvature stencil, whose second difference needs the larger step
/// to stay above rounding noise).
struct FdBumps {
    double spot = 0.0;
    double strike = 0.0;
    double rate = 0.0;
    double time = 0.0;
    double vol = 0.0;
    double spot_curvature = 0.0;
};

/// Finite-difference cross-check of greeks(): central differences of the
/// closed-form price, re-evaluating the effective volatility at bumped
/// valuation times so the theta comparison covers its vol-drift terms.
inline GreeksReport finite_difference_greeks(const OptionContract& contract,
                                             const ModelParams& params, FdBumps bumps = {}) {
    contract.validate();
    params.validate();
    if (contract.kind != OptionKind::call)
        throw std::invalid_argument("finite_difference_greeks: call contracts only");

    auto auto_bump = [](double coord) { return 1e-5 * std::max(1.0, std::abs(coord)); };
    const double h_s = bumps.spot > 0.0 ? bumps.spot : auto_bump(contract.spot);
    const double h_k = bumps.strike > 0.0 ? bumps.strike : auto_bump(contract.strike);
    const double h_r = bumps.rate > 0.0 ? bumps.rate : 1e-5;
    const double h_t = bumps.time > 0.0 ? bumps.time : auto_bump(contract.t);
    const double h_v = bumps.vol > 0.0 ? bumps.vol : 1e-5;
    const double h_g = bumps.spot_curvature > 0.0 ? bumps.spot_curvature
                                                  : 1.5e-4 * std::max(1.0, contract.spot);

    if (!(contract.t - h_t > 0.0) || !(contract.t + h_t < contract.T))
        throw std::invalid_argument("finite_difference_greeks: time bump leaves (0, T)");
    if (!(contract.spot - h_g > 0.0))
        throw std::invalid_argument("finite_difference_greeks: spot bump leaves (0, inf)");

    auto price_at = [&](double spot, double strike, double r_d, double r_f, double t) {
        OptionContract c = contract;
        c.spot = spot;
        c.strike = strike;
        c.t = t;
        ModelParams p = params;
        p.r_d = r_d;
        p.r_f = r_f;
        return price(c, p).price;
    };
    const double s = contract.spot, k0 = contract.strike, t0 = contract.t;
    const double rd = params.r_d, rf = params.r_f;

    GreeksReport g;
    g.delta = (price_at(s + h_s, k0, rd, rf, t0) - price_at(s - h_s, k0, rd, rf, t0)) / (2 * h_s);
    g.dual_delta =
        (price_at(s, k0 + h_k, rd, rf, t0) - price_at(s, k0 - h_k, rd, rf, t0)) / (2 * h_k);
    g.rho_domestic =
        (price_at(s, k0, rd + h_r, rf, t0) - price_at(s, k0, rd - h_r, rf, t0)) / (2 * h_r);
    g.rho_foreign =
        (price_at(s, k0, rd, rf + h_r, t0) - price_at(s, k0, rd, rf - h_r, t0)) / (2 * h_r);
    g.theta = (price_at(s, k0, rd, rf, t0 + h_t) - price_at(s, k0, rd, rf, t0 - h_t)) / (2 * h_t);
    g.gamma = (price_at(s + h_g, k0, rd, rf, t0) - 2.0 * price_at(s, k0, rd, rf, t0) +
               price_at(s - h_g, k0, rd, rf, t0)) /
              (h_g * h_g);

    const double sigma_hat = modified_volatility(params, t0);
    g.vega = (price(contract, params, sigma_hat + h_v).price -
              price(contract, params, sigma_hat - h_v).price) /
             (2 * h_v);
    return g;
}

}  // namespace subfbm
