#pragma once

#include <cmath>
#include <stdexcept>

#include "subfbm/pricing.hpp"

namespace subfbm {

/// Rebalancing interval at which the two variance terms of the effective
/// volatility coincide, with the volatility and option price it produces.
/// Note: dt_star is the term-equality point of the arithmetic/geometric-mean
/// bound, not the stationary point of sigma_hat over dt; the two coincide
/// only at H = 2/3.
struct MinPriceResult {
    double dt_star;
    double sigma_min;
    double c_min;
};

/// dt* = A(t)^-1 (2/pi)^(1/2H) (k/sigma)^(1/H). Requires k > 0: without
/// costs the variance has no interior term-balance point.
inline double optimal_rebalancing_interval(const ModelParams& params, double t) {
    params.validate();
    if (!(t > 0.0))
        throw std::domain_error("optimal_rebalancing_interval: t must be > 0");
    if (!(params.k > 0.0))
        throw std::domain_error(
            "optimal_rebalancing_interval: degenerate for k = 0 (sigma_hat is monotone in dt)");
    const double a = effective_timescale(params.alpha, t);
    const double h = params.H;
    return (1.0 / a) * std::pow(2.0 / M_PI, 1.0 / (2.0 * h)) *
           std::pow(params.k / params.sigma, 1.0 / h);
}

/// sqrt(2) sigma A^(1/2) (2/pi)^(1/2 - 1/4H) (k/sigma)^(1 - 1/2H); equals
/// modified_volatility evaluated at dt*.
inline double minimal_volatility(const ModelParams& params, double t) {
    params.validate();
    if (!(t > 0.0))
        throw std::domain_error("minimal_volatility: t must be > 0");
    if (!(params.k > 0.0))
        throw std::domain_error("minimal_volatility: degenerate for k = 0");
    const double a = effective_timescale(params.alpha, t);
    const double h = params.H;
    return M_SQRT2 * params.sigma * std::sqrt(a) *
           std::pow(2.0 / M_PI, 0.5 - 1.0 / (4.0 * h)) *
           std::pow(params.k / params.sigma, 1.0 - 1.0 / (2.0 * h));
}

/// Price with the volatility evaluated at dt*.
inline MinPriceResult minimal_price(const OptionContract& contract, const ModelParams& params) {
    contract.validate();
    MinPriceResult r;
    r.dt_star = optimal_rebalancing_interval(params, contract.t);
    r.sigma_min = minimal_volatility(params, contract.t);
    r.c_min = price(contract, params, r.sigma_min).price;
    return r;
}

/// d sigma_hat / dH; the sign equals the sign of ln(A(t) dt).
inline double vol_sensitivity_H(const ModelParams& params, double t) {
    params.validate();
    if (!(t > 0.0))
        throw std::domain_error("vol_sensitivity_H: t must be > 0");
    const double a = effective_timescale(params.alpha, t);
    const double h = params.H;
    const double diffusion_term = std::pow(a, 2.0 * h) * std::pow(params.dt, 2.0 * h - 1.0);
    const double cost_term = kSqrt2OverPi * (params.k / params.sigma) * std::pow(a, h) *
                             std::pow(params.dt, h - 1.0);
    const double sigma_hat = modified_volatility(params, t);
    return (2.0 * diffusion_term + cost_term) * params.sigma * params.sigma *
           std::log(a * params.dt) / (2.0 * sigma_hat);
}

}  // namespace subfbm
