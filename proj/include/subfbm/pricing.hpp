#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "subfbm/model_params.hpp"
#include "subfbm/special_functions.hpp"

namespace subfbm {

inline constexpr double kSqrt2OverPi = 0.79788456080286535587989211986876;

/// A(t) = t^(alpha-1) / Gamma(alpha), the clock-speed factor that scales the
/// effective variance per unit calendar time. Exactly 1 for alpha = 1.
inline double effective_timescale(double alpha, double t) {
    if (!(t > 0.0))
        throw std::domain_error("effective_timescale: t must be > 0");
    if (alpha == 1.0) return 1.0;
    return std::pow(t, alpha - 1.0) / gamma_fn(alpha);
}

namespace detail {

// sigma_hat^2 = sigma^2 [ A^(2H) dt^(2H-1) + sqrt(2/pi) (k/sigma) A^H dt^(H-1) ]
inline double sigma_hat_from_timescale(double timescale, double sigma, double H, double k,
                                       double dt) {
    const double diffusion_term = std::pow(timescale, 2.0 * H) * std::pow(dt, 2.0 * H - 1.0);
    const double cost_term =
        kSqrt2OverPi * (k / sigma) * std::pow(timescale, H) * std::pow(dt, H - 1.0);
    return sigma * std::sqrt(diffusion_term + cost_term);
}

}  // namespace detail

/// Effective volatility absorbing discrete rebalancing and proportional
/// transaction costs, evaluated at valuation time t.
inline double modified_volatility(const ModelParams& params, double t) {
    params.validate();
    return detail::sigma_hat_from_timescale(effective_timescale(params.alpha, t), params.sigma,
                                            params.H, params.k, params.dt);
}

/// Cost-free discrete-rebalancing volatility sigma * dt^(H - 1/2).
inline double necula_volatility(double sigma, double H, double dt) {
    if (!(sigma > 0.0)) throw std::domain_error("necula_volatility: sigma must be > 0");
    if (!(H >= 0.5) || H >= 1.0)
        throw std::domain_error("necula_volatility: H must lie in [1/2, 1)");
    if (!(dt > 0.0)) throw std::domain_error("necula_volatility: dt must be > 0");
    return detail::sigma_hat_from_timescale(1.0, sigma, H, 0.0, dt);
}

/// Plain-FBM transaction-cost volatility: the alpha = 1 case of
/// modified_volatility, shared code path so the identity is bit-exact.
inline double fbm_tc_volatility(double sigma, double H, double k, double dt) {
    if (!(sigma > 0.0)) throw std::domain_error("fbm_tc_volatility: sigma must be > 0");
    if (!(H >= 0.5) || H >= 1.0)
        throw std::domain_error("fbm_tc_volatility: H must lie in [1/2, 1)");
    if (!(k >= 0.0)) throw std::domain_error("fbm_tc_volatility: k must be >= 0");
    if (!(dt > 0.0)) throw std::domain_error("fbm_tc_volatility: dt must be > 0");
    return detail::sigma_hat_from_timescale(1.0, sigma, H, k, dt);
}

/// d sigma_hat / dt at fixed dt: the calendar-time drift of the effective
/// volatility through A(t). Zero for alpha = 1.
inline double sigma_hat_time_derivative(const ModelParams& params, double t) {
    params.validate();
    if (!(t > 0.0))
        throw std::domain_error("sigma_hat_time_derivative: t must be > 0");
    if (params.alpha == 1.0) return 0.0;
    const double a = effective_timescale(params.alpha, t);
    const double da_dt =
        (params.alpha - 1.0) * std::pow(t, params.alpha - 2.0) / gamma_fn(params.alpha);
    const double H = params.H;
    const double dvar_da =
        params.sigma * params.sigma *
        (2.0 * H * std::pow(a, 2.0 * H - 1.0) * std::pow(params.dt, 2.0 * H - 1.0) +
         kSqrt2OverPi * (params.k / params.sigma) * H * std::pow(a, H - 1.0) *
             std::pow(params.dt, H - 1.0));
    return dvar_da * da_dt / (2.0 * modified_volatility(params, t));
}

/// Closed-form European currency option price. When vol_override is present
/// it replaces the modified volatility (G-K baseline, minimal price).
inline PriceQuote price(const OptionContract& contract, const ModelParams& params,
                        std::optional<double> vol_override = {}) {
    contract.validate();
    params.validate();
    double sigma_hat;
    if (vol_override) {
        if (!(*vol_override > 0.0))
            throw std::domain_error("price: vol_override must be > 0");
        sigma_hat = *vol_override;
    } else {
        sigma_hat = modified_volatility(params, contract.t);
    }

    const double tau = contract.T - contract.t;
    const double vol_sqrt_tau = sigma_hat * std::sqrt(tau);
    if (!(vol_sqrt_tau > 0.0))
        throw std::domain_error("price: degenerate total volatility");

    const double carry = params.r_d - params.r_f;
    const double d1 = (std::log(contract.spot / contract.strike) + carry * tau +
                       0.5 * sigma_hat * sigma_hat * tau) /
                      vol_sqrt_tau;
    const double d2 = d1 - vol_sqrt_tau;
    const double df_foreign = std::exp(-params.r_f * tau);
    const double df_domestic = std::exp(-params.r_d * tau);

    double px;
    if (contract.kind == OptionKind::call)
        px = contract.spot * df_foreign * std_normal_cdf(d1) -
             contract.strike * df_domestic * std_normal_cdf(d2);
    else
        px = contract.strike * df_domestic * std_normal_cdf(-d2) -
             contract.spot * df_foreign * std_normal_cdf(-d1);
    return PriceQuote{px, sigma_hat, d1, d2};
}

/// Garman-Kohlhagen baseline: constant volatility, no cost or clock effects.
inline PriceQuote gk_price(const OptionContract& contract, double sigma, double r_d, double r_f) {
    if (!(sigma > 0.0)) throw std::domain_error("gk_price: sigma must be > 0");
    ModelParams params{sigma, r_d, r_f, 1.0, 0.5, 0.0, 1.0};
    return price(contract, params, sigma);
}

}  // namespace subfbm
