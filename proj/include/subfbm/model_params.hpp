#pragma once

#include <stdexcept>
#include <string>

namespace subfbm {

/// Market and model parameter bundle.
///   sigma  volatility per sqrt(year)
///   r_d    domestic rate per year
///   r_f    foreign rate per year
///   alpha  subordinator index; alpha = 1 is the plain-FBM limiting case
///   H      Hurst exponent
///   k      round-trip transaction-cost rate per unit dollar
///   dt     rebalancing interval in years
struct ModelParams {
    double sigma;
    double r_d;
    double r_f;
    double alpha;
    double H;
    double k;
    double dt;

    void validate() const {
        if (!(sigma > 0.0))
            throw std::invalid_argument("ModelParams: sigma must be > 0");
        if (!(alpha > 0.5) || alpha > 1.0)
            throw std::invalid_argument("ModelParams: alpha must lie in (1/2, 1]");
        if (!(H >= 0.5) || H >= 1.0)
            throw std::invalid_argument("ModelParams: H must lie in [1/2, 1)");
        if (!(alpha * (2.0 - H) > 1.0))
            throw std::invalid_argument("ModelParams: 2*alpha - alpha*H > 1 violated");
        if (!(k >= 0.0))
            throw std::invalid_argument("ModelParams: k must be >= 0");
        if (!(dt > 0.0))
            throw std::invalid_argument("ModelParams: dt must be > 0");
    }
};

enum class OptionKind { call, put };

/// European currency option terms. Valuation time t must be strictly
/// positive: the effective timescale t^(alpha-1)/Gamma(alpha) diverges at
/// t = 0 for alpha < 1.
struct OptionContract {
    double spot;
    double strike;
    double t;
    double T;
    OptionKind kind = OptionKind::call;

    void validate() const {
        if (!(spot > 0.0))
            throw std::invalid_argument("OptionContract: spot must be > 0");
        if (!(strike > 0.0))
            throw std::invalid_argument("OptionContract: strike must be > 0");
        if (!(t > 0.0))
            throw std::invalid_argument("OptionContract: valuation time t must be > 0");
        if (!(T > t))
            throw std::invalid_argument("OptionContract: maturity T must exceed t");
    }
};

/// Price plus the effective volatility and d1/d2 that produced it.
struct PriceQuote {
    double price;
    double sigma_hat;
    double d1;
    double d2;
};

}  // namespace subfbm
