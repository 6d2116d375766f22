#include "subfbm/hedging_analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "subfbm/greeks.hpp"

namespace {

using namespace subfbm;

const ModelParams kFig4Params{0.1, 0.03, 0.02, 0.9, 0.8, 0.01, 0.01};
const OptionContract kFig4Call{1.4, 1.5, 0.1, 1.0, OptionKind::call};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

TEST(OptimalInterval, ClassicalLimits) {
    // H -> 1/2, alpha -> 1: dt* = (2/pi)(k/sigma)^2
    ModelParams p{0.2, 0.03, 0.02, 1.0, 0.5, 0.02, 0.01};
    EXPECT_LE(rel_err(optimal_rebalancing_interval(p, 0.5), 0.0063661977236758134), 1e-12);
    p.k = 0.002;
    EXPECT_LE(rel_err(optimal_rebalancing_interval(p, 0.5), 6.3661977236758134e-5), 1e-12);

    // H -> 1/2 at alpha < 1 keeps the clock factor: A^-1 (2/pi)(k/sigma)^2
    ModelParams q{0.2, 0.03, 0.02, 0.9, 0.5, 0.02, 0.01};
    const double a = effective_timescale(0.9, 0.1);
    EXPECT_LE(rel_err(optimal_rebalancing_interval(q, 0.1),
                      (2.0 / M_PI) * 0.01 / a), 1e-12);
}

TEST(OptimalInterval, TermEqualityAtDtStar) {
    const double dt_star = optimal_rebalancing_interval(kFig4Params, 0.1);
    EXPECT_LE(rel_err(dt_star, 0.035995806745097036), 1e-12);
    const double a = effective_timescale(0.9, 0.1);
    const double term1 = std::pow(a, 1.6) * std::pow(dt_star, 0.6);
    const double term2 = kSqrt2OverPi * (kFig4Params.k / kFig4Params.sigma) * std::pow(a, 0.8) *
                         std::pow(dt_star, -0.2);
    EXPECT_LE(rel_err(term1, term2), 1e-12);
    EXPECT_LE(rel_err(term1, 0.17685942612032022), 1e-12);
}

TEST(OptimalInterval, DegenerateWithoutCosts) {
    ModelParams p = kFig4Params;
    p.k = 0.0;
    EXPECT_THROW(optimal_rebalancing_interval(p, 0.1), std::domain_error);
    EXPECT_THROW(minimal_volatility(p, 0.1), std::domain_error);
    EXPECT_THROW(minimal_price(kFig4Call, p), std::domain_error);
}

TEST(MinimalVolatility, ClosedFormAndConsistency) {
    // H -> 1/2, alpha -> 1: sqrt(2) sigma
    ModelParams p{0.2, 0.03, 0.02, 1.0, 0.5, 0.02, 0.01};
    EXPECT_LE(rel_err(minimal_volatility(p, 0.5), 0.28284271247461901), 1e-12);

    // H -> 1/2 at alpha = 0.9, t = 0.1: sigma sqrt(2 A)
    ModelParams q{0.2, 0.03, 0.02, 0.9, 0.5, 0.02, 0.01};
    EXPECT_LE(rel_err(minimal_volatility(q, 0.1), 0.30699519365272902), 1e-12);

    // matches the volatility evaluated at dt*
    EXPECT_LE(rel_err(minimal_volatility(kFig4Params, 0.1), 0.059474267733250860), 1e-12);
    ModelParams at_star = kFig4Params;
    at_star.dt = optimal_rebalancing_interval(kFig4Params, 0.1);
    EXPECT_LE(rel_err(modified_volatility(at_star, 0.1), minimal_volatility(kFig4Params, 0.1)),
              1e-12);
}

TEST(MinimalPrice, Fig4Triple) {
    const MinPriceResult r = minimal_price(kFig4Call, kFig4Params);
    EXPECT_LE(rel_err(r.dt_star, 0.035995806745097036), 1e-12);
    EXPECT_LE(rel_err(r.sigma_min, 0.059474267733250860), 1e-12);
    EXPECT_LE(rel_err(r.c_min, 0.0058943399093029797), 1e-12);
}

// The closed-form dt* balances the two variance terms; on the branch above it
// the volatility (and hence the call price, vega being positive) does stay
// above the dt* level.
TEST(MinimalPrice, PriceFloorOnUpperBranch) {
    const MinPriceResult r = minimal_price(kFig4Call, kFig4Params);
    for (int i = 0; i <= 50; ++i) {
        ModelParams p = kFig4Params;
        p.dt = r.dt_star * std::pow(100.0, i / 50.0);
        EXPECT_GE(price(kFig4Call, p).price, r.c_min - 1e-12);
    }
}

// At H = 2/3 the term-balance point is the true stationary point of the
// volatility, so the floor holds on both sides.
TEST(MinimalPrice, TwoThirdsHurstIsGlobalFloor) {
    ModelParams p{0.1, 0.03, 0.02, 0.9, 2.0 / 3.0, 0.01, 0.01};
    const double dt_star = optimal_rebalancing_interval(p, 0.1);
    const double sig_min = minimal_volatility(p, 0.1);
    for (int i = 0; i <= 100; ++i) {
        ModelParams q = p;
        q.dt = dt_star / 100.0 * std::pow(1e4, i / 100.0);
        EXPECT_GE(modified_volatility(q, 0.1), sig_min * (1.0 - 1e-10));
    }
}

TEST(AmGmBound, HoldsWithEqualityAtDtStar) {
    std::mt19937_64 gen(55);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ModelParams p;
        p.sigma = 0.05 + 0.45 * u(gen);
        p.r_d = 0.05;
        p.r_f = 0.02;
        p.H = 0.55 + 0.4 * u(gen);
        p.alpha = 1.0 / (2.0 - p.H) + (1.0 - 1.0 / (2.0 - p.H)) * (0.05 + 0.95 * u(gen));
        p.k = 0.001 + 0.02 * u(gen);
        p.dt = std::pow(10.0, -3.5 + 3.0 * u(gen));
        const double t = 0.05 + u(gen);
        p.validate();

        const double a = effective_timescale(p.alpha, t);
        const double ratio = std::pow(modified_volatility(p, t) / p.sigma, 2);
        const double bound = 2.0 * std::pow(a, 1.5 * p.H) * std::pow(p.dt, 1.5 * p.H - 1.0) *
                             std::pow(2.0 / M_PI, 0.25) * std::sqrt(p.k / p.sigma);
        EXPECT_GE(ratio, bound * (1.0 - 1e-12));

        ModelParams at_star = p;
        at_star.dt = optimal_rebalancing_interval(p, t);
        const double ratio_star = std::pow(modified_volatility(at_star, t) / p.sigma, 2);
        const double bound_star = 2.0 * std::pow(a, 1.5 * p.H) *
                                  std::pow(at_star.dt, 1.5 * p.H - 1.0) *
                                  std::pow(2.0 / M_PI, 0.25) * std::sqrt(p.k / p.sigma);
        EXPECT_LE(rel_err(ratio_star, bound_star), 1e-10);
    }
}

TEST(VolSensitivityH, ClosedFormAgainstFiniteDifference) {
    EXPECT_LE(rel_err(vol_sensitivity_H(kFig4Params, 0.1), -0.15642430255911905), 1e-12);

    const double h = 1e-6;
    ModelParams up = kFig4Params, dn = kFig4Params;
    up.H += h;
    dn.H -= h;
    const double fd = (modified_volatility(up, 0.1) - modified_volatility(dn, 0.1)) / (2 * h);
    EXPECT_LE(rel_err(vol_sensitivity_H(kFig4Params, 0.1), fd), 1e-6);

    // sign equals sign of ln(A dt); A dt < 1 at these parameters
    EXPECT_LT(vol_sensitivity_H(kFig4Params, 0.1), 0.0);

    // A = 1, dt = 1 makes the logarithm vanish
    ModelParams unit{0.1, 0.03, 0.02, 1.0, 0.8, 0.01, 1.0};
    EXPECT_EQ(vol_sensitivity_H(unit, 0.7), 0.0);
}

TEST(VolSensitivityH, ChainRuleSignOnPrice) {
    const double h = 1e-6;
    ModelParams up = kFig4Params, dn = kFig4Params;
    up.H += h;
    dn.H -= h;
    const double dprice_dH =
        (price(kFig4Call, up).price - price(kFig4Call, dn).price) / (2 * h);
    EXPECT_LT(dprice_dH, 0.0);
    const double vega = greeks(kFig4Call, kFig4Params).vega;
    EXPECT_LE(rel_err(dprice_dH, vega * vol_sensitivity_H(kFig4Params, 0.1)), 1e-6);
}

TEST(ScalingFree, NoDtImpactAtHalfHurstWithoutCosts) {
    ModelParams a{0.3, 0.03, 0.02, 0.9, 0.5, 0.0, 0.001};
    ModelParams b = a;
    b.dt = 0.5;
    EXPECT_LE(rel_err(modified_volatility(a, 0.2), modified_volatility(b, 0.2)), 1e-14);
}

}  // namespace
