#include "subfbm/mc_hedging.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace {

using namespace subfbm;

const ModelParams kFig4Params{0.1, 0.03, 0.02, 0.9, 0.8, 0.01, 0.01};
const OptionContract kFig4Call{1.4, 1.5, 0.1, 1.0, OptionKind::call};

TEST(AssetIncrement, Basics) {
    const auto zero = asset_increment(1.4, kFig4Params, 0.0, 0.0);
    EXPECT_EQ(zero.exact, 0.0);
    EXPECT_EQ(zero.second_order, 0.0);

    ModelParams still = kFig4Params;
    still.sigma = 1e-300;  // effectively deterministic carry branch
    const auto det = asset_increment(2.0, still, 0.05, 0.0);
    EXPECT_NEAR(det.exact, 2.0 * std::expm1(0.01 * 0.05), 1e-18);

    EXPECT_THROW(asset_increment(0.0, kFig4Params, 0.0, 0.0), std::domain_error);
}

// With matched antithetic noise, zero carry, and the identity clock the mean
// gap between the exact increment and its second-order expansion is the
// fourth-moment remainder ~ sigma^4 dt^(4H) / 8, so halving dt at H = 3/4
// shrinks it by a factor of 8.
TEST(AssetIncrement, ExpansionConvergenceOrder) {
    ModelParams p{0.2, 0.03, 0.03, 1.0, 0.75, 0.0, 0.01};
    RngStream rng(4242);
    const int n = 20000;
    std::vector<double> z(n);
    for (auto& v : z) v = rng.normal();

    auto mean_gap = [&](double dt) {
        const double w_scale = std::pow(dt, p.H);
        double sum = 0.0;
        for (double zi : z) {
            const auto up = asset_increment(1.0, p, dt, w_scale * zi);
            const auto dn = asset_increment(1.0, p, dt, -w_scale * zi);
            sum += 0.5 * ((up.exact - up.second_order) + (dn.exact - dn.second_order));
        }
        return sum / n;
    };

    const double g1 = mean_gap(0.01);
    const double g2 = mean_gap(0.005);
    EXPECT_GT(g1, 0.0);
    EXPECT_GT(g2, 0.0);
    EXPECT_NEAR(g1 / g2, 8.0, 0.5) << "g1 " << g1 << " g2 " << g2;
}

// The cancellation at the heart of the construction: with the squared-noise
// and cost moments replaced by their first-order approximations, the expected
// one-step discrepancy reduces to the pricing PDE residual, identically zero.
TEST(PdeResidual, VanishesAtRandomPoints) {
    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        ModelParams p;
        p.sigma = 0.05 + 0.45 * u(gen);
        p.r_d = 0.08 * u(gen);
        p.r_f = 0.08 * u(gen);
        p.H = 0.55 + 0.35 * u(gen);
        p.alpha = 1.0 / (2.0 - p.H) + (1.0 - 1.0 / (2.0 - p.H)) * (0.1 + 0.9 * u(gen));
        p.k = 0.02 * u(gen);
        p.dt = 0.002 + 0.05 * u(gen);
        OptionContract c;
        c.spot = 0.7 + u(gen);
        c.strike = c.spot * (0.8 + 0.4 * u(gen));
        c.t = 0.05 + 0.5 * u(gen);
        c.T = c.t + 0.2 + 1.5 * u(gen);
        c.kind = OptionKind::call;
        p.validate();
        c.validate();

        const double scale = std::abs(p.r_d * price(c, p).price) + 1e-30;
        EXPECT_LE(std::abs(pde_residual(c, p)), 1e-12 * std::max(scale, 1e-6))
            << "point " << i;
    }
}

TEST(HedgeStep, InputValidation) {
    RngStream rng(1);
    EXPECT_THROW(hedge_step_experiment(kFig4Call, kFig4Params, 1, rng), std::invalid_argument);
    EXPECT_THROW(hedge_step_experiment(kFig4Call, kFig4Params, 9999, rng),
                 std::invalid_argument);
    ModelParams wide = kFig4Params;
    wide.dt = 1.0;  // t + dt >= T
    EXPECT_THROW(hedge_step_experiment(kFig4Call, wide, 10000, rng), std::invalid_argument);
    OptionContract put = kFig4Call;
    put.kind = OptionKind::put;
    EXPECT_THROW(hedge_step_experiment(put, kFig4Params, 10000, rng), std::invalid_argument);
}

TEST(HedgeStep, ClassicalCaseUnbiased) {
    // k = 0, alpha = 1, H = 1/2, small step: the plain delta-hedge argument
    ModelParams p{0.1, 0.03, 0.02, 1.0, 0.5, 0.0, 0.001};
    RngStream rng(31415);
    const auto r = hedge_step_experiment(kFig4Call, p, 20000, rng);
    EXPECT_LE(std::abs(r.mean_discrepancy), 3.0 * r.std_error)
        << "mean " << r.mean_discrepancy << " se " << r.std_error;
    EXPECT_EQ(r.mean_transaction_cost, 0.0);
    EXPECT_GT(r.std_error, 0.0);
}

TEST(HedgeStep, TransactionCostsNonnegativeAndReported) {
    RngStream rng(7);
    const auto r = hedge_step_experiment(kFig4Call, kFig4Params, 10000, rng, 5e-4);
    EXPECT_GT(r.mean_transaction_cost, 0.0);
    EXPECT_GT(r.residual_bound, 0.0);
    EXPECT_GT(r.mean_dT_pow_2H, 0.0);
    EXPECT_GT(r.mean_dT_pow_H, 0.0);
}

TEST(HedgeStep, Reproducible) {
    RngStream a(99), b(99);
    const auto r1 = hedge_step_experiment(kFig4Call, kFig4Params, 10000, a, 1e-3);
    const auto r2 = hedge_step_experiment(kFig4Call, kFig4Params, 10000, b, 1e-3);
    EXPECT_EQ(r1.mean_discrepancy, r2.mean_discrepancy);
    EXPECT_EQ(r1.std_error, r2.std_error);
    EXPECT_EQ(r1.mean_transaction_cost, r2.mean_transaction_cost);
    EXPECT_EQ(r1.residual_bound, r2.residual_bound);
}

TEST(HedgeStep, StandardErrorCltScaling) {
    ModelParams p{0.1, 0.03, 0.02, 1.0, 0.5, 0.0, 0.001};
    RngStream a(11), b(11);
    const auto r1 = hedge_step_experiment(kFig4Call, p, 10000, a);
    const auto r2 = hedge_step_experiment(kFig4Call, p, 20000, b);
    EXPECT_NEAR(r1.std_error / r2.std_error, std::sqrt(2.0), 0.25);
}

TEST(ReplicatingPortfolio, MatchesPriceAndDelta) {
    const auto book = replicating_portfolio(kFig4Call, kFig4Params);
    const auto q = price(kFig4Call, kFig4Params);
    EXPECT_DOUBLE_EQ(book.portfolio_value, q.price);
    EXPECT_DOUBLE_EQ(book.stock_units * kFig4Call.spot + book.bond_value, q.price);
    EXPECT_GT(book.stock_units, 0.0);
    EXPECT_LT(book.stock_units, 1.0);
}

}  // namespace
