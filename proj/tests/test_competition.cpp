#include "seneca/competition.hpp"
#include "seneca/cost_gain.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using seneca::DuopolyParams;
using seneca::DuopolyState;

namespace {

DuopolyParams fig4()
{
    return {.alpha1 = 0.03, .alpha2 = 0.0375, .g10 = 0.51e-4, .g20 = 0.49e-4, .gamma = 0.01};
}

DuopolyParams fig5()
{
    auto p    = fig4();
    p.epsilon = 0.01;
    return p;
}

DuopolyParams equal_alpha_active()
{
    return {.alpha1 = 0.03, .alpha2 = 0.03, .g10 = 0.51e-4, .g20 = 0.49e-4, .gamma = 0.01};
}

// Builds a trajectory from the closed form with exact derivatives at nodes.
seneca::numerics::Trajectory analytic_trajectory(const DuopolyParams& p, double t_end, double dt)
{
    const auto c = seneca::constants_from_initial(p);
    seneca::numerics::Trajectory traj(2);
    const auto n = static_cast<int>(std::lround(t_end / dt));
    for (int i = 0; i <= n; ++i) {
        const double t = i * dt;
        const auto s   = seneca::active_equal_alpha(t, c, p.alpha1, p.gamma);
        const auto d   = seneca::active_rhs(s, p);
        const double y[] = {s.g1, s.g2}, dy[] = {d.dg1, d.dg2};
        traj.push_back(t, y, dy);
    }
    return traj;
}

} // namespace

TEST(DuopolyParams, Validation)
{
    EXPECT_NO_THROW(fig4().validate());
    auto p = fig4();
    p.g10  = 0.6;
    p.g20  = 0.4;
    EXPECT_THROW(p.validate(), seneca::invalid_parameter);
    p       = fig4();
    p.gamma = -0.1;
    EXPECT_THROW(p.validate(), seneca::invalid_parameter);
    p        = fig4();
    p.alpha2 = 0.0;
    EXPECT_THROW(p.validate(), seneca::invalid_parameter);
    p     = fig4();
    p.g20 = 0.0;
    EXPECT_THROW(p.validate(), seneca::invalid_parameter);
    p         = fig4();
    p.epsilon = 1.0;
    EXPECT_THROW(p.validate(), seneca::invalid_parameter);
    p          = fig4();
    p.epsilon2 = 0.02;
    EXPECT_THROW(p.validate(), seneca::invalid_parameter);
}

TEST(PassiveRhs, FixedPointsAndValues)
{
    const auto p = fig4();
    auto d       = seneca::passive_rhs({0.0, 0.0}, p);
    EXPECT_EQ(d.dg1, 0.0);
    EXPECT_EQ(d.dg2, 0.0);
    d = seneca::passive_rhs({0.25, 0.75}, p);
    EXPECT_EQ(d.dg1, 0.0);
    EXPECT_EQ(d.dg2, 0.0);
    DuopolyParams q{.alpha1 = 0.03, .alpha2 = 0.04, .g10 = 0.1, .g20 = 0.2};
    d = seneca::passive_rhs({0.1, 0.2}, q);
    EXPECT_NEAR(d.dg1, 0.0021, 1e-15);
    EXPECT_NEAR(d.dg2, 0.0056, 1e-15);
}

TEST(PassiveEqualAlpha, FrozenShares)
{
    DuopolyParams p{.alpha1 = 0.03, .alpha2 = 0.03, .g10 = 0.7e-4, .g20 = 0.3e-4};
    const auto s0 = seneca::passive_equal_alpha(0.0, p);
    EXPECT_DOUBLE_EQ(s0.g1, p.g10);
    EXPECT_DOUBLE_EQ(s0.g2, p.g20);
    const seneca::GrowthParams total(0.03, p.g0());
    for (double t = 0.0; t <= 600.0; t += 2.5) {
        const auto s = seneca::passive_equal_alpha(t, p);
        EXPECT_NEAR(s.g1 * p.g20 - s.g2 * p.g10, 0.0, 1e-12 * s.total());
        EXPECT_NEAR(s.total(), seneca::logistic(total, t), 1e-14);
    }
    const auto s = seneca::passive_equal_alpha(500.0, p);
    EXPECT_NEAR(s.g1 / s.g2, p.g10 / p.g20, 1e-12);
    EXPECT_THROW(seneca::passive_equal_alpha(1.0, fig4()), seneca::invalid_parameter);
}

TEST(ActiveRhs, TransferTerm)
{
    auto p  = fig4();
    p.gamma = 0.01;
    // Parity: no transfer.
    EXPECT_EQ(seneca::transfer({0.2, 0.2}, p.gamma), 0.0);
    const auto a = seneca::active_rhs({0.2, 0.2}, p);
    const auto b = seneca::passive_rhs({0.2, 0.2}, p);
    EXPECT_EQ(a.dg1, b.dg1);
    EXPECT_EQ(a.dg2, b.dg2);
    // (2*(2/3) - 1) * 0.01 * 0.1
    EXPECT_NEAR(seneca::transfer({0.2, 0.1}, p.gamma), 1.0 / 3.0 * 1e-3, 1e-18);
    // Role swap: the stake is always the weaker player's stock.
    EXPECT_NEAR(seneca::transfer({0.1, 0.2}, p.gamma), -1.0 / 3.0 * 1e-3, 1e-18);
}

TEST(ActiveRhs, DegenerateExtinction)
{
    const auto d = seneca::active_rhs({0.0, 0.0}, fig4());
    EXPECT_TRUE(d.degenerate);
    EXPECT_EQ(d.dg1, 0.0);
    EXPECT_EQ(d.dg2, 0.0);
    EXPECT_FALSE(seneca::active_rhs({0.1, 0.0}, fig4()).degenerate);
}

TEST(ActiveRhs, PropertyConservationAndContinuity)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        DuopolyParams p{.alpha1 = 0.01 + 0.05 * u(rng), .alpha2 = 0.01 + 0.05 * u(rng), .g10 = 1e-4, .g20 = 1e-4,
                        .gamma = 0.1 * u(rng)};
        const double g1 = 0.5 * u(rng), g2 = 0.5 * u(rng);
        const auto a    = seneca::active_rhs({g1, g2}, p);
        const auto b    = seneca::passive_rhs({g1, g2}, p);
        // gamma-dependent parts cancel (up to rounding of the additions)
        const double scale = std::max(std::abs(a.dg1), std::abs(a.dg2));
        ASSERT_NEAR((a.dg1 - b.dg1) + (a.dg2 - b.dg2), 0.0, 4e-16 * scale);
        ASSERT_NEAR(a.dg1 + a.dg2, b.dg1 + b.dg2, 1e-16);
        // continuity across g1 = g2
        const double eps = 1e-9;
        ASSERT_NEAR(seneca::transfer({g1 + eps, g1}, p.gamma), seneca::transfer({g1 - eps, g1}, p.gamma), 1e-9);
    }
}

TEST(ConstantsFromInitial, Values)
{
    DuopolyParams sym{.alpha1 = 0.03, .alpha2 = 0.03, .g10 = 0.5e-4, .g20 = 0.5e-4, .gamma = 0.01};
    const auto c0 = seneca::constants_from_initial(sym);
    EXPECT_NEAR(c0.H, 0.0, 1e-9);

    const auto c = seneca::constants_from_initial(equal_alpha_active());
    EXPECT_NEAR(c.q, 9999.0, 1e-9);
    // 9999 / (10000 * 0.49e-4) - 19998 = 408.1224489795918...
    EXPECT_NEAR(c.H, 408.12244897959184, 1e-7);
    const auto s = seneca::active_equal_alpha(0.0, c, 0.03, 0.01);
    EXPECT_NEAR(s.g1, 0.51e-4, 1e-12 * 0.51e-4);
    EXPECT_NEAR(s.g2, 0.49e-4, 1e-12 * 0.49e-4);

    auto behind = equal_alpha_active();
    std::swap(behind.g10, behind.g20);
    EXPECT_THROW(seneca::constants_from_initial(behind), seneca::invalid_parameter);
    EXPECT_THROW(seneca::constants_from_initial(fig4()), seneca::invalid_parameter);
}

TEST(ConstantsFromInitial, PropertyHPositiveWhenPlayerTwoBehind)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double g0 = std::pow(10.0, -6.0 + 5.5 * u(rng));
        const double f  = 0.01 + 0.48 * u(rng); // player 2 share < 1/2
        DuopolyParams p{.alpha1 = 0.03, .alpha2 = 0.03, .g10 = (1 - f) * g0, .g20 = f * g0, .gamma = 0.01};
        const auto c = seneca::constants_from_initial(p);
        ASSERT_GT(c.H, 0.0);
        const auto s = seneca::active_equal_alpha(0.0, c, 0.03, 0.01);
        ASSERT_NEAR(s.g1 / p.g10, 1.0, 1e-12);
        ASSERT_NEAR(s.g2 / p.g20, 1.0, 1e-12);
    }
}

TEST(ActiveEqualAlpha, SumIsLogisticAndSolvesOde)
{
    const auto p = equal_alpha_active();
    const auto c = seneca::constants_from_initial(p);
    const seneca::GrowthParams total(0.03, 1.0 / (1.0 + c.q));
    const double h = 1e-3;
    for (int i = 0; i < 100; ++i) {
        const double t = 6.0 * i + 1.0;
        const auto s   = seneca::active_equal_alpha(t, c, p.alpha1, p.gamma);
        EXPECT_NEAR(s.total(), seneca::logistic(total, t), 1e-12);
        EXPECT_GT(s.g1, s.g2); // lead preserved
        const auto sp = seneca::active_equal_alpha(t + h, c, p.alpha1, p.gamma);
        const auto sm = seneca::active_equal_alpha(t - h, c, p.alpha1, p.gamma);
        const auto d  = seneca::active_rhs(s, p);
        EXPECT_NEAR(((sp.g2 - sm.g2) / (2 * h)) / d.dg2, 1.0, 1e-6) << "t=" << t;
        EXPECT_NEAR(((sp.g1 - sm.g1) / (2 * h)) / d.dg1, 1.0, 1e-6) << "t=" << t;
    }
}

TEST(ActiveEqualAlpha, SumIndependentOfGamma)
{
    auto p = equal_alpha_active();
    for (double t = 0.0; t <= 600.0; t += 10.0) {
        double ref = -1.0;
        for (double gamma : {0.0, 0.01, 0.1}) {
            p.gamma      = gamma;
            const auto s = seneca::active_equal_alpha(t, seneca::constants_from_initial(p), p.alpha1, gamma);
            if (ref < 0) ref = s.total();
            EXPECT_NEAR(s.total(), ref, 1e-12);
        }
    }
}

TEST(ActiveEqualAlpha, MatchesRk4)
{
    const auto p    = equal_alpha_active();
    const auto c    = seneca::constants_from_initial(p);
    const auto traj = seneca::simulate_duopoly(p, 600.0, 0.1);
    double max_err  = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto s = seneca::active_equal_alpha(traj.time(i), c, p.alpha1, p.gamma);
        max_err      = std::max({max_err, std::abs(s.g1 - traj.component(i, 0)), std::abs(s.g2 - traj.component(i, 1))});
    }
    EXPECT_LE(max_err, 1e-8);
}

TEST(PlayerCostGain, Values)
{
    const double gi0 = 0.49e-4, eps = 0.01;
    EXPECT_NEAR(seneca::player_cost(gi0, gi0, eps), eps * gi0, 1e-20);
    EXPECT_EQ(seneca::player_cost(0.0, gi0, eps), 0.0);
    EXPECT_NEAR(seneca::player_cost(2 * gi0, gi0, eps), 0.03 * gi0, 1e-20);
    EXPECT_NEAR(seneca::player_gain(gi0, gi0, eps), gi0 * (1 - eps), 1e-20);
    EXPECT_EQ(seneca::player_gain(0.0, gi0, eps), 0.0);
    EXPECT_NEAR(seneca::player_gain(gi0 * (2 - eps) / eps, gi0, eps), 0.0, 1e-18);
    EXPECT_THROW(seneca::player_cost(-1e-9, gi0, eps), seneca::domain_error);
    EXPECT_THROW(seneca::player_gain(-1e-9, gi0, eps), seneca::domain_error);
}

TEST(Simulation, NonNegativeAndBounded)
{
    for (const auto& p : {fig4(), fig5(), equal_alpha_active()}) {
        const auto traj = seneca::simulate_duopoly(p, 600.0);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            ASSERT_GE(traj.component(i, 0), 0.0);
            ASSERT_GE(traj.component(i, 1), 0.0);
            ASSERT_LT(traj.component(i, 0) + traj.component(i, 1), 1.0);
        }
    }
}

TEST(CrossoverTime, Fig4)
{
    const auto traj = seneca::simulate_duopoly(fig4(), 600.0);
    const auto tx   = seneca::crossover_time(traj);
    ASSERT_TRUE(tx.has_value());
    // Reference from an independent 8th-order integration at rtol 1e-13.
    EXPECT_NEAR(*tx, 5.480155675, 1e-5);
    const auto half = seneca::crossover_time(seneca::simulate_duopoly(fig4(), 600.0, 0.025));
    EXPECT_NEAR(*tx, *half, 1e-3);
    const auto adaptive = seneca::crossover_time(seneca::simulate_duopoly_adaptive(fig4(), 600.0));
    ASSERT_TRUE(adaptive.has_value());
    EXPECT_NEAR(*tx, *adaptive, 1e-3);
}

TEST(CrossoverTime, AbsentCases)
{
    DuopolyParams equal{.alpha1 = 0.03, .alpha2 = 0.03, .g10 = 0.5e-4, .g20 = 0.5e-4, .gamma = 0.01};
    EXPECT_FALSE(seneca::crossover_time(seneca::simulate_duopoly(equal, 600.0)).has_value());
    EXPECT_FALSE(seneca::crossover_time(seneca::simulate_duopoly(equal_alpha_active(), 600.0)).has_value());
    EXPECT_FALSE(seneca::crossover_time(analytic_trajectory(equal_alpha_active(), 600.0, 0.5)).has_value());
}

TEST(CrossoverTime, MalformedTrajectory)
{
    seneca::numerics::Trajectory one(1);
    EXPECT_THROW(seneca::crossover_time(one), seneca::malformed_trajectory);
    EXPECT_THROW(seneca::collapse_time(one, 1, fig5()), seneca::malformed_trajectory);
}

TEST(CollapseTime, Fig5)
{
    const auto p    = fig5();
    const auto traj = seneca::simulate_duopoly(p, 600.0);
    const auto c1   = seneca::collapse_time(traj, 1, p);
    const auto c2   = seneca::collapse_time(traj, 2, p);
    ASSERT_TRUE(c1 && c2);
    EXPECT_NEAR(*c1, 217.262482575, 1e-5);
    EXPECT_NEAR(*c2, 136.941501399, 1e-5);
    // The faster grower meets its collapse first.
    EXPECT_LT(*c2, *c1);
    EXPECT_THROW(seneca::collapse_time(traj, 3, p), seneca::invalid_parameter);
}

TEST(CollapseTime, Fig5GainsHaveInteriorPeaks)
{
    const auto p    = fig5();
    const auto traj = seneca::simulate_duopoly(p, 600.0);
    for (int player : {1, 2}) {
        const auto ix  = static_cast<std::size_t>(player - 1);
        const auto gi0 = p.initial_stock(player);
        std::size_t best = 0;
        double best_v    = -1e300;
        const double tc  = *seneca::collapse_time(traj, player, p);
        for (std::size_t i = 0; i < traj.size() && traj.time(i) <= tc; ++i) {
            const double a = seneca::player_gain(traj.component(i, ix), gi0, 0.01);
            if (a > best_v) best_v = a, best = i;
        }
        EXPECT_GT(best, 0u);
        EXPECT_LT(traj.time(best), tc);
        EXPECT_GT(best_v, seneca::player_gain(gi0, gi0, 0.01));
    }
}

TEST(CollapseTime, AbsentWithoutCosts)
{
    const auto traj = seneca::simulate_duopoly(fig4(), 600.0);
    EXPECT_FALSE(seneca::collapse_time(traj, 1, fig4()).has_value());
    auto p    = fig4();
    p.epsilon = 1e-12; // costs vanish: A_i < 0 needs g_i > 2e12 g_i0
    EXPECT_FALSE(seneca::collapse_time(traj, 1, p).has_value());
    EXPECT_FALSE(seneca::collapse_time(traj, 2, p).has_value());
}

TEST(CollapseTime, SinglePlayerReductionMatchesBreakeven)
{
    DuopolyParams p{.alpha1 = 0.03, .alpha2 = 0.03, .g10 = 1e-4, .g20 = 1e-12, .gamma = 0.0, .epsilon = 0.01};
    const auto tc = seneca::collapse_time(seneca::simulate_duopoly(p, 600.0), 1, p);
    const auto ts = seneca::breakeven_time(0.01, seneca::GrowthParams(0.03, 1e-4));
    ASSERT_TRUE(tc && ts);
    EXPECT_NEAR(*tc, *ts, 1e-4);
}

TEST(GainCrossover, Fig5)
{
    const auto p    = fig5();
    const auto traj = seneca::simulate_duopoly(p, 600.0);
    const auto gx   = seneca::gain_crossover_time(traj, p);
    ASSERT_TRUE(gx.has_value());
    EXPECT_NEAR(*gx, 5.512836738, 1e-5);
    EXPECT_FALSE(seneca::gain_crossover_time(traj, fig4()).has_value());
}
