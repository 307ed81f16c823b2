#ifndef SENECA_COMPETITION_HPP
#define SENECA_COMPETITION_HPP

#include "seneca/error.hpp"
#include "seneca/growth.hpp"
#include "seneca/numerics/events.hpp"
#include "seneca/numerics/integrate.hpp"
#include "seneca/numerics/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>

/**
 * @file competition.hpp
 * Two players drawing on one finite resource pool.
 *
 * Passive competition: each player grows logistically against the shared
 * total, dg_i = alpha_i g_i (1 - g) dt with g = g1 + g2.
 *
 * Active competition adds a symmetric bet. Player 1 wins with probability
 * p = g1/g, and the stake is a fraction gamma of the weaker player's stock,
 * so the net flow towards player 1 is
 *
 *     T = (2p - 1) gamma min(g1, g2).
 *
 * This single expression covers both orderings of the players and vanishes
 * at parity.
 */

namespace seneca {

struct DuopolyParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double g10    = 0.0;
    double g20    = 0.0;
    /// Transfer rate (1/year); 0 gives passive competition.
    double gamma = 0.0;
    /// Shared initial cost fraction; absent for cost-free runs.
    std::optional<double> epsilon;
    /// Extension: separate cost fraction for player 2 (defaults to epsilon).
    std::optional<double> epsilon2;

    double g0() const { return g10 + g20; }
    bool equal_alpha() const { return alpha1 == alpha2; }

    std::optional<double> epsilon_of(int player) const
    {
        if (player == 2 && epsilon2) return epsilon2;
        return epsilon;
    }
    double initial_stock(int player) const { return player == 1 ? g10 : g20; }

    void validate() const
    {
        if (!(alpha1 > 0.0 && std::isfinite(alpha1)) || !(alpha2 > 0.0 && std::isfinite(alpha2))) {
            throw invalid_parameter("growth rates alpha1, alpha2 must be > 0");
        }
        if (!(g10 > 0.0) || !(g20 > 0.0)) {
            throw invalid_parameter("initial stocks g10, g20 must be > 0");
        }
        if (!(g10 + g20 < 1.0)) {
            throw invalid_parameter("initial stocks must satisfy g10 + g20 < 1, got " + std::to_string(g10 + g20));
        }
        if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
            throw invalid_parameter("transfer rate gamma must be >= 0");
        }
        for (const auto& e : {epsilon, epsilon2}) {
            if (e && !(*e > 0.0 && *e < 1.0)) {
                throw invalid_parameter("cost fraction epsilon must satisfy 0 < epsilon < 1");
            }
        }
        if (epsilon2 && !epsilon) {
            throw invalid_parameter("epsilon2 requires epsilon");
        }
    }

    bool operator==(const DuopolyParams&) const = default;
};

struct DuopolyState {
    double g1 = 0.0;
    double g2 = 0.0;

    double total() const { return g1 + g2; }
    bool operator==(const DuopolyState&) const = default;
};

struct DuopolyDerivative {
    double dg1 = 0.0;
    double dg2 = 0.0;
    /// Set at total extinction g = 0, where p = g1/g is undefined. The
    /// derivative is zero there (extinction is absorbing).
    bool degenerate = false;
};

/// Integration constants of the equal-alpha active solution.
struct AnalyticDuopolyConstants {
    double q = 0.0;
    double H = 0.0;
};

inline DuopolyDerivative passive_rhs(const DuopolyState& s, const DuopolyParams& p)
{
    const double free = 1.0 - s.total();
    return {p.alpha1 * s.g1 * free, p.alpha2 * s.g2 * free, false};
}

/// Net transfer towards player 1.
inline double transfer(const DuopolyState& s, double gamma)
{
    const double g = s.total();
    if (g == 0.0) return 0.0;
    return (2.0 * s.g1 / g - 1.0) * gamma * std::min(s.g1, s.g2);
}

inline DuopolyDerivative active_rhs(const DuopolyState& s, const DuopolyParams& p)
{
    if (s.total() == 0.0) {
        return {0.0, 0.0, true};
    }
    auto d         = passive_rhs(s, p);
    const double t = transfer(s, p.gamma);
    d.dg1 += t;
    d.dg2 -= t;
    return d;
}

/// Passive, equal rates: both players share the logistic denominator and
/// their relative shares stay frozen.
inline DuopolyState passive_equal_alpha(double t, const DuopolyParams& p)
{
    p.validate();
    if (!p.equal_alpha()) {
        throw invalid_parameter("passive_equal_alpha requires alpha1 == alpha2");
    }
    const double g0  = p.g0();
    const double x   = std::clamp(p.alpha1 * t, -max_exponent, max_exponent);
    const double den = g0 + (1.0 - g0) * std::exp(-x);
    return {p.g10 / den, p.g20 / den};
}

/// q = (1 - g0)/g0 and H = q/((1 + q) g20) - 2q; requires equal rates and
/// player 1 not behind.
inline AnalyticDuopolyConstants constants_from_initial(const DuopolyParams& p)
{
    p.validate();
    if (!p.equal_alpha()) {
        throw invalid_parameter("analytic active solution requires alpha1 == alpha2");
    }
    if (p.g10 < p.g20) {
        throw invalid_parameter("analytic active solution assumes player 1 leads (g10 >= g20)");
    }
    const double g0 = p.g0();
    const double q  = (1.0 - g0) / g0;
    return {q, q / ((1.0 + q) * p.g20) - 2.0 * q};
}

/// Closed-form active solution for alpha1 = alpha2 = alpha:
///   g1 = (q + H e^{gamma t}) / ((1 + q e^{-alpha t})(2q + H e^{gamma t}))
///   g2 = q / ((1 + q e^{-alpha t})(2q + H e^{gamma t}))
inline DuopolyState active_equal_alpha(double t, const AnalyticDuopolyConstants& c, double alpha, double gamma)
{
    const double total = 1.0 + c.q * std::exp(-std::clamp(alpha * t, -max_exponent, max_exponent));
    const double he    = c.H * std::exp(gamma * t);
    const double den   = total * (2.0 * c.q + he);
    return {(c.q + he) / den, c.q / den};
}

/// C_i = (e/2) g_i (1 + g_i/g_i0).
inline double player_cost(double g_i, double g_i0, double epsilon)
{
    if (!(g_i >= 0.0)) {
        throw domain_error("player stock must be >= 0, got " + std::to_string(g_i));
    }
    if (!(g_i0 > 0.0)) {
        throw domain_error("player initial stock must be > 0");
    }
    return 0.5 * epsilon * g_i * (1.0 + g_i / g_i0);
}

/// A_i = g_i - C_i; zero at g_i = 0 and g_i = g_i0 (2 - e)/e.
inline double player_gain(double g_i, double g_i0, double epsilon)
{
    return g_i - player_cost(g_i, g_i0, epsilon);
}

/// ODE system for numeric integration; state is (g1, g2).
inline auto duopoly_system(const DuopolyParams& p)
{
    return numerics::OdeSystem{2, [p](double, std::span<const double> y, std::span<double> dy) {
                                   const auto d = active_rhs({y[0], y[1]}, p);
                                   dy[0]        = d.dg1;
                                   dy[1]        = d.dg2;
                               }};
}

/// Default fixed step (years) for competition systems.
inline constexpr double default_competition_step = 0.05;

/// RK4 integration over [0, t_end] with the non-negativity floor applied
/// after every step. gamma = 0 gives passive dynamics.
inline numerics::Trajectory simulate_duopoly(const DuopolyParams& p, double t_end,
                                             double dt = default_competition_step)
{
    p.validate();
    const double y0[] = {p.g10, p.g20};
    return numerics::integrate_fixed(duopoly_system(p), std::span<const double>(y0), 0.0, t_end, dt,
                                     numerics::NonNegativeFloor{});
}

/// Same system through the adaptive pair.
inline numerics::Trajectory simulate_duopoly_adaptive(const DuopolyParams& p, double t_end, double rel_tol = 1e-10,
                                                      double abs_tol = 1e-16)
{
    p.validate();
    const double y0[] = {p.g10, p.g20};
    return numerics::integrate_adaptive(duopoly_system(p), std::span<const double>(y0), 0.0, t_end, rel_tol,
                                        abs_tol, numerics::NonNegativeFloor{});
}

namespace detail {
inline void require_duopoly(const numerics::Trajectory& traj)
{
    if (traj.dimension() != 2) {
        throw malformed_trajectory("duopoly analysis needs a 2-column (g1, g2) trajectory, got dimension " +
                                   std::to_string(traj.dimension()));
    }
}
} // namespace detail

/// First time g2 - g1 goes strictly from negative to positive.
inline std::optional<double> crossover_time(const numerics::Trajectory& traj, double tol = 1e-6)
{
    detail::require_duopoly(traj);
    return numerics::first_crossing(
        traj, [](std::span<const double> y) { return y[1] - y[0]; }, numerics::Crossing::rising, tol);
}

/// First time player's gain A_i crosses zero downward. Absent when the run
/// carries no costs or the gain never turns negative.
inline std::optional<double> collapse_time(const numerics::Trajectory& traj, int player, const DuopolyParams& p,
                                           double tol = 1e-6)
{
    detail::require_duopoly(traj);
    if (player != 1 && player != 2) {
        throw invalid_parameter("player must be 1 or 2");
    }
    const auto eps = p.epsilon_of(player);
    if (!eps) return std::nullopt;
    const double gi0     = p.initial_stock(player);
    const std::size_t ix = static_cast<std::size_t>(player - 1);
    return numerics::first_crossing(
        traj, [&](std::span<const double> y) { return player_gain(std::max(y[ix], 0.0), gi0, *eps); },
        numerics::Crossing::falling, tol);
}

/// First time A2 - A1 goes strictly from negative to positive.
inline std::optional<double> gain_crossover_time(const numerics::Trajectory& traj, const DuopolyParams& p,
                                                 double tol = 1e-6)
{
    detail::require_duopoly(traj);
    const auto e1 = p.epsilon_of(1);
    const auto e2 = p.epsilon_of(2);
    if (!e1 || !e2) return std::nullopt;
    return numerics::first_crossing(
        traj,
        [&](std::span<const double> y) {
            return player_gain(std::max(y[1], 0.0), p.g20, *e2) - player_gain(std::max(y[0], 0.0), p.g10, *e1);
        },
        numerics::Crossing::rising, tol);
}

} // namespace seneca

#endif // SENECA_COMPETITION_HPP
