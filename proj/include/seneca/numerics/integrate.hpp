#ifndef SENECA_NUMERICS_INTEGRATE_HPP
#define SENECA_NUMERICS_INTEGRATE_HPP

#include "seneca/error.hpp"
#include "seneca/numerics/trajectory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

namespace seneca::numerics {

/// Right-hand side callable: rhs(t, y, dydt) writes dy/dt into dydt.
template <class F>
concept OdeRhs = std::invocable<const F&, double, std::span<const double>, std::span<double>>;

/// A small autonomous-or-not ODE system y' = rhs(t, y) of fixed dimension.
template <OdeRhs F>
struct OdeSystem {
    std::size_t dimension;
    F rhs;
};

template <class F>
OdeSystem(std::size_t, F) -> OdeSystem<F>;

struct ProjectionResult {
    bool modified = false;
    bool flagged  = false;
};

/// Post-step hook that can move an accepted state back onto the admissible set.
template <class P>
concept StateProjection = requires(const P& p, std::span<double> y) {
    { p(y) } -> std::convertible_to<ProjectionResult>;
};

struct NoProjection {
    ProjectionResult operator()(std::span<double>) const { return {}; }
};

/// Clamps negative components to zero. Undershoots deeper than `tolerance`
/// flag the step.
struct NonNegativeFloor {
    double tolerance = 1e-15;

    ProjectionResult operator()(std::span<double> y) const
    {
        ProjectionResult r;
        for (auto& v : y) {
            if (v < 0.0) {
                r.flagged  = r.flagged || (v < -tolerance);
                r.modified = true;
                v          = 0.0;
            }
        }
        return r;
    }
};

namespace detail {

inline std::string describe_state(double t, std::span<const double> y)
{
    std::ostringstream os;
    os.precision(17);
    os << "t=" << t << " y=(";
    for (std::size_t i = 0; i < y.size(); ++i) {
        os << (i ? ", " : "") << y[i];
    }
    os << ')';
    return os.str();
}

template <class F>
void eval_checked(const OdeSystem<F>& sys, double t, std::span<const double> y, std::span<double> dydt)
{
    sys.rhs(t, y, dydt);
    for (double v : dydt) {
        if (!std::isfinite(v)) {
            throw integration_error("non-finite derivative at " + describe_state(t, y));
        }
    }
}

template <class F>
void check_initial(const OdeSystem<F>& sys, std::span<const double> y0, double t0, double t1)
{
    if (sys.dimension == 0 || y0.size() != sys.dimension) {
        throw invalid_parameter("initial state size does not match system dimension");
    }
    if (!(std::isfinite(t0) && std::isfinite(t1) && t1 > t0)) {
        throw invalid_parameter("integration interval requires finite t1 > t0");
    }
}

} // namespace detail

/**
 * Classic fourth-order Runge-Kutta with constant step `dt`. Node k sits at
 * t0 + k*dt; the last step is shortened so that the final node is exactly t1.
 * The derivative at every node is stored for dense output.
 */
template <class F, StateProjection P = NoProjection>
Trajectory integrate_fixed(const OdeSystem<F>& sys, std::span<const double> y0, double t0, double t1, double dt,
                           const P& projection = {})
{
    detail::check_initial(sys, y0, t0, t1);
    if (!(dt > 0.0 && std::isfinite(dt))) {
        throw invalid_parameter("fixed step dt must be positive");
    }
    const std::size_t n = sys.dimension;
    // Guard against (t1 - t0)/dt landing a hair above an integer.
    const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt * (1.0 - 1e-12)));

    Trajectory traj(n);
    std::vector<double> y(y0.begin(), y0.end()), tmp(n), k1(n), k2(n), k3(n), k4(n);
    detail::eval_checked(sys, t0, y, k1);
    traj.push_back(t0, y, k1);

    double t = t0;
    for (std::size_t step = 1; step <= steps; ++step) {
        const double t_next = (step == steps) ? t1 : t0 + static_cast<double>(step) * dt;
        const double h      = t_next - t;
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        detail::eval_checked(sys, t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        detail::eval_checked(sys, t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        detail::eval_checked(sys, t_next, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        const ProjectionResult pr = projection(std::span<double>(y));
        if (pr.flagged) ++traj.stats().flagged_steps;

        t = t_next;
        detail::eval_checked(sys, t, y, k1);
        traj.push_back(t, y, k1);
        ++traj.stats().accepted_steps;
    }
    return traj;
}

struct AdaptiveOptions {
    double rel_tol      = 1e-10;
    double abs_tol      = 1e-14;
    double initial_step = 0.0; ///< 0 selects a starting step automatically
    double max_step     = std::numeric_limits<double>::infinity();
    double min_step     = 1e-12;
    std::size_t max_steps = 1'000'000;
};

/**
 * Dormand-Prince 5(4) embedded pair with the usual I-controller
 * (safety 0.9, growth clamped to [0.2, 5]). The error norm is the RMS of
 * err_i / (abs_tol + rel_tol * max(|y_i|, |y_new_i|)); a step is accepted
 * when it is <= 1. The fifth-order solution is propagated.
 */
template <class F, StateProjection P = NoProjection>
Trajectory integrate_adaptive(const OdeSystem<F>& sys, std::span<const double> y0, double t0, double t1,
                              const AdaptiveOptions& opt, const P& projection = {})
{
    detail::check_initial(sys, y0, t0, t1);
    if (!(opt.rel_tol > 0.0 && opt.abs_tol > 0.0)) {
        throw invalid_parameter("adaptive tolerances must be positive");
    }

    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b_hat
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const std::size_t n = sys.dimension;
    Trajectory traj(n);
    std::vector<double> y(y0.begin(), y0.end()), yn(n), tmp(n), err(n);
    std::array<std::vector<double>, 7> k;
    for (auto& v : k) v.resize(n);

    double t = t0;
    detail::eval_checked(sys, t, y, k[0]);
    traj.push_back(t, y, k[0]);

    auto scale = [&](double a, double b) {
        return opt.abs_tol + opt.rel_tol * std::max(std::abs(a), std::abs(b));
    };
    auto rms = [&](const std::vector<double>& v, const std::vector<double>& ref) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = v[i] / scale(ref[i], ref[i]);
            s += r * r;
        }
        return std::sqrt(s / static_cast<double>(n));
    };

    double h = opt.initial_step;
    if (h <= 0.0) {
        // Starting step from the size of y and y' (Hairer, Norsett & Wanner II.4).
        const double d0 = rms(y, y);
        const double d1 = rms(k[0], y);
        double h0       = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0              = std::min(h0, t1 - t0);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h0 * k[0][i];
        detail::eval_checked(sys, t + h0, tmp, k[1]);
        for (std::size_t i = 0; i < n; ++i) err[i] = (k[1][i] - k[0][i]) / h0;
        const double d2 = rms(err, y);
        const double h1 = (std::max(d1, d2) <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                      : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
        h = std::min(100.0 * h0, h1);
    }
    h = std::min({h, opt.max_step, t1 - t0});

    std::size_t steps = 0;
    while (t < t1) {
        if (++steps > opt.max_steps) {
            throw integration_error("adaptive integration exceeded max_steps at " + detail::describe_state(t, y));
        }
        bool last = false;
        if (t + h >= t1) {
            h    = t1 - t;
            last = true;
        }
        if (h < opt.min_step && !last) {
            throw integration_error("step-size underflow (h=" + std::to_string(h) + ") at " +
                                    detail::describe_state(t, y));
        }
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k[0][i];
        detail::eval_checked(sys, t + c2 * h, tmp, k[1]);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k[0][i] + a32 * k[1][i]);
        detail::eval_checked(sys, t + c3 * h, tmp, k[2]);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
        detail::eval_checked(sys, t + c4 * h, tmp, k[3]);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
        detail::eval_checked(sys, t + c5 * h, tmp, k[4]);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] + a65 * k[4][i]);
        const double t_new = last ? t1 : t + h;
        detail::eval_checked(sys, t_new, tmp, k[5]);
        for (std::size_t i = 0; i < n; ++i)
            yn[i] = y[i] + h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] + b6 * k[5][i]);
        detail::eval_checked(sys, t_new, yn, k[6]);

        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                                  e7 * k[6][i]);
            const double r = e / scale(y[i], yn[i]);
            norm += r * r;
        }
        norm = std::sqrt(norm / static_cast<double>(n));

        const double factor = (norm == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        if (norm <= 1.0) {
            t = t_new;
            y.swap(yn);
            const ProjectionResult pr = projection(std::span<double>(y));
            if (pr.flagged) ++traj.stats().flagged_steps;
            if (pr.modified) {
                detail::eval_checked(sys, t, y, k[6]);
            }
            k[0].swap(k[6]);
            traj.push_back(t, y, k[0]);
            ++traj.stats().accepted_steps;
            traj.stats().max_error_ratio = std::max(traj.stats().max_error_ratio, norm);
            h = std::min(h * factor, opt.max_step);
        } else {
            ++traj.stats().rejected_steps;
            h *= std::min(1.0, factor);
            if (h < opt.min_step) {
                throw integration_error("step-size underflow (h=" + std::to_string(h) + ") at " +
                                        detail::describe_state(t, y));
            }
        }
    }
    return traj;
}

template <class F, StateProjection P = NoProjection>
Trajectory integrate_adaptive(const OdeSystem<F>& sys, std::span<const double> y0, double t0, double t1,
                              double rel_tol, double abs_tol, const P& projection = {})
{
    AdaptiveOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = abs_tol;
    return integrate_adaptive(sys, y0, t0, t1, opt, projection);
}

} // namespace seneca::numerics

#endif // SENECA_NUMERICS_INTEGRATE_HPP
