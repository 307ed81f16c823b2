#ifndef SENECA_GROWTH_HPP
#define SENECA_GROWTH_HPP

#include "seneca/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

/**
 * @file growth.hpp
 * Logistic growth of normalized goods in a finite resource environment.
 *
 * g is the produced stock as a fraction of the total primary-resource
 * endowment, so it lives in (0, 1). Time is in years and rates are per year
 * throughout the library; there is no unit conversion layer.
 */

namespace seneca {

/// Relative initial growth rate alpha (1/year) and initial normalized stock g0.
class GrowthParams
{
public:
    GrowthParams(double alpha, double g0)
        : alpha_(alpha)
        , g0_(g0)
    {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw invalid_parameter("growth rate alpha must be > 0, got " + std::to_string(alpha));
        }
        if (!(g0 > 0.0 && g0 < 1.0)) {
            throw invalid_parameter("initial stock g0 must satisfy 0 < g0 < 1, got " + std::to_string(g0));
        }
    }

    double alpha() const { return alpha_; }
    double g0() const { return g0_; }

    /// q = 1/g0 - 1, the constant in g = 1 / (1 + q e^{-alpha t}).
    double q() const { return 1.0 / g0_ - 1.0; }

    bool operator==(const GrowthParams&) const = default;

private:
    double alpha_;
    double g0_;
};

/// Largest |alpha t| fed to the exponential. The curve is flat to machine
/// precision well before this point.
inline constexpr double max_exponent = 700.0;

/**
 * g(t) = g0 / (g0 + (1 - g0) e^{-alpha t}), valid for all real t.
 * For t < 0 the algebraically equal form with e^{alpha t} is used so that
 * nothing overflows.
 */
inline double logistic(const GrowthParams& p, double t)
{
    const double x  = std::clamp(p.alpha() * t, -max_exponent, max_exponent);
    const double g0 = p.g0();
    if (x >= 0.0) {
        return g0 / (g0 + (1.0 - g0) * std::exp(-x));
    }
    const double e = std::exp(x);
    return g0 * e / (g0 * e + (1.0 - g0));
}

/// Early-time approximation g ~ g0 e^{alpha t}.
inline double exponential_approx(const GrowthParams& p, double t)
{
    return p.g0() * std::exp(p.alpha() * t);
}

/// dg/dt = alpha g (1 - g).
inline double logistic_rate(const GrowthParams& p, double g)
{
    return p.alpha() * g * (1.0 - g);
}

/// t_i = ln((1 - g0)/g0) / alpha, where g = 1/2 and growth is fastest.
/// No inflection exists for g0 >= 1/2.
inline std::optional<double> inflection_time(const GrowthParams& p)
{
    if (p.g0() >= 0.5) {
        return std::nullopt;
    }
    return std::log((1.0 - p.g0()) / p.g0()) / p.alpha();
}

} // namespace seneca

#endif // SENECA_GROWTH_HPP
