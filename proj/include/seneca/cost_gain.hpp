#ifndef SENECA_COST_GAIN_HPP
#define SENECA_COST_GAIN_HPP

#include "seneca/error.hpp"
#include "seneca/growth.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

/**
 * @file cost_gain.hpp
 * Physical cost of keeping a growing system running, and the net gain left
 * over. Costs follow the lower bound of the super-linear law
 *
 *     C(g) = mu g + beta g^2 / 2
 *
 * (linear in raw material throughput, quadratic in the energy flux needed to
 * move it). Systems whose complexity makes costs grow faster than quadratic
 * are not modelled.
 *
 * The characteristic-time functions (breakeven, gain peak, absorption before
 * inflection) all assume the equal-weight calibration produced by calibrate().
 */

namespace seneca {

/// Cost coefficients. epsilon is the initial cost fraction C(g0) = epsilon*g0.
class CostParams
{
public:
    CostParams(double epsilon, double mu, double beta)
        : epsilon_(epsilon)
        , mu_(mu)
        , beta_(beta)
    {
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw invalid_parameter("cost fraction epsilon must satisfy 0 < epsilon < 1, got " +
                                    std::to_string(epsilon));
        }
        if (!(mu >= 0.0) || !std::isfinite(mu)) {
            throw invalid_parameter("linear cost coefficient mu must be >= 0");
        }
        if (!(beta >= 0.0) || !std::isfinite(beta)) {
            throw invalid_parameter("quadratic cost coefficient beta must be >= 0");
        }
    }

    double epsilon() const { return epsilon_; }
    double mu() const { return mu_; }
    double beta() const { return beta_; }

    bool operator==(const CostParams&) const = default;

private:
    double epsilon_;
    double mu_;
    double beta_;
};

/// Initial cost C0 = epsilon * g0.
inline double initial_cost(double epsilon, const GrowthParams& growth)
{
    return epsilon * growth.g0();
}

/// Equal initial weight of the linear and quadratic parts: mu = epsilon/2,
/// beta = epsilon/g0, so that C(g0) = epsilon*g0.
inline CostParams calibrate(double epsilon, const GrowthParams& growth)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw invalid_parameter("cost fraction epsilon must satisfy 0 < epsilon < 1, got " +
                                std::to_string(epsilon));
    }
    return CostParams(epsilon, epsilon / 2.0, epsilon / growth.g0());
}

inline double cost_of_g(double g, const CostParams& costs)
{
    if (!(g >= 0.0 && g <= 1.0)) {
        throw domain_error("cost_of_g requires 0 <= g <= 1, got " + std::to_string(g));
    }
    return costs.mu() * g + 0.5 * costs.beta() * g * g;
}

inline double cost_at_time(double t, const GrowthParams& growth, const CostParams& costs)
{
    return cost_of_g(logistic(growth, t), costs);
}

/// A = g - C. Signed: negative once costs exceed gross production.
inline double gain_at_time(double t, const GrowthParams& growth, const CostParams& costs)
{
    const double g = logistic(growth, t);
    return g - cost_of_g(g, costs);
}

/// Costs ever catch up with gross production iff epsilon > 2 g0 / (1 + g0).
inline bool breakeven_exists(double epsilon, const GrowthParams& growth)
{
    const double g0 = growth.g0();
    return epsilon > 2.0 * g0 / (1.0 + g0);
}

/**
 * Time t* at which calibrated costs equal gross production:
 *
 *     t* = ln[(2 - e)(1 - g0) / (e - (2 - e) g0)] / alpha
 *
 * obtained by solving C(t) = g(t). The denominator is evaluated as
 * e(1 + g0) - 2 g0, which is the same quantity and stays accurate at the
 * existence boundary. Diverges as epsilon approaches 2 g0/(1 + g0) from above.
 */
inline std::optional<double> breakeven_time(double epsilon, const GrowthParams& growth)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw invalid_parameter("cost fraction epsilon must satisfy 0 < epsilon < 1");
    }
    if (!breakeven_exists(epsilon, growth)) {
        return std::nullopt;
    }
    const double g0  = growth.g0();
    const double den = epsilon * (1.0 + g0) - 2.0 * g0;
    if (!(den > 0.0)) {
        // Rounding left the boundary test on the other side of the denominator.
        return std::numeric_limits<double>::infinity();
    }
    return std::log((2.0 - epsilon) * (1.0 - g0) / den) / growth.alpha();
}

/// Costs swallow the whole gross production before the inflection point iff
/// epsilon > 4 g0 (1 - g0) / (1 + g0 (1 - 2 g0)), i.e. 4 g0 / (1 + 2 g0).
inline bool absorbs_before_inflection(double epsilon, const GrowthParams& growth)
{
    const double g0 = growth.g0();
    return epsilon > 4.0 * g0 * (1.0 - g0) / (1.0 + g0 * (1.0 - 2.0 * g0));
}

/**
 * Time t_M of maximum calibrated gain:
 *
 *     t_M = ln(1 - (2 - 3e) / ((2 - e) g0 - 2e)) / alpha
 *
 * A positive-time maximum needs the log argument to exceed 1, which holds
 * exactly when 2e > (2 - e) g0 and e < 2/3.
 */
inline std::optional<double> gain_peak_time(double epsilon, const GrowthParams& growth)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw invalid_parameter("cost fraction epsilon must satisfy 0 < epsilon < 1");
    }
    const double g0  = growth.g0();
    const double den = (2.0 - epsilon) * g0 - 2.0 * epsilon;
    if (!(den < 0.0) || !(epsilon < 2.0 / 3.0)) {
        return std::nullopt;
    }
    const double arg = 1.0 - (2.0 - 3.0 * epsilon) / den;
    if (!(arg > 1.0)) {
        return std::nullopt;
    }
    return std::log(arg) / growth.alpha();
}

} // namespace seneca

#endif // SENECA_COST_GAIN_HPP
