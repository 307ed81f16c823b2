#ifndef SENECA_NUMERICS_EVENTS_HPP
#define SENECA_NUMERICS_EVENTS_HPP

#include "seneca/numerics/roots.hpp"
#include "seneca/numerics/trajectory.hpp"

#include <concepts>
#include <optional>
#include <span>
#include <vector>

namespace seneca::numerics {

enum class Crossing { rising = 1, falling = -1, either = 0 };

template <class H>
concept StateFunction = std::invocable<const H&, std::span<const double>> &&
                        std::convertible_to<std::invoke_result_t<const H&, std::span<const double>>, double>;

/**
 * First strict sign change of h(state) along the trajectory.
 * Nodes bracket the event; the dense output refines it by bisection to
 * width <= tol. Nodes where h is exactly zero do not count as a change by
 * themselves.
 */
template <StateFunction H>
std::optional<double> first_crossing(const Trajectory& traj, const H& h, Crossing direction, double tol)
{
    if (traj.size() < 2) {
        return std::nullopt;
    }
    auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    std::optional<std::size_t> last_nonzero;
    int last_sign = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const int s = sign(h(traj.state(i)));
        if (s == 0) continue;
        if (last_nonzero && s != last_sign &&
            (direction == Crossing::either || s == static_cast<int>(direction))) {
            const double lo = traj.time(*last_nonzero);
            const double hi = traj.time(i);
            std::vector<double> buf(traj.dimension());
            auto f = [&](double t) {
                traj.sample_into(t, buf);
                return h(std::span<const double>(buf));
            };
            return find_zero(f, lo, hi, tol);
        }
        last_nonzero = i;
        last_sign    = s;
    }
    return std::nullopt;
}

} // namespace seneca::numerics

#endif // SENECA_NUMERICS_EVENTS_HPP
