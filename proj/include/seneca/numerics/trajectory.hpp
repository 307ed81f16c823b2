#ifndef SENECA_NUMERICS_TRAJECTORY_HPP
#define SENECA_NUMERICS_TRAJECTORY_HPP

#include "seneca/error.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace seneca::numerics {

/// Bookkeeping collected while a trajectory is built.
struct IntegrationStats {
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    /// Steps after which a state component had to be projected back onto the
    /// admissible set by more than the projection tolerance.
    std::size_t flagged_steps = 0;
    /// Largest scaled local error estimate among accepted steps (adaptive only,
    /// <= 1 means every accepted step met the tolerance).
    double max_error_ratio = 0.0;
};

/**
 * Time series of state vectors on a strictly ascending time grid.
 *
 * Each node stores the state and the derivative of the generating system at
 * that state, which is what the cubic Hermite dense output needs. Storage is
 * row-major: node i occupies [i*dimension, (i+1)*dimension).
 */
class Trajectory
{
public:
    Trajectory() = default;

    explicit Trajectory(std::size_t dimension)
        : dimension_(dimension)
    {
        if (dimension == 0) {
            throw malformed_trajectory("trajectory dimension must be positive");
        }
    }

    /// Appends a node; t must exceed the last stored time.
    void push_back(double t, std::span<const double> state, std::span<const double> derivative)
    {
        if (state.size() != dimension_ || derivative.size() != dimension_) {
            throw malformed_trajectory("node size does not match trajectory dimension");
        }
        if (!times_.empty() && !(t > times_.back())) {
            throw malformed_trajectory("trajectory times must be strictly ascending");
        }
        times_.push_back(t);
        states_.insert(states_.end(), state.begin(), state.end());
        derivatives_.insert(derivatives_.end(), derivative.begin(), derivative.end());
    }

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }

    const std::vector<double>& times() const { return times_; }
    double time(std::size_t i) const { return times_.at(i); }
    double front_time() const { return times_.front(); }
    double back_time() const { return times_.back(); }

    std::span<const double> state(std::size_t i) const
    {
        return std::span<const double>(states_).subspan(i * dimension_, dimension_);
    }
    std::span<const double> derivative(std::size_t i) const
    {
        return std::span<const double>(derivatives_).subspan(i * dimension_, dimension_);
    }
    double component(std::size_t i, std::size_t k) const { return states_[i * dimension_ + k]; }

    IntegrationStats& stats() { return stats_; }
    const IntegrationStats& stats() const { return stats_; }

    /**
     * Dense output by cubic Hermite interpolation between the bracketing
     * nodes. Returns the stored state bit-for-bit when t is a node time.
     */
    std::vector<double> sample(double t) const
    {
        std::vector<double> out(dimension_);
        sample_into(t, out);
        return out;
    }

    double sample_component(double t, std::size_t k) const
    {
        if (k >= dimension_) {
            throw malformed_trajectory("component index out of range");
        }
        const auto [i, s] = locate(t);
        if (s == 0.0) {
            return component(i, k);
        }
        return hermite(i, s, k);
    }

    void sample_into(double t, std::span<double> out) const
    {
        const auto [i, s] = locate(t);
        for (std::size_t k = 0; k < dimension_; ++k) {
            out[k] = (s == 0.0) ? component(i, k) : hermite(i, s, k);
        }
    }

private:
    struct Location {
        std::size_t index; // left node
        double s;          // normalized offset in [0, 1), 0 means exactly on the node
    };

    Location locate(double t) const
    {
        if (times_.empty()) {
            throw out_of_range("sample on an empty trajectory");
        }
        if (!(t >= times_.front() && t <= times_.back())) {
            throw out_of_range("sample time " + std::to_string(t) + " outside [" +
                               std::to_string(times_.front()) + ", " + std::to_string(times_.back()) + "]");
        }
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        auto i  = static_cast<std::size_t>(std::distance(times_.begin(), it)) - 1;
        if (times_[i] == t) {
            return {i, 0.0};
        }
        return {i, (t - times_[i]) / (times_[i + 1] - times_[i])};
    }

    double hermite(std::size_t i, double s, std::size_t k) const
    {
        const double h   = times_[i + 1] - times_[i];
        const double y0  = states_[i * dimension_ + k];
        const double y1  = states_[(i + 1) * dimension_ + k];
        const double d0  = derivatives_[i * dimension_ + k];
        const double d1  = derivatives_[(i + 1) * dimension_ + k];
        const double s2  = s * s;
        const double s3  = s2 * s;
        const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        const double h10 = s3 - 2.0 * s2 + s;
        const double h01 = -2.0 * s3 + 3.0 * s2;
        const double h11 = s3 - s2;
        return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    }

    std::size_t dimension_ = 1;
    std::vector<double> times_;
    std::vector<double> states_;
    std::vector<double> derivatives_;
    IntegrationStats stats_;
};

/// Free-function form of Trajectory::sample.
inline std::vector<double> sample(const Trajectory& trajectory, double t)
{
    return trajectory.sample(t);
}

} // namespace seneca::numerics

#endif // SENECA_NUMERICS_TRAJECTORY_HPP
