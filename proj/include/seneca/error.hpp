#ifndef SENECA_ERROR_HPP
#define SENECA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace seneca {

/// A model parameter record violates its invariants.
class invalid_parameter : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A model function was evaluated outside its domain (e.g. g outside [0, 1]).
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Integrator failure: non-finite derivative or step-size underflow.
class integration_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Root bracket without a sign change.
class no_sign_change : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Time outside the span covered by a trajectory.
class out_of_range : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/// Trajectory does not have the shape an analysis expects.
class malformed_trajectory : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace seneca

#endif // SENECA_ERROR_HPP
