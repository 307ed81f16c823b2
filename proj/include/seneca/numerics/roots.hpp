#ifndef SENECA_NUMERICS_ROOTS_HPP
#define SENECA_NUMERICS_ROOTS_HPP

#include "seneca/error.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>

namespace seneca::numerics {

template <class F>
concept ScalarFunction = std::invocable<const F&, double> &&
                         std::convertible_to<std::invoke_result_t<const F&, double>, long double>;

struct Bracket {
    double lo;
    double hi;

    double width() const { return hi - lo; }
    double midpoint() const { return lo + 0.5 * (hi - lo); }
};

namespace detail {
template <class T>
int sign_of(T v)
{
    return (v > T(0)) - (v < T(0));
}
} // namespace detail

/**
 * Bisection on [a, b]. Requires f(a) and f(b) of strictly opposite sign.
 * The returned bracket keeps opposite signs at its ends and has width <= tol,
 * unless floating-point resolution is reached first. An exact zero at an
 * endpoint collapses the bracket onto it.
 */
template <ScalarFunction F>
Bracket bisect(const F& f, double a, double b, double tol)
{
    if (!(a < b)) {
        throw invalid_parameter("bisect requires a < b");
    }
    if (!(tol > 0.0)) {
        throw invalid_parameter("bisect requires tol > 0");
    }
    const int sa = detail::sign_of(f(a));
    const int sb = detail::sign_of(f(b));
    if (sa == 0) return {a, a};
    if (sb == 0) return {b, b};
    if (sa == sb) {
        throw no_sign_change("no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    while (b - a > tol) {
        const double m = a + 0.5 * (b - a);
        if (m <= a || m >= b) break;
        const int sm = detail::sign_of(f(m));
        if (sm == 0) return {m, m};
        if (sm == sa) {
            a = m;
        } else {
            b = m;
        }
    }
    return {a, b};
}

/// Root of f in [a, b] by bisection; midpoint of the final bracket.
template <ScalarFunction F>
double find_zero(const F& f, double a, double b, double tol)
{
    return bisect(f, a, b, tol).midpoint();
}

/**
 * Golden-section search for the maximum of f on [a, b]. f is assumed
 * unimodal there; otherwise some local maximum (or an endpoint) comes back.
 * Comparisons are done in f's own return type, so an f evaluated in
 * extended precision resolves the argmax more finely.
 */
template <ScalarFunction F>
double find_max(const F& f, double a, double b, double tol)
{
    if (!(a <= b)) {
        throw invalid_parameter("find_max requires a <= b");
    }
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c  = b - invphi * (b - a);
    double d  = a + invphi * (b - a);
    auto fc   = f(c);
    auto fd   = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b  = d;
            d  = c;
            fd = fc;
            c  = b - invphi * (b - a);
            fc = f(c);
        } else {
            a  = c;
            c  = d;
            fc = fd;
            d  = a + invphi * (b - a);
            fd = f(d);
        }
        if (!(c > a && d < b)) break;
    }
    return a + 0.5 * (b - a);
}

/**
 * Walks [a, b] in steps of `step` and returns the first sub-interval whose
 * ends have strictly opposite sign (zeros at grid points are skipped over
 * until a strict change is seen). `direction` > 0 only accepts -/+ changes,
 * < 0 only +/-, 0 either.
 */
template <ScalarFunction F>
std::optional<Bracket> scan_sign_change(const F& f, double a, double b, double step, int direction = 0)
{
    if (!(a < b) || !(step > 0.0)) {
        throw invalid_parameter("scan_sign_change requires a < b and step > 0");
    }
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / step * (1.0 - 1e-12)));
    double last_t    = a;
    int last_sign    = detail::sign_of(f(a));
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = (i == n) ? b : a + static_cast<double>(i) * step;
        const int s    = detail::sign_of(f(t));
        if (s != 0) {
            if (last_sign != 0 && s != last_sign && (direction == 0 || s == direction)) {
                return Bracket{last_t, t};
            }
            last_sign = s;
            last_t    = t;
        } else if (last_sign == 0) {
            last_t = t;
        }
    }
    return std::nullopt;
}

} // namespace seneca::numerics

#endif // SENECA_NUMERICS_ROOTS_HPP
