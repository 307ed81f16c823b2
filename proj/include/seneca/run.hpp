#ifndef SENECA_RUN_HPP
#define SENECA_RUN_HPP

#include "seneca/competition.hpp"
#include "seneca/cost_gain.hpp"
#include "seneca/growth.hpp"
#include "seneca/numerics/roots.hpp"
#include "seneca/numerics/trajectory.hpp"
#include "seneca/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seneca {

enum class EventKind { inflection, breakeven, gain_peak, crossover, gain_crossover, collapse_1, collapse_2 };
enum class EventMethod { closed_form, numeric };

inline std::string_view to_string(EventKind k)
{
    switch (k) {
    case EventKind::inflection: return "inflection";
    case EventKind::breakeven: return "breakeven";
    case EventKind::gain_peak: return "gain_peak";
    case EventKind::crossover: return "crossover";
    case EventKind::gain_crossover: return "gain_crossover";
    case EventKind::collapse_1: return "collapse_1";
    case EventKind::collapse_2: return "collapse_2";
    }
    return "?";
}

inline std::string_view to_string(EventMethod m)
{
    return m == EventMethod::closed_form ? "closed_form" : "numeric";
}

struct EventReport {
    EventKind kind;
    std::optional<double> time; ///< years; absent when the event does not occur
    EventMethod method;
    /// Closed form and numeric route disagree by more than event_agreement_tolerance.
    bool discrepant = false;

    bool operator==(const EventReport&) const = default;
};

/// Closed-form and numeric event times must agree to this many years.
inline constexpr double event_agreement_tolerance = 1e-4;

/// Named columns sampled on the output grid; column 0 is always "t".
struct Table {
    struct Column {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Column> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().values.size(); }
    const Column* find(std::string_view name) const
    {
        for (const auto& c : columns)
            if (c.name == name) return &c;
        return nullptr;
    }
    const std::vector<double>& at(std::string_view name) const
    {
        if (const auto* c = find(name)) return c->values;
        throw std::out_of_range("no column " + std::string(name));
    }
};

struct RunResult {
    Scenario scenario;
    /// Model state on the output grid (g for single models, (g1, g2) for duopolies).
    numerics::Trajectory trajectory;
    Table table;
    std::vector<EventReport> events;
};

inline const EventReport* find_event(const std::vector<EventReport>& events, EventKind kind, EventMethod method)
{
    for (const auto& e : events)
        if (e.kind == kind && e.method == method) return &e;
    return nullptr;
}

namespace detail {

constexpr double event_tol = 1e-9;

/// Adds both reports and flags them when they disagree. A missing numeric
/// value only counts as a disagreement when the closed form lies inside the
/// searched window [lo, hi].
inline void add_pair(std::vector<EventReport>& out, EventKind kind, std::optional<double> closed,
                     std::optional<double> numeric, double lo, double hi)
{
    bool bad = false;
    if (closed && numeric) {
        bad = !(std::abs(*closed - *numeric) <= event_agreement_tolerance);
    } else if (closed && !numeric) {
        bad = *closed >= lo && *closed <= hi;
    } else if (!closed && numeric) {
        bad = true;
    }
    out.push_back({kind, closed, EventMethod::closed_form, bad});
    out.push_back({kind, numeric, EventMethod::numeric, bad});
}

template <class F>
std::optional<double> numeric_zero(const F& f, const Grid& grid, int direction)
{
    const auto br = numerics::scan_sign_change(f, grid.t_start, grid.t_end, grid.dt_output, direction);
    if (!br) return std::nullopt;
    return numerics::find_zero(f, br->lo, br->hi, event_tol);
}

/// Interior grid maximum refined by golden-section search on its two
/// neighbouring cells; absent if the maximum sits on the horizon edge.
template <class F>
std::optional<double> numeric_max(const F& f, const Grid& grid)
{
    const auto ts = grid.times();
    std::size_t best = 0;
    double best_v    = f(ts[0]);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double v = f(ts[i]);
        if (v > best_v) best_v = v, best = i;
    }
    if (best == 0 || best + 1 == ts.size()) return std::nullopt;
    return numerics::find_max(f, ts[best - 1], ts[best + 1], event_tol);
}

inline std::optional<double> numeric_inflection(const GrowthParams& growth, const Grid& grid)
{
    // Central second difference; its zero sits exactly at the inflection by
    // the point symmetry of the logistic around it.
    auto d2 = [&](double t) {
        constexpr double h = 0.05;
        return (logistic(growth, t + h) - 2.0 * logistic(growth, t) + logistic(growth, t - h)) / (h * h);
    };
    return numeric_zero(d2, grid, -1);
}

// Evaluates a closed-form duopoly on [0, t_end] at `dt` spacing, storing the
// exact model derivative at every node.
template <class Closed>
numerics::Trajectory closed_form_duopoly(const DuopolyParams& p, double t_end, double dt, const Closed& closed)
{
    numerics::Trajectory traj(2);
    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt * (1.0 - 1e-12)));
    for (std::size_t i = 0; i <= n; ++i) {
        const double t   = i == n ? t_end : static_cast<double>(i) * dt;
        const auto s     = closed(t);
        const auto d     = active_rhs(s, p);
        const double y[] = {s.g1, s.g2}, dy[] = {d.dg1, d.dg2};
        traj.push_back(t, y, dy);
    }
    return traj;
}

inline RunResult run_single(const Scenario& s)
{
    RunResult r{s, numerics::Trajectory(1), {}, {}};
    const auto& growth = s.growth();
    const auto times   = s.grid.times();
    std::vector<double> g, gexp;
    for (double t : times) {
        const double v   = logistic(growth, t);
        const double y[] = {v}, dy[] = {logistic_rate(growth, v)};
        r.trajectory.push_back(t, y, dy);
        g.push_back(v);
        gexp.push_back(exponential_approx(growth, t));
    }
    r.table.columns.push_back({"t", times});
    r.table.columns.push_back({"g", g});
    if (s.model == ModelKind::single) {
        r.table.columns.push_back({"g_exp", gexp});
    } else {
        const auto& cm = s.cost_model();
        std::vector<double> c, a;
        for (double v : g) {
            c.push_back(cost_of_g(v, cm.costs));
            a.push_back(v - c.back());
        }
        r.table.columns.push_back({"C", c});
        r.table.columns.push_back({"A", a});
    }

    add_pair(r.events, EventKind::inflection, inflection_time(growth), numeric_inflection(growth, s.grid),
             s.grid.t_start, s.grid.t_end);

    if (s.model == ModelKind::single_with_costs) {
        const auto& cm  = s.cost_model();
        const double ep = cm.costs.epsilon();
        auto gap        = [&](double t) { return gain_at_time(t, growth, cm.costs); };
        const auto num_breakeven = numeric_zero(gap, s.grid, -1);
        const auto num_peak      = numeric_max(gap, s.grid);
        if (cm.calibrated) {
            add_pair(r.events, EventKind::breakeven, breakeven_time(ep, growth), num_breakeven, s.grid.t_start,
                     s.grid.t_end);
            add_pair(r.events, EventKind::gain_peak, gain_peak_time(ep, growth), num_peak, s.grid.t_start,
                     s.grid.t_end);
        } else {
            r.events.push_back({EventKind::breakeven, num_breakeven, EventMethod::numeric});
            r.events.push_back({EventKind::gain_peak, num_peak, EventMethod::numeric});
        }
    }
    return r;
}

inline RunResult run_duopoly(const Scenario& s)
{
    const auto& p      = s.duopoly();
    const double t_end = s.grid.t_end;
    const double dt    = default_competition_step;

    // Closed forms where they exist, RK4 otherwise.
    const bool passive_closed = p.equal_alpha() && p.gamma == 0.0;
    const bool active_closed  = p.equal_alpha() && p.gamma > 0.0 && p.g10 >= p.g20;
    const auto fine           = [&] {
        if (passive_closed) {
            return closed_form_duopoly(p, t_end, dt, [&](double t) { return passive_equal_alpha(t, p); });
        }
        if (active_closed) {
            const auto c = constants_from_initial(p);
            return closed_form_duopoly(p, t_end, dt,
                                       [&](double t) { return active_equal_alpha(t, c, p.alpha1, p.gamma); });
        }
        return simulate_duopoly(p, t_end, dt);
    }();

    RunResult r{s, numerics::Trajectory(2), {}, {}};
    const auto times = s.grid.times();
    std::vector<double> g1, g2, g, a1, a2;
    const bool costs = p.epsilon.has_value();
    for (double t : times) {
        DuopolyState st;
        if (passive_closed) {
            st = passive_equal_alpha(t, p);
        } else if (active_closed) {
            st = active_equal_alpha(t, constants_from_initial(p), p.alpha1, p.gamma);
        } else {
            const auto y = fine.sample(t);
            st           = {std::max(y[0], 0.0), std::max(y[1], 0.0)};
        }
        const auto d     = active_rhs(st, p);
        const double y[] = {st.g1, st.g2}, dy[] = {d.dg1, d.dg2};
        r.trajectory.push_back(t, y, dy);
        g1.push_back(st.g1);
        g2.push_back(st.g2);
        g.push_back(st.g1 + st.g2);
        if (costs) {
            a1.push_back(player_gain(st.g1, p.g10, *p.epsilon_of(1)));
            a2.push_back(player_gain(st.g2, p.g20, *p.epsilon_of(2)));
        }
    }
    r.table.columns = {{"t", times}, {"g1", g1}, {"g2", g2}, {"g", g}};
    if (costs) {
        r.table.columns.push_back({"A1", a1});
        r.table.columns.push_back({"A2", a2});
    }

    r.events.push_back({EventKind::crossover, crossover_time(fine, event_tol), EventMethod::numeric});
    if (costs) {
        r.events.push_back({EventKind::gain_crossover, gain_crossover_time(fine, p, event_tol), EventMethod::numeric});
        for (int player : {1, 2}) {
            const auto kind    = player == 1 ? EventKind::collapse_1 : EventKind::collapse_2;
            const auto numeric = collapse_time(fine, player, p, event_tol);
            if (passive_closed) {
                // Shares are frozen, so A_i = 0 where the total hits the
                // single-system breakeven for the pooled stock.
                const auto closed = breakeven_time(*p.epsilon_of(player), GrowthParams(p.alpha1, p.g0()));
                add_pair(r.events, kind, closed, numeric, 0.0, t_end);
            } else {
                r.events.push_back({kind, numeric, EventMethod::numeric});
            }
        }
    }
    return r;
}

} // namespace detail

/// Runs a validated scenario: output-grid samples plus every applicable event,
/// by both closed form and numeric route where both exist.
inline RunResult run_scenario(const Scenario& s)
{
    validate(s);
    switch (s.model) {
    case ModelKind::single:
    case ModelKind::single_with_costs: return detail::run_single(s);
    case ModelKind::passive_duopoly:
    case ModelKind::active_duopoly: return detail::run_duopoly(s);
    }
    throw scenario_validation_error("unknown model");
}

} // namespace seneca

#endif // SENECA_RUN_HPP
