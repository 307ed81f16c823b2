#ifndef SENECA_PRESETS_HPP
#define SENECA_PRESETS_HPP

#include "seneca/output.hpp"
#include "seneca/scenario.hpp"

#include <string>

namespace seneca {

struct Preset {
    std::string name; ///< file stem, e.g. "fig2"
    Scenario scenario;
    PlotStyle style;
};

inline constexpr int preset_count = 5;

namespace detail {

inline DuopolyParams figure_duopoly()
{
    DuopolyParams d;
    d.alpha1 = 0.03;
    d.alpha2 = 0.0375;
    d.g10    = 0.51e-4;
    d.g20    = 0.49e-4;
    d.gamma  = 0.01;
    return d;
}

} // namespace detail

/// The bundled figure scenarios, numbered 1 to 5.
inline Preset preset(int figure)
{
    const GrowthParams growth(0.03, 1e-4);
    const std::vector<OutputKind> all{OutputKind::csv, OutputKind::svg, OutputKind::events};
    const CostModel costs{growth, calibrate(0.01, growth), true};
    switch (figure) {
    case 1:
        return {"fig1", {ModelKind::single, growth, {0.0, 600.0, 0.5}, all}, {"logistic growth", "g", {{"g", "g"}}}};
    case 2:
        return {"fig2",
                {ModelKind::single_with_costs, costs, {0.0, 200.0, 0.5}, all},
                {"production and costs", "fraction of resources", {{"g", "g"}, {"C", "C", Dash::dashed}}}};
    case 3:
        return {"fig3",
                {ModelKind::single_with_costs, costs, {0.0, 200.0, 0.5}, all},
                {"net gain", "gain", {{"A", "A"}}, true}};
    case 4:
        return {"fig4",
                {ModelKind::active_duopoly, detail::figure_duopoly(), {0.0, 600.0, 0.5}, all},
                {"active competition",
                 "fraction of resources",
                 {{"g1", "g1"}, {"g2", "g2", Dash::dashed}, {"g", "g", Dash::dotted}}}};
    case 5: {
        auto d    = detail::figure_duopoly();
        d.epsilon = 0.01;
        return {"fig5",
                {ModelKind::active_duopoly, d, {0.0, 600.0, 0.5}, all},
                {"competition with costs", "gain", {{"A1", "A1"}, {"A2", "A2", Dash::dashed}}, true}};
    }
    default: throw std::invalid_argument("figure must be between 1 and " + std::to_string(preset_count));
    }
}

} // namespace seneca

#endif // SENECA_PRESETS_HPP
