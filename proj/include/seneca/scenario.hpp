#ifndef SENECA_SCENARIO_HPP
#define SENECA_SCENARIO_HPP

#include "seneca/competition.hpp"
#include "seneca/cost_gain.hpp"
#include "seneca/error.hpp"
#include "seneca/growth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

/**
 * @file scenario.hpp
 * Declarative description of one simulation run and its JSON form:
 *
 *     { "model":  "single" | "single_with_costs" | "passive_duopoly" | "active_duopoly",
 *       "params": { ... model specific ... },
 *       "grid":   { "t_start": number, "t_end": number, "dt_output": number },
 *       "outputs": [ "csv" | "svg" | "events", ... ] }
 *
 * Parameter keys per model:
 *   single            alpha, g0
 *   single_with_costs alpha, g0, epsilon [, mu, beta]   (mu/beta override the calibration)
 *   passive_duopoly   alpha1, alpha2, g10, g20 [, epsilon, epsilon2]
 *   active_duopoly    alpha1, alpha2, g10, g20, gamma [, epsilon, epsilon2]
 *
 * Unknown keys anywhere are rejected.
 */

namespace seneca {

using json = nlohmann::json;

/// Base for all scenario-file problems (CLI exit code 1).
class scenario_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed JSON; the message carries line and column.
class scenario_parse_error : public scenario_error
{
public:
    scenario_parse_error(const std::string& what, std::size_t line, std::size_t column)
        : scenario_error(what)
        , line_(line)
        , column_(column)
    {
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed JSON that violates the schema or a model invariant.
class scenario_validation_error : public scenario_error
{
public:
    using scenario_error::scenario_error;
};

enum class ModelKind { single, single_with_costs, passive_duopoly, active_duopoly };
enum class OutputKind { csv, svg, events };

inline std::string_view to_string(ModelKind k)
{
    switch (k) {
    case ModelKind::single: return "single";
    case ModelKind::single_with_costs: return "single_with_costs";
    case ModelKind::passive_duopoly: return "passive_duopoly";
    case ModelKind::active_duopoly: return "active_duopoly";
    }
    return "?";
}

inline std::string_view to_string(OutputKind k)
{
    switch (k) {
    case OutputKind::csv: return "csv";
    case OutputKind::svg: return "svg";
    case OutputKind::events: return "events";
    }
    return "?";
}

/// Single system with costs. `calibrated` means mu and beta come from epsilon.
struct CostModel {
    GrowthParams growth;
    CostParams costs;
    bool calibrated = true;

    bool operator==(const CostModel&) const = default;
};

struct Grid {
    double t_start   = 0.0;
    double t_end     = 0.0;
    double dt_output = 1.0;

    /// Output times t_start + k*dt_output, plus t_end if the span is not a
    /// whole number of steps.
    std::vector<double> times() const
    {
        const double span  = (t_end - t_start) / dt_output;
        const auto n       = static_cast<std::size_t>(std::floor(span + 1e-9));
        std::vector<double> out;
        out.reserve(n + 2);
        for (std::size_t k = 0; k <= n; ++k) {
            out.push_back(t_start + static_cast<double>(k) * dt_output);
        }
        if (std::abs(out.back() - t_end) > 1e-9 * std::max(1.0, std::abs(t_end))) {
            out.push_back(t_end);
        } else {
            out.back() = t_end;
        }
        return out;
    }

    bool operator==(const Grid&) const = default;
};

struct Scenario {
    ModelKind model = ModelKind::single;
    std::variant<GrowthParams, CostModel, DuopolyParams> params = GrowthParams(0.03, 1e-4);
    Grid grid;
    std::vector<OutputKind> outputs;

    const GrowthParams& growth() const
    {
        if (const auto* g = std::get_if<GrowthParams>(&params)) return *g;
        return std::get<CostModel>(params).growth;
    }
    const CostModel& cost_model() const { return std::get<CostModel>(params); }
    const DuopolyParams& duopoly() const { return std::get<DuopolyParams>(params); }
    bool wants(OutputKind k) const { return std::find(outputs.begin(), outputs.end(), k) != outputs.end(); }

    bool operator==(const Scenario&) const = default;
};

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, std::string_view where)
{
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw scenario_validation_error("unknown key \"" + key + "\" in " + std::string(where));
        }
    }
}

inline const json& require_object(const json& parent, const char* key, std::string_view where)
{
    if (!parent.contains(key)) {
        throw scenario_validation_error("missing \"" + std::string(key) + "\" in " + std::string(where));
    }
    const json& v = parent.at(key);
    if (!v.is_object()) {
        throw scenario_validation_error("\"" + std::string(key) + "\" must be an object");
    }
    return v;
}

inline double require_number(const json& obj, const char* key, std::string_view where)
{
    if (!obj.contains(key)) {
        throw scenario_validation_error("missing number \"" + std::string(key) + "\" in " + std::string(where));
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw scenario_validation_error("\"" + std::string(key) + "\" in " + std::string(where) + " must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw scenario_validation_error("\"" + std::string(key) + "\" must be finite");
    }
    return d;
}

inline std::optional<double> optional_number(const json& obj, const char* key, std::string_view where)
{
    if (!obj.contains(key)) return std::nullopt;
    return require_number(obj, key, where);
}

inline ModelKind parse_model(const json& v)
{
    if (!v.is_string()) {
        throw scenario_validation_error("\"model\" must be a string");
    }
    const auto s = v.get<std::string>();
    for (auto k : {ModelKind::single, ModelKind::single_with_costs, ModelKind::passive_duopoly,
                   ModelKind::active_duopoly}) {
        if (s == to_string(k)) return k;
    }
    throw scenario_validation_error("unknown model \"" + s + "\"");
}

inline std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Model constructors throw invalid_parameter; rethrow as validation errors
// so callers see one error family for bad files.
template <class F>
auto validated(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const invalid_parameter& e) {
        throw scenario_validation_error(std::string("invalid parameters: ") + e.what());
    }
}

} // namespace detail

/// Validates a scenario already held in memory.
inline void validate(const Scenario& s)
{
    const auto& g = s.grid;
    if (!(g.t_end > g.t_start)) {
        throw scenario_validation_error("grid requires t_end > t_start");
    }
    if (!(g.dt_output > 0.0)) {
        throw scenario_validation_error("grid requires dt_output > 0");
    }
    if ((g.t_end - g.t_start) / g.dt_output > 1e7) {
        throw scenario_validation_error("grid has more than 1e7 output rows");
    }
    const bool wants_growth = s.model == ModelKind::single;
    const bool wants_costs  = s.model == ModelKind::single_with_costs;
    const bool wants_duo    = s.model == ModelKind::passive_duopoly || s.model == ModelKind::active_duopoly;
    if ((wants_growth && !std::holds_alternative<GrowthParams>(s.params)) ||
        (wants_costs && !std::holds_alternative<CostModel>(s.params)) ||
        (wants_duo && !std::holds_alternative<DuopolyParams>(s.params))) {
        throw scenario_validation_error("parameter record does not match model " + std::string(to_string(s.model)));
    }
    if (wants_duo) {
        detail::validated([&] {
            s.duopoly().validate();
            return 0;
        });
        if (s.model == ModelKind::passive_duopoly && s.duopoly().gamma != 0.0) {
            throw scenario_validation_error("passive_duopoly has no transfer; gamma must be 0");
        }
        if (g.t_start < 0.0) {
            throw scenario_validation_error("duopoly scenarios start from their initial state: t_start must be >= 0");
        }
    }
    std::set<OutputKind> seen;
    for (auto o : s.outputs) {
        if (!seen.insert(o).second) {
            throw scenario_validation_error("duplicate output \"" + std::string(to_string(o)) + "\"");
        }
    }
}

inline Scenario scenario_from_json(const json& root)
{
    if (!root.is_object()) {
        throw scenario_validation_error("scenario must be a JSON object");
    }
    detail::reject_unknown_keys(root, {"model", "params", "grid", "outputs"}, "scenario");
    if (!root.contains("model")) {
        throw scenario_validation_error("missing \"model\"");
    }
    Scenario s;
    s.model = detail::parse_model(root.at("model"));

    const json& p = detail::require_object(root, "params", "scenario");
    switch (s.model) {
    case ModelKind::single:
        detail::reject_unknown_keys(p, {"alpha", "g0"}, "params");
        s.params = detail::validated(
            [&] { return GrowthParams(detail::require_number(p, "alpha", "params"), detail::require_number(p, "g0", "params")); });
        break;
    case ModelKind::single_with_costs: {
        detail::reject_unknown_keys(p, {"alpha", "g0", "epsilon", "mu", "beta"}, "params");
        const auto mu   = detail::optional_number(p, "mu", "params");
        const auto beta = detail::optional_number(p, "beta", "params");
        if (mu.has_value() != beta.has_value()) {
            throw scenario_validation_error("\"mu\" and \"beta\" must be given together");
        }
        s.params = detail::validated([&] {
            const GrowthParams growth(detail::require_number(p, "alpha", "params"),
                                      detail::require_number(p, "g0", "params"));
            const double eps = detail::require_number(p, "epsilon", "params");
            if (mu) return CostModel{growth, CostParams(eps, *mu, *beta), false};
            return CostModel{growth, calibrate(eps, growth), true};
        });
        break;
    }
    case ModelKind::passive_duopoly:
    case ModelKind::active_duopoly: {
        const bool active = s.model == ModelKind::active_duopoly;
        std::set<std::string> keys{"alpha1", "alpha2", "g10", "g20", "epsilon", "epsilon2"};
        if (active) keys.insert("gamma");
        detail::reject_unknown_keys(p, keys, "params");
        DuopolyParams d;
        d.alpha1   = detail::require_number(p, "alpha1", "params");
        d.alpha2   = detail::require_number(p, "alpha2", "params");
        d.g10      = detail::require_number(p, "g10", "params");
        d.g20      = detail::require_number(p, "g20", "params");
        d.gamma    = active ? detail::require_number(p, "gamma", "params") : 0.0;
        d.epsilon  = detail::optional_number(p, "epsilon", "params");
        d.epsilon2 = detail::optional_number(p, "epsilon2", "params");
        s.params   = d;
        break;
    }
    }

    const json& g = detail::require_object(root, "grid", "scenario");
    detail::reject_unknown_keys(g, {"t_start", "t_end", "dt_output"}, "grid");
    s.grid = {detail::require_number(g, "t_start", "grid"), detail::require_number(g, "t_end", "grid"),
              detail::require_number(g, "dt_output", "grid")};

    if (!root.contains("outputs") || !root.at("outputs").is_array()) {
        throw scenario_validation_error("\"outputs\" must be an array of strings");
    }
    for (const auto& o : root.at("outputs")) {
        if (!o.is_string()) {
            throw scenario_validation_error("\"outputs\" entries must be strings");
        }
        const auto v = o.get<std::string>();
        if (v == "csv") s.outputs.push_back(OutputKind::csv);
        else if (v == "svg") s.outputs.push_back(OutputKind::svg);
        else if (v == "events") s.outputs.push_back(OutputKind::events);
        else throw scenario_validation_error("unknown output \"" + v + "\"");
    }
    validate(s);
    return s;
}

inline Scenario parse_scenario(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = detail::line_and_column(text, e.byte);
        throw scenario_parse_error("JSON parse error at line " + std::to_string(line) + ", column " +
                                       std::to_string(col) + ": " + e.what(),
                                   line, col);
    }
    return scenario_from_json(root);
}

inline Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw scenario_error("cannot open scenario file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

inline json to_json(const Scenario& s)
{
    json params = json::object();
    if (const auto* g = std::get_if<GrowthParams>(&s.params)) {
        params = {{"alpha", g->alpha()}, {"g0", g->g0()}};
    } else if (const auto* c = std::get_if<CostModel>(&s.params)) {
        params = {{"alpha", c->growth.alpha()}, {"g0", c->growth.g0()}, {"epsilon", c->costs.epsilon()}};
        if (!c->calibrated) {
            params["mu"]   = c->costs.mu();
            params["beta"] = c->costs.beta();
        }
    } else {
        const auto& d = std::get<DuopolyParams>(s.params);
        params = {{"alpha1", d.alpha1}, {"alpha2", d.alpha2}, {"g10", d.g10}, {"g20", d.g20}};
        if (s.model == ModelKind::active_duopoly) params["gamma"] = d.gamma;
        if (d.epsilon) params["epsilon"] = *d.epsilon;
        if (d.epsilon2) params["epsilon2"] = *d.epsilon2;
    }
    json outputs = json::array();
    for (auto o : s.outputs) outputs.push_back(std::string(to_string(o)));
    return {{"model", std::string(to_string(s.model))},
            {"params", params},
            {"grid", {{"t_start", s.grid.t_start}, {"t_end", s.grid.t_end}, {"dt_output", s.grid.dt_output}}},
            {"outputs", outputs}};
}

inline std::string serialize(const Scenario& s)
{
    return to_json(s).dump(2) + "\n";
}

} // namespace seneca

#endif // SENECA_SCENARIO_HPP
