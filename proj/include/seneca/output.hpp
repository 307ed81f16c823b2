#ifndef SENECA_OUTPUT_HPP
#define SENECA_OUTPUT_HPP

#include "seneca/run.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace seneca {

class output_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int default_precision = 12;

/// Formats a CSV number with `precision` significant digits. Magnitudes of
/// at least 1e-3 are written in positional notation, smaller non-zero ones in
/// exponent notation.
inline std::string format_number(double v, int precision = default_precision)
{
    if (precision < 1 || precision > 17) {
        throw std::invalid_argument("precision must be in [1, 17]");
    }
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[64];
    if (v == 0.0) {
        return "0";
    }
    if (std::abs(v) >= 1e-3) {
        // Round first so 9.99...9 promoting to 10 gets one decimal fewer.
        std::snprintf(buf, sizeof buf, "%.*e", precision - 1, v);
        const int exponent = static_cast<int>(std::floor(std::log10(std::abs(std::strtod(buf, nullptr)))));
        const int decimals = std::max(0, precision - 1 - exponent);
        std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    } else {
        std::snprintf(buf, sizeof buf, "%.*e", precision - 1, v);
    }
    return buf;
}

inline std::string to_csv(const Table& table, int precision = default_precision)
{
    if (table.columns.empty() || table.rows() == 0) {
        throw output_error("cannot write an empty table");
    }
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += (c ? "," : "") + table.columns[c].name;
    }
    out += '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += format_number(table.columns[c].values.at(r), precision);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json events_to_json(const std::vector<EventReport>& events)
{
    auto arr = nlohmann::json::array();
    for (const auto& e : events) {
        nlohmann::json o = {{"kind", std::string(to_string(e.kind))}};
        if (e.time && std::isfinite(*e.time)) {
            o["time"] = *e.time;
        } else {
            o["time"] = nullptr;
        }
        o["method"] = std::string(to_string(e.method));
        if (e.discrepant) o["discrepant"] = true;
        arr.push_back(std::move(o));
    }
    return arr;
}

inline std::string events_json(const std::vector<EventReport>& events)
{
    return events_to_json(events).dump(2) + "\n";
}

enum class Dash { solid, dashed, dotted };

struct SeriesStyle {
    std::string column;
    std::string label;
    Dash dash = Dash::solid;
};

struct PlotStyle {
    std::string title;
    std::string y_label = "fraction of resources";
    std::vector<SeriesStyle> series;
    /// Draw negative values at zero (the CSV keeps the signed values).
    bool clamp_at_zero = false;
};

/// Plot style used when a scenario does not come with one.
inline PlotStyle default_style(const Scenario& s)
{
    switch (s.model) {
    case ModelKind::single: return {"growth", "g", {{"g", "g"}}, false};
    case ModelKind::single_with_costs: return {"growth and costs", "fraction of resources", {{"g", "g"}, {"C", "C", Dash::dashed}}, false};
    case ModelKind::passive_duopoly:
    case ModelKind::active_duopoly:
        return {"two players", "fraction of resources",
                {{"g1", "g1"}, {"g2", "g2", Dash::dashed}, {"g", "g", Dash::dotted}},
                false};
    }
    return {};
}

namespace detail {

inline std::string svg_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

/// Roughly `target` round tick values covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi, int target = 6)
{
    const double span = hi - lo;
    const double raw  = span / target;
    const double mag  = std::pow(10.0, std::floor(std::log10(raw)));
    double step       = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        step = m * mag;
        if (span / step <= target) break;
    }
    std::vector<double> out;
    for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + 1e-9 * step; v += step) {
        out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return out;
}

inline std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace detail

inline constexpr int svg_width  = 800;
inline constexpr int svg_height = 500;

inline std::string to_svg(const Table& table, const PlotStyle& style)
{
    if (table.rows() == 0) {
        throw output_error("cannot plot an empty trajectory");
    }
    if (style.series.empty()) {
        throw output_error("plot style has no series");
    }
    const auto& t = table.at("t");
    std::vector<std::vector<double>> ys;
    for (const auto& s : style.series) {
        auto v = table.at(s.column);
        if (style.clamp_at_zero) {
            for (auto& x : v) x = std::max(x, 0.0);
        }
        ys.push_back(std::move(v));
    }

    double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
    for (const auto& v : ys)
        for (double x : v)
            if (std::isfinite(x)) y_lo = std::min(y_lo, x), y_hi = std::max(y_hi, x);
    if (!std::isfinite(y_lo)) y_lo = 0.0, y_hi = 1.0;
    y_lo = std::min(y_lo, 0.0);
    if (y_hi - y_lo <= 0.0) y_hi = y_lo + 1.0;
    y_hi += 0.05 * (y_hi - y_lo);
    const double x_lo = t.front(), x_hi = t.back() > t.front() ? t.back() : t.front() + 1.0;

    constexpr double left = 80, right = 30, top = 40, bottom = 60;
    const double pw = svg_width - left - right, ph = svg_height - top - bottom;
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };
    using detail::svg_num;

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_width << "\" height=\"" << svg_height
      << "\" viewBox=\"0 0 " << svg_width << ' ' << svg_height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!style.title.empty()) {
        o << "<text x=\"" << svg_width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          << "font-size=\"16\">" << detail::xml_escape(style.title) << "</text>\n";
    }
    o << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top + ph) << "\" x2=\"" << svg_num(left + pw)
      << "\" y2=\"" << svg_num(top + ph) << "\"/>\n"
      << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top) << "\" x2=\"" << svg_num(left) << "\" y2=\""
      << svg_num(top + ph) << "\"/>\n"
      << "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double x : detail::nice_ticks(x_lo, x_hi)) {
        o << "<line x1=\"" << svg_num(px(x)) << "\" y1=\"" << svg_num(top + ph) << "\" x2=\"" << svg_num(px(x))
          << "\" y2=\"" << svg_num(top + ph + 5) << "\" stroke=\"black\"/>"
          << "<text x=\"" << svg_num(px(x)) << "\" y=\"" << svg_num(top + ph + 18) << "\" text-anchor=\"middle\">"
          << detail::tick_label(x) << "</text>\n";
    }
    for (double y : detail::nice_ticks(y_lo, y_hi)) {
        o << "<line x1=\"" << svg_num(left - 5) << "\" y1=\"" << svg_num(py(y)) << "\" x2=\"" << svg_num(left)
          << "\" y2=\"" << svg_num(py(y)) << "\" stroke=\"black\"/>"
          << "<text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(py(y) + 4) << "\" text-anchor=\"end\">"
          << detail::tick_label(y) << "</text>\n";
    }
    o << "</g>\n"
      << "<text x=\"" << svg_num(left + pw / 2) << "\" y=\"" << svg_height - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">time (years)</text>\n"
      << "<text transform=\"translate(20," << svg_num(top + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << detail::xml_escape(style.y_label) << "</text>\n";

    auto dash_attr = [](Dash d) -> std::string {
        switch (d) {
        case Dash::dashed: return " stroke-dasharray=\"8,5\"";
        case Dash::dotted: return " stroke-dasharray=\"2,4\"";
        case Dash::solid: break;
        }
        return "";
    };
    for (std::size_t k = 0; k < style.series.size(); ++k) {
        const auto& s = style.series[k];
        o << "<polyline data-series=\"" << detail::xml_escape(s.column) << "\" data-label=\""
          << detail::xml_escape(s.label) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\""
          << dash_attr(s.dash) << " points=\"";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!std::isfinite(ys[k][i])) continue;
            o << (i ? " " : "") << svg_num(px(t[i])) << ',' << svg_num(py(ys[k][i]));
        }
        o << "\"/>\n";
    }
    o << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t k = 0; k < style.series.size(); ++k) {
        const double ly = top + 15 + 18.0 * static_cast<double>(k);
        o << "<line x1=\"" << svg_num(left + pw - 90) << "\" y1=\"" << svg_num(ly) << "\" x2=\""
          << svg_num(left + pw - 60) << "\" y2=\"" << svg_num(ly) << "\" stroke=\"black\" stroke-width=\"1.5\""
          << dash_attr(style.series[k].dash) << "/>"
          << "<text x=\"" << svg_num(left + pw - 52) << "\" y=\"" << svg_num(ly + 4) << "\">"
          << detail::xml_escape(style.series[k].label) << "</text>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

/// Writes `content` to `path`, creating parent directories.
inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw output_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw output_error("cannot open " + path.string() + " for writing");
    out << content;
    out.close();
    if (!out) throw output_error("error while writing " + path.string());
}

/// `<dir>/<stem>.events.json` next to the CSV `<dir>/<stem>.csv`.
inline std::filesystem::path events_path_for(const std::filesystem::path& csv_path)
{
    auto p = csv_path;
    p.replace_extension();
    p += ".events.json";
    return p;
}

/// Writes the CSV and its sibling events file.
inline void emit_csv(const RunResult& r, const std::filesystem::path& path, int precision = default_precision)
{
    const auto csv = to_csv(r.table, precision);
    write_file(path, csv);
    write_file(events_path_for(path), events_json(r.events));
}

/// Renders before opening the file, so a failed plot leaves nothing behind.
inline void emit_svg(const Table& table, const PlotStyle& style, const std::filesystem::path& path)
{
    const auto svg = to_svg(table, style);
    write_file(path, svg);
}

} // namespace seneca

#endif // SENECA_OUTPUT_HPP
