#ifndef SENECA_CLI_HPP
#define SENECA_CLI_HPP

#include "seneca/output.hpp"
#include "seneca/presets.hpp"
#include "seneca/run.hpp"
#include "seneca/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace seneca {

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_runtime = 2 };

struct JobOutcome {
    int code = exit_ok;
    std::string out;
    std::string err;
};

/// Runs independent jobs on up to `jobs` threads; outcomes keep input order.
inline std::vector<JobOutcome> run_jobs(const std::vector<std::function<JobOutcome()>>& tasks, unsigned jobs)
{
    std::vector<JobOutcome> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            try {
                results[i] = tasks[i]();
            } catch (const scenario_error& e) {
                results[i] = {exit_invalid, "", std::string("error: ") + e.what() + "\n"};
            } catch (const std::exception& e) {
                results[i] = {exit_runtime, "", std::string("error: ") + e.what() + "\n"};
            }
        }
    };
    const auto n = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(tasks.size(), 1));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < n; ++k) pool.emplace_back(worker);
    }
    return results;
}

struct CliOptions {
    std::filesystem::path out_dir = "out";
    unsigned jobs                 = 1;
    int precision                 = default_precision;
};

/// Writes every output the scenario asks for under `<out_dir>/<stem>.*` and
/// lists the written files.
inline std::string write_outputs(const RunResult& r, const PlotStyle& style, const std::string& stem,
                                 const CliOptions& opt)
{
    std::string log;
    const auto base = opt.out_dir / stem;
    if (r.scenario.wants(OutputKind::csv)) {
        auto csv = base;
        csv += ".csv";
        emit_csv(r, csv, opt.precision);
        log += "wrote " + csv.string() + "\n" + "wrote " + events_path_for(csv).string() + "\n";
    } else if (r.scenario.wants(OutputKind::events)) {
        auto ev = base;
        ev += ".events.json";
        write_file(ev, events_json(r.events));
        log += "wrote " + ev.string() + "\n";
    }
    if (r.scenario.wants(OutputKind::svg)) {
        auto svg = base;
        svg += ".svg";
        emit_svg(r.table, style, svg);
        log += "wrote " + svg.string() + "\n";
    }
    return log;
}

inline std::string discrepancy_warnings(const RunResult& r, const std::string& stem)
{
    std::string w;
    for (const auto& e : r.events) {
        if (e.discrepant && e.method == EventMethod::closed_form) {
            w += "warning: " + stem + ": " + std::string(to_string(e.kind)) +
                 " closed form and numeric route disagree\n";
        }
    }
    return w;
}

/// load_scenario with the file name prefixed to any error message.
inline Scenario load_named(const std::string& path)
{
    try {
        return load_scenario(path);
    } catch (const scenario_error& e) {
        throw scenario_error(path + ": " + e.what());
    }
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Growth, cost and competition scenarios: run, plot and report events."};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    std::string out_dir = opt.out_dir.string();
    app.add_option("--out-dir", out_dir, "Directory for written files")->capture_default_str();
    app.add_option("--jobs", opt.jobs, "Scenarios run concurrently")->check(CLI::Range(1u, 256u))->capture_default_str();
    app.add_option("--precision", opt.precision, "Significant digits in CSV output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();

    std::vector<int> figures;
    auto* figure = app.add_subcommand("figure", "Run bundled figure presets and write CSV, SVG and events");
    figure->add_option("numbers", figures, "Figure numbers")->required()->check(CLI::Range(1, preset_count));

    std::vector<std::string> run_files;
    auto* run = app.add_subcommand("run", "Run scenario files and write the outputs they request");
    run->add_option("files", run_files, "Scenario JSON files")->required();

    std::string events_file;
    auto* events = app.add_subcommand("events", "Print the event report of a scenario as JSON");
    events->add_option("file", events_file, "Scenario JSON file")->required();

    std::vector<std::string> validate_files;
    auto* validate_cmd = app.add_subcommand("validate", "Check scenario files without running them");
    validate_cmd->add_option("files", validate_files, "Scenario JSON files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? exit_ok : exit_invalid;
    }
    opt.out_dir = out_dir;

    std::vector<std::function<JobOutcome()>> tasks;
    if (*figure) {
        for (int n : figures) {
            tasks.emplace_back([n, &opt] {
                const auto p = preset(n);
                const auto r = run_scenario(p.scenario);
                return JobOutcome{exit_ok, write_outputs(r, p.style, p.name, opt), discrepancy_warnings(r, p.name)};
            });
        }
    } else if (*run) {
        for (const auto& f : run_files) {
            tasks.emplace_back([f, &opt] {
                const auto s    = load_named(f);
                const auto stem = std::filesystem::path(f).stem().string();
                const auto r    = run_scenario(s);
                return JobOutcome{exit_ok, write_outputs(r, default_style(s), stem, opt), discrepancy_warnings(r, stem)};
            });
        }
    } else if (*events) {
        tasks.emplace_back([&] {
            const auto r = run_scenario(load_named(events_file));
            return JobOutcome{exit_ok, events_json(r.events), discrepancy_warnings(r, events_file)};
        });
    } else if (*validate_cmd) {
        for (const auto& f : validate_files) {
            tasks.emplace_back([f] {
                load_named(f);
                return JobOutcome{exit_ok, f + ": ok\n", ""};
            });
        }
    }

    int code = exit_ok;
    for (const auto& r : run_jobs(tasks, opt.jobs)) {
        out << r.out;
        err << r.err;
        code = std::max(code, r.code);
    }
    return code;
}

} // namespace seneca

#endif // SENECA_CLI_HPP
