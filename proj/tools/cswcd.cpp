#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cswcd/cswcd.hpp"

namespace {

using cswcd::run::json;

constexpr int kExitConfig = 2;
constexpr int kExitUnverified = 3;
constexpr int kExitRuntime = 4;

cswcd::run::RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw cswcd::ConfigError("$", "cannot open config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw cswcd::ConfigError("$", std::string("invalid JSON: ") + e.what());
    }
    cswcd::run::RunConfig cfg = cswcd::run::parse_config(doc);
    if (const char* env = std::getenv("CSWCD_GUARD")) {
        try {
            std::size_t used = 0;
            const long guard = std::stol(env, &used);
            if (used != std::string(env).size() || guard < 0) {
                throw std::invalid_argument("negative or trailing characters");
            }
            cfg.guard = static_cast<std::size_t>(guard);
        } catch (const std::exception&) {
            throw cswcd::ConfigError("CSWCD_GUARD", "expected a nonnegative integer");
        }
    }
    return cfg;
}

void emit(const json& doc, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw std::runtime_error("cannot write '" + out_path + "'");
    }
    out << doc.dump(2) << '\n';
}

json error_json(const cswcd::ConfigError& e)
{
    return {{"error", "config"}, {"path", e.path()}, {"message", e.what()}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted composition-differentiation operators on weighted Bergman spaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string timing_path;
    std::size_t draws = 0;
    std::uint64_t seed = 0;

    auto* check = app.add_subcommand("check", "Run the configured checks and print a JSON report");
    check->add_option("config", config_path, "Config JSON")->required();
    check->add_option("--out", out_path, "Write the report here instead of stdout");
    check->add_option("--timing", timing_path, "Write per-check wall times (JSON) here");

    auto* sweep = app.add_subcommand("sweep", "Seeded parameter sweep over sweep.ranges");
    sweep->add_option("config", config_path, "Config JSON")->required();
    sweep->add_option("--draws", draws, "Number of accepted draws")->required();
    sweep->add_option("--seed", seed, "Generator seed")->required();
    sweep->add_option("--out", out_path, "Write the aggregate report here instead of stdout");

    auto* grid = app.add_subcommand("grid", "Write boundedness and Nevanlinna grids as CSV");
    grid->add_option("config", config_path, "Config JSON")->required();
    grid->add_option("--out", out_path, "Output directory")->required();

    auto* export_matrix = app.add_subcommand("export-matrix", "Write the operator matrix as CSV");
    export_matrix->add_option("config", config_path, "Config JSON")->required();
    export_matrix->add_option("--out", out_path, "Output CSV file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const cswcd::run::RunConfig cfg = load_config(config_path);

        if (check->parsed()) {
            const auto reports = cswcd::run::run(cfg);
            emit(cswcd::run::reports_json(cfg, reports), out_path);
            if (!timing_path.empty()) {
                std::ofstream(timing_path) << cswcd::run::timing_json(reports).dump(2) << '\n';
            }
            return cswcd::run::exit_code(reports);
        }

        if (sweep->parsed()) {
            const json doc = cswcd::run::sweep(cfg, draws, seed);
            emit(doc, out_path);
            return doc["exit_code"].get<int>();
        }

        const cswcd::SymbolPair pair = cswcd::run::build_pair(cfg.symbols, cfg.space);

        if (grid->parsed()) {
            const std::filesystem::path dir(out_path);
            std::filesystem::create_directories(dir);
            json summary{{"header", cswcd::run::header_json(cfg, "grid")}, {"grids", json::array()}};
            for (const bool nevanlinna : {false, true}) {
                const std::string name = nevanlinna ? "nevanlinna-grid" : "boundedness-grid";
                const cswcd::GridReport g = cswcd::run::detail::configured_grid(cfg, pair.phi, nevanlinna);
                std::ofstream csv(dir / (name + ".csv"));
                cswcd::write_grid_csv(g, csv);
                json radial = json::array();
                for (const double v : g.radial_max) {
                    radial.push_back(std::isfinite(v) ? json(v) : json(nullptr));
                }
                summary["grids"].push_back({{"grid", name},
                                            {"file", name + ".csv"},
                                            {"trend", cswcd::trend_name(g.trend)},
                                            {"compact_consistent", g.compact_consistent},
                                            {"supremum", g.supremum},
                                            {"radii", g.radii},
                                            {"radial_max", radial},
                                            {"skipped", g.skipped.size()}});
            }
            std::cout << summary.dump(2) << '\n';
            return 0;
        }

        if (export_matrix->parsed()) {
            const cswcd::OperatorMatrix m = cswcd::build_wcd_matrix(pair, cfg.space);
            std::ofstream csv(out_path);
            if (!csv) {
                throw std::runtime_error("cannot write '" + out_path + "'");
            }
            cswcd::write_matrix_csv(m, csv);
            return 0;
        }
    } catch (const cswcd::ConfigError& e) {
        std::cerr << error_json(e).dump() << '\n';
        return kExitConfig;
    } catch (const cswcd::run::SweepError& e) {
        std::cerr << json{{"error", "sweep"}, {"message", e.what()}}.dump() << '\n';
        return kExitConfig;
    } catch (const cswcd::GateError& e) {
        std::cerr << json{{"error", "gate"}, {"message", e.what()}}.dump() << '\n';
        return kExitUnverified;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "runtime"}, {"message", e.what()}}.dump() << '\n';
        return kExitRuntime;
    }
    return 0;
}
