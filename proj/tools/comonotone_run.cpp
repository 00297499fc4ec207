// Sweep n for one corpus function and write JSON/CSV results.

#include "comonotone/corpus.hpp"
#include "comonotone/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using comonotone::RunConfig;

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_reals(text)) {
        if (v != static_cast<int>(v)) throw std::invalid_argument("n values must be integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    const auto j = nlohmann::json::parse(in);
    for (const auto& [key, value] : j.items()) {
        if (key == "function") cfg.function_id = value.get<std::string>();
        else if (key == "breakpoints") cfg.breakpoints = value.get<std::vector<double>>();
        else if (key == "r") cfg.r = value.get<int>();
        else if (key == "n") cfg.n_list = value.get<std::vector<int>>();
        else if (key == "mode") cfg.mode = comonotone::parse_mode(value.get<std::string>());
        else if (key == "grid_density") cfg.grid_density = value.get<int>();
        else if (key == "set") cfg.overrides = value.get<std::map<std::string, double>>();
        else if (key == "out") cfg.output_path = value.get<std::string>();
        else if (key == "format") cfg.output_format = value.get<std::string>();
        else if (key == "dump_partition") cfg.dump_partition = value.get<bool>();
        else if (key == "no_timing") cfg.timing = !value.get<bool>();
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Comonotone trigonometric approximation: sweep n for one test function"};
    std::string config_path, function_id, breakpoints, n_text, mode, out, format;
    int r = 0, grid_density = 0;
    std::vector<std::string> sets;
    bool dump_partition = false, no_timing = false, list = false;
    app.add_option("--config", config_path, "JSON config; flags override its values");
    app.add_option("--function", function_id, "corpus function id");
    app.add_option("--breakpoints", breakpoints, "comma separated breakpoints in [-pi, pi)");
    app.add_option("--r", r, "smoothness order (>= 2)");
    app.add_option("--n", n_text, "comma separated, strictly increasing degrees");
    app.add_option("--mode", mode, "strict or practical");
    app.add_option("--grid-density", grid_density, "verification grid points per unit of n");
    app.add_option("--set", sets, "constant override KEY=VALUE (repeatable)");
    app.add_option("--out", out, "output path");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--dump-partition", dump_partition, "include the interval partition per row");
    app.add_flag("--no-timing", no_timing, "write zero timings so reruns are byte identical");
    app.add_flag("--list", list, "list corpus functions and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& e : comonotone::corpus())
            std::cout << e.id << "  r_max=" << e.r_max << "  " << e.description << '\n';
        return 0;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(config_path, cfg);
        if (!function_id.empty()) cfg.function_id = function_id;
        if (!breakpoints.empty()) cfg.breakpoints = parse_reals(breakpoints);
        if (r != 0) cfg.r = r;
        if (!n_text.empty()) cfg.n_list = parse_ints(n_text);
        if (!mode.empty()) cfg.mode = comonotone::parse_mode(mode);
        if (grid_density != 0) cfg.grid_density = grid_density;
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--set expects KEY=VALUE, got " + kv);
            cfg.overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        if (!out.empty()) cfg.output_path = out;
        if (!format.empty()) cfg.output_format = format;
        if (dump_partition) cfg.dump_partition = true;
        if (no_timing) cfg.timing = false;

        const auto result = comonotone::run(cfg);
        if (cfg.output_path.empty())
            std::cout << (cfg.output_format == "csv" ? comonotone::to_csv(result)
                                                     : comonotone::to_json(result));
        else
            comonotone::write_outputs(result);
        for (const auto& row : result.rows)
            if (!row.ok)
                std::cerr << "n=" << row.n << " failed in " << row.failed_stage << ": " << row.error << '\n';
        return result.all_passed() ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
