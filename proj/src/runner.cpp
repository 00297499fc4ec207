#include "comonotone/runner.hpp"

#include "comonotone/corpus.hpp"
#include "comonotone/operators.hpp"
#include "comonotone/partition.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace comonotone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMarginTolerance = 1e-9;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

void RunConfig::validate() const {
    if (n_list.empty()) throw std::invalid_argument("n_list empty");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1) throw std::invalid_argument("n_list entries must be >= 1");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("n_list must be strictly increasing");
    }
    if (r < 2) throw std::invalid_argument("r must be >= 2");
    if (grid_density < 8) throw std::invalid_argument("grid_density must be >= 8");
    if (output_format != "json" && output_format != "csv")
        throw std::invalid_argument("unknown output format '" + output_format + "'");
    corpus_entry(function_id);
    if (!breakpoints.empty()) {
        if (breakpoints.size() % 2 != 0)
            throw std::invalid_argument("breakpoint count must be even");
        for (std::size_t i = 0; i < breakpoints.size(); ++i) {
            if (!(breakpoints[i] >= -kPi && breakpoints[i] < kPi))
                throw std::invalid_argument("breakpoints must lie in [-pi, pi)");
            if (i > 0 && breakpoints[i] == breakpoints[i - 1])
                throw std::invalid_argument("breakpoints must be distinct");
        }
    }
}

bool RunResult::all_passed() const {
    for (const auto& row : rows)
        if (!row.ok) return false;
    return !rows.empty();
}

RunResult run(const RunConfig& config) {
    config.validate();
    const CorpusEntry& entry = corpus_entry(config.function_id);
    const BreakpointSet y(config.breakpoints.empty() ? entry.breakpoints : config.breakpoints);
    const double member = membership_margin(entry, y);
    if (member < -1e-12)
        throw std::invalid_argument("function '" + entry.id +
                                    "' is not monotone with the given breakpoints (margin " +
                                    fmt(member) + ")");

    RunResult result;
    result.config = config;
    const Instance inst{entry.f, entry.fprime, y};
    const ConstantsLedger ledger = resolve_constants(y.s(), config.r, config.mode, config.overrides);
    AssembleOptions opts;
    opts.grid_density = config.grid_density;
    opts.margin_tolerance = kMarginTolerance;

    for (int n : config.n_list) {
        RunRow row;
        row.n = n;
        const auto t0 = std::chrono::steady_clock::now();
        std::string stage = "assemble";
        try {
            if (config.dump_partition) {
                stage = "partition";
                row.partition_json = build_partition(entry.fprime, config.r, n, y).dump_json();
            }
            stage = "assemble";
            const ApproximationResult res = assemble_tau(inst, config.r, n, ledger, opts);
            stage = "verify";
            row.degree = res.degree;
            row.sup_error = res.sup_error;
            row.margin = res.margin;
            row.linear_residue = res.linear_residue;
            row.u_weight = res.u_weight;
            row.whitney = res.whitney;
            row.stage_ms = {{"partition", res.times.partition}, {"split", res.times.split},
                            {"vn", res.times.vn},               {"theta", res.times.theta},
                            {"corrections", res.times.corrections}, {"verify", res.times.verify}};
            for (int k = 0; k <= res.tau.degree(); ++k) {
                row.tau_a.push_back(k == 0 ? res.tau.a0() : res.tau.a(k));
                row.tau_b.push_back(k == 0 ? 0.0 : res.tau.b(k));
            }
            row.ok = res.margin >= -kMarginTolerance;
            if (!row.ok) {
                row.failed_stage = "verify";
                row.error = "comonotonicity margin " + fmt(res.margin) + " below tolerance";
            }
            result.ledger = res.ledger.entries();
        } catch (const std::exception& e) {
            row.ok = false;
            row.failed_stage = stage;
            row.error = e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (!config.timing) {
            row.wall_ms = 0.0;
            for (auto& [k, v] : row.stage_ms) v = 0.0;
        }
        result.rows.push_back(std::move(row));
    }

    std::vector<double> ns, errs;
    for (const auto& row : result.rows)
        if (row.ok && !row.whitney && row.sup_error > 0.0) {
            ns.push_back(row.n);
            errs.push_back(row.sup_error);
        }
    if (ns.size() >= 3) result.fit = fit_rate(ns, errs);
    return result;
}

std::string to_json(const RunResult& result) {
    using nlohmann::ordered_json;
    const RunConfig& c = result.config;
    ordered_json j;
    j["function"] = c.function_id;
    j["breakpoints"] = c.breakpoints;
    j["r"] = c.r;
    j["mode"] = to_string(c.mode);
    j["grid_density"] = c.grid_density;
    j["overrides"] = c.overrides;
    ordered_json rows = ordered_json::array();
    for (const auto& row : result.rows) {
        ordered_json o;
        o["n"] = row.n;
        o["degree"] = row.degree;
        o["sup_error"] = row.sup_error;
        o["margin"] = row.margin;
        o["mode"] = to_string(c.mode);
        o["wall_ms"] = row.wall_ms;
        o["ok"] = row.ok;
        o["whitney"] = row.whitney;
        o["linear_residue"] = row.linear_residue;
        o["u_weight"] = row.u_weight;
        o["stage_ms"] = row.stage_ms;
        if (!row.ok) {
            o["failed_stage"] = row.failed_stage;
            o["error"] = row.error;
        }
        if (!row.partition_json.empty()) o["partition"] = ordered_json::parse(row.partition_json);
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    if (result.fit) {
        j["summary"] = {{"slope", result.fit->slope},
                        {"intercept", result.fit->intercept},
                        {"r_squared", result.fit->r_squared},
                        {"points", result.fit->n_values.size()}};
    } else {
        j["summary"] = nullptr;
    }
    ordered_json led = ordered_json::object();
    for (const auto& [k, e] : result.ledger)
        led[k] = {{"value", e.value}, {"provenance", to_string(e.provenance)}, {"note", e.note}};
    j["constants"] = std::move(led);
    return j.dump(2) + "\n";
}

std::string to_csv(const RunResult& result) {
    std::ostringstream os;
    os << "n,degree,sup_error,margin,mode,wall_ms\n";
    const std::string mode = to_string(result.config.mode);
    for (const auto& row : result.rows) {
        if (row.ok)
            os << row.n << ',' << row.degree << ',' << fmt(row.sup_error) << ',' << fmt(row.margin)
               << ',' << mode << ',' << fmt(row.wall_ms) << '\n';
        else
            os << row.n << ",,,," << mode << ',' << fmt(row.wall_ms) << '\n';
    }
    if (result.fit)
        os << "# slope=" << fmt(result.fit->slope) << " r_squared=" << fmt(result.fit->r_squared)
           << '\n';
    for (const auto& row : result.rows)
        if (!row.ok) os << "# failed n=" << row.n << " stage=" << row.failed_stage << ": " << row.error << '\n';
    return os.str();
}

void write_outputs(const RunResult& result) {
    const std::string& path = result.config.output_path;
    if (path.empty()) return;
    auto open = [](const std::string& p) {
        std::ofstream out(p);
        if (!out) throw std::runtime_error("cannot write " + p);
        return out;
    };
    {
        auto out = open(path);
        out << (result.config.output_format == "csv" ? to_csv(result) : to_json(result));
    }
    {
        auto out = open(path + ".error.dat");
        out << "# n sup_error\n";
        for (const auto& row : result.rows)
            if (row.ok) out << row.n << ' ' << fmt(row.sup_error) << '\n';
    }
    const RunRow* last = nullptr;
    for (const auto& row : result.rows)
        if (row.ok) last = &row;
    if (last == nullptr) return;
    TrigPoly tau(last->tau_a[0],
                 std::vector<double>(last->tau_a.begin() + 1, last->tau_a.end()),
                 std::vector<double>(last->tau_b.begin() + 1, last->tau_b.end()));
    const CorpusEntry& entry = corpus_entry(result.config.function_id);
    auto out = open(path + ".tau.dat");
    out << "# n=" << last->n << "\n# x tau f\n";
    const int points = 1024;
    for (int m = 0; m <= points; ++m) {
        const double x = -kPi + 2.0 * kPi * m / points;
        out << fmt(x) << ' ' << fmt(tau(x)) << ' ' << fmt(entry.f(x)) << '\n';
    }
}

}  // namespace comonotone
