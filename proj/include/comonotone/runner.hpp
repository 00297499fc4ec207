#pragma once

// Batch sweep over n for one corpus function, with JSON/CSV output.

#include "comonotone/constants.hpp"
#include "comonotone/verify.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace comonotone {

struct RunConfig {
    std::string function_id = "neg_sin";
    std::vector<double> breakpoints;  // empty: the corpus entry's own set
    int r = 2;
    std::vector<int> n_list;
    Mode mode = Mode::Practical;
    int grid_density = 4096;
    std::map<std::string, double> overrides;
    std::string output_path;          // empty: stdout only
    std::string output_format = "json";
    bool dump_partition = false;
    bool timing = true;               // false zeroes wall_ms for byte-stable output

    /// Throws std::invalid_argument on the first problem found.
    void validate() const;
};

struct RunRow {
    int n = 0;
    bool ok = false;
    std::string failed_stage;   // set when !ok
    std::string error;
    int degree = 0;
    double sup_error = 0.0;
    double margin = 0.0;
    double linear_residue = 0.0;
    double u_weight = 0.0;
    bool whitney = false;
    double wall_ms = 0.0;
    std::map<std::string, double> stage_ms;
    std::vector<double> tau_a;   // cos coefficients a_0..a_d, kept for plot output
    std::vector<double> tau_b;   // sin coefficients, b_0 = 0
    std::string partition_json;  // when dump_partition
};

struct RunResult {
    RunConfig config;
    std::vector<RunRow> rows;
    std::optional<RateFit> fit;   // over rows with ok and !whitney, if >= 3
    std::map<std::string, LedgerEntry> ledger;  // from the last successful row
    bool all_passed() const;
};

RunResult run(const RunConfig& config);

std::string to_json(const RunResult& result);
std::string to_csv(const RunResult& result);

/// Writes the main file plus <path>.error.dat (n, sup_error) and
/// <path>.tau.dat (x, tau(x), f(x)) for the largest successful n.
void write_outputs(const RunResult& result);

}  // namespace comonotone
