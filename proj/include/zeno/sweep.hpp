// sweep.hpp - run configurations and dataset generators behind the CLI
//
// Every runner validates its configuration before computing anything and
// returns the dataset as a CsvTable. Sweep points are evaluated in parallel
// but rows are always assembled in sweep-index order, so identical
// configurations give byte-identical output.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zeno/csv.hpp"

namespace zeno {

enum class ExitCode : int {
    Success = 0,
    InvalidConfig = 2,
    ToleranceFailure = 3,
    TruncationInadequate = 4,
};

struct RunConfig {
    std::string command;

    // ModelParams
    double gamma = 1.0;
    double lambda_band = 5.0;
    double e_r = 0.0;
    double e_0 = 0.0;

    // Schedule: either tau or x values (x = lambda * tau).
    std::optional<double> tau;
    std::vector<double> x_values;

    // Comparison of alpha and alpha': gamma_d = c * lambda / x.
    std::vector<double> c_values;
    double x_min = 0.05;
    double x_max = 20.0;
    std::size_t x_steps = 200;

    // DetectorParams, or a direct dephasing rate.
    double current_occupied = 3.0;
    double current_empty = 6.0;
    std::optional<double> gamma_d;

    // Counting: explicit time, or a multiple of 1 / gamma_d.
    std::optional<double> t;
    double t_factor = 2.0;

    // Chain reservoir.
    std::size_t n_sites = 250;
    double hop = 3.0;

    // n-resolved master equation.
    bool n_resolved = false;
    std::optional<std::size_t> n_max;

    double t_max = 5.0;
    std::size_t t_steps = 100;
    std::string output_path;
};

struct RunResult {
    CsvTable table;
    /// Per-n block dump of the master command (long format), when requested.
    std::optional<CsvTable> blocks;
    std::vector<std::string> warnings;
    ExitCode status = ExitCode::Success;
};

/// Known subcommands, including the fig4/fig6/fig7/fig8 presets.
const std::vector<std::string>& command_names();

/// Defaults for a command (published figure parameters for the presets).
RunConfig preset(const std::string& command);

/// Overlays keys of a JSON object onto cfg. Keys match the long flag names
/// with either '-' or '_' separators. Unknown keys throw ConfigError.
void apply_json(const nlohmann::json& j, RunConfig& cfg);

/// Throws ConfigError on the first invalid field.
void validate(const RunConfig& cfg);

RunResult run(const RunConfig& cfg);

RunResult run_decay(const RunConfig& cfg);
RunResult run_trajectory(const RunConfig& cfg);
RunResult run_alpha_compare(const RunConfig& cfg);
RunResult run_master(const RunConfig& cfg);
RunResult run_counting(const RunConfig& cfg);
RunResult run_chain_compare(const RunConfig& cfg);

RunResult run_fig4(const RunConfig& cfg);
RunResult run_fig6(const RunConfig& cfg);
RunResult run_fig7(const RunConfig& cfg);
RunResult run_fig8(const RunConfig& cfg);

/// Column layout of each command, for --help.
std::string schema_help(const std::string& command);

}  // namespace zeno
