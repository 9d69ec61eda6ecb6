#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracharm/estimates.hpp"
#include "fracharm/grid.hpp"
#include "fracharm/harness.hpp"

namespace fracharm::cli {

enum ExitCode : int { kPass = 0, kValidationFailure = 1, kConfigError = 2, kNumericalError = 3 };

/// Invalid configuration; `line` is 1-based, 0 when no location applies.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct GridConfig {
    std::optional<int> n, N;
    std::optional<double> L;
};

/// n = 2, N = 128 for the Jacobian estimates, n = 1, N = 1024 otherwise, L = 1;
/// fields set in `g` win.
GridSpec grid_for(EstimateId id, const GridConfig& g);

struct LevelConfig {
    std::optional<double> t_min, t_max;  // default h/4 and 2L of the profile grid
    int M = 48;
};

struct EstimateEntry {
    EstimateDescriptor descriptor;
    int line = 0;  // where the entry starts in the config text
    /// Line of each explicitly given parameter, for diagnostics.
    std::vector<std::pair<std::string, int>> param_lines;
};

struct RunConfig {
    GridConfig grid;
    LevelConfig levels;
    std::vector<EstimateEntry> estimates;
    FamilyOptions family;  // per-estimate layout flags are still taken from family_options_for
    std::string out_dir = "fracharm-out";
    VerifyOptions tolerances;
    double tolerance_scale = 1.0;  // multiplies the dilation and zero-LHS tolerances
    /// Orders s for which decay and boundary profiles are written.
    std::vector<double> profiles;
};

/// Command-line values that override the config file.
struct Overrides {
    std::optional<int> n, N;
    std::optional<double> L, t_min, t_max;
    std::optional<int> M;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> tolerance_scale;
};

/// Parses JSON text. Syntax errors, unknown keys and wrong types throw ConfigError
/// anchored to the offending line. Admissibility is checked by validate().
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
void apply_overrides(RunConfig& cfg, const Overrides& o);
/// Checks grids, levels and every estimate's parameters on the grid it will run on.
void validate(const RunConfig& cfg);

/// Runs every estimate, writes <id>.json and <id>.csv per estimate, summary.json and the
/// requested profiles. Returns kPass or kValidationFailure; numerical problems propagate
/// as fracharm::NumericalError.
int run(const RunConfig& cfg, std::ostream& log);

struct OpsCheckOptions {
    std::optional<int> N;  // force every grid to this size
};

/// Identity and oracle-equivalence table. Returns kPass iff every row passes.
int ops_check(const OpsCheckOptions& opt, std::ostream& out);

/// Oracle tolerance for a forced grid size: 2e-2 for N >= 512, otherwise
/// 2e-2 * 512 / N, capped at 1. Below N = 512 the oracle input is a single sine.
double oracle_tolerance(int N);

/// Tabulates the Poisson symbol for s into `dir` (or FRACHARM_CACHE_DIR when empty).
int symbol_cache(double s, const std::string& dir, std::ostream& out);

/// Full command-line entry point; maps exceptions to exit codes.
int main_entry(int argc, char** argv);

}  // namespace fracharm::cli
