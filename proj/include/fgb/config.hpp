#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fgb {

/**
 * Experiment parameters shared by every suite. The defaults describe the
 * desk-scale run: rank-2 free group, spectral parameter 0.3, depth-5
 * filtration observed at depth 3, sphere radius 8, and a decreasing Abel
 * schedule. `tolerances` lets a config file tighten or relax individual
 * named checks; anything not named falls back to the suite's built-in value.
 */
struct ExperimentConfig {
    int k = 2;                  // free-group rank (letters = 2k)
    double t = 0.3;             // spectral parameter of the principal series
    int depth = 5;              // max filtration depth N
    int n_obs = 3;              // observation depth for compressed iterates
    int n_max = 8;              // largest sphere radius summed exactly
    std::vector<double> eps_schedule{0.4, 0.2, 0.1, 0.05};
    std::map<std::string, double> tolerances;  // per-check overrides
    std::uint64_t seed = 12345; // seeds every random property sample
    int workers = 0;            // 0 = all available cores
    std::string out = "out";    // directory for report.json and *.csv
};

/** The tolerance for `name`, or `fallback` when the config does not set it. */
double tolerance_or(const ExperimentConfig& cfg, const std::string& name, double fallback);

/**
 * Parses one `key=value` line set: `#` comments and blank lines are skipped,
 * whitespace around keys and values is trimmed. Recognized keys are k, t,
 * depth, nobs, nmax, eps_schedule (comma-separated), seed, workers, out, and
 * tol.<name>. Unknown keys and malformed values throw ConfigError naming the
 * offending key.
 */
ExperimentConfig parse_config_text(const std::string& text);

/** parse_config_text over the contents of a file; missing file throws ConfigError. */
ExperimentConfig parse_config_file(const std::string& path);

/** Applies one `key=value` override (same keys as the file format). */
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/**
 * Enforces the config invariants: 2 ≤ k ≤ 4, 1 ≤ nobs ≤ depth ≤ 6,
 * 1 ≤ nmax ≤ 12, eps_schedule nonempty and strictly decreasing inside (0,1),
 * workers ≥ 0, out nonempty. Violations throw ConfigError naming the field.
 */
void validate(const ExperimentConfig& cfg);

/** The worker count to use: the configured value, or all cores when 0. */
int effective_workers(const ExperimentConfig& cfg);

}  // namespace fgb
