#pragma once

// Batch driver behind the `binopt` command line: builds instances, applies
// presets and overrides, runs trials, and renders JSON-lines and CSV reports.
// Everything here is deterministic given the RunSpec; wall-clock fields are
// only emitted when asked for.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "binopt/appa_solver.hpp"
#include "binopt/metrics.hpp"
#include "binopt/presets.hpp"
#include "binopt/serialization.hpp"

namespace binopt {

enum class Task { Qubo, Recovery, Mimo, OneBit };

std::string to_string(Task t);
/// "qubo", "recovery", "mimo", "onebit". Throws ParameterError otherwise.
Task parse_task(const std::string& name);

/// Generator parameters; each task reads the fields it needs.
struct GeneratorParams {
  Index m = 500;
  Index n = 1000;
  Index s = 100;
  double q = 2.0;
  double nf = 0.0;
  double snr_db = 10.0;
  bool correlated = false;
  double r = 0.2;
  int qubo_case = 1;
};

/// Per-field overrides applied after the preset.
struct ConfigOverrides {
  std::optional<double> eta, alpha, sigma, lambda0, pi, theta, epsilon;
  std::optional<std::int64_t> k0, max_iters;
  std::optional<int> max_backtracks;
  std::optional<double> time_cap_secs;
  std::optional<bool> warm_start_backtracking;
};

struct RunSpec {
  Task task = Task::Recovery;
  std::optional<std::filesystem::path> file;  ///< native JSON or ORLIB triplets
  std::optional<std::string> beasley;         ///< e.g. "bqp100-3"
  std::optional<std::filesystem::path> beasley_dir;
  GeneratorParams gen;
  std::string preset;  ///< empty: the task's own preset
  MatrixNorm theta_norm = MatrixNorm::MaxRowSum;
  ConfigOverrides overrides;
  int trials = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  bool timing = false;  ///< include wall-clock seconds in records
  bool traces = false;  ///< include lambda/tau traces and x_final in records

  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string instance;
  Index dim = 0;
  AppaConfig config;
  SolveReport report;
  MetricReport metrics;
};

/// Fixed instance (file, Beasley) or one generated from `seed`.
AnyInstance build_instance(const RunSpec& spec, std::uint64_t seed);

/// Preset named in spec (or the task default) for this instance, plus overrides.
Preset resolve_preset(const RunSpec& spec, const AnyInstance& inst);

/// Builds a per-solve observer once the objective and configuration are known.
using ObserverFactory = std::function<IterationObserver(const Objective&, const AppaConfig&)>;

TrialRecord run_trial(const RunSpec& spec, int trial, const ObserverFactory& watch = {});

/// Trials 0..trials-1, in order, possibly on several worker threads.
std::vector<TrialRecord> run_trials(const RunSpec& spec);

struct Summary {
  int trials = 0;
  std::optional<double> median_acc, mean_acc, best_acc;
  std::optional<double> median_ber, mean_ber, best_ber;
  std::optional<double> median_gap, mean_gap, best_gap;
  double median_objective = 0.0, mean_objective = 0.0, best_objective = 0.0;
  double median_iterations = 0.0;
  int stopped_by_rule = 0;
};

Summary summarize(const std::vector<TrialRecord>& records);

double median(std::vector<double> values);

std::string trial_json(const TrialRecord& rec, const RunSpec& spec);
std::string summary_json(const Summary& s, const RunSpec& spec);

/// One JSON line per trial followed by one summary line.
void write_solve_report(std::ostream& out, const std::vector<TrialRecord>& records,
                        const RunSpec& spec);

/// Swept axis names: m, n, s, q, nf, snr, r, case.
void apply_axis(GeneratorParams& gen, const std::string& axis, double value);

struct SweepResult {
  std::string axis;
  std::vector<double> values;
  std::vector<std::vector<TrialRecord>> records;  ///< one vector per value
};

SweepResult run_sweep(const RunSpec& base, const std::string& axis,
                      const std::vector<double>& values);

/// CSV schema version written in the first column of both files.
inline constexpr int kCsvSchemaVersion = 1;

void write_sweep_trials_csv(std::ostream& out, const SweepResult& sweep, const RunSpec& spec);
void write_sweep_summary_csv(std::ostream& out, const SweepResult& sweep, const RunSpec& spec);

}  // namespace binopt
