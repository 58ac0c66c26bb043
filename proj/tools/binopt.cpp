// binopt <solve|sweep|generate|validate> <task> [flags]
//
// Exit codes: 0 success, 2 usage, 3 instance error, 4 solver failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "binopt/errors.hpp"
#include "binopt/runner.hpp"

namespace {

using namespace binopt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInstance = 3;
constexpr int kExitSolver = 4;

constexpr const char* kOutputDirEnv = "BINOPT_OUTPUT_DIR";

struct CliState {
  std::string task;
  RunSpec spec;
  std::string theta_norm = "row-sum";
  std::string channel = "iid";
  std::string file, beasley, beasley_dir, out, format = "json";
  // sweep
  std::string axis;
  std::vector<double> values;
  // validate
  std::vector<std::string> paths;
};

void add_generator_flags(CLI::App* cmd, CliState& st) {
  GeneratorParams& g = st.spec.gen;
  cmd->add_option("--m", g.m, "rows / receive antennas");
  cmd->add_option("--n", g.n, "dimension / transmit antennas");
  cmd->add_option("--s", g.s, "support size (recovery)");
  cmd->add_option("--q", g.q, "loss exponent q > 1 (recovery)");
  cmd->add_option("--nf", g.nf, "noise factor (recovery)");
  cmd->add_option("--snr", g.snr_db, "SNR in dB (mimo, onebit)");
  cmd->add_option("--channel", st.channel, "iid | correlated (mimo)")
      ->check(CLI::IsMember({"iid", "correlated"}));
  cmd->add_option("--r", g.r, "channel correlation coefficient (mimo)");
  cmd->add_option("--case", g.qubo_case, "synthetic QUBO case 1-5")->check(CLI::Range(1, 5));
}

void add_solver_flags(CLI::App* cmd, CliState& st) {
  ConfigOverrides& o = st.spec.overrides;
  cmd->add_option("--file", st.file, "instance file (native JSON or ORLIB triplets)");
  cmd->add_option("--beasley", st.beasley, "Beasley instance name, e.g. bqp100-3");
  cmd->add_option("--beasley-dir", st.beasley_dir, "directory holding bqp files");
  cmd->add_option("--preset", st.spec.preset, "recovery | mimo | onebit | qubo");
  cmd->add_option("--theta-norm", st.theta_norm, "matrix norm in theta rules")
      ->check(CLI::IsMember({"row-sum", "abs-entry"}));
  cmd->add_option("--eta", o.eta);
  cmd->add_option("--alpha", o.alpha);
  cmd->add_option("--sigma", o.sigma);
  cmd->add_option("--lambda0", o.lambda0);
  cmd->add_option("--pi", o.pi);
  cmd->add_option("--theta", o.theta);
  cmd->add_option("--k0", o.k0);
  cmd->add_option("--epsilon", o.epsilon);
  cmd->add_option("--max-iters", o.max_iters);
  cmd->add_option("--max-backtracks", o.max_backtracks);
  cmd->add_option("--time-cap", o.time_cap_secs, "wall-clock cap per solve, seconds");
  cmd->add_flag("--warm-start", o.warm_start_backtracking, "start backtracking at s_{k-1} - 1");
  cmd->add_option("--trials", st.spec.trials, "independent trials")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", st.spec.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", st.spec.timing, "include wall-clock seconds in records");
  cmd->add_flag("--traces", st.spec.traces, "include lambda/tau traces and x_final");
}

void finish_spec(CliState& st) {
  st.spec.task = parse_task(st.task);
  st.spec.theta_norm = st.theta_norm == "abs-entry" ? MatrixNorm::MaxAbsEntry : MatrixNorm::MaxRowSum;
  st.spec.gen.correlated = st.channel == "correlated";
  if (!st.file.empty()) st.spec.file = st.file;
  if (!st.beasley.empty()) st.spec.beasley = st.beasley;
  if (!st.beasley_dir.empty()) st.spec.beasley_dir = st.beasley_dir;
  st.spec.validate();
}

std::filesystem::path output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write " + path.string());
  return out;
}

std::string human_summary(const Summary& s) {
  std::string line = fmt::format("trials={} stopped_by_rule={}", s.trials, s.stopped_by_rule);
  if (s.median_acc) line += fmt::format(" median_acc={:.4f}", *s.median_acc);
  if (s.mean_ber) line += fmt::format(" mean_ber={:.4f} median_ber={:.4f}", *s.mean_ber, *s.median_ber);
  if (s.median_gap) line += fmt::format(" median_gap={:.4f}%", *s.median_gap);
  line += fmt::format(" median_objective={:.6g} median_iterations={}", s.median_objective,
                      s.median_iterations);
  return line;
}

int cmd_solve(CliState& st) {
  finish_spec(st);
  const auto records = run_trials(st.spec);
  std::filesystem::path path;
  if (!st.out.empty()) path = st.out;
  else if (std::getenv(kOutputDirEnv)) path = output_dir() / (st.task + "_solve.jsonl");
  if (path.empty()) {
    write_solve_report(std::cout, records, st.spec);
  } else {
    auto out = open_output(path);
    write_solve_report(out, records, st.spec);
    std::cout << "wrote " << path.string() << '\n';
  }
  std::cerr << human_summary(summarize(records)) << '\n';
  return kExitOk;
}

int cmd_sweep(CliState& st) {
  finish_spec(st);
  const SweepResult sweep = run_sweep(st.spec, st.axis, st.values);
  const std::filesystem::path dir = st.out.empty() ? output_dir() : std::filesystem::path(st.out);
  const std::string stem = fmt::format("sweep_{}_{}", st.task, st.axis);
  const auto trials_path = dir / (stem + "_trials.csv");
  const auto summary_path = dir / (stem + "_summary.csv");
  {
    auto out = open_output(trials_path);
    write_sweep_trials_csv(out, sweep, st.spec);
  }
  std::ostringstream summary;
  write_sweep_summary_csv(summary, sweep, st.spec);
  {
    auto out = open_output(summary_path);
    out << summary.str();
  }
  std::cout << summary.str();
  std::cerr << "wrote " << trials_path.string() << " and " << summary_path.string() << '\n';
  return kExitOk;
}

int cmd_generate(CliState& st) {
  finish_spec(st);
  if (st.spec.file || st.spec.beasley) throw ParameterError("generate takes generator flags only");
  if (st.out.empty()) throw ParameterError("generate needs --out");
  AnyInstance inst = build_instance(st.spec, st.spec.seed);
  if (st.format == "beasley") {
    const auto* q = std::get_if<QuboInstance>(&inst);
    if (!q) throw ParameterError("--format beasley applies to qubo instances only");
    auto out = open_output(st.out);
    write_beasley(out, q->q);
  } else {
    write_instance(st.out, inst);
  }
  std::cout << "wrote " << st.out << '\n';
  return kExitOk;
}

int cmd_validate(CliState& st) {
  // An empty expected type accepts every instance kind.
  const std::string want = st.task == "any" ? std::string{} : to_string(parse_task(st.task));
  if (st.paths.empty()) throw ParameterError("validate needs at least one file");
  int failures = 0;
  for (const auto& p : st.paths) {
    std::vector<std::string> problems;
    try {
      const AnyInstance inst = read_instance(p);
      problems = validate_instance(inst);
      if (!want.empty() && instance_type_name(inst) != want)
        problems.push_back(
            fmt::format("holds a {} instance, expected {}", instance_type_name(inst), want));
    } catch (const InstanceError& e) {
      problems.push_back(e.what());
    }
    if (problems.empty()) {
      std::cout << p << ": ok\n";
    } else {
      ++failures;
      for (const auto& msg : problems) std::cerr << p << ": " << msg << '\n';
    }
  }
  return failures == 0 ? kExitOk : kExitInstance;
}

void report_error(const char* kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary optimization through the piecewise-cubic exact penalty"};
  app.require_subcommand(1);
  CliState st;

  auto* solve_cmd = app.add_subcommand("solve", "run independent trials on one configuration");
  auto* sweep_cmd = app.add_subcommand("sweep", "vary one generator axis, write CSV");
  auto* gen_cmd = app.add_subcommand("generate", "write a generated instance file");
  auto* val_cmd = app.add_subcommand("validate", "re-read instance files and check invariants");

  for (auto* cmd : {solve_cmd, sweep_cmd, gen_cmd})
    cmd->add_option("task", st.task, "qubo | recovery | mimo | onebit")->required();
  val_cmd->add_option("task", st.task, "qubo | recovery | mimo | onebit | any")->required();
  val_cmd->add_option("files", st.paths, "instance files")->required();

  for (auto* cmd : {solve_cmd, sweep_cmd, gen_cmd}) add_generator_flags(cmd, st);
  for (auto* cmd : {solve_cmd, sweep_cmd}) add_solver_flags(cmd, st);

  solve_cmd->add_option("--seed", st.spec.seed, "base seed; trial t uses a seed derived from (seed, t)");
  solve_cmd->add_option("--out", st.out, "JSON-lines output file (default stdout)");
  sweep_cmd->add_option("--seed", st.spec.seed, "base seed")->required();
  sweep_cmd->add_option("--axis", st.axis, "m | n | s | q | nf | snr | r | case")->required();
  sweep_cmd->add_option("--values", st.values, "comma-separated axis values")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--out", st.out, "output directory for the two CSV files");
  gen_cmd->add_option("--seed", st.spec.seed, "generator seed");
  gen_cmd->add_option("--out", st.out, "output path")->required();
  gen_cmd->add_option("--format", st.format, "json | beasley (qubo only)")
      ->check(CLI::IsMember({"json", "beasley"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(st);
    if (*sweep_cmd) return cmd_sweep(st);
    if (*gen_cmd) return cmd_generate(st);
    return cmd_validate(st);
  } catch (const ParameterError& e) {
    report_error("usage", e.what());
    return kExitUsage;
  } catch (const InstanceError& e) {
    report_error("instance", e.what());
    return kExitInstance;
  } catch (const std::filesystem::filesystem_error& e) {
    report_error("instance", e.what());
    return kExitInstance;
  } catch (const std::exception& e) {
    report_error("solver", e.what());
    return kExitSolver;
  }
}
