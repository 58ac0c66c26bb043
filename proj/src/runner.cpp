#include "binopt/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "binopt/errors.hpp"
#include "binopt/oracle.hpp"
#include "binopt/rng.hpp"

namespace binopt {

namespace {

using Json = nlohmann::ordered_json;

// Largest synthetic QUBO whose gap is measured against exhaustive search.
constexpr Index kExactGapMaxDim = 20;

constexpr std::array<const char*, 4> kTaskNames{"qubo", "recovery", "mimo", "onebit"};

Json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_number(std::optional<double> v) {
  return v && std::isfinite(*v) ? fmt::format("{}", *v) : std::string{};
}

std::filesystem::path beasley_dir(const RunSpec& spec) {
  if (spec.beasley_dir) return *spec.beasley_dir;
  if (const char* env = std::getenv("BINOPT_BEASLEY_DIR"); env && *env) return env;
  return bundled_beasley_dir();
}

std::string generated_name(const RunSpec& spec) {
  const GeneratorParams& g = spec.gen;
  switch (spec.task) {
    case Task::Recovery:
      return fmt::format("recovery(m={},n={},s={},q={},nf={})", g.m, g.n, g.s, g.q, g.nf);
    case Task::Mimo:
      return fmt::format("mimo(m={},n={},snr={},{})", g.m, g.n, g.snr_db,
                         g.correlated ? fmt::format("corr r={}", g.r) : std::string("iid"));
    case Task::OneBit:
      return fmt::format("onebit(m={},n={},snr={})", g.m, g.n, g.snr_db);
    case Task::Qubo:
      return fmt::format("qubo(n={},case={})", g.n, g.qubo_case);
  }
  return {};
}

std::string instance_name(const RunSpec& spec) {
  if (spec.beasley) return *spec.beasley;
  if (spec.file) return spec.file->string();
  return generated_name(spec);
}

Task task_of(const AnyInstance& inst) {
  switch (inst.index()) {
    case 0: return Task::Qubo;
    case 1: return Task::Recovery;
    case 2: return Task::Mimo;
    default: return Task::OneBit;
  }
}

std::unique_ptr<Objective> make_objective(const AnyInstance& inst) {
  if (const auto* q = std::get_if<QuboInstance>(&inst)) return std::make_unique<QuboObjective>(q->q);
  if (const auto* r = std::get_if<RecoveryInstance>(&inst))
    return std::make_unique<LqRecoveryObjective>(r->a, r->b, r->q);
  if (const auto* m = std::get_if<MimoInstance>(&inst))
    return std::make_unique<LqRecoveryObjective>(m->a, m->b, 2.0);
  const auto& o = std::get<OneBitInstance>(inst);
  return std::make_unique<OneBitMimoObjective>(o.h, o.y, o.rho);
}

void apply_overrides(AppaConfig& c, const ConfigOverrides& o) {
  if (o.eta) c.eta = *o.eta;
  if (o.alpha) c.alpha = *o.alpha;
  if (o.sigma) c.sigma = *o.sigma;
  if (o.lambda0) c.lambda0 = *o.lambda0;
  if (o.pi) c.pi = *o.pi;
  if (o.theta) c.theta = *o.theta;
  if (o.epsilon) c.epsilon = *o.epsilon;
  if (o.k0) c.k0 = *o.k0;
  if (o.max_iters) c.max_iters = *o.max_iters;
  if (o.max_backtracks) c.max_backtracks = *o.max_backtracks;
  if (o.time_cap_secs) c.time_cap_secs = *o.time_cap_secs;
  if (o.warm_start_backtracking) c.warm_start_backtracking = *o.warm_start_backtracking;
}

MetricReport compute_metrics(const AnyInstance& inst, const Objective& f, const SolveReport& rep) {
  MetricReport m;
  m.objective = rep.objective_value;
  m.time_secs = rep.wall_time_secs;
  const bool binary = is_binary(rep.x_final);
  if (const auto* q = std::get_if<QuboInstance>(&inst)) {
    std::optional<double> lowest = q->best_known;
    if (!lowest && f.dim() <= kExactGapMaxDim) lowest = brute_force_min(f).f_opt;
    if (lowest && *lowest != 0.0) m.gap_percent = gap(rep.objective_value, *lowest);
  } else if (const auto* r = std::get_if<RecoveryInstance>(&inst)) {
    m.acc = accuracy(rep.x_final, r->x_star);
  } else if (const auto* mi = std::get_if<MimoInstance>(&inst)) {
    m.acc = accuracy(rep.x_final, mi->x_star);
    if (binary) m.ber = bit_error_rate(rep.x_final, mi->x_star);
  } else {
    const Vector x_star = std::get<OneBitInstance>(inst).x_star();
    if (binary) m.ber = bit_error_rate(rep.x_final, x_star);
  }
  return m;
}

Json config_json(const AppaConfig& c) {
  Json j;
  j["eta"] = c.eta;
  j["alpha"] = c.alpha;
  j["sigma"] = c.sigma;
  j["lambda0"] = c.lambda0;
  j["pi"] = c.pi;
  j["theta"] = c.theta;
  j["k0"] = c.k0;
  j["epsilon"] = c.epsilon;
  j["max_iters"] = c.max_iters;
  return j;
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::optional<double> median_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return median(v);
}

}  // namespace

std::string to_string(Task t) { return kTaskNames[static_cast<std::size_t>(t)]; }

Task parse_task(const std::string& name) {
  for (std::size_t i = 0; i < kTaskNames.size(); ++i)
    if (name == kTaskNames[i]) return static_cast<Task>(i);
  throw ParameterError("unknown task '" + name + "' (expected qubo, recovery, mimo or onebit)");
}

void RunSpec::validate() const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (threads < 1) throw ParameterError("threads must be >= 1");
  if (file && beasley) throw ParameterError("--file and --beasley are mutually exclusive");
  if (beasley && task != Task::Qubo) throw ParameterError("--beasley applies to the qubo task only");
}

AnyInstance build_instance(const RunSpec& spec, std::uint64_t seed) {
  if (spec.beasley) return load_beasley(*spec.beasley, beasley_dir(spec));
  if (spec.file) {
    AnyInstance inst = read_instance(*spec.file);
    if (task_of(inst) != spec.task)
      throw InstanceError(fmt::format("{} holds a {} instance, not {}", spec.file->string(),
                                      instance_type_name(inst), to_string(spec.task)));
    return inst;
  }
  const GeneratorParams& g = spec.gen;
  switch (spec.task) {
    case Task::Recovery: return gen_recovery(g.m, g.n, g.s, g.q, g.nf, seed);
    case Task::Mimo:
      return gen_mimo(g.m, g.n, g.snr_db,
                      g.correlated ? ChannelModel::correlated(g.r) : ChannelModel::iid(), seed);
    case Task::OneBit: return gen_onebit(g.m, g.n, g.snr_db, seed);
    case Task::Qubo: return gen_qubo_synthetic(g.n, g.qubo_case, seed);
  }
  throw InternalError("unhandled task");
}

Preset resolve_preset(const RunSpec& spec, const AnyInstance& inst) {
  const std::string name = spec.preset.empty() ? to_string(spec.task) : spec.preset;
  Preset p;
  if (name == "recovery" || name == "mimo") {
    const Matrix* a = nullptr;
    const Vector* b = nullptr;
    Index s = 0;
    if (const auto* r = std::get_if<RecoveryInstance>(&inst)) {
      a = &r->a, b = &r->b, s = r->s;
    } else if (const auto* m = std::get_if<MimoInstance>(&inst)) {
      a = &m->a, b = &m->b, s = static_cast<Index>(m->x_star.sum());
    } else {
      throw ParameterError("preset '" + name + "' needs a recovery or mimo instance");
    }
    p = name == "recovery" ? recovery_preset(*a, *b, s, spec.theta_norm)
                           : mimo_preset(*a, *b, spec.theta_norm);
  } else if (name == "onebit") {
    const auto* o = std::get_if<OneBitInstance>(&inst);
    if (!o) throw ParameterError("preset 'onebit' needs a onebit instance");
    p = onebit_preset(o->h, o->y, spec.theta_norm);
  } else if (name == "qubo") {
    const auto* q = std::get_if<QuboInstance>(&inst);
    if (!q) throw ParameterError("preset 'qubo' needs a qubo instance");
    p = qubo_preset(q->q, spec.theta_norm);
  } else {
    throw ParameterError("unknown preset '" + name + "'");
  }
  apply_overrides(p.config, spec.overrides);
  p.config.validate();
  return p;
}

TrialRecord run_trial(const RunSpec& spec, int trial, const ObserverFactory& watch) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = trial_seed(spec.seed, static_cast<std::uint64_t>(trial));
  const AnyInstance inst = build_instance(spec, rec.seed);
  rec.instance = instance_name(spec);
  const auto f = make_objective(inst);
  rec.dim = f->dim();
  const Preset preset = resolve_preset(spec, inst);
  rec.config = preset.config;
  rec.report = solve(*f, preset.x0, preset.config,
                     watch ? watch(*f, preset.config) : IterationObserver{});
  rec.metrics = compute_metrics(inst, *f, rec.report);
  return rec;
}

std::vector<TrialRecord> run_trials(const RunSpec& spec) {
  spec.validate();
  std::vector<TrialRecord> out(static_cast<std::size_t>(spec.trials));
  const int workers = std::min(spec.threads, spec.trials);
  if (workers <= 1) {
    for (int t = 0; t < spec.trials; ++t) out[static_cast<std::size_t>(t)] = run_trial(spec, t);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int t = next++; t < spec.trials; t = next++) {
        try {
          out[static_cast<std::size_t>(t)] = run_trial(spec, t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw UndefinedError("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

Summary summarize(const std::vector<TrialRecord>& records) {
  Summary s;
  s.trials = static_cast<int>(records.size());
  std::vector<double> acc, ber, gp, obj, iters;
  for (const auto& r : records) {
    if (r.metrics.acc) acc.push_back(*r.metrics.acc);
    if (r.metrics.ber) ber.push_back(*r.metrics.ber);
    if (r.metrics.gap_percent) gp.push_back(*r.metrics.gap_percent);
    obj.push_back(r.metrics.objective);
    iters.push_back(static_cast<double>(r.report.iterations));
    if (r.report.terminated_by == Termination::StoppingRule) ++s.stopped_by_rule;
  }
  s.median_acc = median_of(acc), s.mean_acc = mean_of(acc);
  s.median_ber = median_of(ber), s.mean_ber = mean_of(ber);
  s.median_gap = median_of(gp), s.mean_gap = mean_of(gp);
  if (!acc.empty()) s.best_acc = *std::max_element(acc.begin(), acc.end());
  if (!ber.empty()) s.best_ber = *std::min_element(ber.begin(), ber.end());
  if (!gp.empty()) s.best_gap = *std::min_element(gp.begin(), gp.end());
  if (!obj.empty()) {
    s.median_objective = median(obj);
    s.mean_objective = *mean_of(obj);
    s.best_objective = *std::min_element(obj.begin(), obj.end());
    s.median_iterations = median(iters);
  }
  return s;
}

std::string trial_json(const TrialRecord& rec, const RunSpec& spec) {
  const SolveReport& r = rec.report;
  Json j;
  j["record"] = "trial";
  j["task"] = to_string(spec.task);
  j["instance"] = rec.instance;
  j["trial"] = rec.trial;
  j["seed"] = rec.seed;
  j["dim"] = rec.dim;
  j["config"] = config_json(rec.config);
  j["terminated_by"] = to_string(r.terminated_by);
  j["iterations"] = r.iterations;
  j["objective"] = finite_or_null(r.objective_value);
  j["penalty_value"] = finite_or_null(r.penalty_value);
  j["stationarity_residual"] = finite_or_null(r.stationarity_residual);
  j["lambda_final"] = r.lambda_trace.empty() ? Json(nullptr) : Json(r.lambda_trace.back());
  j["backtracks_total"] =
      std::accumulate(r.backtrack_counts.begin(), r.backtrack_counts.end(), std::int64_t{0});
  j["binary"] = is_binary(r.x_final);
  j["acc"] = number_or_null(rec.metrics.acc);
  j["ber"] = number_or_null(rec.metrics.ber);
  j["gap_percent"] = number_or_null(rec.metrics.gap_percent);
  j["warnings"] = r.warnings;
  if (spec.timing) j["time_secs"] = r.wall_time_secs;
  if (spec.traces) {
    j["lambda_trace"] = r.lambda_trace;
    j["tau_trace"] = r.tau_trace;
    j["x_final"] = std::vector<double>(r.x_final.begin(), r.x_final.end());
  }
  return j.dump();
}

std::string summary_json(const Summary& s, const RunSpec& spec) {
  Json j;
  j["record"] = "summary";
  j["task"] = to_string(spec.task);
  j["trials"] = s.trials;
  j["stopped_by_rule"] = s.stopped_by_rule;
  j["median_acc"] = number_or_null(s.median_acc);
  j["mean_acc"] = number_or_null(s.mean_acc);
  j["best_acc"] = number_or_null(s.best_acc);
  j["median_ber"] = number_or_null(s.median_ber);
  j["mean_ber"] = number_or_null(s.mean_ber);
  j["best_ber"] = number_or_null(s.best_ber);
  j["median_gap_percent"] = number_or_null(s.median_gap);
  j["mean_gap_percent"] = number_or_null(s.mean_gap);
  j["best_gap_percent"] = number_or_null(s.best_gap);
  j["median_objective"] = finite_or_null(s.median_objective);
  j["mean_objective"] = finite_or_null(s.mean_objective);
  j["best_objective"] = finite_or_null(s.best_objective);
  j["median_iterations"] = s.median_iterations;
  return j.dump();
}

void write_solve_report(std::ostream& out, const std::vector<TrialRecord>& records,
                        const RunSpec& spec) {
  for (const auto& rec : records) out << trial_json(rec, spec) << '\n';
  out << summary_json(summarize(records), spec) << '\n';
}

void apply_axis(GeneratorParams& gen, const std::string& axis, double value) {
  auto as_count = [&](const char* what) {
    if (!(value >= 1.0) || value != std::floor(value))
      throw ParameterError(fmt::format("axis {} needs positive integers, got {}", what, value));
    return static_cast<Index>(value);
  };
  if (axis == "m") gen.m = as_count("m");
  else if (axis == "n") gen.n = as_count("n");
  else if (axis == "s") gen.s = as_count("s");
  else if (axis == "q") gen.q = value;
  else if (axis == "nf") gen.nf = value;
  else if (axis == "snr") gen.snr_db = value;
  else if (axis == "r") gen.correlated = true, gen.r = value;
  else if (axis == "case") gen.qubo_case = static_cast<int>(as_count("case"));
  else throw ParameterError("unknown sweep axis '" + axis + "' (m, n, s, q, nf, snr, r, case)");
}

SweepResult run_sweep(const RunSpec& base, const std::string& axis,
                      const std::vector<double>& values) {
  if (values.empty()) throw ParameterError("sweep needs at least one axis value");
  if (base.file || base.beasley) throw ParameterError("sweeps run on generated instances only");
  SweepResult out;
  out.axis = axis;
  out.values = values;
  for (double v : values) {
    RunSpec spec = base;
    apply_axis(spec.gen, axis, v);
    out.records.push_back(run_trials(spec));
  }
  return out;
}

void write_sweep_trials_csv(std::ostream& out, const SweepResult& sweep, const RunSpec& spec) {
  out << "schema_version,task,axis,value,trial,seed,dim,terminated_by,iterations,objective,"
         "acc,ber,gap_percent";
  if (spec.timing) out << ",time_secs";
  out << '\n';
  for (std::size_t i = 0; i < sweep.values.size(); ++i) {
    for (const auto& r : sweep.records[i]) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", kCsvSchemaVersion,
                         to_string(spec.task), sweep.axis, sweep.values[i], r.trial, r.seed, r.dim,
                         to_string(r.report.terminated_by), r.report.iterations,
                         csv_number(r.metrics.objective), csv_number(r.metrics.acc),
                         csv_number(r.metrics.ber), csv_number(r.metrics.gap_percent));
      if (spec.timing) out << ',' << csv_number(r.report.wall_time_secs);
      out << '\n';
    }
  }
}

void write_sweep_summary_csv(std::ostream& out, const SweepResult& sweep, const RunSpec& spec) {
  out << "schema_version,task,axis,value,trials,stopped_by_rule,median_acc,mean_acc,median_ber,"
         "mean_ber,median_gap_percent,mean_gap_percent,median_objective,median_iterations\n";
  for (std::size_t i = 0; i < sweep.values.size(); ++i) {
    const Summary s = summarize(sweep.records[i]);
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", kCsvSchemaVersion,
                       to_string(spec.task), sweep.axis, sweep.values[i], s.trials,
                       s.stopped_by_rule, csv_number(s.median_acc), csv_number(s.mean_acc),
                       csv_number(s.median_ber), csv_number(s.mean_ber), csv_number(s.median_gap),
                       csv_number(s.mean_gap), csv_number(s.median_objective),
                       csv_number(s.median_iterations));
  }
}

}  // namespace binopt
