#pragma once
// Benchmarking: per-instance oracle, RPD aggregation, the ablation grid, the
// depth/breadth cost sweep, and the cross-scale probe.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jssp/instance.hpp"
#include "jssp/knn.hpp"
#include "jssp/labeler.hpp"
#include "jssp/policy.hpp"

namespace jssp {

struct EvalOptions {
  std::uint64_t seed = 42;
  int random_hh_reps = 5;
  // Oracle-Fixed is the per-instance best of the six deterministic rules;
  // optionally also consider the seeded RANDOM runs.
  bool oracle_includes_random = false;
  // Random-HH reporting: RPD of the mean makespan (default), or the mean of
  // per-run RPDs.
  bool random_per_seed_rpd = false;
  int threads = 1;
};

struct MethodSpec {
  std::string name;
  Policy policy;
};

struct MethodResult {
  std::string name;
  std::vector<double> makespans;  // per instance; mean over runs for Random-HH
  std::vector<double> rpd;        // per instance, percent
  double mean_rpd = 0;
  double median_rpd = 0;
  int wins = 0;  // instances where this method ties the best method makespan
};

struct EvalReport {
  std::vector<std::string> instance_ids;
  std::vector<std::int64_t> oracle;  // per-instance Oracle-Fixed makespan
  int oracle_wins = 0;               // instances where the oracle <= every method
  std::vector<MethodResult> methods;
};

/// Best makespan over the six deterministic rules (plus seeded RANDOM runs
/// when opts.oracle_includes_random).
std::int64_t oracle_fixed(const Instance& inst, const EvalOptions& opts);

/// Relative percentage deviation: 100 * (makespan - oracle) / oracle.
double rpd(double makespan, std::int64_t oracle);

double mean_of(const std::vector<double>& v);
double median_of(std::vector<double> v);  // average of the two middles when even

/// Runs every method on every instance. Fully deterministic in (methods,
/// instances, opts.seed) and independent of opts.threads: run seeds are
/// derived from (seed, method name, instance id, repetition). Precomputed
/// oracle values can be passed to skip recomputing them per call.
EvalReport evaluate(const std::vector<MethodSpec>& methods, const std::vector<Instance>& test,
                    const EvalOptions& opts,
                    const std::vector<std::int64_t>* precomputed_oracle = nullptr);

/// The standard comparison set: gated/argmin selectors when models are given,
/// all six fixed rules, and Random-HH.
std::vector<MethodSpec> standard_methods(const SelectorModel* regret_model,
                                         const SelectorModel* normalized_model, double lambda);

struct AblationResult {
  EvalReport report;
  SelectorModel regret_model;
  SelectorModel normalized_model;
  CostLedger ledger;  // labeling cost (rollouts shared by both label kinds)
};

/// Both label kinds x {argmin, gated, lcb} x the lambda set: 14 methods for
/// the default three lambdas. One rollout pass labels both kinds.
AblationResult ablation_grid(const std::vector<Instance>& train,
                             const std::vector<Instance>& test, const LabelConfig& base, int k,
                             double epsilon, const std::vector<double>& lambdas,
                             const EvalOptions& opts);

struct SweepCell {
  std::optional<int> depth;    // nullopt = full
  std::optional<int> breadth;  // nullopt = full
  CostLedger ledger;           // labeling cost of this cell
  double mean_rpd = 0;         // gated policy on the test set
};

/// Relabels one shared state sample per (depth, breadth) cell, fits a
/// selector, and scores the gated policy. Rows follow the given grid order,
/// breadth fastest.
std::vector<SweepCell> pareto_sweep(const std::vector<Instance>& train,
                                    const std::vector<Instance>& test, const LabelConfig& base,
                                    const std::vector<std::optional<int>>& depths,
                                    const std::vector<std::optional<int>>& breadths, int k,
                                    double epsilon, double lambda, const EvalOptions& opts);

/// Applies an already-fitted selector to a test set from another scale:
/// gated policy against the fixed rules and Random-HH, no refitting.
EvalReport generalization_probe(const SelectorModel& model, const std::vector<Instance>& test,
                                double lambda, const EvalOptions& opts);

std::string eval_report_csv(const EvalReport& report, const std::string& config_echo);
std::string eval_report_json(const EvalReport& report, const std::string& config_echo,
                             const std::string& kind = "eval");
EvalReport eval_report_from_json(const std::string& text);

std::string sweep_csv(const std::vector<SweepCell>& cells, const std::string& config_echo);
std::string sweep_json(const std::vector<SweepCell>& cells, const std::string& config_echo);
std::vector<SweepCell> sweep_from_json(const std::string& text);

}  // namespace jssp
