#pragma once
// Uncertainty-aware k-nearest-neighbor regression of rule quality.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jssp/features.hpp"
#include "jssp/labeler.hpp"

namespace jssp {

struct Prediction {
  double r_hat = 0;     // inverse-distance weighted mean of neighbor targets
  double sigma_hat = 0; // unweighted population std of neighbor targets
};

/// Exact-scan KNN over z-normalized 42-dim points. Neighbors are the k
/// smallest (squared distance, insertion index) pairs, so ties resolve by
/// stored order and predictions are independent of scan strategy.
struct SelectorModel {
  Normalizer normalizer;
  int k = 7;
  double epsilon = 1e-8;  // weight = 1 / (distance + epsilon)
  LabelKind label_kind = LabelKind::Regret;
  RuleId default_rule = RuleId::Fifo;
  std::vector<double> points;   // n rows of kNumFeatures, normalized
  std::vector<double> targets;  // n
  std::string config_echo = "{}";  // JSON object describing the producing run

  // Derived by rebuild_derived(): the candidate-rule one-hot block of a row
  // as a rule code, and the pairwise distance contribution of two one-hot
  // blocks. Rows of one query share the 35 state dims, so per-rule distances
  // are one shared state-part scan plus a table lookup.
  std::vector<std::uint8_t> point_rules;
  std::array<std::array<double, kNumRules>, kNumRules> rule_dist2{};

  std::size_t size() const { return targets.size(); }
  void rebuild_derived();
};

/// Fits the normalizer on the samples and stores the normalized points.
/// Requires samples.size() >= k, k >= 1, epsilon > 0.
SelectorModel fit_selector(const std::vector<LabeledSample>& samples, int k, double epsilon,
                           RuleId default_rule, LabelKind label_kind);
SelectorModel fit_selector(const Dataset& ds, int k = 7, double epsilon = 1e-8);

/// Prediction for an already-normalized 42-dim query; plain full-width scan.
Prediction query_vector(const SelectorModel& model, const double* query);

/// Prediction for (state, rule) via the shared-state-part scan.
Prediction predict(const SelectorModel& model, const ScheduleState& state, RuleId rule);
/// Predictions for all 7 rules at once; element r equals predict(.., rule r).
std::array<Prediction, kNumRules> predict_all(const SelectorModel& model,
                                              const ScheduleState& state);

std::string model_to_bytes(const SelectorModel& model);
SelectorModel model_from_bytes(const std::string& bytes);
void save_model(const SelectorModel& model, const std::filesystem::path& path);
SelectorModel load_model(const std::filesystem::path& path);

/// FNV-1a of the serialized bytes, as fixed-width hex. Identical fingerprints
/// mean identical models (up to hash collisions); reports embed it so reuse
/// without refitting is checkable.
std::string model_fingerprint(const SelectorModel& model);

}  // namespace jssp
