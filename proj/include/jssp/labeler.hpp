#pragma once
// Rollout-based supervision: sample decision states, roll every candidate
// rule forward, and turn terminal makespans into targets.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jssp/features.hpp"
#include "jssp/instance.hpp"
#include "jssp/rules.hpp"
#include "jssp/schedule.hpp"

namespace jssp {

enum class LabelKind : int {
  Regret = 0,      // (m - best sibling m) / best sibling m, per state
  Normalized = 1,  // m / LB(instance)
};

const char* label_kind_name(LabelKind k);
std::optional<LabelKind> parse_label_kind(std::string_view name);

struct LabelConfig {
  int states_per_instance = 25;
  int trajectories_per_instance = 3;
  std::optional<int> depth;    // guided rollout steps; nullopt = to terminal
  std::optional<int> breadth;  // candidate rules per state; nullopt = all 7
  LabelKind label_kind = LabelKind::Regret;
  RuleId default_rule = RuleId::Fifo;
  // Candidate subsets always contain the default rule (its regret anchors the
  // gate); disable for plain uniform subsets.
  bool subset_includes_default = true;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct LabeledSample {
  FeatureVec features{};
  double target = 0;
  std::string instance_id;
  int decision_index = 0;
  RuleId rule = RuleId::Spt;
  std::int64_t makespan = 0;  // terminal makespan of the rollout
};

/// Cost accounting for a labeling run. steps counts candidate-guided
/// dispatches plus one unit per default-rule completion call: the guided
/// prefix is the budget the depth knob buys, and the completion is a single
/// amortized simulator call. A full-depth rollout therefore counts exactly
/// the remaining decisions of its start state.
struct CostLedger {
  std::int64_t rollouts = 0;
  std::int64_t steps = 0;
  double wall_seconds = 0;
};

struct RolloutResult {
  std::int64_t makespan = 0;
  std::int64_t steps = 0;
};

/// Copies the state, applies `rule` for min(depth, remaining) decisions, then
/// finishes with `default_rule`. Throws on a complete state or depth < 1.
RolloutResult rollout(const ScheduleState& state, RuleId rule, std::optional<int> depth,
                      RuleId default_rule, Rng& rng);

/// Draws cfg.states_per_instance distinct decision indices (uniform, without
/// replacement, over all J*M decisions), splits them round-robin over
/// cfg.trajectories_per_instance random-rule trajectories, and returns the
/// visited states grouped by trajectory, decision indices ascending within
/// each. Throws if more states are requested than the instance has decisions.
std::vector<ScheduleState> sample_states(const Instance& inst, const LabelConfig& cfg);

/// One labeled sample per candidate rule at this state (ascending rule code).
/// Rollout and subset randomness is keyed by (instance id, decision index),
/// never by call order, so labeling is order- and thread-independent.
std::vector<LabeledSample> label_state(const ScheduleState& state, const LabelConfig& cfg,
                                       CostLedger& ledger);
std::vector<LabeledSample> label_states(const std::vector<ScheduleState>& states,
                                        const LabelConfig& cfg, CostLedger& ledger);

struct Dataset {
  std::vector<LabeledSample> samples;
  CostLedger ledger;        // zero when loaded from a file (the ledger is a sibling artifact)
  LabelConfig config;
  std::string config_echo;  // JSON object embedded in the CSV header
};

Dataset build_dataset(const std::vector<Instance>& instances, const LabelConfig& cfg,
                      int threads = 1);

/// Recomputes targets under another label kind from the stored rollout
/// makespans; no new rollouts. Instances must cover every instance id.
Dataset relabel(const Dataset& ds, LabelKind kind, const std::vector<Instance>& instances);

std::string dataset_to_csv(const Dataset& ds, const std::string& config_echo = "");
Dataset dataset_from_csv(const std::string& text);
std::string ledger_to_json(const CostLedger& ledger, const std::string& config_echo);

/// Canonical JSON echo of a label configuration.
std::string label_config_json(const LabelConfig& cfg);

}  // namespace jssp
