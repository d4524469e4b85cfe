#pragma once
// Scheduling policies: fixed rules, random rule choice, and the three
// selector-driven modes (argmin, LCB, gated).

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jssp/knn.hpp"
#include "jssp/rules.hpp"
#include "jssp/schedule.hpp"

namespace jssp {

enum class PolicyKind { Fixed, RandomHH, Argmin, Lcb, Gated };

struct Policy {
  PolicyKind kind = PolicyKind::Fixed;
  RuleId fixed_rule = RuleId::Fifo;
  const SelectorModel* model = nullptr;  // not owned; required for Argmin/Lcb/Gated
  double lambda = 1.0;                   // Lcb/Gated only, must be >= 0
};

Policy fixed_policy(RuleId rule);
Policy random_hh_policy();
Policy argmin_policy(const SelectorModel& model);
Policy lcb_policy(const SelectorModel& model, double lambda);
Policy gated_policy(const SelectorModel& model, double lambda);

/// Selection arithmetic over the per-rule predictions; ties go to the lowest
/// rule code.
RuleId argmin_rule(const std::array<Prediction, kNumRules>& p);
/// argmin of r_hat - lambda * sigma_hat.
RuleId lcb_rule(const std::array<Prediction, kNumRules>& p, double lambda);
/// Leaves the default rule unless the argmin rule's predicted advantage
/// strictly exceeds lambda times its own uncertainty.
RuleId gated_rule(const std::array<Prediction, kNumRules>& p, RuleId default_rule, double lambda);

/// The rule this policy plays at the given state. Only RandomHH consumes the
/// rng here (the chosen rule may itself be RANDOM and draw later).
RuleId choose_rule(const Policy& policy, const ScheduleState& state, Rng& rng);

struct PolicyRun {
  std::int64_t makespan = 0;
  ScheduleState state;          // complete schedule
  std::vector<RuleId> chosen;   // rule played at each decision
};

/// Builds a complete schedule from scratch, choosing a rule per decision.
PolicyRun run_policy(const Policy& policy, const Instance& inst, std::uint64_t seed);

/// Spec strings: "fixed:FIFO", "random-hh", "argmin", "lcb:0.5",
/// "gated:1.0". Rule names are case-insensitive. Policies that need a model
/// throw std::invalid_argument when `model` is null.
Policy parse_policy_spec(std::string_view spec, const SelectorModel* model);
std::string policy_spec(const Policy& policy);

}  // namespace jssp
