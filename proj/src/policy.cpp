#include "jssp/policy.hpp"

#include <stdexcept>

#include "jssp/util.hpp"

namespace jssp {

namespace {

void require_lambda(double lambda) {
  if (!(lambda >= 0)) throw std::invalid_argument("policy: lambda must be >= 0");
}

}  // namespace

Policy fixed_policy(RuleId rule) {
  Policy p;
  p.kind = PolicyKind::Fixed;
  p.fixed_rule = rule;
  return p;
}

Policy random_hh_policy() {
  Policy p;
  p.kind = PolicyKind::RandomHH;
  return p;
}

Policy argmin_policy(const SelectorModel& model) {
  Policy p;
  p.kind = PolicyKind::Argmin;
  p.model = &model;
  return p;
}

Policy lcb_policy(const SelectorModel& model, double lambda) {
  require_lambda(lambda);
  Policy p;
  p.kind = PolicyKind::Lcb;
  p.model = &model;
  p.lambda = lambda;
  return p;
}

Policy gated_policy(const SelectorModel& model, double lambda) {
  require_lambda(lambda);
  Policy p;
  p.kind = PolicyKind::Gated;
  p.model = &model;
  p.lambda = lambda;
  return p;
}

RuleId argmin_rule(const std::array<Prediction, kNumRules>& p) {
  int best = 0;
  for (int r = 1; r < kNumRules; ++r)
    if (p[static_cast<std::size_t>(r)].r_hat < p[static_cast<std::size_t>(best)].r_hat) best = r;
  return rule_from_code(best);
}

RuleId lcb_rule(const std::array<Prediction, kNumRules>& p, double lambda) {
  require_lambda(lambda);
  int best = 0;
  double best_score = p[0].r_hat - lambda * p[0].sigma_hat;
  for (int r = 1; r < kNumRules; ++r) {
    double score = p[static_cast<std::size_t>(r)].r_hat -
                   lambda * p[static_cast<std::size_t>(r)].sigma_hat;
    if (score < best_score) {
      best = r;
      best_score = score;
    }
  }
  return rule_from_code(best);
}

RuleId gated_rule(const std::array<Prediction, kNumRules>& p, RuleId default_rule, double lambda) {
  require_lambda(lambda);
  RuleId star = argmin_rule(p);
  const Prediction& incumbent = p[static_cast<std::size_t>(rule_code(default_rule))];
  const Prediction& challenger = p[static_cast<std::size_t>(rule_code(star))];
  // A switch needs positive measured uncertainty to clear: sigma_hat = 0
  // (a unanimous neighborhood) keeps the default, and the advantage must
  // strictly exceed the margin. Both choices keep the gate conservative and
  // make lambda -> inf recover the fixed default rule at every state.
  if (challenger.sigma_hat > 0.0 &&
      incumbent.r_hat - challenger.r_hat > lambda * challenger.sigma_hat)
    return star;
  return default_rule;
}

RuleId choose_rule(const Policy& policy, const ScheduleState& state, Rng& rng) {
  switch (policy.kind) {
    case PolicyKind::Fixed:
      return policy.fixed_rule;
    case PolicyKind::RandomHH:
      return kAllRules[rng.below(kNumRules)];
    case PolicyKind::Argmin:
    case PolicyKind::Lcb:
    case PolicyKind::Gated: {
      if (!policy.model) throw std::invalid_argument("policy: selector model missing");
      auto p = predict_all(*policy.model, state);
      if (policy.kind == PolicyKind::Argmin) return argmin_rule(p);
      if (policy.kind == PolicyKind::Lcb) return lcb_rule(p, policy.lambda);
      return gated_rule(p, policy.model->default_rule, policy.lambda);
    }
  }
  throw std::invalid_argument("policy: bad kind");
}

PolicyRun run_policy(const Policy& policy, const Instance& inst, std::uint64_t seed) {
  PolicyRun run;
  run.state = ScheduleState(inst);
  run.chosen.reserve(static_cast<std::size_t>(inst.total_ops()));
  Rng rng(seed);
  while (!run.state.complete()) {
    RuleId r = choose_rule(policy, run.state, rng);
    run.chosen.push_back(r);
    run.state.dispatch(select_job(r, run.state, rng));
  }
  run.makespan = run.state.partial_makespan;
  return run;
}

Policy parse_policy_spec(std::string_view spec, const SelectorModel* model) {
  std::string s = lower(trim(spec));
  auto need_model = [&]() -> const SelectorModel& {
    if (!model) throw std::invalid_argument("policy '" + s + "' needs a selector model");
    return *model;
  };
  if (s == "random-hh" || s == "random_hh") return random_hh_policy();
  if (s == "argmin") return argmin_policy(need_model());
  auto colon = s.find(':');
  std::string head = colon == std::string::npos ? s : s.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "fixed") {
    auto rule = parse_rule(arg);
    if (!rule) throw std::invalid_argument("unknown rule in policy spec: '" + arg + "'");
    return fixed_policy(*rule);
  }
  if (head == "lcb" || head == "gated") {
    if (arg.empty()) throw std::invalid_argument("policy '" + head + "' needs a lambda");
    double lambda = parse_double(arg);
    return head == "lcb" ? lcb_policy(need_model(), lambda) : gated_policy(need_model(), lambda);
  }
  throw std::invalid_argument("unknown policy spec: '" + std::string(spec) + "'");
}

std::string policy_spec(const Policy& policy) {
  switch (policy.kind) {
    case PolicyKind::Fixed: return std::string("fixed:") + rule_name(policy.fixed_rule);
    case PolicyKind::RandomHH: return "random-hh";
    case PolicyKind::Argmin: return "argmin";
    case PolicyKind::Lcb: return "lcb:" + lambda_label(policy.lambda);
    case PolicyKind::Gated: return "gated:" + lambda_label(policy.lambda);
  }
  throw std::invalid_argument("policy: bad kind");
}

}  // namespace jssp
