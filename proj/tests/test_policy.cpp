#include <doctest.h>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "jssp/labeler.hpp"
#include "jssp/policy.hpp"
#include "test_support.hpp"

using jssp::kNumRules;
using jssp::Prediction;
using jssp::RuleId;

namespace {

std::array<Prediction, kNumRules> preds(std::array<double, kNumRules> r,
                                        std::array<double, kNumRules> sigma) {
  std::array<Prediction, kNumRules> out;
  for (std::size_t i = 0; i < kNumRules; ++i) out[i] = {r[i], sigma[i]};
  return out;
}

jssp::SelectorModel small_model(RuleId default_rule) {
  std::vector<jssp::Instance> instances{jssp::generate_instance(5, 5, 61),
                                        jssp::generate_instance(5, 5, 62)};
  jssp::LabelConfig cfg;
  cfg.states_per_instance = 8;
  cfg.seed = 19;
  cfg.default_rule = default_rule;
  return jssp::fit_selector(jssp::build_dataset(instances, cfg, 1));
}

}  // namespace

TEST_CASE("argmin_rule minimizes r_hat with lowest-code ties") {
  auto p = preds({0.5, 0.2, 0.9, 0.4, 0.2, 0.6, 0.7}, {});
  CHECK(jssp::argmin_rule(p) == RuleId::Lpt);  // code 1 beats the tied code 4
  auto q = preds({0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1}, {});
  CHECK(jssp::argmin_rule(q) == RuleId::Spt);
}

TEST_CASE("lcb_rule at lambda 0 is argmin; larger lambda favors uncertainty") {
  auto p = preds({0.5, 0.4, 0.6, 0.8, 0.9, 0.7, 1.0}, {0.0, 0.0, 0.3, 0.0, 0.0, 0.0, 0.0});
  CHECK(jssp::lcb_rule(p, 0.0) == jssp::argmin_rule(p));
  // r - lambda*sigma: MWKR's 0.6 - 1.0*0.3 = 0.3 undercuts LPT's 0.4.
  CHECK(jssp::lcb_rule(p, 1.0) == RuleId::Mwkr);
}

TEST_CASE("gated_rule switches only on a strict confidence margin") {
  // Default FIFO (code 5). Candidate best is SPT (code 0).
  auto base = preds({0.2, 0.9, 0.9, 0.9, 0.9, 0.5, 0.9}, {0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  // Advantage 0.3 > 1.0 * 0.1: switch.
  CHECK(jssp::gated_rule(base, RuleId::Fifo, 1.0) == RuleId::Spt);
  // Advantage 0.3 == 3.0 * 0.1: not strict, stay.
  CHECK(jssp::gated_rule(base, RuleId::Fifo, 3.0) == RuleId::Fifo);
  // Advantage 0.3 < 4.0 * 0.1: stay.
  CHECK(jssp::gated_rule(base, RuleId::Fifo, 4.0) == RuleId::Fifo);
  // Zero uncertainty never clears the margin: a unanimous neighborhood keeps
  // the default at any lambda, so lambda -> inf collapses to the fixed rule.
  auto sure = preds({0.2, 0.9, 0.9, 0.9, 0.9, 0.5, 0.9}, {});
  CHECK(jssp::gated_rule(sure, RuleId::Fifo, 1e6) == RuleId::Fifo);
  CHECK(jssp::gated_rule(sure, RuleId::Fifo, 0.0) == RuleId::Fifo);
  // The default itself is the argmin: stay.
  auto keep = preds({0.9, 0.9, 0.9, 0.9, 0.9, 0.2, 0.9}, {});
  CHECK(jssp::gated_rule(keep, RuleId::Fifo, 0.0) == RuleId::Fifo);
  // Exact tie with the default: stay (advantage 0 is not strict).
  auto tie = preds({0.5, 0.9, 0.9, 0.9, 0.9, 0.5, 0.9}, {});
  CHECK(jssp::gated_rule(tie, RuleId::Fifo, 0.0) == RuleId::Fifo);
}

TEST_CASE("policy specs parse and print canonically") {
  jssp::SelectorModel m = small_model(RuleId::Fifo);

  jssp::Policy fixed = jssp::parse_policy_spec("fixed:lwkr", nullptr);
  CHECK(fixed.kind == jssp::PolicyKind::Fixed);
  CHECK(fixed.fixed_rule == RuleId::Lwkr);
  CHECK(jssp::policy_spec(fixed) == "fixed:LWKR");

  CHECK(jssp::parse_policy_spec("random-hh", nullptr).kind == jssp::PolicyKind::RandomHH);
  CHECK(jssp::parse_policy_spec("random_hh", nullptr).kind == jssp::PolicyKind::RandomHH);
  CHECK(jssp::policy_spec(jssp::random_hh_policy()) == "random-hh");

  jssp::Policy argmin = jssp::parse_policy_spec("argmin", &m);
  CHECK(argmin.kind == jssp::PolicyKind::Argmin);
  CHECK(jssp::policy_spec(argmin) == "argmin");

  jssp::Policy lcb = jssp::parse_policy_spec("lcb:0.5", &m);
  CHECK(lcb.kind == jssp::PolicyKind::Lcb);
  CHECK(lcb.lambda == 0.5);
  CHECK(jssp::policy_spec(lcb) == "lcb:0.5");

  jssp::Policy gated = jssp::parse_policy_spec("gated:1.0", &m);
  CHECK(gated.kind == jssp::PolicyKind::Gated);
  CHECK(gated.lambda == 1.0);
  CHECK(jssp::policy_spec(gated) == "gated:1.0");
  CHECK_THROWS_AS(jssp::parse_policy_spec("gated", &m), std::invalid_argument);

  CHECK_THROWS_AS(jssp::parse_policy_spec("fixed:nope", nullptr), std::invalid_argument);
  CHECK_THROWS_AS(jssp::parse_policy_spec("argmin", nullptr), std::invalid_argument);
  CHECK_THROWS_AS(jssp::parse_policy_spec("gated:1.0", nullptr), std::invalid_argument);
  CHECK_THROWS_AS(jssp::parse_policy_spec("gated:-1", &m), std::invalid_argument);
  CHECK_THROWS_AS(jssp::parse_policy_spec("gated:abc", &m), std::invalid_argument);
  CHECK_THROWS_AS(jssp::parse_policy_spec("", nullptr), std::invalid_argument);
  CHECK_THROWS_AS(jssp::lcb_policy(jssp::SelectorModel{}, -0.5), std::invalid_argument);
}

TEST_CASE("fixed policies replay their rule") {
  jssp::Instance inst = jssp::generate_instance(6, 5, 7);
  for (RuleId rule : jssp::kDeterministicRules) {
    auto run = jssp::run_policy(jssp::fixed_policy(rule), inst, 1);
    CHECK(run.state.complete());
    CHECK(run.chosen.size() == static_cast<std::size_t>(inst.total_ops()));
    for (RuleId r : run.chosen) CHECK(r == rule);
    jssp::ScheduleState replay(inst);
    jssp::Rng rng(0);
    CHECK(jssp::complete_with_rule(replay, rule, rng).makespan == run.makespan);
  }
}

TEST_CASE("an enormous lambda gate never leaves the default rule") {
  jssp::SelectorModel m = small_model(RuleId::Mwkr);
  jssp::Policy gate = jssp::gated_policy(m, 1e6);
  jssp::Policy fixed = jssp::fixed_policy(RuleId::Mwkr);
  for (std::uint64_t s = 0; s < 5; ++s) {
    jssp::Instance inst = jssp::generate_instance(5, 5, 700 + s);
    auto a = jssp::run_policy(gate, inst, s);
    auto b = jssp::run_policy(fixed, inst, s);
    CHECK(a.makespan == b.makespan);
    REQUIRE(a.state.log.size() == b.state.log.size());
    for (std::size_t i = 0; i < a.state.log.size(); ++i) {
      CHECK(a.state.log[i].job == b.state.log[i].job);
      CHECK(a.state.log[i].start == b.state.log[i].start);
      CHECK(a.state.log[i].end == b.state.log[i].end);
    }
  }
}

TEST_CASE("lcb at lambda 0 tracks argmin decision by decision") {
  jssp::SelectorModel m = small_model(RuleId::Fifo);
  for (std::uint64_t s = 0; s < 5; ++s) {
    jssp::Instance inst = jssp::generate_instance(5, 5, 800 + s);
    auto lcb = jssp::run_policy(jssp::lcb_policy(m, 0.0), inst, s);
    auto argmin = jssp::run_policy(jssp::argmin_policy(m), inst, s);
    CHECK(lcb.chosen == argmin.chosen);
    CHECK(lcb.makespan == argmin.makespan);
  }
}

TEST_CASE("random-hh is seed-deterministic and seed-sensitive") {
  jssp::Instance inst = jssp::generate_instance(6, 6, 11);
  auto a = jssp::run_policy(jssp::random_hh_policy(), inst, 5);
  auto b = jssp::run_policy(jssp::random_hh_policy(), inst, 5);
  CHECK(a.makespan == b.makespan);
  CHECK(a.chosen == b.chosen);
  CHECK(jssp::verify_feasible(a.state, nullptr));

  bool any_differs = false;
  for (std::uint64_t s = 6; s < 12 && !any_differs; ++s) {
    auto c = jssp::run_policy(jssp::random_hh_policy(), inst, s);
    any_differs = c.chosen != a.chosen;
  }
  CHECK(any_differs);
}

TEST_CASE("selector policies produce feasible schedules") {
  jssp::SelectorModel m = small_model(RuleId::Fifo);
  jssp::Instance inst = jssp::generate_instance(6, 6, 2200);
  for (const jssp::Policy& p : {jssp::argmin_policy(m), jssp::lcb_policy(m, 0.5),
                                jssp::gated_policy(m, 1.0)}) {
    auto run = jssp::run_policy(p, inst, 3);
    CHECK(run.state.complete());
    CHECK(jssp::verify_feasible(run.state, nullptr));
    CHECK(run.makespan == run.state.partial_makespan);
  }
}
