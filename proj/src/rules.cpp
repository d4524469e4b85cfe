#include "jssp/rules.hpp"

#include <stdexcept>
#include <tuple>

#include "jssp/schedule.hpp"
#include "jssp/util.hpp"

namespace jssp {

RuleId rule_from_code(int code) {
  if (code < 0 || code >= kNumRules)
    throw std::invalid_argument("rule code out of range: " + std::to_string(code));
  return static_cast<RuleId>(code);
}

const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::Spt: return "SPT";
    case RuleId::Lpt: return "LPT";
    case RuleId::Mwkr: return "MWKR";
    case RuleId::Lwkr: return "LWKR";
    case RuleId::Mopnr: return "MOPNR";
    case RuleId::Fifo: return "FIFO";
    case RuleId::Random: return "RANDOM";
  }
  throw std::invalid_argument("rule_name: bad RuleId");
}

std::optional<RuleId> parse_rule(std::string_view name) {
  std::string n = lower(name);
  for (RuleId r : kAllRules)
    if (n == lower(rule_name(r))) return r;
  return std::nullopt;
}

namespace {

// Lowest job index whose key is strictly smallest (keys negated for max rules).
template <typename KeyFn>
int argmin_ready(const ScheduleState& s, KeyFn key) {
  int best = -1;
  std::int64_t best_key = 0;
  for (int j = 0; j < s.inst->num_jobs; ++j) {
    if (s.job_finished(j)) continue;
    std::int64_t k = key(j);
    if (best < 0 || k < best_key) {
      best = j;
      best_key = k;
    }
  }
  return best;
}

}  // namespace

int select_job(RuleId rule, const ScheduleState& state, Rng& rng) {
  int picked = -1;
  switch (rule) {
    case RuleId::Spt:
      picked = argmin_ready(state, [&](int j) { return state.next_proc_time(j); });
      break;
    case RuleId::Lpt:
      picked = argmin_ready(state, [&](int j) { return -state.next_proc_time(j); });
      break;
    case RuleId::Mwkr:
      picked = argmin_ready(state, [&](int j) { return -state.remaining_work(j); });
      break;
    case RuleId::Lwkr:
      picked = argmin_ready(state, [&](int j) { return state.remaining_work(j); });
      break;
    case RuleId::Mopnr:
      picked = argmin_ready(state, [&](int j) { return -static_cast<std::int64_t>(state.remaining_ops(j)); });
      break;
    case RuleId::Fifo: {
      // Earliest ready time, then earliest arrival, then lowest job index.
      std::tuple<std::int64_t, int, int> best{0, 0, 0};
      for (int j = 0; j < state.inst->num_jobs; ++j) {
        if (state.job_finished(j)) continue;
        std::tuple<std::int64_t, int, int> key{
            state.job_ready[static_cast<std::size_t>(j)],
            state.arrival[static_cast<std::size_t>(j)], j};
        if (picked < 0 || key < best) {
          picked = j;
          best = key;
        }
      }
      break;
    }
    case RuleId::Random: {
      int ready = 0;
      for (int j = 0; j < state.inst->num_jobs; ++j)
        if (!state.job_finished(j)) ++ready;
      if (ready > 0) {
        int target = static_cast<int>(rng.below(static_cast<std::uint64_t>(ready)));
        for (int j = 0; j < state.inst->num_jobs; ++j) {
          if (state.job_finished(j)) continue;
          if (target-- == 0) {
            picked = j;
            break;
          }
        }
      }
      break;
    }
  }
  if (picked < 0) throw std::logic_error("select_job: no unfinished job");
  return picked;
}

RuleId best_fixed_rule(const std::vector<Instance>& instances) {
  if (instances.empty()) throw std::invalid_argument("best_fixed_rule: no instances");
  RuleId best = kDeterministicRules[0];
  std::int64_t best_total = -1;
  // Mean comparison over a fixed instance count reduces to exact integer
  // comparison of makespan totals.
  for (RuleId r : kDeterministicRules) {
    std::int64_t total = 0;
    for (const Instance& inst : instances) {
      ScheduleState s(inst);
      Rng rng(0);  // unused by deterministic rules
      total += complete_with_rule(s, r, rng).makespan;
    }
    if (best_total < 0 || total < best_total) {
      best = r;
      best_total = total;
    }
  }
  return best;
}

}  // namespace jssp
