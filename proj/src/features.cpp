#include "jssp/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jssp {

namespace {

struct Stats {
  double mean = 0, std = 0, min = 0, max = 0;
};

Stats pop_stats(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  double sum = 0;
  s.min = v[0];
  s.max = v[0];
  for (double x : v) {
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = sum / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) {
    double d = x - s.mean;
    ss += d * d;
  }
  s.std = std::sqrt(ss / static_cast<double>(v.size()));
  return s;
}

}  // namespace

std::array<double, kNumStateFeatures> extract_state_features(const ScheduleState& state) {
  if (state.complete())
    throw std::invalid_argument("extract_state_features: schedule is complete");
  const Instance& inst = state.instance();
  const double J = inst.num_jobs;
  const double M = inst.num_machines;
  const double LB = static_cast<double>(inst.lb);
  const double N = static_cast<double>(inst.total_ops());
  const double D = static_cast<double>(state.decisions_made());

  std::vector<double> ready_p, rem_work, rem_ops, j_ready;
  for (int j = 0; j < inst.num_jobs; ++j) {
    if (state.job_finished(j)) continue;
    ready_p.push_back(static_cast<double>(state.next_proc_time(j)));
    rem_work.push_back(static_cast<double>(state.remaining_work(j)));
    rem_ops.push_back(static_cast<double>(state.remaining_ops(j)));
    j_ready.push_back(static_cast<double>(state.job_ready[static_cast<std::size_t>(j)]));
  }
  std::vector<double> m_ready(state.machine_ready.begin(), state.machine_ready.end());

  Stats sp = pop_stats(ready_p);
  Stats sw = pop_stats(rem_work);
  Stats so = pop_stats(rem_ops);
  Stats sj = pop_stats(j_ready);
  Stats sm = pop_stats(m_ready);
  double rem_total = 0;
  for (double w : rem_work) rem_total += w;

  std::array<double, kNumStateFeatures> f{};
  f[0] = J;
  f[1] = M;
  f[2] = J / M;
  f[3] = inst.p_mean;
  f[4] = inst.p_std;
  f[5] = static_cast<double>(inst.p_min);
  f[6] = static_cast<double>(inst.p_max);
  f[7] = inst.p_std / inst.p_mean;
  f[8] = inst.load_mean / LB;
  f[9] = inst.load_std / LB;
  f[10] = static_cast<double>(inst.load_max) / LB;
  f[11] = static_cast<double>(inst.load_max) / inst.load_mean;
  f[12] = D / N;
  f[13] = static_cast<double>(state.scheduled_work) / static_cast<double>(inst.total_work);
  f[14] = static_cast<double>(state.partial_makespan) / LB;
  f[15] = (N - D) / N;
  f[16] = static_cast<double>(ready_p.size()) / J;
  f[17] = sp.mean / inst.p_mean;
  f[18] = sp.std / inst.p_mean;
  f[19] = sp.min / inst.p_mean;
  f[20] = sp.max / inst.p_mean;
  f[21] = sw.mean / LB;
  f[22] = sw.std / LB;
  f[23] = sw.min / LB;
  f[24] = sw.max / LB;
  f[25] = rem_total / LB;
  f[26] = sw.std / sw.mean;
  f[27] = so.mean / M;
  f[28] = so.std / M;
  f[29] = so.max / M;
  f[30] = sm.mean / LB;
  f[31] = sm.std / LB;
  f[32] = (sm.max - sm.min) / LB;
  f[33] = sj.mean / LB;
  f[34] = sj.std / LB;
  return f;
}

FeatureVec extract_features(const ScheduleState& state, RuleId rule) {
  auto sf = extract_state_features(state);
  FeatureVec f{};
  std::copy(sf.begin(), sf.end(), f.begin());
  f[static_cast<std::size_t>(kNumStateFeatures + rule_code(rule))] = 1.0;
  return f;
}

const std::array<const char*, kNumFeatures>& feature_names() {
  static const std::array<const char*, kNumFeatures> names = {
      "num_jobs", "num_machines", "job_machine_ratio",
      "p_mean", "p_std", "p_min", "p_max", "p_cv",
      "load_mean_lb", "load_std_lb", "load_max_lb", "load_imbalance",
      "frac_ops_done", "frac_work_done", "partial_makespan_lb",
      "frac_ops_left", "frac_jobs_left",
      "ready_p_mean", "ready_p_std", "ready_p_min", "ready_p_max",
      "remwork_mean_lb", "remwork_std_lb", "remwork_min_lb", "remwork_max_lb",
      "remwork_total_lb", "remwork_cv",
      "remops_mean", "remops_std", "remops_max",
      "mready_mean_lb", "mready_std_lb", "mready_range_lb",
      "jready_mean_lb", "jready_std_lb",
      "rule_spt", "rule_lpt", "rule_mwkr", "rule_lwkr", "rule_mopnr",
      "rule_fifo", "rule_random"};
  return names;
}

Normalizer fit_normalizer(const std::vector<FeatureVec>& rows) {
  if (rows.empty()) throw std::invalid_argument("fit_normalizer: empty input");
  Normalizer nz;
  const double n = static_cast<double>(rows.size());
  for (int d = 0; d < kNumFeatures; ++d) {
    std::size_t sd = static_cast<std::size_t>(d);
    double sum = 0;
    for (const FeatureVec& r : rows) sum += r[sd];
    nz.mean[sd] = sum / n;
    double ss = 0;
    for (const FeatureVec& r : rows) {
      double diff = r[sd] - nz.mean[sd];
      ss += diff * diff;
    }
    nz.std[sd] = std::sqrt(ss / n);
  }
  return nz;
}

}  // namespace jssp
