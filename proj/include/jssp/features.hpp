#pragma once
// State descriptor for the rule selector.
//
// Each labeled example is a 42-dimensional vector: 35 state features plus a
// 7-slot one-hot block for the candidate rule. Dimension order is a file
// format contract (dataset columns f00..f41) and must not change.
//
//   0  num_jobs                    1  num_machines
//   2  num_jobs / num_machines
//   3  mean processing time over all operations (raw time units)
//   4  population std of processing times (raw)
//   5  min processing time          6  max processing time
//   7  coefficient of variation of processing times (std / mean)
//   8  mean machine load / LB       9  std of machine loads / LB
//   10 max machine load / LB        11 max load / mean load
//   12 fraction of operations already scheduled
//   13 fraction of total work already scheduled
//   14 partial makespan / LB        15 fraction of operations remaining
//   16 fraction of jobs unfinished
//   17-20 ready-operation processing times (next op of each unfinished job):
//         mean, std, min, max, each divided by the instance mean (dim 3)
//   21-24 remaining work per unfinished job: mean, std, min, max, each / LB
//   25 total remaining work / LB
//   26 coefficient of variation of remaining work over unfinished jobs
//   27-29 remaining operation counts per unfinished job: mean, std, max, / M
//   30-32 machine ready times over all machines: mean, std, max-min, / LB
//   33-34 job ready times over unfinished jobs: mean, std, / LB
//   35-41 one-hot candidate rule, slot = rule code
//
// LB is the standard lower bound of the instance. Time-like state features
// are LB-relative so the descriptor is comparable across problem sizes;
// dims 3-6 are intentionally raw (the normalizer handles their scale).

#include <array>
#include <cstdint>
#include <vector>

#include "jssp/rules.hpp"
#include "jssp/schedule.hpp"

namespace jssp {

inline constexpr int kNumStateFeatures = 35;
inline constexpr int kNumFeatures = 42;

using FeatureVec = std::array<double, kNumFeatures>;

/// Dims 0..34 for a non-terminal state. Throws std::invalid_argument on a
/// complete schedule (there is no decision to describe).
std::array<double, kNumStateFeatures> extract_state_features(const ScheduleState& state);

/// Full 42-dim vector: state part plus the rule's one-hot block.
FeatureVec extract_features(const ScheduleState& state, RuleId rule);

const std::array<const char*, kNumFeatures>& feature_names();

/// Per-dimension z-scoring fitted on a training set. Dimensions whose
/// training std is below kConstStd are constant: they normalize to 0 so they
/// never contribute to distances.
struct Normalizer {
  static constexpr double kConstStd = 1e-12;
  std::array<double, kNumFeatures> mean{};
  std::array<double, kNumFeatures> std{};

  double normalize_dim(int d, double v) const {
    std::size_t i = static_cast<std::size_t>(d);
    return std[i] > kConstStd ? (v - mean[i]) / std[i] : 0.0;
  }
  FeatureVec normalize(const FeatureVec& v) const {
    FeatureVec out;
    for (int d = 0; d < kNumFeatures; ++d)
      out[static_cast<std::size_t>(d)] = normalize_dim(d, v[static_cast<std::size_t>(d)]);
    return out;
  }
};

/// Population mean/std per dimension. Throws std::invalid_argument on empty
/// input.
Normalizer fit_normalizer(const std::vector<FeatureVec>& rows);

}  // namespace jssp
