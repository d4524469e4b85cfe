#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "jssp/knn.hpp"
#include "jssp/labeler.hpp"
#include "jssp/rng.hpp"
#include "test_support.hpp"

using jssp::FeatureVec;
using jssp::LabeledSample;
using jssp::Prediction;
using jssp::SelectorModel;

namespace {

// Identity normalizer: z-space equals raw space.
SelectorModel hand_model(const std::vector<FeatureVec>& rows, const std::vector<double>& targets,
                         int k) {
  SelectorModel m;
  m.normalizer.mean.fill(0.0);
  m.normalizer.std.fill(1.0);
  m.k = k;
  m.epsilon = 1e-8;
  for (const FeatureVec& r : rows) m.points.insert(m.points.end(), r.begin(), r.end());
  m.targets = targets;
  m.rebuild_derived();
  return m;
}

// Independent linear-scan prediction: full 42-dim distances, sort by
// (distance, index), inverse-distance weights, unweighted sigma.
Prediction naive_predict(const SelectorModel& m, const FeatureVec& z) {
  struct Entry {
    double d2;
    std::size_t idx;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double d2 = 0;
    for (std::size_t d = 0; d < z.size(); ++d) {
      double diff = z[d] - m.points[i * z.size() + d];
      d2 += diff * diff;
    }
    entries.push_back({d2, i});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.d2 != b.d2 ? a.d2 < b.d2 : a.idx < b.idx;
  });
  std::size_t k = static_cast<std::size_t>(m.k);
  double wsum = 0, wy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double w = 1.0 / (std::sqrt(entries[i].d2) + m.epsilon);
    wsum += w;
    wy += w * m.targets[entries[i].idx];
  }
  double mean = 0;
  for (std::size_t i = 0; i < k; ++i) mean += m.targets[entries[i].idx];
  mean /= static_cast<double>(k);
  bool all_equal = true;
  for (std::size_t i = 1; i < k; ++i)
    if (m.targets[entries[i].idx] != m.targets[entries[0].idx]) all_equal = false;
  double var = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double dev = m.targets[entries[i].idx] - mean;
    var += dev * dev;
  }
  return {wy / wsum, all_equal ? 0.0 : std::sqrt(var / static_cast<double>(k))};
}

FeatureVec random_vec(jssp::Rng& rng) {
  FeatureVec v{};
  for (double& x : v) x = rng.uniform01() * 10.0 - 5.0;
  return v;
}

}  // namespace

TEST_CASE("two-neighbor worked example") {
  FeatureVec p0{}, p1{};
  p0[0] = 1.0;  // distance 1 from the origin
  p1[0] = 3.0;  // distance 3
  SelectorModel m = hand_model({p0, p1}, {0.0, 0.4}, 2);

  FeatureVec origin{};
  Prediction p = jssp::query_vector(m, origin.data());

  double w0 = 1.0 / (1.0 + 1e-8);
  double w1 = 1.0 / (3.0 + 1e-8);
  double expected = (w0 * 0.0 + w1 * 0.4) / (w0 + w1);
  CHECK(p.r_hat == doctest::Approx(expected).epsilon(1e-15));
  CHECK(p.r_hat == doctest::Approx(0.1).epsilon(1e-7));
  CHECK(p.sigma_hat == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("k=1 returns the nearest target with zero sigma") {
  FeatureVec p0{}, p1{}, p2{};
  p0[3] = 2.0;
  p1[3] = 5.0;
  p2[3] = -1.0;
  SelectorModel m = hand_model({p0, p1, p2}, {0.7, 0.1, 0.9}, 1);
  FeatureVec q{};
  q[3] = 1.6;  // nearest is p0
  Prediction p = jssp::query_vector(m, q.data());
  CHECK(p.r_hat == 0.7);
  CHECK(p.sigma_hat == 0.0);
}

TEST_CASE("exact distance ties break toward the lower stored index") {
  FeatureVec same{};
  same[5] = 4.0;
  SelectorModel m = hand_model({same, same}, {0.25, 0.75}, 1);
  Prediction p = jssp::query_vector(m, same.data());
  CHECK(p.r_hat == 0.25);
}

TEST_CASE("equal neighbor targets give exactly zero sigma") {
  FeatureVec p0{}, p1{}, p2{};
  p0[0] = 1.0;
  p1[0] = 2.0;
  p2[0] = 4.0;
  SelectorModel m = hand_model({p0, p1, p2}, {0.3, 0.3, 0.3}, 3);
  FeatureVec q{};
  Prediction p = jssp::query_vector(m, q.data());
  CHECK(p.r_hat == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(p.sigma_hat == 0.0);
}

TEST_CASE("query_vector matches the independent oracle on random models") {
  jssp::Rng rng(2718);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<LabeledSample> samples;
    for (int i = 0; i < 50; ++i) {
      LabeledSample s;
      s.features = random_vec(rng);
      s.target = rng.uniform01();
      samples.push_back(s);
    }
    SelectorModel m =
        jssp::fit_selector(samples, 7, 1e-8, jssp::RuleId::Fifo, jssp::LabelKind::Regret);
    for (int q = 0; q < 20; ++q) {
      FeatureVec z = m.normalizer.normalize(random_vec(rng));
      Prediction got = jssp::query_vector(m, z.data());
      Prediction want = naive_predict(m, z);
      CHECK(got.r_hat == doctest::Approx(want.r_hat).epsilon(1e-12));
      CHECK(got.sigma_hat == doctest::Approx(want.sigma_hat).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-phase predict agrees with the naive scan on real states") {
  std::vector<jssp::Instance> instances{jssp::generate_instance(5, 5, 41),
                                        jssp::generate_instance(5, 5, 42)};
  jssp::LabelConfig cfg;
  cfg.states_per_instance = 8;
  cfg.seed = 4;
  jssp::Dataset ds = jssp::build_dataset(instances, cfg, 1);
  SelectorModel m = jssp::fit_selector(ds);

  jssp::Instance probe = jssp::generate_instance(5, 5, 99);
  auto states = jssp::sample_states(probe, cfg);
  for (const auto& state : states) {
    auto all = jssp::predict_all(m, state);
    for (jssp::RuleId rule : jssp::kAllRules) {
      auto one = jssp::predict(m, state, rule);
      const auto& batch = all[static_cast<std::size_t>(jssp::rule_code(rule))];
      CHECK(one.r_hat == batch.r_hat);  // same code path, bitwise
      CHECK(one.sigma_hat == batch.sigma_hat);

      FeatureVec z = m.normalizer.normalize(jssp::extract_features(state, rule));
      Prediction naive = naive_predict(m, z);
      CHECK(one.r_hat == doctest::Approx(naive.r_hat).epsilon(1e-12));
      CHECK(one.sigma_hat == doctest::Approx(naive.sigma_hat).epsilon(1e-12));
    }
  }
}

TEST_CASE("fit_selector validates its arguments") {
  std::vector<LabeledSample> samples(3);
  jssp::Rng rng(1);
  for (auto& s : samples) s.features = random_vec(rng);
  CHECK_THROWS_AS(jssp::fit_selector(samples, 0, 1e-8, jssp::RuleId::Fifo,
                                     jssp::LabelKind::Regret),
                  std::invalid_argument);
  CHECK_THROWS_AS(jssp::fit_selector(samples, 3, 0.0, jssp::RuleId::Fifo,
                                     jssp::LabelKind::Regret),
                  std::invalid_argument);
  CHECK_THROWS_AS(jssp::fit_selector(samples, 4, 1e-8, jssp::RuleId::Fifo,
                                     jssp::LabelKind::Regret),
                  std::invalid_argument);
  CHECK_NOTHROW(jssp::fit_selector(samples, 3, 1e-8, jssp::RuleId::Fifo,
                                   jssp::LabelKind::Regret));
}

TEST_CASE("serialization round trips bitwise") {
  std::vector<jssp::Instance> instances{jssp::generate_instance(4, 4, 17)};
  jssp::LabelConfig cfg;
  cfg.states_per_instance = 6;
  cfg.seed = 8;
  cfg.default_rule = jssp::RuleId::Mopnr;
  jssp::Dataset ds = jssp::build_dataset(instances, cfg, 1);
  SelectorModel m = jssp::fit_selector(ds, 5, 1e-7);
  m.config_echo = "{\"run\":\"rt\"}";

  std::string bytes = jssp::model_to_bytes(m);
  SelectorModel back = jssp::model_from_bytes(bytes);
  CHECK(back.k == m.k);
  CHECK(back.epsilon == m.epsilon);
  CHECK(back.label_kind == m.label_kind);
  CHECK(back.default_rule == m.default_rule);
  CHECK(back.points == m.points);
  CHECK(back.targets == m.targets);
  CHECK(back.normalizer.mean == m.normalizer.mean);
  CHECK(back.normalizer.std == m.normalizer.std);
  CHECK(back.config_echo == m.config_echo);
  CHECK(back.point_rules == m.point_rules);
  CHECK(jssp::model_fingerprint(back) == jssp::model_fingerprint(m));

  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "jsspsel-test-model.knn";
  jssp::save_model(m, path);
  SelectorModel loaded = jssp::load_model(path);
  CHECK(jssp::model_fingerprint(loaded) == jssp::model_fingerprint(m));
  fs::remove(path);

  // A changed target is a changed fingerprint.
  SelectorModel tweaked = m;
  tweaked.targets[0] += 0.5;
  CHECK(jssp::model_fingerprint(tweaked) != jssp::model_fingerprint(m));
}

TEST_CASE("deserialization rejects corrupted bytes") {
  FeatureVec p0{};
  p0[0] = 1.0;
  SelectorModel m = hand_model({p0, p0}, {0.1, 0.2}, 2);
  std::string bytes = jssp::model_to_bytes(m);

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(jssp::model_from_bytes(bad_magic), std::exception);

  std::string truncated = bytes.substr(0, bytes.size() - 3);
  CHECK_THROWS_AS(jssp::model_from_bytes(truncated), std::exception);

  std::string padded = bytes + "z";
  CHECK_THROWS_AS(jssp::model_from_bytes(padded), std::exception);

  CHECK_THROWS_AS(jssp::model_from_bytes(""), std::exception);
}

TEST_CASE("training-row permutation leaves predictions unchanged") {
  jssp::Rng rng(31);
  std::vector<FeatureVec> rows;
  std::vector<double> targets;
  for (int i = 0; i < 20; ++i) {
    rows.push_back(random_vec(rng));
    targets.push_back(rng.uniform01());
  }
  SelectorModel a = hand_model(rows, targets, 4);

  std::vector<std::size_t> perm(rows.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::reverse(perm.begin(), perm.end());
  std::vector<FeatureVec> rows2;
  std::vector<double> targets2;
  for (std::size_t i : perm) {
    rows2.push_back(rows[i]);
    targets2.push_back(targets[i]);
  }
  SelectorModel b = hand_model(rows2, targets2, 4);

  // Same normalizer, distinct distances: sorted neighbor order is identical.
  for (int q = 0; q < 30; ++q) {
    FeatureVec z = random_vec(rng);
    Prediction pa = jssp::query_vector(a, z.data());
    Prediction pb = jssp::query_vector(b, z.data());
    CHECK(pa.r_hat == pb.r_hat);  // bitwise
    CHECK(pa.sigma_hat == pb.sigma_hat);
  }
}
