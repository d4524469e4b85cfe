#include "jssp/knn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "jssp/rng.hpp"
#include "jssp/util.hpp"

namespace jssp {

namespace {

constexpr char kMagic[8] = {'J', 'S', 'E', 'L', 'K', 'N', 'N', '1'};
constexpr std::uint32_t kVersion = 1;

struct Neighbor {
  double d2 = 0;
  std::size_t idx = 0;
  bool operator<(const Neighbor& o) const {
    return d2 != o.d2 ? d2 < o.d2 : idx < o.idx;
  }
};

// Keeps the k smallest neighbors in ascending order.
class TopK {
 public:
  TopK(std::vector<Neighbor>& buf, std::size_t k) : buf_(buf), k_(k) { buf_.clear(); }

  void offer(double d2, std::size_t idx) {
    Neighbor cand{d2, idx};
    if (buf_.size() == k_ && !(cand < buf_.back())) return;
    auto pos = std::upper_bound(buf_.begin(), buf_.end(), cand);
    buf_.insert(pos, cand);
    if (buf_.size() > k_) buf_.pop_back();
  }

 private:
  std::vector<Neighbor>& buf_;
  std::size_t k_;
};

Prediction summarize(const std::vector<Neighbor>& neighbors, const SelectorModel& m) {
  Prediction p;
  double wsum = 0, wysum = 0;
  for (const Neighbor& nb : neighbors) {
    double w = 1.0 / (std::sqrt(nb.d2) + m.epsilon);
    wsum += w;
    wysum += w * m.targets[nb.idx];
  }
  p.r_hat = wysum / wsum;

  // Exact zero when all neighbor targets coincide (fp std of equal values
  // can otherwise land at ~1e-17).
  bool all_equal = true;
  for (const Neighbor& nb : neighbors)
    if (m.targets[nb.idx] != m.targets[neighbors[0].idx]) {
      all_equal = false;
      break;
    }
  if (all_equal) {
    p.sigma_hat = 0;
    return p;
  }
  double mean = 0;
  for (const Neighbor& nb : neighbors) mean += m.targets[nb.idx];
  mean /= static_cast<double>(neighbors.size());
  double ss = 0;
  for (const Neighbor& nb : neighbors) {
    double d = m.targets[nb.idx] - mean;
    ss += d * d;
  }
  p.sigma_hat = std::sqrt(ss / static_cast<double>(neighbors.size()));
  return p;
}

thread_local std::vector<double> t_state_d2;
thread_local std::vector<Neighbor> t_neighbors;

// Squared distance over the 35 state dims for every stored point.
void state_part_dist2(const SelectorModel& m, const double* qs, std::vector<double>& out) {
  const std::size_t n = m.size();
  out.resize(n);
  const double* p = m.points.data();
  for (std::size_t i = 0; i < n; ++i, p += kNumFeatures) {
    double sum = 0;
    for (int d = 0; d < kNumStateFeatures; ++d) {
      double diff = qs[d] - p[d];
      sum += diff * diff;
    }
    out[i] = sum;
  }
}

Prediction predict_rule_from_state_part(const SelectorModel& m, const std::vector<double>& sd2,
                                        int rule) {
  TopK top(t_neighbors, static_cast<std::size_t>(m.k));
  const auto& row = m.rule_dist2[static_cast<std::size_t>(rule)];
  for (std::size_t i = 0; i < sd2.size(); ++i)
    top.offer(sd2[i] + row[m.point_rules[i]], i);
  return summarize(t_neighbors, m);
}

void normalized_state_query(const SelectorModel& m, const ScheduleState& state, double* qs) {
  auto sf = extract_state_features(state);
  for (int d = 0; d < kNumStateFeatures; ++d)
    qs[d] = m.normalizer.normalize_dim(d, sf[static_cast<std::size_t>(d)]);
}

void append_raw(std::string& out, const void* data, std::size_t size) {
  out.append(static_cast<const char*>(data), size);
}

template <typename T>
T read_raw(const std::string& bytes, std::size_t& off) {
  if (off + sizeof(T) > bytes.size()) throw std::runtime_error("model file truncated");
  T v;
  std::memcpy(&v, bytes.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

}  // namespace

void SelectorModel::rebuild_derived() {
  static_assert(std::endian::native == std::endian::little,
                "model serialization assumes a little-endian host");
  const std::size_t n = size();
  if (points.size() != n * kNumFeatures)
    throw std::invalid_argument("selector model: points/targets size mismatch");
  point_rules.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // The one-hot block is stored normalized; undo the z-scoring and take the
    // hot slot.
    int best = 0;
    double best_raw = -1;
    for (int r = 0; r < kNumRules; ++r) {
      std::size_t d = static_cast<std::size_t>(kNumStateFeatures + r);
      double nv = points[i * kNumFeatures + d];
      double raw = normalizer.std[d] > Normalizer::kConstStd
                       ? nv * normalizer.std[d] + normalizer.mean[d]
                       : normalizer.mean[d];
      if (raw > best_raw) {
        best_raw = raw;
        best = r;
      }
    }
    point_rules[i] = static_cast<std::uint8_t>(best);
  }
  for (int a = 0; a < kNumRules; ++a)
    for (int b = 0; b < kNumRules; ++b) {
      if (a == b) {
        rule_dist2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 0;
        continue;
      }
      // Normalized gap between hot and cold in each of the two differing
      // one-hot dims; constant dims normalize to 0 and contribute nothing.
      int da = kNumStateFeatures + a, db = kNumStateFeatures + b;
      double ga = normalizer.normalize_dim(da, 1.0) - normalizer.normalize_dim(da, 0.0);
      double gb = normalizer.normalize_dim(db, 1.0) - normalizer.normalize_dim(db, 0.0);
      rule_dist2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = ga * ga + gb * gb;
    }
}

SelectorModel fit_selector(const std::vector<LabeledSample>& samples, int k, double epsilon,
                           RuleId default_rule, LabelKind label_kind) {
  if (k < 1) throw std::invalid_argument("fit_selector: k must be >= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("fit_selector: epsilon must be > 0");
  if (samples.size() < static_cast<std::size_t>(k))
    throw std::invalid_argument("fit_selector: dataset smaller than k");
  SelectorModel m;
  m.k = k;
  m.epsilon = epsilon;
  m.label_kind = label_kind;
  m.default_rule = default_rule;
  std::vector<FeatureVec> rows;
  rows.reserve(samples.size());
  for (const LabeledSample& s : samples) rows.push_back(s.features);
  m.normalizer = fit_normalizer(rows);
  m.points.resize(samples.size() * kNumFeatures);
  m.targets.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    FeatureVec nf = m.normalizer.normalize(samples[i].features);
    std::memcpy(m.points.data() + i * kNumFeatures, nf.data(), sizeof(double) * kNumFeatures);
    m.targets[i] = samples[i].target;
  }
  m.rebuild_derived();
  return m;
}

SelectorModel fit_selector(const Dataset& ds, int k, double epsilon) {
  SelectorModel m =
      fit_selector(ds.samples, k, epsilon, ds.config.default_rule, ds.config.label_kind);
  if (!ds.config_echo.empty()) m.config_echo = ds.config_echo;
  return m;
}

Prediction query_vector(const SelectorModel& m, const double* query) {
  if (m.size() == 0) throw std::invalid_argument("query_vector: empty model");
  TopK top(t_neighbors, static_cast<std::size_t>(m.k));
  const double* p = m.points.data();
  for (std::size_t i = 0; i < m.size(); ++i, p += kNumFeatures) {
    double sum = 0;
    for (int d = 0; d < kNumFeatures; ++d) {
      double diff = query[d] - p[d];
      sum += diff * diff;
    }
    top.offer(sum, i);
  }
  return summarize(t_neighbors, m);
}

Prediction predict(const SelectorModel& m, const ScheduleState& state, RuleId rule) {
  double qs[kNumStateFeatures];
  normalized_state_query(m, state, qs);
  state_part_dist2(m, qs, t_state_d2);
  return predict_rule_from_state_part(m, t_state_d2, rule_code(rule));
}

std::array<Prediction, kNumRules> predict_all(const SelectorModel& m, const ScheduleState& state) {
  double qs[kNumStateFeatures];
  normalized_state_query(m, state, qs);
  state_part_dist2(m, qs, t_state_d2);
  std::array<Prediction, kNumRules> out;
  for (int r = 0; r < kNumRules; ++r)
    out[static_cast<std::size_t>(r)] = predict_rule_from_state_part(m, t_state_d2, r);
  return out;
}

std::string model_to_bytes(const SelectorModel& m) {
  std::string out;
  out.reserve(64 + m.points.size() * 8 + m.targets.size() * 8);
  append_raw(out, kMagic, sizeof(kMagic));
  std::uint32_t version = kVersion;
  append_raw(out, &version, 4);
  std::uint32_t k = static_cast<std::uint32_t>(m.k);
  append_raw(out, &k, 4);
  append_raw(out, &m.epsilon, 8);
  std::uint8_t kind = static_cast<std::uint8_t>(m.label_kind);
  std::uint8_t rule = static_cast<std::uint8_t>(rule_code(m.default_rule));
  std::uint16_t reserved = 0;
  append_raw(out, &kind, 1);
  append_raw(out, &rule, 1);
  append_raw(out, &reserved, 2);
  std::uint32_t dim = kNumFeatures;
  append_raw(out, &dim, 4);
  std::uint64_t n = m.size();
  append_raw(out, &n, 8);
  append_raw(out, m.normalizer.mean.data(), sizeof(double) * kNumFeatures);
  append_raw(out, m.normalizer.std.data(), sizeof(double) * kNumFeatures);
  append_raw(out, m.points.data(), sizeof(double) * m.points.size());
  append_raw(out, m.targets.data(), sizeof(double) * m.targets.size());
  std::uint32_t echo_len = static_cast<std::uint32_t>(m.config_echo.size());
  append_raw(out, &echo_len, 4);
  out += m.config_echo;
  return out;
}

SelectorModel model_from_bytes(const std::string& bytes) {
  std::size_t off = 0;
  char magic[8];
  if (bytes.size() < sizeof(magic)) throw std::runtime_error("model file truncated");
  std::memcpy(magic, bytes.data(), sizeof(magic));
  off = sizeof(magic);
  if (std::memcmp(magic, kMagic, sizeof(magic)) != 0)
    throw std::runtime_error("not a selector model file (bad magic)");
  std::uint32_t version = read_raw<std::uint32_t>(bytes, off);
  if (version != kVersion)
    throw std::runtime_error("unsupported model version " + std::to_string(version));
  SelectorModel m;
  m.k = static_cast<int>(read_raw<std::uint32_t>(bytes, off));
  m.epsilon = read_raw<double>(bytes, off);
  std::uint8_t kind = read_raw<std::uint8_t>(bytes, off);
  if (kind > 1) throw std::runtime_error("model: bad label kind");
  m.label_kind = static_cast<LabelKind>(kind);
  m.default_rule = rule_from_code(read_raw<std::uint8_t>(bytes, off));
  read_raw<std::uint16_t>(bytes, off);  // reserved
  std::uint32_t dim = read_raw<std::uint32_t>(bytes, off);
  if (dim != kNumFeatures)
    throw std::runtime_error("model: feature width " + std::to_string(dim) + " unsupported");
  std::uint64_t n = read_raw<std::uint64_t>(bytes, off);
  std::size_t body = sizeof(double) * (2 * kNumFeatures + n * kNumFeatures + n);
  if (bytes.size() < off + body + 4) throw std::runtime_error("model file truncated");
  std::memcpy(m.normalizer.mean.data(), bytes.data() + off, sizeof(double) * kNumFeatures);
  off += sizeof(double) * kNumFeatures;
  std::memcpy(m.normalizer.std.data(), bytes.data() + off, sizeof(double) * kNumFeatures);
  off += sizeof(double) * kNumFeatures;
  m.points.resize(n * kNumFeatures);
  std::memcpy(m.points.data(), bytes.data() + off, sizeof(double) * m.points.size());
  off += sizeof(double) * m.points.size();
  m.targets.resize(n);
  std::memcpy(m.targets.data(), bytes.data() + off, sizeof(double) * n);
  off += sizeof(double) * n;
  std::uint32_t echo_len = read_raw<std::uint32_t>(bytes, off);
  if (bytes.size() != off + echo_len) throw std::runtime_error("model file has wrong length");
  m.config_echo = bytes.substr(off, echo_len);
  if (m.k < 1 || m.size() < static_cast<std::size_t>(m.k))
    throw std::runtime_error("model: k exceeds stored point count");
  m.rebuild_derived();
  return m;
}

void save_model(const SelectorModel& m, const std::filesystem::path& path) {
  atomic_write(path, model_to_bytes(m));
}

SelectorModel load_model(const std::filesystem::path& path) {
  return model_from_bytes(read_file(path));
}

std::string model_fingerprint(const SelectorModel& m) {
  std::uint64_t h = fnv1a(model_to_bytes(m));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace jssp
