#include "jssp/labeler.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "jssp/util.hpp"

namespace jssp {

const char* label_kind_name(LabelKind k) {
  switch (k) {
    case LabelKind::Regret: return "regret";
    case LabelKind::Normalized: return "normalized";
  }
  throw std::invalid_argument("label_kind_name: bad LabelKind");
}

std::optional<LabelKind> parse_label_kind(std::string_view name) {
  std::string n = lower(name);
  if (n == "regret") return LabelKind::Regret;
  if (n == "normalized" || n == "norm") return LabelKind::Normalized;
  return std::nullopt;
}

void LabelConfig::validate() const {
  if (states_per_instance < 1)
    throw std::invalid_argument("label config: states_per_instance must be >= 1");
  if (trajectories_per_instance < 1)
    throw std::invalid_argument("label config: trajectories_per_instance must be >= 1");
  if (depth && *depth < 1) throw std::invalid_argument("label config: depth must be >= 1");
  if (breadth && (*breadth < 1 || *breadth > kNumRules))
    throw std::invalid_argument("label config: breadth must be in [1, 7]");
}

RolloutResult rollout(const ScheduleState& state, RuleId rule, std::optional<int> depth,
                      RuleId default_rule, Rng& rng) {
  if (state.complete()) throw std::invalid_argument("rollout: schedule already complete");
  if (depth && *depth < 1) throw std::invalid_argument("rollout: depth must be >= 1");
  ScheduleState s = state;
  std::int64_t remaining = s.remaining_decisions();
  std::int64_t guided = depth ? std::min<std::int64_t>(*depth, remaining) : remaining;
  for (std::int64_t i = 0; i < guided; ++i) s.dispatch(select_job(rule, s, rng));
  std::int64_t steps = guided;
  if (!s.complete()) {
    while (!s.complete()) s.dispatch(select_job(default_rule, s, rng));
    ++steps;  // one amortized unit for the whole completion call
  }
  return {s.partial_makespan, steps};
}

std::vector<ScheduleState> sample_states(const Instance& inst, const LabelConfig& cfg) {
  cfg.validate();
  const int total = inst.total_ops();
  if (cfg.states_per_instance > total)
    throw std::invalid_argument("sample_states: " + std::to_string(cfg.states_per_instance) +
                                " states requested but instance '" + inst.id + "' has only " +
                                std::to_string(total) + " decisions");
  Rng idx_rng(child_seed(cfg.seed, {fnv1a(inst.id), fnv1a("state-indices")}));
  std::vector<int> indices = idx_rng.sample_indices(total, cfg.states_per_instance);

  const int T = cfg.trajectories_per_instance;
  std::vector<std::vector<int>> wanted(static_cast<std::size_t>(T));
  for (std::size_t i = 0; i < indices.size(); ++i)
    wanted[i % static_cast<std::size_t>(T)].push_back(indices[i]);

  std::vector<ScheduleState> out;
  out.reserve(indices.size());
  for (int t = 0; t < T; ++t) {
    const auto& want = wanted[static_cast<std::size_t>(t)];
    if (want.empty()) continue;
    Rng traj_rng(child_seed(cfg.seed, {fnv1a(inst.id), fnv1a("trajectory"),
                                       static_cast<std::uint64_t>(t)}));
    ScheduleState state(inst);
    std::size_t wi = 0;
    for (int d = 0; d < total && wi < want.size(); ++d) {
      if (want[wi] == d) {
        out.push_back(state);
        ++wi;
      }
      RuleId rule = kAllRules[traj_rng.below(kNumRules)];
      state.dispatch(select_job(rule, state, traj_rng));
    }
  }
  return out;
}

namespace {

std::vector<RuleId> candidate_rules(const ScheduleState& state, const LabelConfig& cfg) {
  const int b = cfg.breadth.value_or(kNumRules);
  if (b >= kNumRules)
    return std::vector<RuleId>(kAllRules.begin(), kAllRules.end());
  Rng rng(child_seed(cfg.seed, {fnv1a(state.instance().id), fnv1a("subset"),
                                static_cast<std::uint64_t>(state.decisions_made())}));
  std::vector<int> codes;
  if (cfg.subset_includes_default) {
    std::vector<int> pool;
    for (RuleId r : kAllRules)
      if (r != cfg.default_rule) pool.push_back(rule_code(r));
    for (int i : rng.sample_indices(static_cast<int>(pool.size()), b - 1))
      codes.push_back(pool[static_cast<std::size_t>(i)]);
    codes.push_back(rule_code(cfg.default_rule));
  } else {
    codes = rng.sample_indices(kNumRules, b);
  }
  std::sort(codes.begin(), codes.end());
  std::vector<RuleId> out;
  out.reserve(codes.size());
  for (int c : codes) out.push_back(rule_from_code(c));
  return out;
}

}  // namespace

std::vector<LabeledSample> label_state(const ScheduleState& state, const LabelConfig& cfg,
                                       CostLedger& ledger) {
  cfg.validate();
  if (state.complete()) throw std::invalid_argument("label_state: schedule already complete");
  const Instance& inst = state.instance();
  const int d = state.decisions_made();
  std::vector<RuleId> rules = candidate_rules(state, cfg);

  std::vector<RolloutResult> results;
  results.reserve(rules.size());
  for (RuleId h : rules) {
    Rng rng(child_seed(cfg.seed, {fnv1a(inst.id), fnv1a("rollout"),
                                  static_cast<std::uint64_t>(d),
                                  static_cast<std::uint64_t>(rule_code(h))}));
    results.push_back(rollout(state, h, cfg.depth, cfg.default_rule, rng));
    ++ledger.rollouts;
    ledger.steps += results.back().steps;
  }

  std::int64_t best = results[0].makespan;
  for (const RolloutResult& r : results) best = std::min(best, r.makespan);

  std::vector<LabeledSample> out;
  out.reserve(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    LabeledSample s;
    s.features = extract_features(state, rules[i]);
    s.instance_id = inst.id;
    s.decision_index = d;
    s.rule = rules[i];
    s.makespan = results[i].makespan;
    s.target = cfg.label_kind == LabelKind::Regret
                   ? static_cast<double>(results[i].makespan - best) / static_cast<double>(best)
                   : static_cast<double>(results[i].makespan) / static_cast<double>(inst.lb);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LabeledSample> label_states(const std::vector<ScheduleState>& states,
                                        const LabelConfig& cfg, CostLedger& ledger) {
  std::vector<LabeledSample> out;
  for (const ScheduleState& s : states) {
    auto part = label_state(s, cfg, ledger);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

Dataset build_dataset(const std::vector<Instance>& instances, const LabelConfig& cfg,
                      int threads) {
  cfg.validate();
  if (instances.empty()) throw std::invalid_argument("build_dataset: no instances");
  auto t0 = std::chrono::steady_clock::now();
  struct Part {
    std::vector<LabeledSample> samples;
    CostLedger ledger;
  };
  std::vector<Part> parts(instances.size());
  parallel_for(instances.size(), threads, [&](std::size_t i) {
    Part& p = parts[i];
    p.samples = label_states(sample_states(instances[i], cfg), cfg, p.ledger);
  });
  Dataset ds;
  ds.config = cfg;
  ds.config_echo = label_config_json(cfg);
  for (Part& p : parts) {
    ds.samples.insert(ds.samples.end(), std::make_move_iterator(p.samples.begin()),
                      std::make_move_iterator(p.samples.end()));
    ds.ledger.rollouts += p.ledger.rollouts;
    ds.ledger.steps += p.ledger.steps;
  }
  ds.ledger.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return ds;
}

Dataset relabel(const Dataset& ds, LabelKind kind, const std::vector<Instance>& instances) {
  std::map<std::string, std::int64_t> lb;
  for (const Instance& inst : instances) lb[inst.id] = inst.lb;
  std::map<std::pair<std::string, int>, std::int64_t> best;
  for (const LabeledSample& s : ds.samples) {
    auto key = std::make_pair(s.instance_id, s.decision_index);
    auto it = best.find(key);
    if (it == best.end() || s.makespan < it->second) best[key] = s.makespan;
  }
  Dataset out = ds;
  out.config.label_kind = kind;
  for (LabeledSample& s : out.samples) {
    if (kind == LabelKind::Regret) {
      std::int64_t b = best.at({s.instance_id, s.decision_index});
      s.target = static_cast<double>(s.makespan - b) / static_cast<double>(b);
    } else {
      auto it = lb.find(s.instance_id);
      if (it == lb.end())
        throw std::invalid_argument("relabel: no instance with id '" + s.instance_id + "'");
      s.target = static_cast<double>(s.makespan) / static_cast<double>(it->second);
    }
  }
  // Keep the echo in sync with the new label kind.
  auto echo = nlohmann::ordered_json::parse(out.config_echo.empty() ? "{}" : out.config_echo);
  echo["label_kind"] = label_kind_name(kind);
  out.config_echo = echo.dump();
  return out;
}

std::string label_config_json(const LabelConfig& cfg) {
  nlohmann::ordered_json j;
  j["states_per_instance"] = cfg.states_per_instance;
  j["trajectories_per_instance"] = cfg.trajectories_per_instance;
  if (cfg.depth) j["depth"] = *cfg.depth; else j["depth"] = "full";
  if (cfg.breadth) j["breadth"] = *cfg.breadth; else j["breadth"] = "full";
  j["label_kind"] = label_kind_name(cfg.label_kind);
  j["default_rule"] = rule_name(cfg.default_rule);
  j["subset_includes_default"] = cfg.subset_includes_default;
  j["seed"] = cfg.seed;
  return j.dump();
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string depth_breadth_str(const std::optional<int>& v) {
  return v ? std::to_string(*v) : "full";
}

std::optional<int> parse_depth_breadth(const std::string& s) {
  if (s == "full") return std::nullopt;
  return static_cast<int>(parse_int(s));
}

}  // namespace

std::string dataset_to_csv(const Dataset& ds, const std::string& config_echo) {
  std::string out = "# jsspsel-dataset v1\n";
  out += "# config: " + (config_echo.empty() ? ds.config_echo : config_echo) + "\n";
  for (int d = 0; d < kNumFeatures; ++d) {
    char col[8];
    std::snprintf(col, sizeof(col), "f%02d", d);
    out += col;
    out += ",";
  }
  out += "target,instance_id,decision_index,rule,label_kind,depth,breadth,makespan\n";
  const std::string depth = depth_breadth_str(ds.config.depth);
  const std::string breadth = depth_breadth_str(ds.config.breadth);
  const std::string kind = label_kind_name(ds.config.label_kind);
  for (const LabeledSample& s : ds.samples) {
    for (double f : s.features) {
      out += fmt_double(f);
      out += ",";
    }
    out += fmt_double(s.target);
    out += ",";
    out += csv_field(s.instance_id);
    out += ",";
    out += std::to_string(s.decision_index);
    out += ",";
    out += std::to_string(rule_code(s.rule));
    out += ",";
    out += kind;
    out += ",";
    out += depth;
    out += ",";
    out += breadth;
    out += ",";
    out += std::to_string(s.makespan);
    out += "\n";
  }
  return out;
}

Dataset dataset_from_csv(const std::string& text) {
  Dataset ds;
  std::vector<std::string> lines = split(text, '\n');
  std::size_t li = 0;
  if (li < lines.size() && lines[li].rfind("# jsspsel-dataset", 0) == 0) ++li;
  else throw std::runtime_error("dataset: missing format header");
  if (li < lines.size() && lines[li].rfind("# config: ", 0) == 0) {
    ds.config_echo = lines[li].substr(10);
    ++li;
    try {
      auto j = nlohmann::json::parse(ds.config_echo);
      if (j.contains("states_per_instance"))
        ds.config.states_per_instance = j["states_per_instance"].get<int>();
      if (j.contains("trajectories_per_instance"))
        ds.config.trajectories_per_instance = j["trajectories_per_instance"].get<int>();
      if (j.contains("seed")) ds.config.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("subset_includes_default"))
        ds.config.subset_includes_default = j["subset_includes_default"].get<bool>();
      if (j.contains("default_rule")) {
        auto r = parse_rule(j["default_rule"].get<std::string>());
        if (r) ds.config.default_rule = *r;
      }
    } catch (const nlohmann::json::exception&) {
      throw std::runtime_error("dataset: malformed config echo");
    }
  }
  if (li >= lines.size() || lines[li].rfind("f00,", 0) != 0)
    throw std::runtime_error("dataset: missing column header");
  ++li;
  const std::size_t expected = static_cast<std::size_t>(kNumFeatures) + 8;
  bool meta_seen = false;
  for (; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    std::vector<std::string> f = csv_split(lines[li]);
    if (f.size() != expected)
      throw std::runtime_error("dataset: row " + std::to_string(li + 1) + " has " +
                               std::to_string(f.size()) + " fields, expected " +
                               std::to_string(expected));
    LabeledSample s;
    for (int d = 0; d < kNumFeatures; ++d)
      s.features[static_cast<std::size_t>(d)] = parse_double(f[static_cast<std::size_t>(d)]);
    std::size_t c = static_cast<std::size_t>(kNumFeatures);
    s.target = parse_double(f[c++]);
    s.instance_id = f[c++];
    s.decision_index = static_cast<int>(parse_int(f[c++]));
    s.rule = rule_from_code(static_cast<int>(parse_int(f[c++])));
    auto kind = parse_label_kind(f[c++]);
    if (!kind) throw std::runtime_error("dataset: bad label kind in row");
    auto depth = parse_depth_breadth(f[c++]);
    auto breadth = parse_depth_breadth(f[c++]);
    s.makespan = parse_int(f[c++]);
    if (!meta_seen) {
      ds.config.label_kind = *kind;
      ds.config.depth = depth;
      ds.config.breadth = breadth;
      meta_seen = true;
    }
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

std::string ledger_to_json(const CostLedger& ledger, const std::string& config_echo) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["rollouts"] = ledger.rollouts;
  j["steps"] = ledger.steps;
  j["wall_seconds"] = ledger.wall_seconds;
  j["config"] = nlohmann::ordered_json::parse(config_echo.empty() ? "{}" : config_echo);
  return j.dump(2) + "\n";
}

}  // namespace jssp
