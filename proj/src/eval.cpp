#include "jssp/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "jssp/util.hpp"

namespace jssp {

std::int64_t oracle_fixed(const Instance& inst, const EvalOptions& opts) {
  std::int64_t best = -1;
  for (RuleId r : kDeterministicRules) {
    ScheduleState s(inst);
    Rng rng(0);
    std::int64_t m = complete_with_rule(s, r, rng).makespan;
    if (best < 0 || m < best) best = m;
  }
  if (opts.oracle_includes_random) {
    for (int rep = 0; rep < opts.random_hh_reps; ++rep) {
      ScheduleState s(inst);
      Rng rng(child_seed(opts.seed, {fnv1a("oracle"), fnv1a(inst.id),
                                     static_cast<std::uint64_t>(rep)}));
      best = std::min(best, complete_with_rule(s, RuleId::Random, rng).makespan);
    }
  }
  return best;
}

double rpd(double makespan, std::int64_t oracle) {
  if (oracle <= 0) throw std::invalid_argument("rpd: oracle makespan must be positive");
  return 100.0 * (makespan - static_cast<double>(oracle)) / static_cast<double>(oracle);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean_of: empty input");
  double sum = 0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median_of: empty input");
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

EvalReport evaluate(const std::vector<MethodSpec>& methods, const std::vector<Instance>& test,
                    const EvalOptions& opts, const std::vector<std::int64_t>* precomputed_oracle) {
  if (methods.empty()) throw std::invalid_argument("evaluate: no methods");
  if (test.empty()) throw std::invalid_argument("evaluate: no test instances");
  if (opts.random_hh_reps < 1)
    throw std::invalid_argument("evaluate: random_hh_reps must be >= 1");
  if (precomputed_oracle && precomputed_oracle->size() != test.size())
    throw std::invalid_argument("evaluate: oracle size mismatch");

  const std::size_t n = test.size();
  EvalReport report;
  report.instance_ids.resize(n);
  report.oracle.resize(n);
  report.methods.resize(methods.size());
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    report.methods[mi].name = methods[mi].name;
    report.methods[mi].makespans.resize(n);
    report.methods[mi].rpd.resize(n);
  }

  parallel_for(n, opts.threads, [&](std::size_t i) {
    const Instance& inst = test[i];
    report.instance_ids[i] = inst.id;
    report.oracle[i] =
        precomputed_oracle ? (*precomputed_oracle)[i] : oracle_fixed(inst, opts);
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const MethodSpec& method = methods[mi];
      double value = 0, rpd_value = 0;
      if (method.policy.kind == PolicyKind::RandomHH) {
        double msum = 0, rsum = 0;
        for (int rep = 0; rep < opts.random_hh_reps; ++rep) {
          std::uint64_t seed = child_seed(opts.seed, {fnv1a("eval"), fnv1a(method.name),
                                                      fnv1a(inst.id),
                                                      static_cast<std::uint64_t>(rep)});
          double m = static_cast<double>(run_policy(method.policy, inst, seed).makespan);
          msum += m;
          rsum += rpd(m, report.oracle[i]);
        }
        value = msum / opts.random_hh_reps;
        rpd_value = opts.random_per_seed_rpd ? rsum / opts.random_hh_reps
                                             : rpd(value, report.oracle[i]);
      } else {
        std::uint64_t seed =
            child_seed(opts.seed, {fnv1a("eval"), fnv1a(method.name), fnv1a(inst.id)});
        value = static_cast<double>(run_policy(method.policy, inst, seed).makespan);
        rpd_value = rpd(value, report.oracle[i]);
      }
      report.methods[mi].makespans[i] = value;
      report.methods[mi].rpd[i] = rpd_value;
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    double best = report.methods[0].makespans[i];
    for (const MethodResult& m : report.methods) best = std::min(best, m.makespans[i]);
    for (MethodResult& m : report.methods)
      if (m.makespans[i] == best) ++m.wins;
    if (static_cast<double>(report.oracle[i]) <= best) ++report.oracle_wins;
  }
  for (MethodResult& m : report.methods) {
    m.mean_rpd = mean_of(m.rpd);
    m.median_rpd = median_of(m.rpd);
  }
  return report;
}

std::vector<MethodSpec> standard_methods(const SelectorModel* regret_model,
                                         const SelectorModel* normalized_model, double lambda) {
  std::vector<MethodSpec> methods;
  if (regret_model) {
    methods.push_back({"Regret-Gated", gated_policy(*regret_model, lambda)});
    methods.push_back({"Regret-Argmin", argmin_policy(*regret_model)});
  }
  if (normalized_model)
    methods.push_back({"Norm-Argmin", argmin_policy(*normalized_model)});
  for (RuleId r : {RuleId::Fifo, RuleId::Mopnr, RuleId::Mwkr})
    methods.push_back({rule_name(r), fixed_policy(r)});
  methods.push_back({"Random-HH", random_hh_policy()});
  for (RuleId r : {RuleId::Spt, RuleId::Lpt, RuleId::Lwkr})
    methods.push_back({rule_name(r), fixed_policy(r)});
  return methods;
}

AblationResult ablation_grid(const std::vector<Instance>& train,
                             const std::vector<Instance>& test, const LabelConfig& base, int k,
                             double epsilon, const std::vector<double>& lambdas,
                             const EvalOptions& opts) {
  if (lambdas.empty()) throw std::invalid_argument("ablation_grid: no lambdas");
  LabelConfig cfg = base;
  cfg.label_kind = LabelKind::Regret;
  cfg.default_rule = best_fixed_rule(train);

  Dataset regret_ds = build_dataset(train, cfg, opts.threads);
  Dataset norm_ds = relabel(regret_ds, LabelKind::Normalized, train);

  AblationResult result;
  result.ledger = regret_ds.ledger;
  result.regret_model = fit_selector(regret_ds, k, epsilon);
  result.normalized_model = fit_selector(norm_ds, k, epsilon);

  std::vector<MethodSpec> methods;
  const std::pair<const char*, const SelectorModel*> variants[] = {
      {"regret", &result.regret_model}, {"normalized", &result.normalized_model}};
  for (const auto& [prefix, model] : variants) {
    methods.push_back({std::string(prefix) + "-argmin", argmin_policy(*model)});
    for (double l : lambdas)
      methods.push_back(
          {std::string(prefix) + "-gated-l" + lambda_label(l), gated_policy(*model, l)});
    for (double l : lambdas)
      methods.push_back({std::string(prefix) + "-lcb-l" + lambda_label(l), lcb_policy(*model, l)});
  }
  result.report = evaluate(methods, test, opts);
  return result;
}

std::vector<SweepCell> pareto_sweep(const std::vector<Instance>& train,
                                    const std::vector<Instance>& test, const LabelConfig& base,
                                    const std::vector<std::optional<int>>& depths,
                                    const std::vector<std::optional<int>>& breadths, int k,
                                    double epsilon, double lambda, const EvalOptions& opts) {
  if (depths.empty() || breadths.empty())
    throw std::invalid_argument("pareto_sweep: empty grid");
  LabelConfig cfg = base;
  cfg.label_kind = LabelKind::Regret;
  cfg.default_rule = best_fixed_rule(train);

  // The state sample is depth/breadth independent: draw it once.
  std::vector<std::vector<ScheduleState>> states(train.size());
  parallel_for(train.size(), opts.threads,
               [&](std::size_t i) { states[i] = sample_states(train[i], cfg); });

  std::vector<std::int64_t> oracle(test.size());
  parallel_for(test.size(), opts.threads,
               [&](std::size_t i) { oracle[i] = oracle_fixed(test[i], opts); });

  std::vector<SweepCell> cells;
  for (const auto& depth : depths) {
    for (const auto& breadth : breadths) {
      LabelConfig cell_cfg = cfg;
      cell_cfg.depth = depth;
      cell_cfg.breadth = breadth;

      auto t0 = std::chrono::steady_clock::now();
      struct Part {
        std::vector<LabeledSample> samples;
        CostLedger ledger;
      };
      std::vector<Part> parts(train.size());
      parallel_for(train.size(), opts.threads, [&](std::size_t i) {
        parts[i].samples = label_states(states[i], cell_cfg, parts[i].ledger);
      });
      SweepCell cell;
      cell.depth = depth;
      cell.breadth = breadth;
      std::vector<LabeledSample> samples;
      for (Part& p : parts) {
        samples.insert(samples.end(), std::make_move_iterator(p.samples.begin()),
                       std::make_move_iterator(p.samples.end()));
        cell.ledger.rollouts += p.ledger.rollouts;
        cell.ledger.steps += p.ledger.steps;
      }
      cell.ledger.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      SelectorModel model =
          fit_selector(samples, k, epsilon, cell_cfg.default_rule, cell_cfg.label_kind);
      std::vector<MethodSpec> methods{{"gated", gated_policy(model, lambda)}};
      EvalReport report = evaluate(methods, test, opts, &oracle);
      cell.mean_rpd = report.methods[0].mean_rpd;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

EvalReport generalization_probe(const SelectorModel& model, const std::vector<Instance>& test,
                                double lambda, const EvalOptions& opts) {
  std::vector<MethodSpec> methods;
  const char* prefix = model.label_kind == LabelKind::Regret ? "Regret" : "Norm";
  methods.push_back({std::string(prefix) + "-Gated", gated_policy(model, lambda)});
  for (RuleId r : kDeterministicRules) methods.push_back({rule_name(r), fixed_policy(r)});
  methods.push_back({"Random-HH", random_hh_policy()});
  return evaluate(methods, test, opts);
}

namespace {

std::string depth_breadth_str(const std::optional<int>& v) {
  return v ? std::to_string(*v) : "full";
}

nlohmann::ordered_json parse_echo(const std::string& config_echo) {
  return nlohmann::ordered_json::parse(config_echo.empty() ? "{}" : config_echo);
}

}  // namespace

std::string eval_report_csv(const EvalReport& report, const std::string& config_echo) {
  std::string out = "# jsspsel-report v1\n";
  out += "# config: " + parse_echo(config_echo).dump() + "\n";
  out += "method,mean_rpd,median_rpd,wins\n";
  out += "Oracle-Fixed,0,0," + std::to_string(report.oracle_wins) + "\n";
  for (const MethodResult& m : report.methods) {
    out += m.name;
    out += ",";
    out += fmt_double(m.mean_rpd);
    out += ",";
    out += fmt_double(m.median_rpd);
    out += ",";
    out += std::to_string(m.wins);
    out += "\n";
  }
  return out;
}

std::string eval_report_json(const EvalReport& report, const std::string& config_echo,
                             const std::string& kind) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["kind"] = kind;
  j["config"] = parse_echo(config_echo);
  j["instances"] = report.instance_ids;
  j["oracle_makespans"] = report.oracle;
  j["oracle_wins"] = report.oracle_wins;
  auto methods = nlohmann::ordered_json::array();
  for (const MethodResult& m : report.methods) {
    nlohmann::ordered_json jm;
    jm["name"] = m.name;
    jm["mean_rpd"] = m.mean_rpd;
    jm["median_rpd"] = m.median_rpd;
    jm["wins"] = m.wins;
    jm["makespans"] = m.makespans;
    jm["rpd"] = m.rpd;
    methods.push_back(std::move(jm));
  }
  j["methods"] = std::move(methods);
  return j.dump(2) + "\n";
}

EvalReport eval_report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report JSON parse error: ") + e.what());
  }
  EvalReport report;
  try {
    report.instance_ids = j.at("instances").get<std::vector<std::string>>();
    report.oracle = j.at("oracle_makespans").get<std::vector<std::int64_t>>();
    report.oracle_wins = j.at("oracle_wins").get<int>();
    for (const auto& jm : j.at("methods")) {
      MethodResult m;
      m.name = jm.at("name").get<std::string>();
      m.mean_rpd = jm.at("mean_rpd").get<double>();
      m.median_rpd = jm.at("median_rpd").get<double>();
      m.wins = jm.at("wins").get<int>();
      m.makespans = jm.at("makespans").get<std::vector<double>>();
      m.rpd = jm.at("rpd").get<std::vector<double>>();
      report.methods.push_back(std::move(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report JSON missing or bad field: ") + e.what());
  }
  return report;
}

std::string sweep_csv(const std::vector<SweepCell>& cells, const std::string& config_echo) {
  std::string out = "# jsspsel-report v1\n";
  out += "# config: " + parse_echo(config_echo).dump() + "\n";
  out += "depth,breadth,wall_seconds,rollouts,steps,mean_rpd\n";
  for (const SweepCell& c : cells) {
    out += depth_breadth_str(c.depth);
    out += ",";
    out += depth_breadth_str(c.breadth);
    out += ",";
    out += fmt_double(c.ledger.wall_seconds);
    out += ",";
    out += std::to_string(c.ledger.rollouts);
    out += ",";
    out += std::to_string(c.ledger.steps);
    out += ",";
    out += fmt_double(c.mean_rpd);
    out += "\n";
  }
  return out;
}

std::string sweep_json(const std::vector<SweepCell>& cells, const std::string& config_echo) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["kind"] = "sweep";
  j["config"] = parse_echo(config_echo);
  auto arr = nlohmann::ordered_json::array();
  for (const SweepCell& c : cells) {
    nlohmann::ordered_json jc;
    if (c.depth) jc["depth"] = *c.depth; else jc["depth"] = "full";
    if (c.breadth) jc["breadth"] = *c.breadth; else jc["breadth"] = "full";
    jc["wall_seconds"] = c.ledger.wall_seconds;
    jc["rollouts"] = c.ledger.rollouts;
    jc["steps"] = c.ledger.steps;
    jc["mean_rpd"] = c.mean_rpd;
    arr.push_back(std::move(jc));
  }
  j["cells"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::vector<SweepCell> sweep_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("sweep JSON parse error: ") + e.what());
  }
  std::vector<SweepCell> cells;
  try {
    for (const auto& jc : j.at("cells")) {
      SweepCell c;
      if (jc.at("depth").is_number()) c.depth = jc.at("depth").get<int>();
      if (jc.at("breadth").is_number()) c.breadth = jc.at("breadth").get<int>();
      c.ledger.wall_seconds = jc.at("wall_seconds").get<double>();
      c.ledger.rollouts = jc.at("rollouts").get<std::int64_t>();
      c.ledger.steps = jc.at("steps").get<std::int64_t>();
      c.mean_rpd = jc.at("mean_rpd").get<double>();
      cells.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("sweep JSON missing or bad field: ") + e.what());
  }
  return cells;
}

}  // namespace jssp
