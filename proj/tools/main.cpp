// jsspsel: generate instances, label states, fit the rule selector, and run
// the evaluation suites. Every artifact embeds the resolved configuration of
// the command that produced it (execution details like --threads and --out
// are deliberately not part of that echo, so reruns compare byte-for-byte).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jssp/eval.hpp"
#include "jssp/instance.hpp"
#include "jssp/knn.hpp"
#include "jssp/labeler.hpp"
#include "jssp/policy.hpp"
#include "jssp/svg.hpp"
#include "jssp/util.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::string out = "out";
  std::uint64_t seed = 42;
  int threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output directory root")
      ->envname("JSSPSEL_OUT")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Base random seed")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (results are thread-count invariant)")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
}

struct ScaleDims {
  int jobs = 0;
  int machines = 0;
};

ScaleDims parse_scale(const std::string& s) {
  auto parts = jssp::split(jssp::lower(s), 'x');
  if (parts.size() == 2) {
    try {
      ScaleDims d{static_cast<int>(jssp::parse_int(parts[0])),
                  static_cast<int>(jssp::parse_int(parts[1]))};
      if (d.jobs >= 1 && d.machines >= 1) return d;
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("bad scale '" + s + "': expected JxM, like 10x10");
}

std::string canon_scale(const std::string& s) {
  ScaleDims d = parse_scale(s);
  return std::to_string(d.jobs) + "x" + std::to_string(d.machines);
}

fs::path split_dir(const Common& c, const std::string& scale, const std::string& split) {
  return fs::path(c.out) / "instances" / scale / split;
}

std::vector<jssp::Instance> load_split(const Common& c, const std::string& scale,
                                       const std::string& split) {
  fs::path dir = split_dir(c, scale, split);
  if (!fs::is_directory(dir))
    throw std::runtime_error("no instances under " + dir.string() + "; run 'jsspsel gen' first");
  auto v = jssp::load_instance_dir(dir);
  if (v.empty()) throw std::runtime_error("no instance files in " + dir.string());
  return v;
}

std::optional<int> parse_full_or_int(const std::string& s, const char* what) {
  if (jssp::lower(s) == "full") return std::nullopt;
  long long v = 0;
  try {
    v = jssp::parse_int(s);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + " must be an integer or 'full', got '" + s +
                                "'");
  }
  if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1 or 'full'");
  return static_cast<int>(v);
}

std::string db_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "full"; }

jssp::RuleId resolve_default_rule(const std::string& name,
                                  const std::vector<jssp::Instance>& train) {
  if (jssp::lower(name) == "auto") return jssp::best_fixed_rule(train);
  auto r = jssp::parse_rule(name);
  if (!r) throw std::invalid_argument("unknown rule '" + name + "'");
  return *r;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '-';
  return out;
}

void print_report(const jssp::EvalReport& r) {
  std::printf("%-26s %10s %12s %6s\n", "method", "mean_rpd", "median_rpd", "wins");
  std::printf("%-26s %10.2f %12.2f %6d\n", "Oracle-Fixed", 0.0, 0.0, r.oracle_wins);
  for (const auto& m : r.methods)
    std::printf("%-26s %10.2f %12.2f %6d\n", m.name.c_str(), m.mean_rpd, m.median_rpd, m.wins);
}

void write_report_files(const Common& c, const std::string& name, const jssp::EvalReport& report,
                        const std::string& echo, const std::string& kind) {
  fs::path dir = fs::path(c.out) / "reports";
  jssp::atomic_write(dir / (name + ".csv"), jssp::eval_report_csv(report, echo));
  jssp::atomic_write(dir / (name + ".json"), jssp::eval_report_json(report, echo, kind));
  std::printf("wrote %s.{csv,json} under %s\n", name.c_str(), dir.string().c_str());
}

struct GenOpts {
  Common c;
  std::vector<std::string> scales{"6x6", "10x10", "15x10"};
  int train = 150;
  int test = 40;
};

void run_gen(const GenOpts& o) {
  for (const std::string& raw : o.scales) {
    std::string scale = canon_scale(raw);
    ScaleDims dims = parse_scale(scale);
    ordered_json echo;
    echo["command"] = "gen";
    echo["scale"] = scale;
    echo["train"] = o.train;
    echo["test"] = o.test;
    echo["seed"] = o.c.seed;
    const std::pair<const char*, int> splits[] = {{"train", o.train}, {"test", o.test}};
    for (const auto& [split, count] : splits) {
      fs::path dir = split_dir(o.c, scale, split);
      for (int i = 0; i < count; ++i) {
        char id[64];
        std::snprintf(id, sizeof(id), "%s-%s-%03d", scale.c_str(), split, i);
        std::uint64_t seed = jssp::child_seed(
            o.c.seed, {jssp::fnv1a("instance"), jssp::fnv1a(scale), jssp::fnv1a(split),
                       static_cast<std::uint64_t>(i)});
        jssp::Instance inst =
            jssp::generate_instance(dims.jobs, dims.machines, seed, id);
        jssp::atomic_write(dir / (std::string(id) + ".json"),
                           jssp::instance_to_json(inst, echo.dump()));
      }
      std::printf("wrote %d %s instances to %s\n", count, split, dir.string().c_str());
    }
  }
}

struct LabelOpts {
  Common c;
  std::string scale = "10x10";
  std::string split = "train";
  int states = 25;
  int traj = 3;
  std::string depth = "full";
  std::string breadth = "full";
  std::string kind = "regret";
  std::string default_rule = "auto";
  std::string name;
};

ordered_json label_echo(const char* command, const std::string& scale, const std::string& split,
                        const jssp::LabelConfig& cfg) {
  ordered_json echo;
  echo["command"] = command;
  echo["scale"] = scale;
  echo["split"] = split;
  ordered_json lc = ordered_json::parse(jssp::label_config_json(cfg));
  for (auto& [key, value] : lc.items()) echo[key] = value;
  return echo;
}

void run_label(const LabelOpts& o) {
  std::string scale = canon_scale(o.scale);
  auto instances = load_split(o.c, scale, o.split);
  jssp::LabelConfig cfg;
  cfg.states_per_instance = o.states;
  cfg.trajectories_per_instance = o.traj;
  cfg.depth = parse_full_or_int(o.depth, "--depth");
  cfg.breadth = parse_full_or_int(o.breadth, "--breadth");
  auto kind = jssp::parse_label_kind(o.kind);
  if (!kind) throw std::invalid_argument("unknown label kind '" + o.kind + "'");
  cfg.label_kind = *kind;
  cfg.default_rule = resolve_default_rule(o.default_rule, instances);
  cfg.seed = o.c.seed;
  cfg.validate();

  jssp::Dataset ds = jssp::build_dataset(instances, cfg, o.c.threads);
  std::string echo = label_echo("label", scale, o.split, cfg).dump();
  std::string name = o.name.empty() ? std::string(jssp::label_kind_name(cfg.label_kind)) + "-d" +
                                          db_str(cfg.depth) + "-b" + db_str(cfg.breadth)
                                    : o.name;
  fs::path dir = fs::path(o.c.out) / "datasets" / scale;
  jssp::atomic_write(dir / (name + ".csv"), jssp::dataset_to_csv(ds, echo));
  jssp::atomic_write(dir / (name + ".ledger.json"), jssp::ledger_to_json(ds.ledger, echo));
  std::printf("labeled %zu samples (%lld rollouts, %lld steps, %.2fs) -> %s\n",
              ds.samples.size(), static_cast<long long>(ds.ledger.rollouts),
              static_cast<long long>(ds.ledger.steps), ds.ledger.wall_seconds,
              (dir / (name + ".csv")).string().c_str());
}

struct FitOpts {
  Common c;
  std::string dataset;
  int k = 7;
  double epsilon = 1e-8;
  std::string default_rule = "from-dataset";
  std::string kind = "from-dataset";
  std::string model_out;
};

fs::path default_model_path(const Common& c, const fs::path& dataset) {
  fs::path parent = dataset.parent_path();
  if (!parent.empty() && parent.parent_path().filename() == "datasets")
    return fs::path(c.out) / "models" / parent.filename() / (dataset.stem().string() + ".knn");
  return parent / (dataset.stem().string() + ".knn");
}

void run_fit(const FitOpts& o) {
  jssp::Dataset ds = jssp::dataset_from_csv(jssp::read_file(o.dataset));
  jssp::RuleId rule = ds.config.default_rule;
  if (jssp::lower(o.default_rule) != "from-dataset") {
    auto r = jssp::parse_rule(o.default_rule);
    if (!r) throw std::invalid_argument("unknown rule '" + o.default_rule + "'");
    rule = *r;
  }
  jssp::LabelKind kind = ds.config.label_kind;
  if (jssp::lower(o.kind) != "from-dataset") {
    auto k = jssp::parse_label_kind(o.kind);
    if (!k) throw std::invalid_argument("unknown label kind '" + o.kind + "'");
    kind = *k;
  }
  jssp::SelectorModel model = jssp::fit_selector(ds.samples, o.k, o.epsilon, rule, kind);
  ordered_json echo;
  echo["command"] = "fit";
  echo["k"] = o.k;
  echo["epsilon"] = o.epsilon;
  echo["label_kind"] = jssp::label_kind_name(kind);
  echo["default_rule"] = jssp::rule_name(rule);
  echo["dataset_config"] =
      ordered_json::parse(ds.config_echo.empty() ? "{}" : ds.config_echo);
  model.config_echo = echo.dump();
  fs::path out = o.model_out.empty() ? default_model_path(o.c, o.dataset) : fs::path(o.model_out);
  jssp::save_model(model, out);
  std::printf("fitted k=%d selector on %zu samples -> %s (fingerprint %s)\n", o.k,
              model.size(), out.string().c_str(), jssp::model_fingerprint(model).c_str());
}

struct EvalCmdOpts {
  Common c;
  std::string scale = "10x10";
  std::string split = "test";
  std::string model;
  std::string model_norm;
  double lambda = 1.0;
  std::vector<std::string> policies;
  int random_reps = 5;
  bool oracle_random = false;
  bool per_seed = false;
  std::string report_name;
};

std::optional<jssp::SelectorModel> load_model_opt(const std::string& given,
                                                  const fs::path& fallback, const char* what) {
  fs::path path = given.empty() ? fallback : fs::path(given);
  if (!fs::exists(path)) {
    if (!given.empty())
      throw std::runtime_error(std::string(what) + " not found: " + path.string());
    return std::nullopt;
  }
  return jssp::load_model(path);
}

void run_eval(const EvalCmdOpts& o) {
  std::string scale = canon_scale(o.scale);
  auto instances = load_split(o.c, scale, o.split);
  fs::path models = fs::path(o.c.out) / "models" / scale;
  auto regret = load_model_opt(o.model, models / "regret-dfull-bfull.knn", "--model");
  auto norm = load_model_opt(o.model_norm, models / "normalized-dfull-bfull.knn",
                             "--model-normalized");

  std::vector<jssp::MethodSpec> methods;
  if (o.policies.empty()) {
    methods = jssp::standard_methods(regret ? &*regret : nullptr, norm ? &*norm : nullptr,
                                     o.lambda);
  } else {
    for (const std::string& spec : o.policies)
      methods.push_back({spec, jssp::parse_policy_spec(spec, regret ? &*regret : nullptr)});
  }

  jssp::EvalOptions eo;
  eo.seed = o.c.seed;
  eo.random_hh_reps = o.random_reps;
  eo.oracle_includes_random = o.oracle_random;
  eo.random_per_seed_rpd = o.per_seed;
  eo.threads = o.c.threads;
  jssp::EvalReport report = jssp::evaluate(methods, instances, eo);

  ordered_json echo;
  echo["command"] = "eval";
  echo["scale"] = scale;
  echo["split"] = o.split;
  echo["lambda"] = o.lambda;
  echo["random_hh_reps"] = o.random_reps;
  echo["oracle_includes_random"] = o.oracle_random;
  echo["random_per_seed_rpd"] = o.per_seed;
  echo["seed"] = o.c.seed;
  if (!o.policies.empty()) echo["policies"] = o.policies;
  echo["regret_model"] = regret ? ordered_json(jssp::model_fingerprint(*regret)) : ordered_json();
  echo["normalized_model"] = norm ? ordered_json(jssp::model_fingerprint(*norm)) : ordered_json();

  print_report(report);
  std::string name = o.report_name.empty() ? "eval-" + scale : o.report_name;
  write_report_files(o.c, name, report, echo.dump(), "eval");
}

struct AblateOpts {
  Common c;
  std::string scale = "10x10";
  int states = 25;
  int traj = 3;
  std::string depth = "full";
  std::string breadth = "full";
  int k = 7;
  double epsilon = 1e-8;
  std::vector<double> lambdas{0.5, 1.0, 2.0};
  int random_reps = 5;
  bool oracle_random = false;
  bool per_seed = false;
  std::string report_name;
};

void run_ablate(const AblateOpts& o) {
  std::string scale = canon_scale(o.scale);
  auto train = load_split(o.c, scale, "train");
  auto test = load_split(o.c, scale, "test");
  jssp::LabelConfig cfg;
  cfg.states_per_instance = o.states;
  cfg.trajectories_per_instance = o.traj;
  cfg.depth = parse_full_or_int(o.depth, "--depth");
  cfg.breadth = parse_full_or_int(o.breadth, "--breadth");
  cfg.seed = o.c.seed;

  jssp::EvalOptions eo;
  eo.seed = o.c.seed;
  eo.random_hh_reps = o.random_reps;
  eo.oracle_includes_random = o.oracle_random;
  eo.random_per_seed_rpd = o.per_seed;
  eo.threads = o.c.threads;
  jssp::AblationResult result =
      jssp::ablation_grid(train, test, cfg, o.k, o.epsilon, o.lambdas, eo);

  ordered_json echo = label_echo("ablate", scale, "train", cfg);
  echo.erase("label_kind");  // the grid evaluates both kinds
  echo["k"] = o.k;
  echo["epsilon"] = o.epsilon;
  echo["lambdas"] = o.lambdas;
  echo["default_rule"] = jssp::rule_name(result.regret_model.default_rule);

  print_report(result.report);
  std::string name = o.report_name.empty() ? "ablate-" + scale : o.report_name;
  write_report_files(o.c, name, result.report, echo.dump(), "ablate");
}

struct SweepOpts {
  Common c;
  std::string scale = "10x10";
  int train_count = 48;
  std::vector<std::string> depths{"1", "3", "5", "10", "full"};
  std::vector<std::string> breadths{"3", "5", "full"};
  int states = 25;
  int traj = 3;
  int k = 7;
  double epsilon = 1e-8;
  double lambda = 1.0;
  int random_reps = 5;
  bool oracle_random = false;
  std::string report_name;
};

void run_sweep(const SweepOpts& o) {
  std::string scale = canon_scale(o.scale);
  auto train = load_split(o.c, scale, "train");
  if (o.train_count < 1) throw std::invalid_argument("--train-count must be >= 1");
  if (static_cast<std::size_t>(o.train_count) > train.size())
    throw std::runtime_error("--train-count exceeds the " + std::to_string(train.size()) +
                             " training instances available");
  train.resize(static_cast<std::size_t>(o.train_count));
  auto test = load_split(o.c, scale, "test");

  std::vector<std::optional<int>> depths, breadths;
  for (const std::string& d : o.depths) depths.push_back(parse_full_or_int(d, "--depths"));
  for (const std::string& b : o.breadths) breadths.push_back(parse_full_or_int(b, "--breadths"));

  jssp::LabelConfig cfg;
  cfg.states_per_instance = o.states;
  cfg.trajectories_per_instance = o.traj;
  cfg.seed = o.c.seed;

  jssp::EvalOptions eo;
  eo.seed = o.c.seed;
  eo.random_hh_reps = o.random_reps;
  eo.oracle_includes_random = o.oracle_random;
  eo.threads = o.c.threads;
  auto cells = jssp::pareto_sweep(train, test, cfg, depths, breadths, o.k, o.epsilon, o.lambda, eo);

  ordered_json echo;
  echo["command"] = "sweep";
  echo["scale"] = scale;
  echo["train_count"] = o.train_count;
  echo["depths"] = o.depths;
  echo["breadths"] = o.breadths;
  echo["states_per_instance"] = o.states;
  echo["trajectories_per_instance"] = o.traj;
  echo["k"] = o.k;
  echo["epsilon"] = o.epsilon;
  echo["lambda"] = o.lambda;
  echo["seed"] = o.c.seed;

  std::printf("%6s %8s %10s %10s %12s %9s\n", "depth", "breadth", "wall_s", "rollouts", "steps",
              "mean_rpd");
  for (const auto& cell : cells)
    std::printf("%6s %8s %10.2f %10lld %12lld %9.2f\n", db_str(cell.depth).c_str(),
                db_str(cell.breadth).c_str(), cell.ledger.wall_seconds,
                static_cast<long long>(cell.ledger.rollouts),
                static_cast<long long>(cell.ledger.steps), cell.mean_rpd);

  std::string name = o.report_name.empty() ? "sweep-" + scale : o.report_name;
  fs::path dir = fs::path(o.c.out) / "reports";
  jssp::atomic_write(dir / (name + ".csv"), jssp::sweep_csv(cells, echo.dump()));
  jssp::atomic_write(dir / (name + ".json"), jssp::sweep_json(cells, echo.dump()));
  std::printf("wrote %s.{csv,json} under %s\n", name.c_str(), dir.string().c_str());
}

struct ProbeOpts {
  Common c;
  std::string model;
  std::string train_scale = "10x10";
  std::string test_scale = "15x10";
  std::string split = "test";
  double lambda = 1.0;
  int random_reps = 5;
  bool oracle_random = false;
  bool per_seed = false;
  std::string report_name;
};

void run_probe(const ProbeOpts& o) {
  std::string train_scale = canon_scale(o.train_scale);
  std::string test_scale = canon_scale(o.test_scale);
  fs::path model_path = o.model.empty()
                            ? fs::path(o.c.out) / "models" / train_scale / "regret-dfull-bfull.knn"
                            : fs::path(o.model);
  if (!fs::exists(model_path))
    throw std::runtime_error("model not found: " + model_path.string() +
                             "; fit one on the training scale first");
  jssp::SelectorModel model = jssp::load_model(model_path);
  std::string fingerprint = jssp::model_fingerprint(model);
  auto test = load_split(o.c, test_scale, o.split);

  jssp::EvalOptions eo;
  eo.seed = o.c.seed;
  eo.random_hh_reps = o.random_reps;
  eo.oracle_includes_random = o.oracle_random;
  eo.random_per_seed_rpd = o.per_seed;
  eo.threads = o.c.threads;
  jssp::EvalReport report = jssp::generalization_probe(model, test, o.lambda, eo);

  // The probe applies the model unchanged; prove it.
  if (jssp::model_fingerprint(jssp::load_model(model_path)) != fingerprint)
    throw std::logic_error("model file changed during the probe");

  ordered_json echo;
  echo["command"] = "probe";
  echo["train_scale"] = train_scale;
  echo["test_scale"] = test_scale;
  echo["split"] = o.split;
  echo["lambda"] = o.lambda;
  echo["model_fingerprint"] = fingerprint;
  echo["random_hh_reps"] = o.random_reps;
  echo["seed"] = o.c.seed;

  print_report(report);
  std::string name =
      o.report_name.empty() ? "probe-" + train_scale + "to" + test_scale : o.report_name;
  write_report_files(o.c, name, report, echo.dump(), "probe");
}

struct GanttOpts {
  Common c;
  std::string instance;
  std::string policy = "fixed:FIFO";
  std::string model;
  std::string svg_out;
};

void run_gantt(const GanttOpts& o) {
  jssp::Instance inst = jssp::load_instance(o.instance);
  std::optional<jssp::SelectorModel> model;
  if (!o.model.empty()) model = jssp::load_model(o.model);
  jssp::Policy policy = jssp::parse_policy_spec(o.policy, model ? &*model : nullptr);
  jssp::PolicyRun run = jssp::run_policy(policy, inst, o.c.seed);
  std::string why;
  if (!jssp::verify_feasible(run.state, &why))
    throw std::logic_error("generated schedule failed verification: " + why);

  ordered_json echo;
  echo["command"] = "gantt";
  echo["instance"] = inst.id;
  echo["policy"] = o.policy;
  echo["seed"] = o.c.seed;
  std::string title =
      inst.id + " | " + o.policy + " | makespan " + std::to_string(run.makespan);
  fs::path out = o.svg_out.empty()
                     ? fs::path(o.c.out) / "figures" /
                           ("gantt-" + sanitize(inst.id) + "-" + sanitize(o.policy) + ".svg")
                     : fs::path(o.svg_out);
  jssp::atomic_write(out, jssp::gantt_svg(run.state, title, echo.dump()));
  std::printf("makespan %lld -> %s\n", static_cast<long long>(run.makespan),
              out.string().c_str());
}

struct PlotOpts {
  Common c;
  std::vector<std::string> reports;
};

void run_plot(const PlotOpts& o) {
  for (const std::string& path : o.reports) {
    std::string text = jssp::read_file(path);
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception&) {
      throw std::runtime_error("not a JSON report (plot reads the .json reports): " + path);
    }
    std::string kind = j.value("kind", "");
    std::string echo = j.contains("config") ? j["config"].dump() : "{}";
    std::string stem = fs::path(path).stem().string();
    fs::path dir = fs::path(o.c.out) / "figures";
    if (kind == "sweep") {
      auto cells = jssp::sweep_from_json(text);
      std::vector<jssp::ScatterPoint> points;
      for (const auto& cell : cells)
        points.push_back({static_cast<double>(cell.ledger.steps), cell.mean_rpd,
                          "d" + db_str(cell.depth) + "/b" + db_str(cell.breadth)});
      fs::path out = dir / (stem + "-pareto.svg");
      jssp::atomic_write(out, jssp::scatter_svg(points, "Labeling cost vs schedule quality",
                                                "rollout steps", "mean RPD (%)", echo, true));
      std::printf("wrote %s\n", out.string().c_str());
    } else if (kind == "eval" || kind == "ablate" || kind == "probe") {
      jssp::EvalReport report = jssp::eval_report_from_json(text);
      std::vector<std::pair<std::string, double>> bars;
      for (const auto& m : report.methods) bars.push_back({m.name, m.mean_rpd});
      fs::path out = dir / (stem + "-rpd.svg");
      jssp::atomic_write(out, jssp::bar_chart_svg(bars, "Mean RPD by method (" + stem + ")",
                                                  "mean RPD (%)", echo));
      std::printf("wrote %s\n", out.string().c_str());
    } else {
      throw std::runtime_error("unrecognized report kind in " + path);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rollout-trained dispatching-rule selection for job-shop scheduling"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file (one section per subcommand)");

  auto gen = std::make_shared<GenOpts>();
  auto* cmd_gen = app.add_subcommand("gen", "Generate instance splits");
  add_common(cmd_gen, gen->c);
  cmd_gen->add_option("--scales", gen->scales, "Scales to generate (JxM)")
      ->delimiter(',')
      ->capture_default_str();
  cmd_gen->add_option("--train", gen->train, "Training instances per scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_gen->add_option("--test", gen->test, "Test instances per scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_gen->callback([gen] { run_gen(*gen); });

  auto label = std::make_shared<LabelOpts>();
  auto* cmd_label = app.add_subcommand("label", "Roll out candidate rules and write a dataset");
  add_common(cmd_label, label->c);
  cmd_label->add_option("--scale", label->scale, "Instance scale")->capture_default_str();
  cmd_label->add_option("--split", label->split, "Instance split")->capture_default_str();
  cmd_label->add_option("--states", label->states, "Sampled states per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_label->add_option("--trajectories", label->traj, "Sampling trajectories per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_label->add_option("--depth", label->depth, "Guided rollout depth, or 'full'")
      ->capture_default_str();
  cmd_label->add_option("--breadth", label->breadth, "Candidate rules per state, or 'full'")
      ->capture_default_str();
  cmd_label->add_option("--kind", label->kind, "Label kind: regret or normalized")
      ->capture_default_str();
  cmd_label->add_option("--default-rule", label->default_rule,
                        "Rollout completion rule, or 'auto' (best fixed rule on the split)")
      ->capture_default_str();
  cmd_label->add_option("--name", label->name, "Dataset name (default <kind>-d<depth>-b<breadth>)");
  cmd_label->callback([label] { run_label(*label); });

  auto fit = std::make_shared<FitOpts>();
  auto* cmd_fit = app.add_subcommand("fit", "Fit the KNN rule selector on a dataset");
  add_common(cmd_fit, fit->c);
  cmd_fit->add_option("--dataset", fit->dataset, "Dataset CSV path")->required();
  cmd_fit->add_option("--k", fit->k, "Neighbor count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_fit->add_option("--epsilon", fit->epsilon, "Weight smoothing epsilon")
      ->capture_default_str();
  cmd_fit->add_option("--default-rule", fit->default_rule,
                      "Override the dataset's default rule")
      ->capture_default_str();
  cmd_fit->add_option("--kind", fit->kind, "Override the dataset's label kind")
      ->capture_default_str();
  cmd_fit->add_option("--model-out", fit->model_out, "Model output path");
  cmd_fit->callback([fit] { run_fit(*fit); });

  auto eval = std::make_shared<EvalCmdOpts>();
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate policies against the baselines");
  add_common(cmd_eval, eval->c);
  cmd_eval->add_option("--scale", eval->scale, "Instance scale")->capture_default_str();
  cmd_eval->add_option("--split", eval->split, "Instance split")->capture_default_str();
  cmd_eval->add_option("--model", eval->model, "Regret selector model path");
  cmd_eval->add_option("--model-normalized", eval->model_norm,
                       "Normalized-label selector model path");
  cmd_eval->add_option("--lambda", eval->lambda, "Gate threshold lambda")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_eval->add_option("--policy", eval->policies,
                       "Explicit policy specs (fixed:RULE, random-hh, argmin, lcb:L, gated:L); "
                       "replaces the standard method set")
      ->delimiter(',');
  cmd_eval->add_option("--random-reps", eval->random_reps, "Random-HH runs per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_eval->add_flag("--oracle-include-random", eval->oracle_random,
                     "Let seeded RANDOM runs compete for the oracle");
  cmd_eval->add_flag("--random-per-seed-rpd", eval->per_seed,
                     "Average per-run RPDs for Random-HH instead of the RPD of the mean");
  cmd_eval->add_option("--report-name", eval->report_name, "Report file stem");
  cmd_eval->callback([eval] { run_eval(*eval); });

  auto ablate = std::make_shared<AblateOpts>();
  auto* cmd_ablate =
      app.add_subcommand("ablate", "Label-kind x policy-mode x lambda ablation grid");
  add_common(cmd_ablate, ablate->c);
  cmd_ablate->add_option("--scale", ablate->scale, "Instance scale")->capture_default_str();
  cmd_ablate->add_option("--states", ablate->states, "Sampled states per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_ablate->add_option("--trajectories", ablate->traj, "Sampling trajectories per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_ablate->add_option("--depth", ablate->depth, "Guided rollout depth, or 'full'")
      ->capture_default_str();
  cmd_ablate->add_option("--breadth", ablate->breadth, "Candidate rules per state, or 'full'")
      ->capture_default_str();
  cmd_ablate->add_option("--k", ablate->k, "Neighbor count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_ablate->add_option("--epsilon", ablate->epsilon, "Weight smoothing epsilon")
      ->capture_default_str();
  cmd_ablate->add_option("--lambdas", ablate->lambdas, "Lambda values for gated and LCB")
      ->delimiter(',')
      ->capture_default_str();
  cmd_ablate->add_option("--random-reps", ablate->random_reps, "Random-HH runs per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_ablate->add_flag("--oracle-include-random", ablate->oracle_random,
                       "Let seeded RANDOM runs compete for the oracle");
  cmd_ablate->add_flag("--random-per-seed-rpd", ablate->per_seed,
                       "Average per-run RPDs for Random-HH instead of the RPD of the mean");
  cmd_ablate->add_option("--report-name", ablate->report_name, "Report file stem");
  cmd_ablate->callback([ablate] { run_ablate(*ablate); });

  auto sweep = std::make_shared<SweepOpts>();
  auto* cmd_sweep = app.add_subcommand("sweep", "Depth x breadth labeling-cost Pareto sweep");
  add_common(cmd_sweep, sweep->c);
  cmd_sweep->add_option("--scale", sweep->scale, "Instance scale")->capture_default_str();
  cmd_sweep->add_option("--train-count", sweep->train_count,
                        "Training instances used for labeling")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_sweep->add_option("--depths", sweep->depths, "Depth grid (integers or 'full')")
      ->delimiter(',')
      ->capture_default_str();
  cmd_sweep->add_option("--breadths", sweep->breadths, "Breadth grid (integers or 'full')")
      ->delimiter(',')
      ->capture_default_str();
  cmd_sweep->add_option("--states", sweep->states, "Sampled states per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_sweep->add_option("--trajectories", sweep->traj, "Sampling trajectories per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_sweep->add_option("--k", sweep->k, "Neighbor count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_sweep->add_option("--epsilon", sweep->epsilon, "Weight smoothing epsilon")
      ->capture_default_str();
  cmd_sweep->add_option("--lambda", sweep->lambda, "Gate threshold lambda")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_sweep->add_option("--random-reps", sweep->random_reps, "Random-HH runs per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_sweep->add_flag("--oracle-include-random", sweep->oracle_random,
                      "Let seeded RANDOM runs compete for the oracle");
  cmd_sweep->add_option("--report-name", sweep->report_name, "Report file stem");
  cmd_sweep->callback([sweep] { run_sweep(*sweep); });

  auto probe = std::make_shared<ProbeOpts>();
  auto* cmd_probe =
      app.add_subcommand("probe", "Apply a fitted selector to another scale without refitting");
  add_common(cmd_probe, probe->c);
  cmd_probe->add_option("--model", probe->model, "Selector model path");
  cmd_probe->add_option("--train-scale", probe->train_scale, "Scale the model was fitted on")
      ->capture_default_str();
  cmd_probe->add_option("--test-scale", probe->test_scale, "Scale to evaluate on")
      ->capture_default_str();
  cmd_probe->add_option("--split", probe->split, "Instance split")->capture_default_str();
  cmd_probe->add_option("--lambda", probe->lambda, "Gate threshold lambda")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_probe->add_option("--random-reps", probe->random_reps, "Random-HH runs per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_probe->add_flag("--oracle-include-random", probe->oracle_random,
                      "Let seeded RANDOM runs compete for the oracle");
  cmd_probe->add_flag("--random-per-seed-rpd", probe->per_seed,
                      "Average per-run RPDs for Random-HH instead of the RPD of the mean");
  cmd_probe->add_option("--report-name", probe->report_name, "Report file stem");
  cmd_probe->callback([probe] { run_probe(*probe); });

  auto gantt = std::make_shared<GanttOpts>();
  auto* cmd_gantt = app.add_subcommand("gantt", "Render one schedule as an SVG Gantt chart");
  add_common(cmd_gantt, gantt->c);
  cmd_gantt->add_option("--instance", gantt->instance, "Instance file (.json or standard text)")
      ->required();
  cmd_gantt->add_option("--policy", gantt->policy, "Policy spec")->capture_default_str();
  cmd_gantt->add_option("--model", gantt->model, "Selector model (for learned policies)");
  cmd_gantt->add_option("--svg-out", gantt->svg_out, "SVG output path");
  cmd_gantt->callback([gantt] { run_gantt(*gantt); });

  auto plot = std::make_shared<PlotOpts>();
  auto* cmd_plot = app.add_subcommand("plot", "Render JSON reports as SVG charts");
  add_common(cmd_plot, plot->c);
  cmd_plot->add_option("--report", plot->reports, "Report .json paths")
      ->required()
      ->delimiter(',');
  cmd_plot->callback([plot] { run_plot(*plot); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
