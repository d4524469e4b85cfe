// Python bindings for the core operations: instance generation, schedule
// construction, rollout labeling, selector fitting, and policy execution.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jssp/eval.hpp"
#include "jssp/features.hpp"
#include "jssp/instance.hpp"
#include "jssp/knn.hpp"
#include "jssp/labeler.hpp"
#include "jssp/policy.hpp"
#include "jssp/rng.hpp"
#include "jssp/rules.hpp"
#include "jssp/schedule.hpp"

namespace py = pybind11;

namespace {

jssp::RuleId rule_arg(const std::string& name) {
  auto r = jssp::parse_rule(name);
  if (!r) throw std::invalid_argument("unknown rule '" + name + "'");
  return *r;
}

py::list log_to_list(const jssp::ScheduleState& state) {
  py::list log;
  for (const auto& e : state.log)
    log.append(py::make_tuple(e.job, e.op, e.machine, e.start, e.end));
  return log;
}

py::dict ledger_dict(const jssp::CostLedger& ledger) {
  py::dict d;
  d["rollouts"] = ledger.rollouts;
  d["steps"] = ledger.steps;
  d["wall_seconds"] = ledger.wall_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rollout-trained dispatching-rule selection for job-shop scheduling";

  py::list rules;
  for (jssp::RuleId r : jssp::kAllRules) rules.append(std::string(jssp::rule_name(r)));
  m.attr("RULES") = rules;

  py::class_<jssp::Instance>(m, "Instance")
      .def(py::init([](std::vector<std::vector<int>> routing,
                       std::vector<std::vector<std::int64_t>> proc_time, std::string id) {
             jssp::Instance inst;
             inst.id = std::move(id);
             inst.num_jobs = static_cast<int>(routing.size());
             inst.num_machines =
                 routing.empty() ? 0 : static_cast<int>(routing.front().size());
             inst.routing = std::move(routing);
             inst.proc_time = std::move(proc_time);
             inst.finalize();
             return inst;
           }),
           py::arg("routing"), py::arg("proc_time"), py::arg("id") = "instance")
      .def_readonly("id", &jssp::Instance::id)
      .def_readonly("num_jobs", &jssp::Instance::num_jobs)
      .def_readonly("num_machines", &jssp::Instance::num_machines)
      .def_readonly("routing", &jssp::Instance::routing)
      .def_readonly("proc_time", &jssp::Instance::proc_time)
      .def_property_readonly("lower_bound", [](const jssp::Instance& i) { return i.lb; })
      .def_property_readonly("total_ops", &jssp::Instance::total_ops)
      .def("to_json", [](const jssp::Instance& i) { return jssp::instance_to_json(i); })
      .def_static("from_json", &jssp::instance_from_json, py::arg("text"))
      .def_static("from_text", &jssp::parse_standard_jssp, py::arg("text"), py::arg("id"))
      .def_static("load", &jssp::load_instance, py::arg("path"))
      .def("__repr__", [](const jssp::Instance& i) {
        return "<Instance " + i.id + " " + std::to_string(i.num_jobs) + "x" +
               std::to_string(i.num_machines) + ">";
      });

  m.def("generate_instance", &jssp::generate_instance, py::arg("num_jobs"),
        py::arg("num_machines"), py::arg("seed"), py::arg("id") = "");

  py::class_<jssp::ScheduleState>(m, "Schedule")
      .def(py::init<const jssp::Instance&>(), py::arg("instance"), py::keep_alive<1, 2>())
      .def("dispatch", &jssp::ScheduleState::dispatch, py::arg("job"))
      .def(
          "dispatch_rule",
          [](jssp::ScheduleState& s, const std::string& rule, std::uint64_t seed) {
            jssp::Rng rng(seed);
            int job = jssp::select_job(rule_arg(rule), s, rng);
            s.dispatch(job);
            return job;
          },
          py::arg("rule"), py::arg("seed") = 0)
      .def(
          "complete",
          [](jssp::ScheduleState& s, const std::string& rule, std::uint64_t seed) {
            jssp::Rng rng(seed);
            auto res = jssp::complete_with_rule(s, rule_arg(rule), rng);
            return py::make_tuple(res.makespan, res.steps);
          },
          py::arg("rule"), py::arg("seed") = 0)
      .def(
          "features",
          [](const jssp::ScheduleState& s, const std::string& candidate) {
            return jssp::extract_features(s, rule_arg(candidate));
          },
          py::arg("candidate"))
      .def("verify",
           [](const jssp::ScheduleState& s) {
             std::string why;
             if (!jssp::verify_feasible(s, &why)) throw py::value_error(why);
             return true;
           })
      .def_property_readonly("makespan",
                             [](const jssp::ScheduleState& s) { return s.partial_makespan; })
      .def_property_readonly("done", &jssp::ScheduleState::complete)
      .def_property_readonly("decisions_made", &jssp::ScheduleState::decisions_made)
      .def_property_readonly("remaining_decisions", &jssp::ScheduleState::remaining_decisions)
      .def_property_readonly("log", &log_to_list);

  m.def(
      "run_rule",
      [](const jssp::Instance& inst, const std::string& rule, std::uint64_t seed) {
        jssp::ScheduleState state(inst);
        jssp::Rng rng(seed);
        auto res = jssp::complete_with_rule(state, rule_arg(rule), rng);
        return py::make_tuple(res.makespan, res.steps);
      },
      py::arg("instance"), py::arg("rule"), py::arg("seed") = 0,
      "Build a full schedule with one dispatching rule; returns (makespan, dispatches)");

  m.def(
      "best_fixed_rule",
      [](const std::vector<jssp::Instance>& instances) {
        return std::string(jssp::rule_name(jssp::best_fixed_rule(instances)));
      },
      py::arg("instances"));

  m.def(
      "oracle_fixed",
      [](const jssp::Instance& inst) {
        return jssp::oracle_fixed(inst, jssp::EvalOptions{});
      },
      py::arg("instance"), "Best makespan over the six deterministic rules");

  m.def("rpd", &jssp::rpd, py::arg("makespan"), py::arg("oracle"));

  m.def("feature_names", &jssp::feature_names);

  py::class_<jssp::LabelConfig>(m, "LabelConfig")
      .def(py::init<>())
      .def_readwrite("states_per_instance", &jssp::LabelConfig::states_per_instance)
      .def_readwrite("trajectories_per_instance", &jssp::LabelConfig::trajectories_per_instance)
      .def_readwrite("depth", &jssp::LabelConfig::depth)
      .def_readwrite("breadth", &jssp::LabelConfig::breadth)
      .def_readwrite("subset_includes_default", &jssp::LabelConfig::subset_includes_default)
      .def_readwrite("seed", &jssp::LabelConfig::seed)
      .def_property(
          "label_kind",
          [](const jssp::LabelConfig& c) {
            return std::string(jssp::label_kind_name(c.label_kind));
          },
          [](jssp::LabelConfig& c, const std::string& name) {
            auto k = jssp::parse_label_kind(name);
            if (!k) throw std::invalid_argument("unknown label kind '" + name + "'");
            c.label_kind = *k;
          })
      .def_property(
          "default_rule",
          [](const jssp::LabelConfig& c) { return std::string(jssp::rule_name(c.default_rule)); },
          [](jssp::LabelConfig& c, const std::string& name) { c.default_rule = rule_arg(name); });

  py::class_<jssp::Dataset>(m, "Dataset")
      .def("__len__", [](const jssp::Dataset& d) { return d.samples.size(); })
      .def_property_readonly("ledger",
                             [](const jssp::Dataset& d) { return ledger_dict(d.ledger); })
      .def(
          "sample",
          [](const jssp::Dataset& d, std::size_t i) {
            if (i >= d.samples.size()) throw py::index_error();
            const auto& s = d.samples[i];
            py::dict row;
            row["features"] = s.features;
            row["target"] = s.target;
            row["instance_id"] = s.instance_id;
            row["decision_index"] = s.decision_index;
            row["rule"] = std::string(jssp::rule_name(s.rule));
            row["makespan"] = s.makespan;
            return row;
          },
          py::arg("i"))
      .def("to_csv", &jssp::dataset_to_csv, py::arg("config_echo") = "")
      .def_static("from_csv", &jssp::dataset_from_csv, py::arg("text"));

  m.def("build_dataset", &jssp::build_dataset, py::arg("instances"), py::arg("config"),
        py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<jssp::SelectorModel>(m, "SelectorModel")
      .def_readonly("k", &jssp::SelectorModel::k)
      .def_readonly("epsilon", &jssp::SelectorModel::epsilon)
      .def("__len__", &jssp::SelectorModel::size)
      .def_property_readonly("default_rule",
                             [](const jssp::SelectorModel& m_) {
                               return std::string(jssp::rule_name(m_.default_rule));
                             })
      .def_property_readonly("label_kind",
                             [](const jssp::SelectorModel& m_) {
                               return std::string(jssp::label_kind_name(m_.label_kind));
                             })
      .def_property_readonly("fingerprint", &jssp::model_fingerprint)
      .def(
          "predict",
          [](const jssp::SelectorModel& m_, const jssp::FeatureVec& features) {
            jssp::FeatureVec z = m_.normalizer.normalize(features);
            auto p = jssp::query_vector(m_, z.data());
            return py::make_tuple(p.r_hat, p.sigma_hat);
          },
          py::arg("features"), "Returns (r_hat, sigma_hat) for one raw feature vector")
      .def(
          "predict_all",
          [](const jssp::SelectorModel& m_, const jssp::ScheduleState& state) {
            auto preds = jssp::predict_all(m_, state);
            py::dict out;
            for (jssp::RuleId r : jssp::kAllRules) {
              const auto& p = preds[static_cast<std::size_t>(jssp::rule_code(r))];
              out[jssp::rule_name(r)] = py::make_tuple(p.r_hat, p.sigma_hat);
            }
            return out;
          },
          py::arg("state"), "Predicts (r_hat, sigma_hat) for every rule at a state")
      .def("save", &jssp::save_model, py::arg("path"))
      .def_static("load", &jssp::load_model, py::arg("path"));

  m.def(
      "fit_selector",
      [](const jssp::Dataset& ds, int k, double epsilon) {
        return jssp::fit_selector(ds, k, epsilon);
      },
      py::arg("dataset"), py::arg("k") = 7, py::arg("epsilon") = 1e-8);

  m.def(
      "run_policy",
      [](const jssp::Instance& inst, const std::string& spec, std::uint64_t seed,
         const jssp::SelectorModel* model) {
        jssp::Policy policy = jssp::parse_policy_spec(spec, model);
        jssp::PolicyRun run = jssp::run_policy(policy, inst, seed);
        py::list chosen;
        for (jssp::RuleId r : run.chosen) chosen.append(std::string(jssp::rule_name(r)));
        py::dict out;
        out["makespan"] = run.makespan;
        out["chosen"] = chosen;
        out["log"] = log_to_list(run.state);
        return out;
      },
      py::arg("instance"), py::arg("spec"), py::arg("seed") = 42,
      py::arg("model") = static_cast<const jssp::SelectorModel*>(nullptr),
      "Run a policy spec (fixed:RULE, random-hh, argmin, lcb:L, gated:L) on one instance");
}
