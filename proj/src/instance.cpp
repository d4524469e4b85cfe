#include "jssp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "jssp/rng.hpp"
#include "jssp/util.hpp"

namespace jssp {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("instance: " + what);
}

}  // namespace

void Instance::finalize() {
  check(num_jobs >= 1, "num_jobs must be >= 1");
  check(num_machines >= 1, "num_machines must be >= 1");
  check(static_cast<int>(routing.size()) == num_jobs, "routing row count != num_jobs");
  check(static_cast<int>(proc_time.size()) == num_jobs, "proc_time row count != num_jobs");

  std::vector<char> seen(static_cast<std::size_t>(num_machines));
  for (int j = 0; j < num_jobs; ++j) {
    check(static_cast<int>(routing[j].size()) == num_machines, "routing row length != num_machines");
    check(static_cast<int>(proc_time[j].size()) == num_machines, "proc_time row length != num_machines");
    std::fill(seen.begin(), seen.end(), 0);
    for (int k = 0; k < num_machines; ++k) {
      int m = routing[j][k];
      check(m >= 0 && m < num_machines, "machine index out of range");
      check(!seen[static_cast<std::size_t>(m)], "routing row is not a permutation");
      seen[static_cast<std::size_t>(m)] = 1;
      check(proc_time[j][k] >= 1, "processing times must be >= 1");
    }
  }

  work_after.assign(static_cast<std::size_t>(num_jobs), {});
  machine_load.assign(static_cast<std::size_t>(num_machines), 0);
  total_work = 0;
  p_min = proc_time[0][0];
  p_max = proc_time[0][0];
  for (int j = 0; j < num_jobs; ++j) {
    auto& wa = work_after[static_cast<std::size_t>(j)];
    wa.assign(static_cast<std::size_t>(num_machines) + 1, 0);
    for (int k = num_machines - 1; k >= 0; --k)
      wa[static_cast<std::size_t>(k)] = wa[static_cast<std::size_t>(k) + 1] + proc_time[j][k];
    total_work += wa[0];
    for (int k = 0; k < num_machines; ++k) {
      std::int64_t p = proc_time[j][k];
      machine_load[static_cast<std::size_t>(routing[j][k])] += p;
      p_min = std::min(p_min, p);
      p_max = std::max(p_max, p);
    }
  }

  int n_ops = total_ops();
  p_mean = static_cast<double>(total_work) / n_ops;
  double ss = 0;
  for (int j = 0; j < num_jobs; ++j)
    for (int k = 0; k < num_machines; ++k) {
      double d = static_cast<double>(proc_time[j][k]) - p_mean;
      ss += d * d;
    }
  p_std = std::sqrt(ss / n_ops);

  std::int64_t load_sum = 0;
  load_max = machine_load[0];
  for (std::int64_t l : machine_load) {
    load_sum += l;
    load_max = std::max(load_max, l);
  }
  load_mean = static_cast<double>(load_sum) / num_machines;
  double ls = 0;
  for (std::int64_t l : machine_load) {
    double d = static_cast<double>(l) - load_mean;
    ls += d * d;
  }
  load_std = std::sqrt(ls / num_machines);

  std::int64_t job_max = 0;
  for (int j = 0; j < num_jobs; ++j)
    job_max = std::max(job_max, work_after[static_cast<std::size_t>(j)][0]);
  lb = std::max(job_max, load_max);
}

Instance generate_instance(int num_jobs, int num_machines, std::uint64_t seed, std::string id) {
  if (num_jobs < 1 || num_machines < 1)
    throw std::invalid_argument("generate_instance: dimensions must be >= 1");
  Instance inst;
  inst.id = id.empty() ? std::to_string(num_jobs) + "x" + std::to_string(num_machines) + "-s" +
                             std::to_string(seed)
                       : std::move(id);
  inst.num_jobs = num_jobs;
  inst.num_machines = num_machines;
  inst.routing.resize(static_cast<std::size_t>(num_jobs));
  inst.proc_time.resize(static_cast<std::size_t>(num_jobs));
  Rng rng(seed);
  for (int j = 0; j < num_jobs; ++j) {
    auto& route = inst.routing[static_cast<std::size_t>(j)];
    route.resize(static_cast<std::size_t>(num_machines));
    for (int m = 0; m < num_machines; ++m) route[static_cast<std::size_t>(m)] = m;
    rng.shuffle(route);
    auto& p = inst.proc_time[static_cast<std::size_t>(j)];
    p.resize(static_cast<std::size_t>(num_machines));
    for (int k = 0; k < num_machines; ++k)
      p[static_cast<std::size_t>(k)] = rng.uniform_int(1, 99);
  }
  inst.finalize();
  return inst;
}

std::int64_t lower_bound(const Instance& inst) { return inst.lb; }

std::string instance_to_json(const Instance& inst, const std::string& config_echo) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["id"] = inst.id;
  j["num_jobs"] = inst.num_jobs;
  j["num_machines"] = inst.num_machines;
  j["routing"] = inst.routing;
  j["proc_time"] = inst.proc_time;
  if (!config_echo.empty()) j["config"] = nlohmann::ordered_json::parse(config_echo);
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("instance JSON parse error: ") + e.what());
  }
  Instance inst;
  try {
    inst.id = j.at("id").get<std::string>();
    inst.num_jobs = j.at("num_jobs").get<int>();
    inst.num_machines = j.at("num_machines").get<int>();
    inst.routing = j.at("routing").get<std::vector<std::vector<int>>>();
    inst.proc_time = j.at("proc_time").get<std::vector<std::vector<std::int64_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("instance JSON missing or bad field: ") + e.what());
  }
  inst.finalize();
  return inst;
}

Instance parse_standard_jssp(const std::string& text, std::string id) {
  std::istringstream in(text);
  int J = 0, M = 0;
  if (!(in >> J >> M)) throw std::runtime_error("standard JSSP: bad header line");
  if (J < 1 || M < 1) throw std::runtime_error("standard JSSP: dimensions must be >= 1");
  Instance inst;
  inst.id = std::move(id);
  inst.num_jobs = J;
  inst.num_machines = M;
  inst.routing.assign(static_cast<std::size_t>(J), std::vector<int>(static_cast<std::size_t>(M)));
  inst.proc_time.assign(static_cast<std::size_t>(J),
                        std::vector<std::int64_t>(static_cast<std::size_t>(M)));
  for (int j = 0; j < J; ++j)
    for (int k = 0; k < M; ++k) {
      long long machine = 0, dur = 0;
      if (!(in >> machine >> dur))
        throw std::runtime_error("standard JSSP: truncated operation list");
      inst.routing[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
          static_cast<int>(machine);
      inst.proc_time[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = dur;
    }
  inst.finalize();
  return inst;
}

std::string to_standard_jssp(const Instance& inst) {
  std::string out = std::to_string(inst.num_jobs) + " " + std::to_string(inst.num_machines) + "\n";
  for (int j = 0; j < inst.num_jobs; ++j) {
    for (int k = 0; k < inst.num_machines; ++k) {
      if (k) out += " ";
      out += std::to_string(inst.routing[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
      out += " ";
      out += std::to_string(
          inst.proc_time[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
    }
    out += "\n";
  }
  return out;
}

Instance load_instance(const std::filesystem::path& path) {
  std::string text = read_file(path);
  if (path.extension() == ".json") return instance_from_json(text);
  return parse_standard_jssp(text, path.stem().string());
}

std::vector<Instance> load_instance_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Instance> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_instance(f));
  return out;
}

}  // namespace jssp
