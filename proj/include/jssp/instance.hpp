#pragma once
// JSSP instance model, random generator, lower bound, and file formats.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace jssp {

/// One job-shop instance. Every job visits each machine exactly once in its
/// own routing order; processing times are positive integers (generated ones
/// are uniform on [1, 99]).
///
/// Call finalize() after filling the public fields: it validates the
/// invariants and computes the derived quantities the schedulers and the
/// feature extractor read (remaining-work suffix sums, machine loads, the
/// standard lower bound, and instance-level processing-time statistics).
struct Instance {
  std::string id;
  int num_jobs = 0;
  int num_machines = 0;
  std::vector<std::vector<int>> routing;              // [job][position] -> machine
  std::vector<std::vector<std::int64_t>> proc_time;   // [job][position]

  // Derived by finalize().
  std::vector<std::vector<std::int64_t>> work_after;  // [job][pos] = sum of p[pos..M)
  std::vector<std::int64_t> machine_load;             // [machine] = total work routed to it
  std::int64_t total_work = 0;
  std::int64_t lb = 0;                                // max(job duration, machine load)
  double p_mean = 0, p_std = 0;                       // all-ops stats, population std
  std::int64_t p_min = 0, p_max = 0;
  double load_mean = 0, load_std = 0;
  std::int64_t load_max = 0;

  int total_ops() const { return num_jobs * num_machines; }
  void finalize();  // throws std::invalid_argument on malformed data
};

/// num_jobs jobs, each with an independent uniform routing permutation and
/// processing times uniform on [1, 99]. Deterministic in (J, M, seed).
Instance generate_instance(int num_jobs, int num_machines, std::uint64_t seed,
                           std::string id = "");

/// max over jobs of total processing time and over machines of total load.
std::int64_t lower_bound(const Instance& inst);

/// JSON round-trip. config_echo, when non-empty, must be a JSON object (the
/// run configuration echo embedded in every artifact).
std::string instance_to_json(const Instance& inst, const std::string& config_echo = "");
Instance instance_from_json(const std::string& text);

/// Standard text form: "J M" on the first line, then one line per job with
/// M (machine, duration) pairs.
Instance parse_standard_jssp(const std::string& text, std::string id);
std::string to_standard_jssp(const Instance& inst);

/// Loads .json or standard-text instances by extension.
Instance load_instance(const std::filesystem::path& path);
/// All instance files in a directory, sorted by filename.
std::vector<Instance> load_instance_dir(const std::filesystem::path& dir);

}  // namespace jssp
