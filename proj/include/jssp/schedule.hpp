#pragma once
// Serial schedule generation: one decision dispatches one ready operation.

#include <cstdint>
#include <string>
#include <vector>

#include "jssp/instance.hpp"
#include "jssp/rng.hpp"
#include "jssp/rules.hpp"

namespace jssp {

struct DispatchEntry {
  int job = 0;
  int op = 0;       // position in the job's routing
  int machine = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
};

/// Partial schedule built by the serial generator. Every unfinished job is
/// ready; dispatching job j places its next operation at
/// start = max(job ready time, machine ready time). Fields are open so the
/// feasibility checker can be exercised on corrupted logs, but normal code
/// mutates the state only through dispatch().
struct ScheduleState {
  const Instance* inst = nullptr;  // not owned; must outlive the state
  std::vector<int> next_op;        // [job] = operations already scheduled
  std::vector<std::int64_t> job_ready;
  std::vector<std::int64_t> machine_ready;
  std::vector<int> arrival;        // [job] = decision count when its next op became ready
  std::vector<DispatchEntry> log;  // dispatch order
  std::int64_t partial_makespan = 0;
  std::int64_t scheduled_work = 0;

  ScheduleState() = default;
  explicit ScheduleState(const Instance& instance);

  const Instance& instance() const { return *inst; }
  int decisions_made() const { return static_cast<int>(log.size()); }
  int remaining_decisions() const { return inst->total_ops() - decisions_made(); }
  bool complete() const { return remaining_decisions() == 0; }
  bool job_finished(int job) const {
    return next_op[static_cast<std::size_t>(job)] >= inst->num_machines;
  }
  int next_machine(int job) const {
    return inst->routing[static_cast<std::size_t>(job)]
                        [static_cast<std::size_t>(next_op[static_cast<std::size_t>(job)])];
  }
  std::int64_t next_proc_time(int job) const {
    return inst->proc_time[static_cast<std::size_t>(job)]
                          [static_cast<std::size_t>(next_op[static_cast<std::size_t>(job)])];
  }
  std::int64_t remaining_work(int job) const {
    return inst->work_after[static_cast<std::size_t>(job)]
                           [static_cast<std::size_t>(next_op[static_cast<std::size_t>(job)])];
  }
  int remaining_ops(int job) const {
    return inst->num_machines - next_op[static_cast<std::size_t>(job)];
  }

  /// Schedules `job`'s next operation. Throws std::invalid_argument if the
  /// job index is out of range or the job is finished.
  void dispatch(int job);
};

struct CompletionResult {
  std::int64_t makespan = 0;
  std::int64_t steps = 0;  // dispatch decisions actually simulated
};

/// Applies `rule` at every remaining decision until the schedule is complete.
CompletionResult complete_with_rule(ScheduleState& state, RuleId rule, Rng& rng);

/// Replays the dispatch log and checks: operations follow each job's routing
/// order, machine intervals never overlap, and every start time equals
/// max(job ready, machine ready) at its dispatch. On failure returns false
/// and, when `why` is non-null, stores a diagnostic for the first violation.
bool verify_feasible(const ScheduleState& state, std::string* why = nullptr);

}  // namespace jssp
