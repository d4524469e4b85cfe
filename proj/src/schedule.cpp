#include "jssp/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace jssp {

ScheduleState::ScheduleState(const Instance& instance)
    : inst(&instance),
      next_op(static_cast<std::size_t>(instance.num_jobs), 0),
      job_ready(static_cast<std::size_t>(instance.num_jobs), 0),
      machine_ready(static_cast<std::size_t>(instance.num_machines), 0),
      arrival(static_cast<std::size_t>(instance.num_jobs), 0) {
  log.reserve(static_cast<std::size_t>(instance.total_ops()));
}

void ScheduleState::dispatch(int job) {
  if (job < 0 || job >= inst->num_jobs)
    throw std::invalid_argument("dispatch: job index out of range");
  std::size_t j = static_cast<std::size_t>(job);
  int op = next_op[j];
  if (op >= inst->num_machines) throw std::invalid_argument("dispatch: job already finished");
  int machine = inst->routing[j][static_cast<std::size_t>(op)];
  std::int64_t p = inst->proc_time[j][static_cast<std::size_t>(op)];
  std::int64_t start = std::max(job_ready[j], machine_ready[static_cast<std::size_t>(machine)]);
  std::int64_t end = start + p;
  log.push_back({job, op, machine, start, end});
  next_op[j] = op + 1;
  job_ready[j] = end;
  machine_ready[static_cast<std::size_t>(machine)] = end;
  arrival[j] = decisions_made();
  partial_makespan = std::max(partial_makespan, end);
  scheduled_work += p;
}

CompletionResult complete_with_rule(ScheduleState& state, RuleId rule, Rng& rng) {
  std::int64_t steps = 0;
  while (!state.complete()) {
    state.dispatch(select_job(rule, state, rng));
    ++steps;
  }
  return {state.partial_makespan, steps};
}

bool verify_feasible(const ScheduleState& state, std::string* why) {
  auto fail = [&](const std::string& message) {
    if (why) *why = message;
    return false;
  };
  const Instance& inst = state.instance();
  if (static_cast<int>(state.log.size()) > inst.total_ops())
    return fail("log has more entries than operations");

  // Pass 1: structural checks against the instance.
  std::vector<int> ops_seen(static_cast<std::size_t>(inst.num_jobs), 0);
  for (std::size_t i = 0; i < state.log.size(); ++i) {
    const DispatchEntry& e = state.log[i];
    std::string at = "log entry " + std::to_string(i) + ": ";
    if (e.job < 0 || e.job >= inst.num_jobs) return fail(at + "job index out of range");
    std::size_t j = static_cast<std::size_t>(e.job);
    if (e.op != ops_seen[j]) return fail(at + "operations out of routing order");
    if (e.machine != inst.routing[j][static_cast<std::size_t>(e.op)])
      return fail(at + "machine does not match the routing");
    if (e.end - e.start != inst.proc_time[j][static_cast<std::size_t>(e.op)])
      return fail(at + "duration does not match the processing time");
    if (e.start < 0) return fail(at + "negative start time");
    ++ops_seen[j];
  }

  // Pass 2: machine intervals must not overlap.
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> by_machine(
      static_cast<std::size_t>(inst.num_machines));
  for (const DispatchEntry& e : state.log)
    by_machine[static_cast<std::size_t>(e.machine)].push_back({e.start, e.end});
  for (int m = 0; m < inst.num_machines; ++m) {
    auto& iv = by_machine[static_cast<std::size_t>(m)];
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 1; i < iv.size(); ++i)
      if (iv[i].first < iv[i - 1].second)
        return fail("machine " + std::to_string(m) + ": overlapping intervals [" +
                    std::to_string(iv[i - 1].first) + "," + std::to_string(iv[i - 1].second) +
                    ") and [" + std::to_string(iv[i].first) + "," + std::to_string(iv[i].second) +
                    ")");
  }

  // Pass 3: replay to check the start-time rule and the cached fields.
  std::vector<std::int64_t> jr(static_cast<std::size_t>(inst.num_jobs), 0);
  std::vector<std::int64_t> mr(static_cast<std::size_t>(inst.num_machines), 0);
  std::int64_t makespan = 0, work = 0;
  for (std::size_t i = 0; i < state.log.size(); ++i) {
    const DispatchEntry& e = state.log[i];
    std::size_t j = static_cast<std::size_t>(e.job);
    std::size_t m = static_cast<std::size_t>(e.machine);
    std::int64_t expected = std::max(jr[j], mr[m]);
    if (e.start != expected)
      return fail("log entry " + std::to_string(i) + ": start " + std::to_string(e.start) +
                  " != max(job ready, machine ready) = " + std::to_string(expected));
    jr[j] = e.end;
    mr[m] = e.end;
    makespan = std::max(makespan, e.end);
    work += e.end - e.start;
  }
  for (int j = 0; j < inst.num_jobs; ++j) {
    std::size_t sj = static_cast<std::size_t>(j);
    if (state.next_op[sj] != ops_seen[sj]) return fail("next_op inconsistent with the log");
    if (state.job_ready[sj] != jr[sj]) return fail("job_ready inconsistent with the log");
  }
  for (int m = 0; m < inst.num_machines; ++m)
    if (state.machine_ready[static_cast<std::size_t>(m)] != mr[static_cast<std::size_t>(m)])
      return fail("machine_ready inconsistent with the log");
  if (state.partial_makespan != makespan) return fail("partial_makespan inconsistent with the log");
  if (state.scheduled_work != work) return fail("scheduled_work inconsistent with the log");
  return true;
}

}  // namespace jssp
