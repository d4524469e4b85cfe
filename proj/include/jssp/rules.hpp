#pragma once
// The seven low-level dispatching rules.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jssp/rng.hpp"

namespace jssp {

struct Instance;
struct ScheduleState;

/// Integer codes are stable: they key the one-hot feature block and appear in
/// every file format, so they must never be renumbered.
enum class RuleId : int {
  Spt = 0,     // shortest next processing time
  Lpt = 1,     // longest next processing time
  Mwkr = 2,    // most work remaining
  Lwkr = 3,    // least work remaining
  Mopnr = 4,   // most operations remaining
  Fifo = 5,    // earliest ready time, then earliest arrival
  Random = 6,  // uniform over ready jobs
};

inline constexpr int kNumRules = 7;
inline constexpr std::array<RuleId, 7> kAllRules = {
    RuleId::Spt, RuleId::Lpt, RuleId::Mwkr, RuleId::Lwkr,
    RuleId::Mopnr, RuleId::Fifo, RuleId::Random};
inline constexpr std::array<RuleId, 6> kDeterministicRules = {
    RuleId::Spt, RuleId::Lpt, RuleId::Mwkr, RuleId::Lwkr, RuleId::Mopnr, RuleId::Fifo};

constexpr int rule_code(RuleId r) { return static_cast<int>(r); }
RuleId rule_from_code(int code);  // throws std::invalid_argument on bad code
const char* rule_name(RuleId r);
/// Case-insensitive name lookup ("fifo", "FIFO", ...).
std::optional<RuleId> parse_rule(std::string_view name);

/// Returns the ready job the rule selects. Deterministic rules break ties by
/// lowest job index; RANDOM draws uniformly over ready jobs and is the only
/// rule that consumes the rng. Throws std::logic_error on a complete state.
int select_job(RuleId rule, const ScheduleState& state, Rng& rng);

/// Deterministic rule with the lowest mean makespan over the instances
/// (RANDOM excluded); ties go to the lowest rule code.
RuleId best_fixed_rule(const std::vector<Instance>& instances);

}  // namespace jssp
