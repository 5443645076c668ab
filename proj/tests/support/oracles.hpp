#pragma once

// Independent brute-force oracles for the test suites. Everything here
// enumerates; nothing calls back into the solver paths it is checking.

#include <optional>
#include <vector>

#include "switchsched/core.hpp"
#include "switchsched/gen.hpp"
#include "switchsched/matching.hpp"
#include "switchsched/mrt.hpp"

namespace oracles {

using switchsched::Instance;
using switchsched::IntegralSchedule;

// Exhaustive minimum total response over all capacity-feasible schedules.
// Each flow's candidate rounds are [release, release + #port-sharing flows],
// which always contains an optimal left-shifted schedule.
long long brute_min_total_response(const Instance& inst);

// Exhaustive minimum maximum response (same search space).
long long brute_min_max_response(const Instance& inst);

// Exact schedulability with each flow confined to its active set.
bool brute_tcfs_schedulable(const switchsched::mrt::TcfsInstance& inst);

// Same, with windows [release, release + rho).
bool brute_window_schedulable(const Instance& inst, long long rho);

// Timetable satisfiability under the availability reading: a lesson may only
// sit in one of its teacher's hours.
bool rtt_satisfiable(const switchsched::gen::RttInstance& rtt);

// All matchings by recursion (graphs small enough for 2^E scans).
long long brute_max_matching_size(const switchsched::matching::BipartiteMultigraph& g);
double brute_max_matching_weight(const switchsched::matching::BipartiteMultigraph& g,
                                 const std::vector<double>& weight);

}  // namespace oracles
