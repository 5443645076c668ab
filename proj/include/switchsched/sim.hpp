#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "switchsched/core.hpp"
#include "switchsched/online.hpp"

namespace switchsched::sim {

// Square switch with unit capacities and unit demands; per generation round,
// Poisson(mean_arrivals) new flows with endpoints uniform over ports.
struct WorkloadConfig {
    int ports = 16;             // m (m x m switch)
    double mean_arrivals = 8;   // M
    long long rounds = 10;      // T
    std::uint64_t seed = 0;
};

Instance poisson_workload(const WorkloadConfig& cfg);

// Relaxation bounds for one instance, shared by every policy's rows.
struct InstanceBounds {
    double lp_avg_total = 0.0;  // optimal objective of the per-round relaxation
    long long rho_star = 1;     // least feasible response window
};

// max_response_hint must be the max response of some valid schedule of the
// instance (it seeds the window search from above).
InstanceBounds compute_bounds(const Instance& inst, long long max_response_hint = -1);

struct TrialResult {
    online::Policy policy = online::Policy::MaxCard;
    int m = 0;
    double M = 0.0;
    long long T = 0;
    std::uint64_t seed = 0;
    long long flows = 0;
    double avg_response = 0.0;
    long long max_response = 0;
    std::optional<double> lp_avg_bound;  // per-flow scale
    std::optional<double> lp_max_bound;
    std::optional<double> avg_ratio;
    std::optional<double> max_ratio;
    double runtime_ms = 0.0;
};

// Runs one policy to an empty backlog and reports response metrics; ratios
// are filled when bounds are supplied. Timing is opt-in so that default
// outputs stay byte-reproducible.
TrialResult run_trial(const Instance& inst, const WorkloadConfig& cfg, online::Policy policy,
                      const InstanceBounds* bounds = nullptr, bool timing = false);

struct SummaryRow {
    std::string policy;
    int m = 0;
    double M = 0.0;
    long long T = 0;
    int trials = 0;
    double avg_response = 0.0;
    double max_response = 0.0;
    std::optional<double> lp_avg_bound;
    std::optional<double> lp_max_bound;
    std::optional<double> avg_ratio;
    std::optional<double> max_ratio;
    double runtime_ms = 0.0;
};

// Arithmetic means per (policy, m, M, T); optional columns average over the
// rows that carry them.
std::vector<SummaryRow> aggregate(const std::vector<TrialResult>& rows);

extern const char* const kResultsHeader;
void write_results_csv(std::ostream& os, const std::vector<TrialResult>& rows);
std::vector<TrialResult> read_results_csv(std::istream& is);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

}  // namespace switchsched::sim
