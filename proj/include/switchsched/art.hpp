#pragma once

#include <string>
#include <vector>

#include "switchsched/core.hpp"
#include "switchsched/lp.hpp"

namespace switchsched::art {

// Per-(flow, round) real assignment; carrier for relaxation solutions.
struct FractionalAssignment {
    long long horizon = 0;
    // per flow: (round, value) pairs with value > 0, sorted by round
    std::vector<std::vector<std::pair<long long, double>>> per_flow;
    double objective = 0.0;
};

// Per-flow round assignment that may overload ports by a bounded backlog.
struct PseudoSchedule {
    std::vector<long long> round_of;  // instance order
    long long backlog = 0;            // max over ports/intervals of load - capacity*length
};

// LP over variables b_{e,t}; var_of[f] maps offsets within [base[f], end[f])
// to column indices (contiguous ranges for the two builders below).
struct ArtLp {
    lp::LpModel model;
    std::vector<long long> base;  // first round with a variable, per flow
    std::vector<long long> end;   // one past the last round, per flow
    std::vector<int> first_var;   // column of (f, base[f])
    int request_rows = 0;         // rows [0, request_rows) are the demand rows
    // (flat port, block start) per capacity row, aligned with rows
    // [request_rows, num_rows)
    std::vector<std::pair<int, long long>> capacity_row_key;

    int var(int flow, long long round) const {
        return first_var[flow] + static_cast<int>(round - base[flow]);
    }
};

// Per-round relaxation: objective sum_e sum_t ((t - r_e)/d_e + 1/(2 kappa_e)) b_{e,t},
// demand rows sum_t b >= d_e, per-(port, round) capacity rows, b >= 0.
ArtLp build_art_lp(const Instance& inst, long long horizon);

// Same objective with the 1/2 constant term; capacity aggregated over blocks
// of four consecutive rounds with right side 4 c_p.
ArtLp build_lp0(const Instance& inst, long long horizon);

// Optimal objective of the per-round relaxation at the default horizon; a
// lower bound on the total response time of every valid schedule.
double art_lower_bound(const Instance& inst);

struct TraceGroup {
    PortId port;
    double size = 0.0;  // sum of carried values
    int vars = 0;
    bool last_of_port = false;
};

struct TraceIteration {
    int level = 0;                       // index of the LP solved
    std::vector<int> remaining;          // flows still fractional before this solve
    std::vector<std::vector<std::pair<long long, double>>> values;  // per flow (instance order)
    std::vector<std::pair<int, long long>> fixed;                   // (flow, round) fixed here
    int tight_capacity_rows = 0;
    std::vector<TraceGroup> groups;      // interval groups defining the next LP
};

struct RoundingTrace {
    std::vector<TraceIteration> iterations;
};

// Iterative relaxation: solves LP(0), LP(1), ... fixing demand-scale integral
// flows each level until none remain. Requires LP(0) feasible at the horizon.
PseudoSchedule iterative_round(const Instance& inst, long long horizon,
                               RoundingTrace* trace = nullptr);

// Objective value of a fully assigned solution under the LP(0) coefficients.
double pseudo_cost(const Instance& inst, const std::vector<long long>& round_of);

// Max over ports and intervals of assigned volume minus capacity * length.
long long measured_backlog(const Instance& inst, const std::vector<long long>& round_of);

struct ArtResult {
    double lp_lower_bound = 0.0;
    PseudoSchedule pseudo;
    IntegralSchedule schedule;
    long long augmentation = 1;   // c
    long long window_length = 1;  // h
    long long color_count = 0;    // d (max over windows)
};

// Converts a pseudo-schedule into a schedule valid at capacity factor 1 + c:
// windows of length h = max(1, ceil(B/c)); each window's edges are expanded
// over port copies, edge-colored, and the color classes run in the following
// window, 1 + c matchings per round. Unit demands only.
ArtResult pseudo_to_schedule(const Instance& inst, const PseudoSchedule& pseudo,
                             long long augmentation);

// Full pipeline at the default horizon.
ArtResult solve_art(const Instance& inst, long long augmentation,
                    RoundingTrace* trace = nullptr);

}  // namespace switchsched::art
