#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "switchsched/core.hpp"
#include "switchsched/lp.hpp"

namespace switchsched::mrt {

// Time-constrained flow: no release, just a nonempty set of admissible rounds.
struct TcfsFlow {
    std::string id;
    int src = 0;
    int dst = 0;
    long long demand = 1;
    std::vector<long long> active;  // sorted, unique, nonempty
};

struct TcfsInstance {
    SwitchSpec sw;
    std::vector<TcfsFlow> flows;

    long long d_max() const;
    std::vector<long long> all_rounds() const;  // union of active sets, sorted
    void validate() const;

    // Deadline-window derivation: active = [r_e, r_e + rho).
    static TcfsInstance from_release_windows(const Instance& inst, long long rho);
    // Uses the instance's own active sets (must be present on every flow).
    static TcfsInstance from_active_sets(const Instance& inst);
};

struct TcfsLp {
    lp::LpModel model;
    std::vector<std::vector<int>> var;  // var[f][k] pairs with flows[f].active[k]
    int capacity_rows = 0;              // rows [0, capacity_rows) are the port rows
    std::vector<std::pair<int, long long>> capacity_row_key;  // (flat port, round)
};

// Feasibility LP: per-(port, round) capacity rows, per-flow assignment rows
// summing to one, zero objective.
TcfsLp build_tcfs_lp(const TcfsInstance& inst);

struct TcfsFraction {
    std::vector<std::vector<double>> x;  // aligned with active sets
};

struct RoundedAssignment {
    std::map<std::string, long long> round_of;  // each in the flow's active set
    long long d_max = 0;
    long long max_overload = 0;
    struct Overload {
        PortId port;
        long long round = 0;
        long long amount = 0;
    };
    std::vector<Overload> overloads;  // positive entries only
};

// Additive rounding of a feasible fraction: every coordinate moves to its
// floor or ceiling, assignment rows stay exact, and no (port, round) load
// exceeds capacity by more than 2 d_max - 1. Iterative relaxation: fix
// integral coordinates, drop capacity rows that can no longer be violated by
// 2 d_max, and re-solve for a fresh vertex until everything is integral.
RoundedAssignment karp_round(const TcfsInstance& inst, const TcfsFraction& frac);

struct TcfsOutcome {
    bool feasible = false;
    std::optional<RoundedAssignment> assignment;
};

// Infeasible LP certifies that no exact schedule exists; otherwise returns
// the rounded assignment.
TcfsOutcome solve_tcfs(const TcfsInstance& inst);

struct MrtResult {
    long long rho_star = 1;  // least rho with a feasible relaxation
    RoundedAssignment assignment;
};

// Binary search over the release-window reduction. rho_star lower-bounds the
// optimal integral maximum response time; the returned assignment achieves it
// with per-port overload at most 2 d_max - 1. augment_check re-validates the
// output and probes monotonicity around rho_star.
MrtResult solve_mrt(const Instance& inst, bool augment_check);

// Least rho whose relaxation is feasible; shared with the simulator, which
// needs the bound without the rounded schedule. max_response_hint (when > 0)
// must come from a valid integral schedule and seeds the upper end.
long long min_feasible_rho(const Instance& inst, long long max_response_hint = -1);

// Earliest-fit schedule in (release, id) order; always valid, used for the
// search's upper end.
IntegralSchedule fifo_schedule(const Instance& inst);

}  // namespace switchsched::mrt
